"""Command-line interface: ``hypercover <subcommand> ...``.

Exit codes: 0 on success, 1 on a domain error (bad input file, failed check,
no witness found), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .covering import (
    derived_cover,
    parse_signing,
    parse_voltage,
    random_signing,
    random_voltage,
    serialize_signing,
    verify_spectral_inclusion,
    verify_spectral_union,
)
from .geometry import affine_plane, complete_uniform, projective_plane
from .hypercore import HypergraphError, read_hypergraph, serialize_hypergraph, write_hypergraph
from .matchpoly import incidence_bipartite_graph, verify_expected_laplacian, verify_godsil_gutman
from .ramanujan import certify
from .rng import SplitMix64
from .search import SearchConfig, abelian_tower, build_tower, left_condition, search_cover
from .spectra import (
    adjacency_matrix,
    incidence_adjacency,
    signless_laplacian,
    sym_eigenvalues,
    verify_poly_relation,
)


def _flag(x: bool) -> str:
    return "true" if x else "false"


def cmd_construct(args: argparse.Namespace) -> int:
    if args.family == "complete-uniform":
        if args.d is None:
            raise HypergraphError("--d is required for complete-uniform")
        H = complete_uniform(args.d)
    else:
        if args.q is None:
            raise HypergraphError(f"--q is required for {args.family}")
        H = projective_plane(args.q) if args.family == "projective-plane" else affine_plane(args.q)
    write_hypergraph(H, args.output)
    print(f"wrote {args.output}: {H.n} vertices, {H.num_edges} edges")
    return 0


_MATRICES = {
    "adjacency": adjacency_matrix,
    "laplacian": signless_laplacian,
    "incidence": incidence_adjacency,
}


def cmd_spectrum(args: argparse.Namespace) -> int:
    H = read_hypergraph(args.file)
    sys.stdout.write(sym_eigenvalues(_MATRICES[args.matrix](H)).format())
    return 0


def cmd_certify(args: argparse.Namespace) -> int:
    sys.stdout.write(certify(read_hypergraph(args.file)).format())
    return 0


def cmd_cover(args: argparse.Namespace) -> int:
    H = read_hypergraph(args.file)
    if args.signing:
        s = parse_signing(Path(args.signing).read_bytes())
        phi = s.to_voltage()
    else:
        s = None
        phi = parse_voltage(Path(args.voltage).read_bytes())
    res = derived_cover(H, phi)
    write_hypergraph(res.cover, args.output)
    print(f"cover {res.cover.n} vertices {res.cover.num_edges} edges k {phi.k}")
    ok = verify_spectral_inclusion(H, phi)
    print(f"inclusion {_flag(ok)}")
    if s is not None:
        union = verify_spectral_union(H, s)
        print(f"union {_flag(union)}")
        ok = ok and union
    return 0 if ok else 1


def cmd_search(args: argparse.Namespace) -> int:
    H = read_hypergraph(args.file)
    cfg = SearchConfig(args.side, args.mode, seed=args.seed, trials=args.trials, jobs=args.jobs)
    res = search_cover(H, cfg)
    print(f"explored {res.explored} free {res.free_signs} exhausted {_flag(res.exhausted)}")
    if res.witness is None:
        print(f"no {args.side}-sided witness found")
        return 1
    text = serialize_signing(res.witness)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    sys.stdout.write(res.certificate.format())
    return 0


def cmd_tower(args: argparse.Namespace) -> int:
    H0 = read_hypergraph(args.file)
    levels = build_tower(H0, args.levels, args.side, seed=args.seed, jobs=args.jobs)
    out = Path(args.output)
    (out / "level_0").mkdir(parents=True, exist_ok=True)
    write_hypergraph(H0, out / "level_0" / "hypergraph.hg")
    for t, lv in enumerate(levels, start=1):
        d = out / f"level_{t}"
        d.mkdir(parents=True, exist_ok=True)
        write_hypergraph(lv.cover, d / "hypergraph.hg")
        (d / "signing.sg").write_text(serialize_signing(lv.signing))
        (d / "certificate.txt").write_text(lv.certificate.format())
        print(f"level {t} vertices {lv.cover.n} edges {lv.cover.num_edges} mode {lv.mode} "
              f"{args.side} {_flag(lv.certificate.passes(args.side))}")
    return 0


def cmd_abelian(args: argparse.Namespace) -> int:
    out = Path(args.output)
    for lv in abelian_tower(args.q, args.k):
        d = out / f"level_{lv.k}"
        d.mkdir(parents=True, exist_ok=True)
        write_hypergraph(lv.lift, d / "hypergraph.hg")
        report = (
            f"k {lv.k}\n"
            f"block_union {_flag(lv.block_union_ok)}\n"
            f"incidence_eig {lv.incidence_value:.9f} bound {lv.incidence_bound:.9f}\n"
            f"adjacency_eig {lv.lift_value:.9f} bound {lv.lift_bound:.9f}\n"
        )
        (d / "report.txt").write_text(report + lv.certificate.format())
        print(f"k {lv.k} vertices {lv.lift.n} adjacency_eig {lv.lift_value:.9f} "
              f"incidence_eig {lv.incidence_value:.9f} block_union {_flag(lv.block_union_ok)} "
              f"verdict {lv.certificate.verdict}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    H = read_hypergraph(args.file)
    check = args.check
    rng = SplitMix64(args.seed)
    if check == "polyrel":
        ok = verify_poly_relation(H)
    elif check == "godsil-gutman":
        ok = verify_godsil_gutman(incidence_bipartite_graph(H))
    elif check == "expected-laplacian":
        ok = verify_expected_laplacian(H)
    elif check == "union":
        s = parse_signing(Path(args.signing).read_bytes()) if args.signing else random_signing(H, rng)
        ok = verify_spectral_union(H, s)
    elif check == "inclusion":
        phi = parse_voltage(Path(args.voltage).read_bytes()) if args.voltage else random_voltage(H, args.k, rng)
        ok = verify_spectral_inclusion(H, phi)
    else:
        lc = left_condition(H)
        print(f"mu_tau {lc.mu_tau:.9f} threshold {lc.threshold:.9f}")
        ok = lc.holds
    print(f"check {check} {_flag(ok)}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypercover", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write an explicit hypergraph family")
    p.add_argument("--family", required=True, choices=["complete-uniform", "projective-plane", "affine-plane"])
    p.add_argument("--d", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectrum", help="grouped eigenvalues of a hypergraph matrix")
    p.add_argument("file")
    p.add_argument("--matrix", choices=sorted(_MATRICES), default="adjacency")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("certify", help="Ramanujan certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("cover", help="derived cover from a voltage or signing file")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--voltage")
    g.add_argument("--signing")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("search", help="search for a Ramanujan 2-covering")
    p.add_argument("file")
    p.add_argument("--side", required=True, choices=["right", "left", "full"])
    p.add_argument("--mode", required=True, choices=["exhaustive", "random"])
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", help="write the witness signing here instead of stdout")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tower", help="tower of certified 2-coverings")
    p.add_argument("file")
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--side", required=True, choices=["right", "left"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("abelian", help="cyclic lifts of AG(2, q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, nargs="+", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_abelian)

    p = sub.add_parser("verify", help="run one identity check")
    p.add_argument("file")
    p.add_argument("--check", required=True, choices=[
        "polyrel", "godsil-gutman", "expected-laplacian", "union", "inclusion", "left-condition"])
    p.add_argument("--signing")
    p.add_argument("--voltage")
    p.add_argument("--k", type=int, default=3, help="fold count for a random voltage")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        parser.print_usage(sys.stderr)
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (HypergraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
