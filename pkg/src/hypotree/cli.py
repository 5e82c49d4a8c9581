"""Command-line interface: ``hypotree <subcommand> ...``.

Exit status: 0 on success / "exists", 2 when a classification or witness
request has answer "does not exist", 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import classify, constructions as con, enumeration, spectral
from .reference_values import run_checks
from .tree import (
    Tree,
    TreeError,
    canonical_code,
    coalesce,
    max_degree,
    parse_edge_list,
    serialize_edge_list,
    to_dot,
)

EXIT_OK, EXIT_ERROR, EXIT_NO = 0, 1, 2


@dataclass
class RunConfig:
    tolerance: float = spectral.DEFAULT_TOL
    method: str = spectral.EXACT
    output: str = "text"
    seed: int = 0

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.method == "dense":
            self.method = spectral.DENSE
        if self.method not in spectral.METHODS:
            raise ValueError(f"unknown method {self.method!r}")


def _config(args) -> RunConfig:
    tol = args.tol if args.tol is not None else spectral.default_tol()
    output = "json" if args.json else "dot" if getattr(args, "dot", False) else "text"
    return RunConfig(tol, args.method, output, args.seed)


def _read_tree(path: str) -> Tree:
    if path == "-":
        return parse_edge_list(sys.stdin.read())
    with open(path) as fh:
        return parse_edge_list(fh.read())


def _emit_tree(t: Tree, cfg: RunConfig, out) -> None:
    if cfg.output == "dot":
        out.write(to_dot(t))
    elif cfg.output == "json":
        out.write(json.dumps({"n": t.n, "edges": [list(e) for e in t.edges]}) + "\n")
    else:
        out.write(serialize_edge_list(t))


# -- subcommands ------------------------------------------------------------


def cmd_construct(args, cfg: RunConfig, out) -> int:
    kind, p = args.kind, args.params
    need = {"star": 1, "path": 1, "dary": 2, "tstar": 2, "maxnull": 2, "figure1": 1, "coalesce": 4}
    if len(p) != need[kind]:
        raise SystemExit(f"construct {kind}: expected {need[kind]} parameters, got {len(p)}")
    if kind == "star":
        t = con.star(int(p[0]))
    elif kind == "path":
        t = con.path(int(p[0]))
    elif kind == "dary":
        t = con.complete_dary(int(p[0]), int(p[1]))
        if t is None:
            raise SystemExit("construct dary: C_0 is the empty graph")
    elif kind == "tstar":
        t = con.tstar(int(p[0]), int(p[1]))
    elif kind == "maxnull":
        t = con.max_nullity_tree(int(p[0]), int(p[1]))
    elif kind == "figure1":
        t = con.figure1(p[0])
    else:
        t = coalesce(_read_tree(p[0]), int(p[1]), _read_tree(p[2]), int(p[3]))
    _emit_tree(t, cfg, out)
    return EXIT_OK


def cmd_energy(args, cfg: RunConfig, out) -> int:
    t = _read_tree(args.file)
    res = spectral.energy(t, cfg.tolerance, cfg.method)
    if cfg.output == "json":
        out.write(res.to_json() + "\n")
    else:
        out.write(f"{res.energy:.6f}\n")
        out.write(f"# n={t.n} error_bound={res.error_bound:.3e} nullity={res.nullity} method={res.method}\n")
    return EXIT_OK


def cmd_nullity(args, cfg: RunConfig, out) -> int:
    t = _read_tree(args.file)
    n0 = spectral.nullity(t)
    mu = spectral.matching_number(t)
    if cfg.output == "json":
        out.write(json.dumps({"n": t.n, "nullity": n0, "matching_number": mu}) + "\n")
    else:
        out.write(f"{n0}\n# matching_number={mu}\n")
    return EXIT_OK


def _print_verdict(v: classify.Verdict, cfg: RunConfig, out) -> None:
    if cfg.output == "json":
        out.write(v.to_json() + "\n")
        return
    kind = "strongly hypoenergetic" if v.strong else "hypoenergetic"
    answer = "yes" if v.exists else "no"
    out.write(f"{answer}: {kind} tree of order {v.n} with max degree {v.delta}\n")
    out.write(f"# {v.clause}\n")
    if v.certificate is not None:
        c = v.certificate
        out.write(f"# witness energy {c.energy:.6f} +- {c.error_bound:.1e}, margin {v.margin:.6f}\n")


def cmd_classify(args, cfg: RunConfig, out) -> int:
    f = classify.strong_exists if args.strong else classify.hypo_exists
    v = f(args.n, args.delta, with_witness=args.with_witness, tol=cfg.tolerance)
    _print_verdict(v, cfg, out)
    return EXIT_OK if v.exists else EXIT_NO


def cmd_witness(args, cfg: RunConfig, out) -> int:
    f = classify.strong_exists if args.strong else classify.hypo_exists
    v = f(args.n, args.delta, with_witness=True, tol=cfg.tolerance)
    if not v.exists:
        _print_verdict(v, cfg, out)
        return EXIT_NO
    if cfg.output == "json":
        out.write(v.to_json() + "\n")
    elif cfg.output == "dot":
        out.write(to_dot(v.witness))
    else:
        c = v.certificate
        threshold = v.n - 1 if v.strong else v.n
        out.write(f"# certified: E = {c.energy:.9f} +- {c.error_bound:.1e} < {threshold}\n")
        out.write(serialize_edge_list(v.witness))
    return EXIT_OK


def cmd_enumerate(args, cfg: RunConfig, out) -> int:
    if args.n > enumeration.MAX_N and not args.max_n_override:
        raise enumeration.BudgetExceeded(
            f"n={args.n} exceeds {enumeration.MAX_N}; pass --max-n-override"
        )
    cap = args.delta_exact if args.delta_exact is not None else args.delta_cap
    lines: List[str] = []
    for t in enumeration.free_trees(args.n, cap):
        if args.delta_exact is not None and max_degree(t) != args.delta_exact:
            continue
        if args.filter and not classify.certify(t, args.filter == "strong", cfg.tolerance):
            continue
        if args.codes:
            lines.append(canonical_code(t).decode())
        elif cfg.output == "json":
            lines.append(json.dumps([list(e) for e in t.edges]))
        else:
            lines.append(" ".join(f"{u}-{v}" for u, v in t.edges) or "-")
    for line in sorted(lines):
        out.write(line + "\n")
    return EXIT_OK


def cmd_verify_paper(args, cfg: RunConfig, out) -> int:
    checks = run_checks(cfg.tolerance, cfg.method, cfg.seed)
    if cfg.output == "json":
        out.write(json.dumps([c.__dict__ for c in checks], default=str) + "\n")
    else:
        for c in checks:
            out.write(c.line() + "\n")
        failed = sum(not c.passed for c in checks)
        out.write(f"{len(checks) - failed}/{len(checks)} checks passed\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_ERROR


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="eigenvalue tolerance (default 1e-9, env HYPOTREE_TOL)")
    common.add_argument("--method", default=spectral.EXACT,
                        choices=["exact_roots", "dense", "dense_eigensolver"])
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="hypotree", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a named tree")
    p.add_argument("kind", choices=["star", "path", "dary", "tstar", "maxnull", "figure1", "coalesce"])
    p.add_argument("params", nargs="*")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("energy", parents=[common], help="energy of an edge-list tree")
    p.add_argument("file", help="edge-list file or - for stdin")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("nullity", parents=[common], help="nullity of an edge-list tree")
    p.add_argument("file")
    p.set_defaults(func=cmd_nullity)

    for name, func in (("classify", cmd_classify), ("witness", cmd_witness)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("n", type=int)
        p.add_argument("delta", type=int)
        p.add_argument("--strong", action="store_true", help="ask for E < n - 1")
        p.add_argument("--dot", action="store_true")
        if name == "classify":
            p.add_argument("--with-witness", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("enumerate", parents=[common], help="list free trees")
    p.add_argument("n", type=int)
    p.add_argument("--filter", choices=["hypo", "strong"])
    p.add_argument("--delta-exact", type=int)
    p.add_argument("--delta-cap", type=int)
    p.add_argument("--codes", action="store_true", help="print canonical codes")
    p.add_argument("--max-n-override", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-paper", parents=[common], help="recompute published energies")
    p.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg, out)
    except (TreeError, ValueError, KeyError, RuntimeError, OSError) as exc:
        print(f"hypotree: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
