"""Command-line entry point: ``xsolve <command> ...``.

Instances use the plain DIMACS CNF container, read under exact-one
semantics.  ``solve`` and ``oracle`` exit with 10 (satisfiable) or 20
(unsatisfiable); any usage, I/O or parse error exits with 1.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from dataclasses import dataclass, field

from .analysis import catalog_eval, load_catalog, parse_catalog, tau, weight_search
from .formula import from_clauses
from .search import solve
from .testkit import GeneratorConfig, brute_force, generate_clauses

EXIT_SAT, EXIT_UNSAT, EXIT_ERROR = 10, 20, 1


class DimacsError(ValueError):
    pass


@dataclass
class XDimacsDocument:
    num_vars: int
    num_clauses: int
    clauses: list = field(default_factory=list)
    comments: list = field(default_factory=list)

    def formula(self):
        return from_clauses(self.clauses, num_vars=self.num_vars)


def parse(text: str) -> XDimacsDocument:
    header = None
    comments, clauses, current = [], [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("c"):
            comments.append(stripped[1:].strip())
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if header is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {stripped!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {stripped!r}") from None
            if min(header) < 0:
                raise DimacsError(f"line {lineno}: negative count in header")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in stripped.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad token {tok!r}") from None
            if lit == 0:
                if tok.lstrip("+-") != "0" or tok.startswith("-"):
                    raise DimacsError(f"line {lineno}: zero literal {tok!r}")
                clauses.append(current)
                current = []
            elif abs(lit) > header[0]:
                raise DimacsError(f"line {lineno}: literal {lit} out of range 1..{header[0]}")
            else:
                current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("unterminated final clause (missing 0)")
    if len(clauses) != header[1]:
        warnings.warn(f"header declares {header[1]} clauses, found {len(clauses)}")
    return XDimacsDocument(header[0], header[1], clauses, comments)


def emit(doc: XDimacsDocument) -> str:
    out = [f"c {c}" if c else "c" for c in doc.comments]
    out.append(f"p cnf {doc.num_vars} {len(doc.clauses)}")
    out += [" ".join(map(str, c + [0])) for c in map(list, doc.clauses)]
    return "\n".join(out) + "\n"


def _read(path):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if path == "-":
            doc = parse(sys.stdin.read())
        else:
            with open(path, encoding="utf-8") as fh:
                doc = parse(fh.read())
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return doc


def _model_lines(model, width=10):
    lits = [v if model[v] else -v for v in sorted(model)]
    for i in range(0, len(lits), width):
        yield "v " + " ".join(map(str, lits[i:i + width]))
    yield "v 0"


def cmd_solve(args):
    f = _read(args.file).formula()
    start = time.perf_counter()
    res = solve(f, case21=not args.no_case21, instrument=args.stats_json is not None)
    elapsed = time.perf_counter() - start
    print("s SATISFIABLE" if res.sat else "s UNSATISFIABLE")
    if res.sat and args.model:
        for line in _model_lines(res.model):
            print(line)
    if args.stats_json:
        payload = res.stats.to_json()
        payload["seconds"] = round(elapsed, 6)
        with open(args.stats_json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_SAT if res.sat else EXIT_UNSAT


def cmd_oracle(args):
    f = _read(args.file).formula()
    res = brute_force(f)
    print("s SATISFIABLE" if res.sat else "s UNSATISFIABLE")
    print(f"c models {res.count}")
    return EXIT_SAT if res.sat else EXIT_UNSAT


def cmd_gen(args):
    cfg = GeneratorConfig(
        seed=args.seed, n_vars=args.vars, n_clauses=args.clauses,
        length_range=(args.len_min, args.len_max), neg_probability=args.neg_prob,
        degree_cap=2 if args.deg2 else None,
    )
    doc = XDimacsDocument(cfg.n_vars, cfg.n_clauses, [list(c) for c in generate_clauses(cfg)],
                          [f"xsolve gen seed={cfg.seed} lengths={args.len_min}-{args.len_max}"
                           + (" deg2" if args.deg2 else "")])
    text = emit(doc)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_tau(args):
    print(f"{tau(args.t):.6f}")
    return 0


def _catalog(path):
    if path is None:
        return load_catalog()
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read())


def cmd_catalog_eval(args):
    best, rows = catalog_eval(args.w, _catalog(args.catalog))
    width = max(len(r.name) for r in rows)
    print(f"{'entry':<{width}}  {'tau':>8}  {'expected':>8}  h")
    for r in rows:
        exp = "-" if r.expected is None else f"{r.expected:.4f}"
        h = "-" if r.h is None else str(r.h)
        print(f"{r.name:<{width}}  {r.tau:8.6f}  {exp:>8}  {h}")
    print(f"max tau at w={args.w}: {best:.6f}")
    return 0


def cmd_weight_search(args):
    res = weight_search(args.lo, args.hi, args.step, _catalog(args.catalog))
    stride = max(1, len(res.curve) // 20)
    print(f"{'w':>8}  {'max tau':>9}")
    for w, t in res.curve[::stride]:
        print(f"{w:8.4f}  {t:9.6f}")
    print(f"best w = {res.best_w:.4f}, max tau = {res.best_tau:.6f}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="xsolve", description="Exact-satisfiability solver and analysis tools.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide an instance")
    s.add_argument("file")
    s.add_argument("--model", action="store_true", help="print a satisfying assignment")
    s.add_argument("--stats-json", metavar="PATH", help="write search statistics as JSON")
    s.add_argument("--no-case21", action="store_true", help="disable the two-triangle branching refinement")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="decide and count models by enumeration")
    s.add_argument("file")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", help="write a seeded random instance")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--vars", type=int, required=True)
    s.add_argument("--clauses", type=int, required=True)
    s.add_argument("--len-min", type=int, default=3)
    s.add_argument("--len-max", type=int, default=6)
    s.add_argument("--neg-prob", type=float, default=0.5)
    s.add_argument("--deg2", action="store_true", help="cap every variable at degree 2")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("tau", help="branching factor of a branching vector")
    s.add_argument("t", nargs="+", type=float)
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("catalog-eval", help="evaluate the recurrence catalog at one weight")
    s.add_argument("--w", type=float, default=0.8823)
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_catalog_eval)

    s = sub.add_parser("weight-search", help="scan weights for the smallest worst-case factor")
    s.add_argument("--lo", type=float, default=0.5)
    s.add_argument("--hi", type=float, default=1.0)
    s.add_argument("--step", type=float, default=1e-4)
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_weight_search)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else 0
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"xsolve: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
