"""``tap`` command line: solve, exact, verify, analyze, gen, bench.

Exit codes: 0 success, 2 infeasible instance, 3 parse or usage error,
4 internal invariant violation (audit failures included). ``verify``
reports validity on stdout and exits 0 either way.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .errors import InfeasibleError, InvariantError, LimitExceeded, ParseError
from .instance import (MODELS, Instance, find_bridges, generate,
                       parse_instance, parse_solution, reduce_graph, reduced_link_origin,
                       serialize_instance)
from .oracle import DEFAULT_LIMIT, exact_opt, verify_cover
from .solver import AuditError, SolveOptions, tree_cover, trace_lines
from .structures import analyze, leaf_matching
from .treeops import LinkSet, shadow_complete

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tap", description="Tree augmentation solver and oracles.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="run the 1.5-approximation")
    s.add_argument("file")
    s.add_argument("--audit", action="store_true", help="check every contraction's credit")
    s.add_argument("--trace", action="store_true", help="print one k line per contraction")
    s.add_argument("--root", type=int, help="1-based root of the (reduced) tree")

    e = sub.add_parser("exact", help="exhaustive minimum cover")
    e.add_argument("file")
    e.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="maximum link count (0 = none)")

    v = sub.add_parser("verify", help="check a solution file")
    v.add_argument("file")
    v.add_argument("solution")

    a = sub.add_parser("analyze", help="twin links, stems, locked leaves, W and M")
    a.add_argument("file")
    a.add_argument("--root", type=int)

    g = sub.add_parser("gen", help="write a random instance")
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--extra-links", type=int, default=0)
    g.add_argument("--model", choices=MODELS, default="random")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--no-feasible", action="store_true", help="skip the covering repair pass")
    g.add_argument("--out", help="output path (default stdout)")

    b = sub.add_parser("bench", help="generate, solve and compare with the optimum")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--max-nodes", type=int, default=10)
    b.add_argument("--max-extra-links", type=int, default=8)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--audit", action="store_true")
    return p


def _read(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh)


def _as_tree(problem):
    """Tree instance plus a function mapping its link indices to output pairs."""
    if isinstance(problem, Instance):
        return problem, lambda ids: [problem.links[i] for i in ids]
    inst, comp = reduce_graph(problem)
    origin = reduced_link_origin(problem, comp)
    return inst, lambda ids: [problem.links[origin[i]] for i in ids]


def _solution_text(tag: str, pairs) -> str:
    pairs = sorted({(u, v) if u <= v else (v, u) for u, v in pairs})
    lines = [f"s {tag} {len(pairs)}"] + [f"l {u + 1} {v + 1}" for u, v in pairs]
    return "\n".join(lines) + "\n"


def _root_arg(root: Optional[int], inst: Instance) -> Optional[int]:
    if root is None:
        return None
    if not 1 <= root <= inst.node_count:
        raise UsageError(f"--root {root} is not a node of the {inst.node_count}-node tree")
    return root - 1


def cmd_solve(args, out: TextIO) -> int:
    inst, to_pairs = _as_tree(_read(args.file))
    opts = SolveOptions(root=_root_arg(args.root, inst), audit=args.audit, trace=args.trace)
    code = EXIT_OK
    try:
        sol = tree_cover(inst, opts)
    except AuditError as err:
        sol, code = err.solution, EXIT_INVARIANT
    out.write(_solution_text("tap", to_pairs(sol.links)))
    if args.trace:
        out.writelines(line + "\n" for line in trace_lines(sol.stats.trace))
    if args.audit:
        out.writelines(rec.line() + "\n" for rec in sol.stats.audit)
    if code:
        print("tap: error: a contraction failed the credit audit", file=sys.stderr)
    return code


def cmd_exact(args, out: TextIO) -> int:
    inst, to_pairs = _as_tree(_read(args.file))
    k, ids = exact_opt(inst, limit=args.limit or None)
    out.write(_solution_text("opt", to_pairs(ids)))
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    problem = _read(args.file)
    with open(args.solution, encoding="utf-8") as fh:
        pairs = parse_solution(fh)
    known = {(u, v) if u <= v else (v, u) for u, v in problem.links}
    ok = all(((u, v) if u <= v else (v, u)) in known for u, v in pairs)
    if ok:
        if isinstance(problem, Instance):
            ok = verify_cover(problem, pairs)
        else:
            ok = not find_bridges(problem.node_count, list(problem.edges) + pairs)
    out.write("valid\n" if ok else "invalid\n")
    return EXIT_OK


def cmd_analyze(args, out: TextIO) -> int:
    from .solver import choose_root

    inst, _ = _as_tree(_read(args.file))
    root = _root_arg(args.root, inst)
    if root is None:
        root = choose_root(inst)
    if root is None:
        out.write("r 1\n" if inst.node_count == 1 else "r none\n")
        return EXIT_OK
    t = inst.rooted(root)
    closed = shadow_complete(t, LinkSet.from_pairs(inst.links))
    report = analyze(t, closed)
    M = leaf_matching(t, closed, report.W)
    lines = [f"r {root + 1}", f"c {len(inst.links)} links, {len(closed)} after shadow completion"]
    lines += [f"t {u + 1} {v + 1}" for u, v in sorted(report.twin_links)]
    lines += [f"s {s + 1} {u + 1} {v + 1}" for s, (u, v) in sorted(report.stems.items())]
    for leaf, info in sorted(report.locked.items()):
        lines.append(f"x {leaf + 1} {info.twin + 1} {info.third + 1} {info.root + 1}")
    lines += [f"w {u + 1} {v + 1}" for u, v in sorted(report.W)]
    lines += [f"m {u + 1} {v + 1}" for u, v in sorted(M.pairs)]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_gen(args, out: TextIO) -> int:
    if args.nodes < 1:
        raise UsageError("--nodes must be at least 1")
    inst = generate(args.nodes, args.extra_links, args.model,
                    ensure_feasible=not args.no_feasible, seed=args.seed)
    text = serialize_instance(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def bench_trial(seed: int, index: int, max_nodes: int, max_extra: int, audit: bool) -> tuple:
    """One generate-solve-compare round; returns ``(solution size, optimum, valid)``."""
    rng = random.Random(seed * 1_000_003 + index)
    n = rng.randint(min(3, max_nodes), max_nodes)
    inst = generate(n, rng.randint(0, max_extra), MODELS[index % len(MODELS)], seed=rng.getrandbits(32))
    sol = tree_cover(inst, SolveOptions(audit=audit))
    k, _ = exact_opt(inst, limit=None)
    return sol.size, k, verify_cover(inst, sol.links)


def cmd_bench(args, out: TextIO) -> int:
    if args.trials < 1 or args.max_nodes < 2 or args.max_extra_links < 0:
        raise UsageError("need --trials >= 1, --max-nodes >= 2, --max-extra-links >= 0")
    worst = Fraction(1)
    violations = 0
    for i in range(args.trials):
        size, k, valid = bench_trial(args.seed, i, args.max_nodes, args.max_extra_links, args.audit)
        if k:
            worst = max(worst, Fraction(size, k))
        if not valid or 2 * size > 3 * k:
            violations += 1
    out.write(f"bench {args.trials} {worst.numerator}/{worst.denominator} {violations}\n")
    return EXIT_INVARIANT if violations else EXIT_OK


COMMANDS = {"solve": cmd_solve, "exact": cmd_exact, "verify": cmd_verify,
            "analyze": cmd_analyze, "gen": cmd_gen, "bench": cmd_bench}


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as err:
        print(f"tap: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exit_:     # --help
        return int(exit_.code or 0)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args, out)
    except InfeasibleError as err:
        print(f"tap: infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, ParseError, LimitExceeded, OSError, ValueError) as err:
        print(f"tap: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as err:
        print(f"tap: invariant violated: {err}", file=sys.stderr)
        return EXIT_INVARIANT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
