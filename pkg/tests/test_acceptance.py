"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for just the summary,
or through pytest, where the lines also appear in the terminal summary.
"""

from __future__ import annotations

import io
import random
import sys
from fractions import Fraction
from functools import lru_cache

from treeaug.cli import run
from treeaug.fixtures import TEXTS, load
from treeaug.instance import MODELS, generate, serialize_instance
from treeaug.matching import max_matching
from treeaug.oracle import (canonical_F, exact_opt, leaf_degrees, lower_bound_rhs, overlapping_pairs,
                            verify_cover)
from treeaug.solver import SolveOptions, tree_cover
from treeaug.structures import analyze, leaf_matching
from treeaug.treeops import LinkSet, build, shadow_complete

from helpers import brute_matching_size, leafy, mixed_instance, random_graph

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:     # run as a script
    ACCEPTANCE_LINES = []


def report(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_1_ratio():
    worst = Fraction(1)
    violations = 0
    for i in range(1000):
        inst = mixed_instance(i, 1, 4, 12, max_links=20)
        size = tree_cover(inst).size
        k, _ = exact_opt(inst)
        worst = max(worst, Fraction(size, k))
        violations += 2 * size > 3 * k
    report(1, "ratio 2|I| <= 3 OPT", violations == 0,
           f"1000 instances, 4-12 nodes, <= 20 links; max ratio {worst}; {violations} violations")


def test_2_validity():
    bad = 0
    for i in range(10_000):
        rng = random.Random(2_000_003 + i)
        n = rng.randint(2, 20)
        if i % 5 == 4:
            inst = leafy(rng.getrandbits(32), max(n, 3), rng.randint(1, n + 4))
        else:
            inst = generate(n, rng.randint(0, 2 * n), MODELS[i % 4], seed=rng.getrandbits(32))
        sol = tree_cover(inst)
        in_range = all(isinstance(x, int) and 0 <= x < len(inst.links) for x in sol.links)
        bad += not (in_range and verify_cover(inst, sol.links))
    report(2, "validity", bad == 0, f"10000 mixed-model instances, {bad} invalid outputs")


@lru_cache(maxsize=None)
def small_runs():
    """Solve, audit and derive F for the 200 instances shared by criteria 3-5."""
    rows = []
    for i in range(200):
        inst = mixed_instance(i, 3, 4, 10)
        sol = tree_cover(inst, SolveOptions(audit=True))
        root = sol.stats.root
        t = build(inst, root)
        links = shadow_complete(t, LinkSet.from_pairs(inst.links))
        M = leaf_matching(t, links, analyze(t, links).W)
        U = [x for x in t.leaves() if x not in M.mate]
        F = canonical_F(inst, root=root, matching=M)
        rows.append((inst, sol, t, M, U, F))
    return rows


def test_3_lower_bound():
    eq1 = thm = 0
    tight = 0
    for inst, sol, t, M, U, F in small_runs():
        rhs2 = lower_bound_rhs(inst, M.pairs, U, F)
        eq1 += 3 * len(F) < rhs2
        thm += 2 * sol.size > rhs2
        tight += 3 * len(F) == rhs2
    report(3, "lower bound 3|F| >= 2 RHS and 2|I| <= 2 RHS", eq1 == 0 and thm == 0,
           f"200 instances <= 10 nodes; {eq1} bound failures, {thm} solver-size failures; "
           f"{tight} tight")


def test_4_canonical_F_structure():
    overlap = degree = 0
    for inst, sol, t, M, U, F in small_runs():
        overlap += bool(overlapping_pairs(t, F.links))
        degree += any(d != 1 for d in leaf_degrees(t, F.links).values())
    report(4, "canonical F: no overlaps, leaf degree 1", overlap == 0 and degree == 0,
           f"200 instances; {overlap} with overlaps, {degree} with a leaf degree != 1")


def test_5_audit():
    contractions = failures = 0
    for inst, sol, t, M, U, F in small_runs():
        *steps, total = sol.stats.audit
        contractions += len(steps)
        failures += sum(not r.ok for r in steps) + (not total.ok)
    report(5, "audit legality", failures == 0,
           f"200 instances, {contractions} audited contractions, {failures} failures")


def test_6_fixtures():
    problems = []
    expect = {"P3": (None, 1), "STAR4": (None, 2), "DTREE": (0, 2), "LOCK": (0, 3)}
    for name, (root, size) in expect.items():
        sol = tree_cover(load(name), SolveOptions(root=root, audit=True))
        kinds = [r.kind for r in sol.stats.trace]
        if sol.size != size:
            problems.append(f"{name} size {sol.size}")
        if name == "DTREE" and kinds != ["find-tree"]:
            problems.append(f"DTREE trace {kinds}")
        if name == "LOCK" and (kinds.count("locking") != 1 or kinds[0] != "locking"):
            problems.append(f"LOCK trace {kinds}")
        if not all(r.ok for r in sol.stats.audit):
            problems.append(f"{name} audit")
    report(6, "fixtures", not problems,
           "P3=1 STAR4=2 DTREE=2 via find-tree, LOCK=3 via one locking contraction"
           if not problems else "; ".join(problems))


def test_7_matching():
    rng = random.Random(7)
    bad = 0
    for _ in range(300):
        n = rng.randint(1, 12)
        edges = random_graph(rng, n, rng.choice([0.15, 0.3, 0.5, 0.8]))
        bad += len(max_matching(range(n), edges)) != brute_matching_size(range(n), edges)
    report(7, "matching equals brute force", bad == 0, f"300 graphs <= 12 nodes, {bad} mismatches")


def test_8_determinism(tmp_path):
    for name, text in TEXTS.items():
        (tmp_path / f"{name}.tap").write_text(text)
    gen = tmp_path / "gen.tap"
    gen.write_text(serialize_instance(generate(12, 6, "binary", seed=42)))
    sol = tmp_path / "lock.sol"
    sol.write_text("s tap 3\nl 1 7\nl 5 6\nl 6 7\n")
    argvs = [["gen", "--nodes", "12", "--extra-links", "6", "--model", m, "--seed", "42"] for m in MODELS]
    argvs += [["solve", str(tmp_path / f"{n}.tap"), "--trace", "--audit"] for n in TEXTS]
    argvs += [["solve", str(tmp_path / "LOCK.tap"), "--root", "1", "--trace", "--audit"],
              ["solve", str(gen)], ["exact", str(gen)], ["analyze", str(gen)],
              ["verify", str(tmp_path / "LOCK.tap"), str(sol)],
              ["bench", "--trials", "60", "--max-nodes", "10", "--seed", "5", "--audit"]]
    differ = []
    for argv in argvs:
        outs = []
        for _ in range(3):
            buf = io.StringIO()
            code = run(argv, out=buf)
            outs.append((code, buf.getvalue()))
        if len(set(outs)) != 1:
            differ.append(argv[0])
    report(8, "determinism", not differ,
           f"{len(argvs)} commands x 3 runs, {len(differ)} differing" + (f": {differ}" if differ else ""))


if __name__ == "__main__":
    import pathlib
    import tempfile

    failed = 0
    for fn in (test_1_ratio, test_2_validity, test_3_lower_bound, test_4_canonical_F_structure,
               test_5_audit, test_6_fixtures, test_7_matching):
        try:
            fn()
        except AssertionError:
            failed += 1
    with tempfile.TemporaryDirectory() as d:
        try:
            test_8_determinism(pathlib.Path(d))
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
