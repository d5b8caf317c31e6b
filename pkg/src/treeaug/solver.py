"""Tree-Cover: the 1.5-approximation for tree augmentation.

The solve runs in three phases over one :class:`ContractionState`:

1. shadow-complete the links, compute W on the original tree and a maximum
   matching M on leaf-to-leaf links outside W;
2. contract every locking tree whose three leaves are unmatched;
3. until one super-node remains: contract paths of links joining two
   unmatched leaves, then contract a minimally semi-closed tree that is not
   dangerous, falling back to :func:`~treeaug.semiclosed.find_tree`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .contraction import ContractionState, TraceRecord, init_state
from .errors import InfeasibleError, InvariantError, check
from .structures import StructureReport, analyze, leaf_matching
from .semiclosed import classify_dangerous, exact_cover, find_tree, minimal_semi_closed

log = logging.getLogger(__name__)


@dataclass
class SolveOptions:
    root: Optional[int] = None
    audit: bool = False
    trace: bool = False
    seed: int = 0


@dataclass
class SolveStats:
    size: int = 0
    iterations: int = 0
    trace: list = field(default_factory=list)
    audit: list = field(default_factory=list)
    matching: tuple = ()
    root: Optional[int] = None


@dataclass(frozen=True)
class Solution:
    links: tuple
    stats: SolveStats = field(compare=False, default_factory=SolveStats)

    @property
    def size(self) -> int:
        return len(self.links)


class AuditError(InvariantError):
    """A contraction failed the credit check; ``solution`` holds the finished solve."""

    def __init__(self, message, solution):
        super().__init__(message)
        self.solution = solution


def choose_root(inst) -> Optional[int]:
    """Lowest-id node of degree at least two, or None for trees with < 3 nodes."""
    degree = [0] * inst.node_count
    for u, v in inst.tree_edges:
        degree[u] += 1
        degree[v] += 1
    for x, d in enumerate(degree):
        if d >= 2:
            return x
    return None


def tree_cover(inst, opts: Optional[SolveOptions] = None) -> Solution:
    opts = opts or SolveOptions()
    if inst.node_count == 1:
        return Solution((), SolveStats())
    root = opts.root if opts.root is not None else choose_root(inst)
    if root is None:
        # two nodes: any link covers the single edge
        if not inst.links:
            raise InfeasibleError("tree edge 1-2 lies on no link path")
        return Solution((0,), SolveStats(size=1))

    state = init_state(inst, root)
    report = analyze(state.orig_tree, state.base)
    M = leaf_matching(state.orig_tree, state.base, report.W)
    state.install_matching(M.pairs)
    log.debug("root %d, |W|=%d, |M|=%d", root, len(report.W), len(M))

    auditor = None
    if opts.audit:
        from .oracle import Auditor, canonical_F
        F = canonical_F(inst, root=root, matching=M)
        auditor = Auditor(state, F)
        state.observer = auditor

    iterations = 0
    exhaust_greedy_locking(state, report)
    while len(state) > 1:
        iterations += 1
        exhaust_greedy_links(state)
        if len(state) == 1:
            break
        before = len(state)
        mate = state.mate()
        family = minimal_semi_closed(state, mate)
        check(bool(family), "no semi-closed tree exists")
        verdicts = [(view, classify_dangerous(state, mate, view)) for view in family]
        safe = [view for view, verdict in verdicts if not verdict.dangerous]
        if safe:
            view = safe[0]
            state.contract(view.root, exact_cover(state, mate, view), kind="semi-closed")
        else:
            view, cover = find_tree(state, mate, verdicts)
            state.contract(view.root, cover, kind="find-tree")
        check(len(state) < before, "main loop made no progress")

    links = tuple(state.accepted_sources())
    stats = SolveStats(size=len(links), iterations=iterations, trace=list(state.trace),
                       matching=tuple(sorted(M.pairs)), root=root)
    solution = Solution(links, stats)
    if auditor is not None:
        stats.audit = auditor.finish(state)
        if not all(rec.ok for rec in stats.audit):
            raise AuditError("a contraction failed the credit audit", solution)
    return solution


def exhaust_greedy_locking(state: ContractionState, report: StructureReport) -> int:
    """Contract each locking tree whose three leaves are all unmatched.

    Locking trees with different leaf sets are disjoint, so one pass over
    the report taken on the original tree suffices. When both twins are
    locked, the one with the larger locking tree plays the locked leaf.
    """
    mate = state.mate()
    groups: dict = {}
    for info in report.locked.values():
        key = frozenset((info.leaf, info.twin, info.third))
        groups.setdefault(key, []).append(info)
    t = state.orig_tree
    chosen = []
    for key, infos in groups.items():
        if any(x in mate for x in key):
            continue
        infos.sort(key=lambda i: (t.depth[i.root], i.leaf))
        chosen.append(infos[0])
    chosen.sort(key=lambda i: t.tin[i.root])
    count = 0
    for info in chosen:
        v = state.find(info.root)
        check(v == info.root, "locking trees must be disjoint")
        lock = state.links.get(state.find(info.twin), state.find(info.third))
        up = state.up_link(state.find(info.leaf))
        state.contract(v, [lock, up], kind="locking")
        count += 1
    return count


def exhaust_greedy_links(state: ContractionState) -> int:
    """Contract link paths between two unmatched leaves, lowest pair first."""
    count = 0
    while len(state) > 1:
        mate = state.mate()
        t = state.tree
        free = {x for x in t.leaves() if x not in mate}
        best = None
        for link in state.links:
            if link.u in free and link.v in free:
                if best is None or link.pair < best.pair:
                    best = link
        if best is None:
            break
        state.contract_path(best, kind="link")
        count += 1
    return count


def trace_lines(trace: list[TraceRecord]) -> list[str]:
    return [rec.line() for rec in trace]
