"""Exhaustive ground truth for desk-scale instances.

* :func:`exact_opt` - minimum cover by iterative deepening over cover size.
* :func:`canonical_F` - an optimal, shadows-minimal cover with the most twin
  links, plus the matching-dependent sets used by the lower bound.
* :func:`lower_bound_rhs` - the lower bound in doubled integer units.
* :class:`Auditor` - recomputes coupons and tickets before every
  contraction and checks ``2 credit >= 2 (|cover| + 1)``.

Credit arithmetic is integer throughout: everything is doubled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import InfeasibleError, LimitExceeded, check
from .structures import analyze, leaf_matching
from .treeops import LinkSet, RootedTree, shadow_complete

DEFAULT_LIMIT = 26


def _pair(u, v):
    return (u, v) if u <= v else (v, u)


def verify_cover(inst, links: Iterable) -> bool:
    """True iff every tree edge lies on the path of some given link.

    ``links`` may hold link indices into ``inst.links`` or endpoint pairs.
    """
    if inst.node_count == 1:
        return True
    t = inst.rooted(0)
    covered = 0
    for link in links:
        u, v = inst.links[link] if isinstance(link, int) else link
        covered |= t.path_mask(u, v)
    return covered == t.full_mask


def _leaf_edge_mask(t: RootedTree) -> int:
    mask = 0
    for x in t.order[1:]:
        if not t.children[x]:
            mask |= t.edge_bit[x]
    return mask


def _covers(masks: list[int], full: int, leaf_mask: int, size: int) -> Iterator[tuple]:
    """Every set of at most ``size`` links (by index) covering ``full``, each once.

    Branches on the uncovered edge with fewest usable links; later branches
    forbid the links tried by earlier siblings, so no set repeats.
    """
    by_edge: dict[int, list[int]] = {}
    bits = []
    m = full
    while m:
        low = m & -m
        bits.append(low)
        m ^= low
    for b in bits:
        by_edge[b] = [i for i, mk in enumerate(masks) if mk & b]

    chosen: list[int] = []

    def rec(covered: int, forbidden: int):
        rem = full & ~covered
        if not rem:
            yield tuple(sorted(chosen))
            return
        left = size - len(chosen)
        if left == 0:
            return
        leaf_left = bin(rem & leaf_mask).count("1")
        if (leaf_left + 1) // 2 > left:
            return
        best = None
        m = rem
        while m:
            b = m & -m
            m ^= b
            cands = [i for i in by_edge[b] if not (forbidden >> i) & 1]
            if best is None or len(cands) < len(best):
                best = cands
                if len(cands) <= 1:
                    break
        if not best:
            return
        extra = 0
        for i in best:
            chosen.append(i)
            yield from rec(covered | masks[i], forbidden | extra)
            chosen.pop()
            extra |= 1 << i

    yield from rec(0, 0)


def _min_size(masks, full, leaf_mask) -> int:
    k = 0
    while True:
        for _ in _covers(masks, full, leaf_mask, k):
            return k
        k += 1


def exact_opt(inst, limit: Optional[int] = DEFAULT_LIMIT) -> tuple[int, tuple]:
    """Minimum cover size and the lexicographically least minimum cover (link indices)."""
    if limit is not None and len(inst.links) > limit:
        raise LimitExceeded(f"{len(inst.links)} links exceed the exhaustive limit of {limit}")
    if inst.node_count == 1:
        return 0, ()
    t = inst.rooted(0)
    masks = [t.path_mask(u, v) for u, v in inst.links]
    total = 0
    for mk in masks:
        total |= mk
    if total != t.full_mask:
        raise InfeasibleError("some tree edge lies on no link path")
    leaf_mask = _leaf_edge_mask(t)
    k = _min_size(masks, t.full_mask, leaf_mask)
    best = min(_covers(masks, t.full_mask, leaf_mask, k))
    return k, best


@dataclass
class CanonicalF:
    links: tuple            # pairs of original node ids, sorted
    twin_count: int
    root: int
    M_F: frozenset = frozenset()
    N: frozenset = frozenset()
    J: frozenset = frozenset()
    locked: frozenset = frozenset()
    X: frozenset = frozenset()
    d_J: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.links)


def shadows_minimal(t: RootedTree, cover: list, full: int) -> bool:
    """No member can be swapped for a proper shadow while still covering the tree.

    Each proper shadow lies inside one of the two shadows that drop an end
    edge of the path, so only those two are tried.
    """
    masks = [t.path_mask(u, v) for u, v in cover]
    for i, (u, v) in enumerate(cover):
        path = t.path_nodes(u, v)
        if len(path) < 3:
            continue
        rest = 0
        for j, mk in enumerate(masks):
            if j != i:
                rest |= mk
        for x, y in ((path[1], path[-1]), (path[0], path[-2])):
            if rest | t.path_mask(x, y) == full:
                return False
    return True


def overlaps(t: RootedTree, f, g) -> bool:
    """Whether link ``g`` overlaps link ``f``: shared edge and an end of ``f`` on ``g``'s path."""
    if not t.path_mask(*f) & t.path_mask(*g):
        return False
    on_g = set(t.path_nodes(*g))
    return f[0] in on_g or f[1] in on_g


def overlapping_pairs(t: RootedTree, links) -> list:
    return [(f, g) for f in links for g in links if f != g and overlaps(t, f, g)]


def leaf_degrees(t: RootedTree, links) -> dict:
    deg = {x: 0 for x in t.leaves()}
    for u, v in links:
        for x in (u, v):
            if x in deg:
                deg[x] += 1
    return deg


def canonical_F(inst, root: Optional[int] = None, matching=None, limit: Optional[int] = None) -> CanonicalF:
    """Enumerate optimal covers over the shadow-closed links and pick F.

    Among optimal shadows-minimal covers, F maximises the number of twin
    links; remaining ties go to the lexicographically least tuple of
    closed-set positions (input links come first, shadows after), so input
    links are preferred. ``matching`` (default: the solver's leaf matching)
    fixes N.
    """
    from .solver import choose_root

    if root is None:
        root = choose_root(inst)
        if root is None:
            root = 0
    t = inst.rooted(root)
    closed = shadow_complete(t, LinkSet.from_pairs(inst.links))
    if limit is not None and len(closed) > limit:
        raise LimitExceeded(f"{len(closed)} closed links exceed the limit of {limit}")
    report = analyze(t, closed)
    if matching is None:
        matching = leaf_matching(t, closed, report.W)

    pairs = [link.pair for link in closed]
    masks = [t.path_mask(u, v) for u, v in pairs]
    leaf_mask = _leaf_edge_mask(t)
    opt = _min_size(masks, t.full_mask, leaf_mask) if inst.node_count > 1 else 0

    best_key = None
    best = None
    for idx in _covers(masks, t.full_mask, leaf_mask, opt):
        cover = sorted(pairs[i] for i in idx)
        if not shadows_minimal(t, cover, t.full_mask):
            continue
        twins = sum(1 for p in cover if p in report.twin_links)
        key = (-twins, idx)
        if best_key is None or key < best_key:
            best_key, best = key, cover
    check(best is not None, "no shadows-minimal optimal cover found")

    F = _derive(t, report, tuple(best), -best_key[0], root, matching)
    check(not overlapping_pairs(t, F.links), "canonical F has overlapping links")
    check(all(d == 1 for d in leaf_degrees(t, F.links).values()), "a leaf has F-degree other than 1")
    return F


def _derive(t, report, links, twin_count, root, matching) -> CanonicalF:
    leaves = set(t.leaves())
    M_F = frozenset(p for p in links if p[0] in leaves and p[1] in leaves and p not in report.W)
    on_MF = {x for p in M_F for x in p}
    N = frozenset(_pair(u, v) for u, v in matching.pairs if u not in on_MF and v not in on_MF)
    locked = frozenset(report.locked)
    J = frozenset(p for p in links if p[0] not in locked and p[1] not in locked)
    X = frozenset(x for x in t.order if x not in leaves and x not in report.stems)
    d_J = {x: sum(1 for p in J if x in p) for x in X}
    return CanonicalF(links, twin_count, root, M_F, N, J, locked, X, d_J)


def lower_bound_rhs(inst, M, U, F: CanonicalF) -> int:
    """Doubled right-hand side: ``3|M| + 2|U| + |N| + sum of d_J over X``."""
    return 3 * len(M) + 2 * len(U) + len(F.N) + sum(F.d_J.values())


@dataclass(frozen=True)
class AuditRecord:
    ok: bool
    credit_x2: int
    cost_x2: int
    kind: str = ""

    def line(self) -> str:
        return f"a {'ok' if self.ok else 'FAIL'} {self.credit_x2} {self.cost_x2}"


def region_credit_x2(state, F: CanonicalF, region) -> int:
    """Doubled credit of a node set of T/I: coupons plus tickets.

    Tickets sit on N-pairs inside the region and on original (never
    contracted) nodes of X; compound nodes, the root included, hold none.
    """
    region = set(region)
    credit = state.region_coupons_x2(region)
    for u, v in state.pairs:
        if (u, v) in F.N and state.find(u) in region and state.find(v) in region:
            credit += 1
    for x in region:
        if x not in state.compound and x in F.X:
            credit += F.d_J[x]
    return credit


def audit_contraction(state, F: CanonicalF, region, cover) -> AuditRecord:
    credit = region_credit_x2(state, F, region)
    cost = 2 * (len(cover) + 1)
    return AuditRecord(credit >= cost, credit, cost)


class Auditor:
    """Contraction observer that audits legality and the running budget.

    Besides each contraction's own check, it keeps
    ``2|I| + 2 credit(T/I) <= 2 credit(T)`` and, at the end, ``2|I| + 2 <=
    2 credit(T)`` (the last compound node keeps its coupon).
    """

    def __init__(self, state, F: CanonicalF):
        self.F = F
        self.initial_x2 = region_credit_x2(state, F, state.tree.order)
        self.records: list[AuditRecord] = []

    def __call__(self, state, region, cover, kind):
        rec = audit_contraction(state, self.F, region, cover)
        running = 2 * len(state.accepted) + region_credit_x2(state, self.F, state.tree.order)
        if running > self.initial_x2:
            rec = AuditRecord(False, rec.credit_x2, rec.cost_x2)
        self.records.append(AuditRecord(rec.ok, rec.credit_x2, rec.cost_x2, kind))

    def finish(self, state) -> list[AuditRecord]:
        final = 2 * len(state.accepted) + region_credit_x2(state, self.F, state.tree.order)
        ok = final <= self.initial_x2 and 2 * len(state.accepted) + 2 <= self.initial_x2
        self.records.append(AuditRecord(ok, self.initial_x2, final, "total"))
        return list(self.records)
