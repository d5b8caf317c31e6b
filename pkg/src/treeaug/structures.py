"""Twin links, stems, locked leaves and locking trees, and the excluded set W.

All functions expect a shadow-closed link set, so that the up-node of every
node is one of its ancestors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .matching import Matching, max_matching
from .treeops import LinkSet, RootedTree, up_node

Pair = tuple[int, int]


def _pair(u, v) -> Pair:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class LockInfo:
    leaf: int
    twin: int
    third: int
    locking_links: frozenset
    root: int


@dataclass
class StructureReport:
    twin_links: set = field(default_factory=set)
    stems: dict = field(default_factory=dict)
    locked: dict = field(default_factory=dict)
    W: set = field(default_factory=set)


def is_twin(t: RootedTree, links: LinkSet, a, b) -> bool:
    """Whether contracting the link ``ab`` leaves a new leaf behind.

    That happens when ``a`` and ``b`` are leaves, their LCA ``s`` is not the
    root, and the subtree at ``s`` is just the two paths down to them.
    """
    if a == b or not (t.is_leaf(a) and t.is_leaf(b)) or (a, b) not in links:
        return False
    s = t.lca(a, b)
    if s == t.root:
        return False
    return t.tout[s] - t.tin[s] == len(t.path_nodes(a, b))


def find_twins(t: RootedTree, links: LinkSet) -> tuple[set, dict]:
    twins = set()
    stems = {}
    for link in links:
        if is_twin(t, links, link.u, link.v):
            twins.add(link.pair)
            stems[t.lca(link.u, link.v)] = link.pair
    return twins, stems


def find_locking(t: RootedTree, links: LinkSet, twins) -> dict:
    """Map each locked leaf to its :class:`LockInfo`.

    Candidate roots are scanned upwards from the stem; the first subtree
    whose leaves are exactly the twins plus one more leaf, and which holds
    the up-node of the leaf, is the locking tree.
    """
    locked = {}
    for a, b in sorted(twins):
        s = t.lca(a, b)
        for leaf, partner in ((a, b), (b, a)):
            up = up_node(t, links, leaf)
            v = s
            while v != t.root:
                v = t.parent[v]
                if v == t.root:
                    break
                found = t.subtree_leaves(v)
                if len(found) > 3:
                    break
                if len(found) < 3:
                    continue
                (third,) = [x for x in found if x not in (a, b)]
                if (partner, third) not in links:
                    break
                if up is not None and t.is_ancestor(v, up):
                    locked[leaf] = LockInfo(leaf, partner, third,
                                            frozenset([_pair(partner, third)]), v)
                    break
    return locked


def forbidden_set(report: StructureReport) -> set:
    out = set(report.twin_links)
    for info in report.locked.values():
        out |= info.locking_links
    return out


def analyze(t: RootedTree, links: LinkSet) -> StructureReport:
    twins, stems = find_twins(t, links)
    report = StructureReport(twins, stems, find_locking(t, links, twins))
    report.W = forbidden_set(report)
    return report


def leaf_matching(t: RootedTree, links: LinkSet, W) -> Matching:
    """Maximum matching on leaves using leaf-to-leaf links outside ``W``."""
    leaves = t.leaves()
    edges = [link.pair for link in links
             if t.is_leaf(link.u) and t.is_leaf(link.v) and link.pair not in W]
    return max_matching(leaves, edges)
