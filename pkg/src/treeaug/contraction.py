"""The evolving contracted tree T/I.

Super-nodes are named by their smallest original member, so a super-node id
is always a valid original node id and ``find(x) == x`` for any id in the
current tree. Image links are rebuilt from the shadow-closed original link
set after every contraction; each image link remembers an original pair
(``Link.orig``) mapping onto it and the input link it descends from.

Coupons are kept in doubled units: 2 per unmatched leaf and per compound
node, 3 per matching pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .errors import InfeasibleError, check
from .treeops import Link, LinkSet, RootedTree, make_link, shadow_complete, up_link


@dataclass(frozen=True)
class TraceRecord:
    kind: str
    leaves: int
    cover: int
    coupons_x2: int
    region: tuple

    def line(self) -> str:
        return f"k {self.leaves} {self.cover} {self.coupons_x2}"


KINDS = ("locking", "link", "semi-closed", "find-tree")


class ContractionState:
    def __init__(self, inst, root: int):
        self.inst = inst
        self.root = root
        self.orig_tree = inst.rooted(root)
        self.base = shadow_complete(self.orig_tree, LinkSet.from_pairs(inst.links))
        self.rep = list(range(inst.node_count))
        self.members = {x: [x] for x in range(inst.node_count)}
        self.compound = {root}
        self.pairs: set = set()
        self.accepted: list[Link] = []
        self.trace: list[TraceRecord] = []
        self.ledger: dict = {}
        self.scratch = False
        self.observer: Optional[Callable] = None
        self._orig_stems: Optional[dict] = None
        self._rebuild()
        self.ledger = self.coupons_from_scratch()

    # -- views ---------------------------------------------------------

    def find(self, x: int) -> int:
        return self.rep[x]

    def __len__(self):
        return len(self.tree)

    def mate(self, pairs: Optional[Iterable] = None) -> dict:
        """Super-node mate map for ``pairs`` (default: the matching M)."""
        out = {}
        for u, v in (self.pairs if pairs is None else pairs):
            fu, fv = self.rep[u], self.rep[v]
            out[fu] = fv
            out[fv] = fu
        return out

    def up_link(self, x) -> Optional[Link]:
        if x not in self._up:
            self._up[x] = up_link(self.tree, self.links, x)
        return self._up[x]

    def up_node(self, x):
        link = self.up_link(x)
        return None if link is None else link.other(x)

    def stems(self) -> dict:
        """Stems of the original tree that are still uncontracted nodes, with their twins.

        Stems belong to the original tree, like W: a contraction can make a
        compound leaf and an original leaf look like twins, but their LCA
        stays a member of X and keeps its tickets.
        """
        if self._stems is None:
            if self._orig_stems is None:
                from .structures import find_twins
                self._orig_stems = find_twins(self.orig_tree, self.base)[1]
            self._stems = {s: pair for s, pair in self._orig_stems.items()
                           if self.members.get(s) == [s]}
        return self._stems

    def region_coupons_x2(self, region) -> int:
        region = set(region)
        total = sum(self.ledger.get(("n", x), 0) for x in region)
        for u, v in self.pairs:
            if self.rep[u] in region and self.rep[v] in region:
                total += self.ledger.get(("m", (u, v)), 0)
        return total

    def coupons_from_scratch(self) -> dict:
        mate = self.mate()
        led = {}
        for x in self.tree.order:
            if x in self.compound or (self.tree.is_leaf(x) and x not in mate):
                led[("n", x)] = 2
        for p in self.pairs:
            led[("m", p)] = 3
        return led

    def install_matching(self, pairs: Iterable) -> None:
        self.pairs = {(u, v) if u <= v else (v, u) for u, v in pairs}
        for u, v in self.pairs:
            check(self.tree.is_leaf(u) and self.tree.is_leaf(v), f"matching pair ({u}, {v}) is not on leaves")
        self.ledger = self.coupons_from_scratch()

    def accepted_sources(self) -> list[int]:
        return sorted({deshadow(self, link) for link in self.accepted})

    # -- contraction ---------------------------------------------------

    def contract(self, subtree_root, cover: list[Link], kind: str = "semi-closed") -> int:
        """Merge the rooted subtree at ``subtree_root`` using ``cover``."""
        return self._merge(self.tree.subtree(subtree_root), cover, kind)

    def contract_path(self, link: Link, kind: str = "link") -> int:
        """Merge the tree path of ``link`` using that single link."""
        return self._merge(self.tree.path_nodes(link.u, link.v), [link], kind)

    def _merge(self, region, cover, kind) -> int:
        check(kind in KINDS, f"unknown contraction kind {kind!r}")
        region = list(region)
        rset = set(region)
        check(len(rset) >= 2, "contraction must merge at least two super-nodes")
        tree = self.tree
        need = 0
        for x in region:
            if x != tree.root and tree.parent[x] in rset:
                need |= tree.edge_bit[x]
        got = 0
        for link in cover:
            check(link.u in rset and link.v in rset, f"cover link {link.pair} leaves the region")
            got |= tree.path_mask(link.u, link.v)
        check(got == need, f"{kind} cover is not an exact cover of its region")

        if self.observer is not None and not self.scratch:
            self.observer(self, region, cover, kind)

        leaves = sum(1 for x in region if tree.is_leaf(x))
        coupons = self.region_coupons_x2(rset)
        inside = set()
        for u, v in self.pairs:
            iu, iv = self.rep[u] in rset, self.rep[v] in rset
            if iu and iv:
                inside.add((u, v))
            elif (iu or iv) and not self.scratch:
                check(False, f"matching pair ({u}, {v}) crosses the contracted region")
        self.pairs -= inside

        new_id = min(rset)
        merged = []
        for x in region:
            merged.extend(self.members.pop(x))
        for y in merged:
            self.rep[y] = new_id
        self.members[new_id] = sorted(merged)
        was_compound = bool(self.compound & rset)
        self.compound -= rset
        if not self.scratch or was_compound:
            self.compound.add(new_id)

        if not self.scratch:
            for x in rset:
                self.ledger.pop(("n", x), None)
            for p in inside:
                self.ledger.pop(("m", p), None)
            self.ledger[("n", new_id)] = 2
            self.accepted.extend(cover)
            self.trace.append(TraceRecord(kind, leaves, len(cover), coupons, tuple(sorted(rset))))

        before = len(self.tree)
        self._rebuild()
        check(len(self.tree) < before, "contraction did not shrink the tree")
        if not self.scratch:
            check(self.ledger == self.coupons_from_scratch(), "coupon ledger drifted from the credit invariant")
        return new_id

    def _rebuild(self) -> None:
        rep = self.rep
        nodes = sorted(self.members)
        edges = [(rep[u], rep[v]) for u, v in self.inst.tree_edges if rep[u] != rep[v]]
        self.tree = RootedTree.from_edges(nodes, edges, rep[self.root])
        best: dict = {}
        for link in self.base:
            cu, cv = rep[link.u], rep[link.v]
            if cu == cv:
                continue
            cand = make_link(cu, cv, link.source, link.chain, link.orig)
            key = cand.pair
            old = best.get(key)
            if old is None or (cand.chain, cand.source, cand.orig) < (old.chain, old.source, old.orig):
                best[key] = cand
        image = LinkSet(best[k] for k in sorted(best))
        closed = shadow_complete(self.tree, image)
        check(len(closed) == len(image), "image of a shadow-closed link set must stay closed")
        self.links = closed
        self._up = {}
        self._stems = None

    def copy(self) -> "ContractionState":
        """A scratch copy: contractions on it never touch I, the trace or the ledger."""
        other = object.__new__(ContractionState)
        other.__dict__.update(self.__dict__)
        other.rep = list(self.rep)
        other.members = {k: list(v) for k, v in self.members.items()}
        other.compound = set(self.compound)
        other.pairs = set(self.pairs)
        other.accepted = list(self.accepted)
        other.trace = list(self.trace)
        other.ledger = dict(self.ledger)
        other.scratch = True
        other.observer = None
        other._up = {}
        other._stems = None
        return other


def init_state(inst, root: int) -> ContractionState:
    """Identity partition with shadow-closed links and initial coupons.

    The matching starts empty; the solver installs it afterwards.
    """
    state = ContractionState(inst, root)
    covered = 0
    for link in state.base:
        covered |= state.orig_tree.path_mask(link.u, link.v)
    if covered != state.orig_tree.full_mask:
        missing = [state.orig_tree.edge_pair(c) for c in state.orig_tree.order[1:]
                   if not covered & state.orig_tree.edge_bit[c]]
        u, v = missing[0]
        raise InfeasibleError(f"tree edge {u + 1}-{v + 1} lies on no link path")
    return state


def deshadow(state: ContractionState, link: Link) -> int:
    """Index of the input link whose path contains ``link``'s preimage."""
    return link.source
