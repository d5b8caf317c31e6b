"""Semi-closed subtrees of T/I, their exact covers, dangerous trees, and the
search for a good tree when every minimally semi-closed tree is dangerous.

``mate`` arguments are super-node mate maps as returned by
:meth:`ContractionState.mate`; passing a different map is how the switched
matching is evaluated without touching M itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .contraction import ContractionState
from .errors import check
from .treeops import Link, make_link


@dataclass(frozen=True)
class SubtreeView:
    root: int
    nodes: frozenset
    leaves: tuple
    matched: tuple      # M': matching pairs inside
    unmatched: tuple    # U': unmatched leaves
    compound: tuple     # C': non-leaf compound nodes
    stems: tuple        # S': stems of the current tree inside


@dataclass(frozen=True)
class DangerVerdict:
    dangerous: bool
    kind: str = "not"
    ordering: Optional[tuple] = None
    stem_twin: Optional[tuple] = None


NOT_DANGEROUS = DangerVerdict(False)


def make_view(state: ContractionState, mate: dict, v) -> SubtreeView:
    t = state.tree
    nodes = t.subtree(v)
    inside = frozenset(nodes)
    leaves = tuple(x for x in nodes if t.is_leaf(x))
    matched = tuple(sorted({(x, mate[x]) if x < mate[x] else (mate[x], x)
                            for x in leaves if x in mate and mate[x] in inside}))
    unmatched = tuple(x for x in leaves if x not in mate)
    compound = tuple(x for x in nodes if x in state.compound and not t.is_leaf(x))
    stems = tuple(s for s in sorted(state.stems()) if s in inside)
    return SubtreeView(v, inside, leaves, matched, unmatched, compound, stems)


def is_semi_closed(state: ContractionState, mate: dict, v) -> bool:
    """M-compatible and holding the up-node of each of its unmatched leaves."""
    t = state.tree
    for x in t.subtree_leaves(v):
        other = mate[x] if x in mate else state.up_node(x)
        if other is None or not t.is_ancestor(v, other):
            return False
    return True


def minimal_semi_closed(state: ContractionState, mate: dict) -> list:
    """Semi-closed subtrees with no semi-closed proper rooted subtree, by preorder."""
    t = state.tree
    below = {}
    found = []
    for v in reversed(t.order):
        sc_below = any(below[c] for c in t.children[v])
        sc = is_semi_closed(state, mate, v)
        if sc and not sc_below:
            found.append(v)
        below[v] = sc or sc_below
    return [make_view(state, mate, v) for v in sorted(found, key=t.tin.get)]


def exact_cover(state: ContractionState, mate: dict, view: SubtreeView) -> list:
    """``M' + up(U')``, checked to cover exactly the edges of the subtree."""
    cover = [state.links.get(a, b) for a, b in view.matched]
    cover += [state.up_link(a) for a in view.unmatched]
    check(all(link is not None for link in cover), "exact cover refers to a missing link")
    got = 0
    for link in cover:
        got |= state.tree.path_mask(link.u, link.v)
    check(got == state.tree.subtree_mask(view.root),
          f"M' + up(U') is not an exact cover of the subtree at {view.root}")
    return cover


def creates_new_leaf(tree, x, y) -> bool:
    """Whether merging the path between leaves ``x`` and ``y`` yields a leaf.

    The merged node is a leaf exactly when the path is the whole subtree of
    its top node and that node is not the root.
    """
    top = tree.lca(x, y)
    return top != tree.root and tree.tout[top] - tree.tin[top] == len(tree.path_nodes(x, y))


def classify_dangerous(state: ContractionState, mate: dict, view: SubtreeView) -> DangerVerdict:
    if view.compound or len(view.matched) != 1 or not is_semi_closed(state, mate, view.root):
        return NOT_DANGEROUS
    if len(view.leaves) == 3 and not view.stems:
        return _three_leaf(state, mate, view)
    if len(view.leaves) == 4 and len(view.stems) == 1:
        x, y = state.stems()[view.stems[0]]
        if (x in mate) == (y in mate):
            return NOT_DANGEROUS
        scratch = state.copy()
        scratch.contract_path(scratch.links.get(x, y), kind="link")
        smate = scratch.mate()
        sview = make_view(scratch, smate, view.root)
        if (sview.compound or len(sview.matched) != 1 or len(sview.leaves) != 3
                or sview.stems or not is_semi_closed(scratch, smate, view.root)):
            return NOT_DANGEROUS
        inner = _three_leaf(scratch, smate, sview)
        if inner.dangerous:
            return DangerVerdict(True, "4-leaf", inner.ordering, (x, y))
    return NOT_DANGEROUS


def _three_leaf(state, mate, view) -> DangerVerdict:
    (a,) = view.unmatched
    ((p, q),) = view.matched
    t = state.tree
    options = []
    for b, b2 in ((p, q), (q, p)):
        if (a, b2) not in state.links or creates_new_leaf(t, a, b2):
            continue
        up_b = state.up_node(b)
        if up_b is not None and up_b not in view.nodes:
            options.append((b, b2))
    if not options:
        return NOT_DANGEROUS
    if len(options) == 2:
        up_p, up_q = state.up_node(p), state.up_node(q)
        check(t.is_ancestor(up_p, up_q) or t.is_ancestor(up_q, up_p),
              "up-nodes of both open matched leaves must be comparable")
        options.sort(key=lambda o: (t.depth[state.up_node(o[0])], o[0]))
    b, b2 = options[0]
    return DangerVerdict(True, "3-leaf", (a, b, b2))


def find_tree(state: ContractionState, mate: dict, dangerous: list) -> tuple:
    """Semi-closed, non-dangerous tree and exact cover when all of D is dangerous.

    ``dangerous`` is a list of ``(view, verdict)`` for the minimally
    semi-closed trees. Returns ``(view, cover)`` in ``state`` terms.
    """
    check(bool(dangerous), "find_tree needs at least one dangerous tree")
    scratch = state.copy()
    w_tilde = []
    for view, verdict in dangerous:
        check(verdict.dangerous, "find_tree called with a non-dangerous tree")
        if verdict.kind == "4-leaf":
            x, y = verdict.stem_twin
            w_tilde.append(state.links.get(x, y))
            scratch.contract_path(scratch.links.get(scratch.find(x), scratch.find(y)), kind="link")

    smate = scratch.mate()
    switched = {(u, v) if u <= v else (v, u) for u, v in
                ((scratch.find(u), scratch.find(v)) for u, v in state.pairs)}
    for view, _ in dangerous:
        dview = make_view(scratch, smate, view.root)
        verdict = classify_dangerous(scratch, smate, dview)
        check(verdict.kind == "3-leaf", f"tree at {view.root} is not 3-leaf dangerous after twin contraction")
        a, b, b2 = verdict.ordering
        switched.discard((b, b2) if b <= b2 else (b2, b))
        switched.add((a, b2) if a <= b2 else (b2, a))
    tmate = scratch.mate(switched)

    family = minimal_semi_closed(scratch, tmate)
    check(bool(family), "no semi-closed tree under the switched matching")
    tview = family[0]
    cover_tilde = exact_cover(scratch, tmate, tview)
    w_inside = [w for w in w_tilde if scratch.find(w.u) in tview.nodes]

    root = tview.root
    check(root in state.tree, "switched tree root was merged by a twin contraction")
    cover = [_lift(state, link) for link in cover_tilde] + w_inside
    result = make_view(state, mate, root)

    check(is_semi_closed(state, mate, root), "find_tree result is not semi-closed")
    check(not classify_dangerous(state, mate, result).dangerous, "find_tree result is dangerous")
    check(len(cover) == len(result.matched) + len(result.unmatched), "find_tree cover has the wrong size")
    check(any(view.root != root and state.tree.is_ancestor(root, view.root) for view, _ in dangerous),
          "find_tree result does not strictly contain a dangerous tree")
    return result, cover


def _lift(state: ContractionState, link: Link) -> Link:
    x, y = link.orig
    return make_link(state.find(x), state.find(y), link.source, link.chain, link.orig)

