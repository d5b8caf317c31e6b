"""Rooted-tree primitives: ancestry, LCA, paths, shadow completion, up-links.

A tree edge is named by its lower endpoint (the child), so the edge set of a
path is a set of child nodes. ``RootedTree.path_mask`` packs that set into an
int bitmask for the exhaustive oracles.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple, Optional


class RootedTree:
    """Parent/children/depth structure with preorder intervals.

    ``tin[v] <= tin[w] < tout[v]`` iff ``v`` is an ancestor of ``w`` (a node
    is its own ancestor). The root is its own parent. Children are kept in
    increasing id order so every traversal is deterministic.
    """

    def __init__(self, root, parent, children):
        self.root = root
        self.parent = parent
        self.children = children
        self.depth = {root: 0}
        self.tin = {}
        self.tout = {}
        self.order = []
        stack = [(root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                self.tout[x] = len(self.order)
                continue
            self.tin[x] = len(self.order)
            self.order.append(x)
            stack.append((x, True))
            for c in reversed(children[x]):
                self.depth[c] = self.depth[x] + 1
                stack.append((c, False))
        self.edge_bit = {c: 1 << i for i, c in enumerate(self.order[1:])}
        self.full_mask = (1 << (len(self.order) - 1)) - 1

    @classmethod
    def from_edges(cls, nodes: Iterable[int], edges: Iterable[tuple[int, int]], root: int) -> "RootedTree":
        nodes = list(nodes)
        adj = {x: [] for x in nodes}
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        parent = {root: root}
        children = {x: [] for x in nodes}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in parent:
                    parent[y] = x
                    children[x].append(y)
                    stack.append(y)
        if len(parent) != len(nodes):
            raise ValueError("edges do not span the node set")
        for x in nodes:
            children[x].sort()
        return cls(root, parent, children)

    def __len__(self):
        return len(self.order)

    def __contains__(self, x):
        return x in self.parent

    @property
    def nodes(self) -> list[int]:
        return self.order

    def is_leaf(self, x) -> bool:
        return x != self.root and not self.children[x]

    def leaves(self) -> list[int]:
        return [x for x in self.order if self.is_leaf(x)]

    def is_ancestor(self, u, v) -> bool:
        return self.tin[u] <= self.tin[v] < self.tout[u]

    def subtree(self, v) -> list[int]:
        return self.order[self.tin[v]:self.tout[v]]

    def subtree_leaves(self, v) -> list[int]:
        return [x for x in self.subtree(v) if self.is_leaf(x)]

    def ancestors(self, v) -> Iterator[int]:
        """``v`` and its ancestors, bottom-up."""
        while True:
            yield v
            if v == self.root:
                return
            v = self.parent[v]

    def lca(self, u, v):
        while self.depth[u] > self.depth[v]:
            u = self.parent[u]
        while self.depth[v] > self.depth[u]:
            v = self.parent[v]
        while u != v:
            u = self.parent[u]
            v = self.parent[v]
        return u

    def path_nodes(self, u, v) -> list[int]:
        """Nodes of the tree path from ``u`` to ``v``, in walking order."""
        top = self.lca(u, v)
        left = []
        while u != top:
            left.append(u)
            u = self.parent[u]
        right = []
        while v != top:
            right.append(v)
            v = self.parent[v]
        return left + [top] + right[::-1]

    def path_edges(self, u, v) -> list[int]:
        """Edges (as child nodes) of the path between ``u`` and ``v``."""
        top = self.lca(u, v)
        out = []
        for x in (u, v):
            while x != top:
                out.append(x)
                x = self.parent[x]
        return out

    def path_mask(self, u, v) -> int:
        mask = 0
        for c in self.path_edges(u, v):
            mask |= self.edge_bit[c]
        return mask

    def subtree_mask(self, v) -> int:
        mask = 0
        for c in self.subtree(v):
            if c != v:
                mask |= self.edge_bit[c]
        return mask

    def edge_pair(self, child) -> tuple[int, int]:
        p = self.parent[child]
        return (p, child) if p <= child else (child, p)


class Link(NamedTuple):
    """A link between tree nodes ``u < v``.

    ``source`` is the index of the input link this one descends from and
    ``chain`` the number of shadow steps taken to reach it (0 for an input
    link). ``orig`` holds endpoints in the original tree whose image is
    ``(u, v)``; it equals ``(u, v)`` before any contraction.
    """

    u: int
    v: int
    source: int
    chain: int
    orig: tuple[int, int]

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)

    def other(self, x) -> int:
        return self.v if x == self.u else self.u


def make_link(u, v, source, chain=0, orig=None) -> Link:
    if u > v:
        u, v = v, u
    return Link(u, v, source, chain, orig if orig is not None else (u, v))


class LinkSet:
    """Links with at most one link per unordered endpoint pair."""

    def __init__(self, links: Iterable[Link] = ()):
        self.links: list[Link] = []
        self.by_pair: dict[tuple[int, int], int] = {}
        self._incident: dict[int, list[int]] = {}
        for link in links:
            self.add(link)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "LinkSet":
        """Input links; the i-th pair gets source ``i``. Repeated pairs are dropped."""
        return cls(make_link(u, v, i) for i, (u, v) in enumerate(pairs))

    def add(self, link: Link) -> bool:
        if link.u == link.v:
            raise ValueError("self-loop link")
        if link.pair in self.by_pair:
            return False
        idx = len(self.links)
        self.links.append(link)
        self.by_pair[link.pair] = idx
        self._incident.setdefault(link.u, []).append(idx)
        self._incident.setdefault(link.v, []).append(idx)
        return True

    def get(self, u, v) -> Optional[Link]:
        idx = self.by_pair.get((u, v) if u <= v else (v, u))
        return None if idx is None else self.links[idx]

    def __contains__(self, pair) -> bool:
        u, v = pair
        return ((u, v) if u <= v else (v, u)) in self.by_pair

    def incident(self, x) -> list[Link]:
        return [self.links[i] for i in self._incident.get(x, ())]

    def __iter__(self):
        return iter(self.links)

    def __len__(self):
        return len(self.links)

    def pairs(self) -> set[tuple[int, int]]:
        return set(self.by_pair)


def build(instance, root) -> RootedTree:
    """Root an :class:`~treeaug.instance.Instance` at ``root``."""
    return RootedTree.from_edges(range(instance.node_count), instance.tree_edges, root)


def lca(t: RootedTree, u, v):
    return t.lca(u, v)


def covered_edges(t: RootedTree, link) -> frozenset[tuple[int, int]]:
    """Tree edges (as sorted node pairs) on the path of ``link``."""
    u, v = link[0], link[1]
    return frozenset(t.edge_pair(c) for c in t.path_edges(u, v))


def shadow_complete(t: RootedTree, raw: LinkSet) -> LinkSet:
    """Close ``raw`` under shadows.

    Every pair of distinct nodes on a link path becomes a link. A new shadow
    descends from the earliest link (in ``raw`` order) whose path holds it.
    """
    out = LinkSet(raw)
    for link in raw:
        path = t.path_nodes(link.u, link.v)
        for i, x in enumerate(path):
            for y in path[i + 1:]:
                if (x, y) in out:
                    continue
                out.add(make_link(x, y, link.source, link.chain + 1))
    return out


def up_link(t: RootedTree, links: LinkSet, a) -> Optional[Link]:
    """The link at ``a`` whose other end is closest to the root."""
    best = None
    best_key = None
    for link in links.incident(a):
        other = link.other(a)
        key = (t.depth[other], link.pair)
        if best_key is None or key < best_key:
            best, best_key = link, key
    return best


def up_node(t: RootedTree, links: LinkSet, a):
    link = up_link(t, links, a)
    return None if link is None else link.other(a)
