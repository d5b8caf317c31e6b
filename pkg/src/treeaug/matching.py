"""Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm)."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Optional


class Matching:
    """A set of disjoint pairs with per-node mate lookup."""

    def __init__(self, pairs: Iterable[tuple] = ()):
        self.mate: dict = {}
        norm = set()
        for u, v in pairs:
            if u == v or u in self.mate or v in self.mate:
                raise ValueError(f"pair ({u}, {v}) is not disjoint from the others")
            self.mate[u] = v
            self.mate[v] = u
            norm.add((u, v) if u <= v else (v, u))
        self.pairs = frozenset(norm)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __contains__(self, pair):
        u, v = pair
        return self.mate.get(u) == v

    def __eq__(self, other):
        return isinstance(other, Matching) and self.pairs == other.pairs

    def __repr__(self):
        return f"Matching({sorted(self.pairs)})"

    def mate_of(self, x) -> Optional[Hashable]:
        return self.mate.get(x)

    def is_matched(self, x) -> bool:
        return x in self.mate


def max_matching(nodes: Iterable, edges: Iterable[tuple]) -> Matching:
    """Return a maximum-cardinality matching of the graph ``(nodes, edges)``.

    Edges are scanned in sorted order for a greedy start, then every free
    node is searched once for an augmenting path, shrinking odd cycles
    (blossoms) as they appear. O(V^3), which is plenty for leaf graphs of
    desk-scale trees. The result depends only on the sorted input.
    """
    index = {x: i for i, x in enumerate(sorted(set(nodes)))}
    names = sorted(index, key=index.get)
    n = len(names)
    adj: list[list[int]] = [[] for _ in range(n)]
    norm = set()
    for u, v in edges:
        if u == v:
            raise ValueError("self-loop edge")
        iu, iv = index[u], index[v]
        norm.add((min(iu, iv), max(iu, iv)))
    for iu, iv in sorted(norm):
        adj[iu].append(iv)
        adj[iv].append(iu)

    match = [-1] * n
    for iu, iv in sorted(norm):
        if match[iu] == -1 and match[iv] == -1:
            match[iu], match[iv] = iv, iu

    for root in range(n):
        if match[root] == -1:
            end, parent = _augmenting_path(adj, match, root)
            while end != -1:
                pv = parent[end]
                nxt = match[pv]
                match[end], match[pv] = pv, end
                end = nxt

    return Matching((names[i], names[match[i]]) for i in range(n) if match[i] > i)


def _augmenting_path(adj, match, root):
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a, b):
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark(v, b, child, blossom):
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                b = lca(v, to)
                blossom = [False] * n
                mark(v, b, to, blossom)
                mark(to, b, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = b
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    return to, parent
                used[match[to]] = True
                queue.append(match[to])
    return -1, parent
