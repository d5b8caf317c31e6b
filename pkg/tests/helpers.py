"""Independent brute-force oracles and instance sources for the tests.

Nothing here calls into the solver; tree paths are found by BFS on the
adjacency list rather than through RootedTree.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

from treeaug.instance import MODELS, Instance, generate


def adjacency(n, edges):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def bfs_path(adj, u, v):
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [v]
    while path[-1] != u:
        path.append(prev[path[-1]])
    return path[::-1]


def path_edge_set(adj, u, v):
    p = bfs_path(adj, u, v)
    return {frozenset(e) for e in zip(p, p[1:])}


def brute_covers(inst, ids):
    adj = adjacency(inst.node_count, inst.tree_edges)
    need = {frozenset(e) for e in inst.tree_edges}
    got = set()
    for i in ids:
        got |= path_edge_set(adj, *inst.links[i])
    return need <= got


def brute_opt(inst):
    """Smallest cover size by plain subset enumeration."""
    adj = adjacency(inst.node_count, inst.tree_edges)
    need = {frozenset(e) for e in inst.tree_edges}
    paths = [path_edge_set(adj, u, v) for u, v in inst.links]
    for k in range(len(paths) + 1):
        for combo in itertools.combinations(range(len(paths)), k):
            got = set()
            for i in combo:
                got |= paths[i]
            if need <= got:
                return k
    return None


def connected(n, edges):
    adj = adjacency(n, edges)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def brute_bridges(n, edges):
    """Indices of edges whose removal disconnects the graph."""
    return [i for i in range(len(edges)) if not connected(n, edges[:i] + edges[i + 1:])]


def brute_matching_size(nodes, edges):
    edges = [tuple(e) for e in edges]

    def best(i, used):
        if i == len(edges):
            return 0
        u, v = edges[i]
        skip = best(i + 1, used)
        if u in used or v in used:
            return skip
        return max(skip, 1 + best(i + 1, used | {u, v}))

    return best(0, frozenset())


def random_graph(rng, n, p):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def leafy(seed, n, k):
    """Random feasible instance rich in leaf pairs and leaf-to-leaf links.

    Parents are drawn so that cherries (a node with two leaf children) are
    common; most links join two leaves. Uncovered edges are repaired as in
    ``generate``.
    """
    rng = random.Random(seed)
    parent = [0]
    while len(parent) < n:
        p = rng.randrange(len(parent))
        if rng.random() < 0.5 and len(parent) + 3 <= n:
            s = len(parent)
            parent += [p, s, s]
        else:
            parent.append(p)
    edges = [(parent[i], i) for i in range(1, n)]
    children = [[] for _ in range(n)]
    for i in range(1, n):
        children[parent[i]].append(i)
    leaves = [x for x in range(1, n) if not children[x]]
    adj = adjacency(n, edges)
    pairs = set()
    for _ in range(k):
        if rng.random() < 0.6 and len(leaves) >= 2:
            u, v = rng.sample(leaves, 2)
        else:
            u = rng.choice(leaves)
            v = rng.choice(bfs_path(adj, 0, u)[:-1])
        pairs.add((min(u, v), max(u, v)))

    def below(c):
        out, stack = [], [c]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(children[x])
        return out

    covered = set()
    for u, v in sorted(pairs):
        covered |= path_edge_set(adj, u, v)
    for c in range(1, n):
        if frozenset((parent[c], c)) in covered:
            continue
        inside = below(c)
        u = rng.choice([x for x in inside if not children[x]])
        v = rng.choice([x for x in range(n) if x not in set(inside)])
        pairs.add((min(u, v), max(u, v)))
        covered |= path_edge_set(adj, u, v)
    perm = list(range(n))
    rng.shuffle(perm)
    return Instance(n, tuple((perm[u], perm[v]) for u, v in edges),
                    tuple(sorted((perm[u], perm[v]) for u, v in pairs)))


def mixed_instance(index, seed, lo, hi, max_links=None):
    """Alternate ``generate`` models with the leafy source; deterministic in its arguments."""
    rng = random.Random(seed * 1_000_003 + index)
    while True:
        n = rng.randint(lo, hi)
        if index % 5 == 4:
            inst = leafy(rng.getrandbits(32), n, rng.randint(1, n + 2))
        else:
            inst = generate(n, rng.randint(0, n), MODELS[index % 5 % 4], seed=rng.getrandbits(32))
        if max_links is None or len(inst.links) <= max_links:
            return inst
