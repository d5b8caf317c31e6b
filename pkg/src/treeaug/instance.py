"""Problem data model, the line-oriented text formats, random instance
generation, and reduction of general graphs to tree instances.

Node ids are 0-based in memory and 1-based in text. The formats are::

    c any comment
    p tap <n> <k>           # then n-1 ``e u v`` lines and k ``l u v`` lines
    p graph <n> <m> <k>     # then m ``e`` lines and k ``l`` lines

and, for solutions, ``s tap <size>`` followed by ``l u v`` lines.
"""

from __future__ import annotations

import io
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO, Union

from .errors import ParseError
from .treeops import RootedTree

Pair = tuple[int, int]

MODELS = ("random", "star", "caterpillar", "binary")


def _norm(u: int, v: int) -> Pair:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Instance:
    """A tree on nodes ``0..node_count-1`` plus candidate links.

    A link parallel to a tree edge is allowed and covers exactly that edge.
    Links are stored in input order; their position is the link index used
    by solutions.
    """

    node_count: int
    tree_edges: tuple[Pair, ...]
    links: tuple[Pair, ...]
    names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        n = self.node_count
        if n < 1:
            raise ValueError("an instance needs at least one node")
        if len(self.tree_edges) != n - 1:
            raise ValueError(f"expected {n - 1} tree edges, got {len(self.tree_edges)}")
        for u, v in (*self.tree_edges, *self.links):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"node id out of range in pair ({u}, {v})")
        if not _is_connected(n, self.tree_edges):
            raise ValueError("tree edges do not form a spanning tree")
        seen = set()
        for u, v in self.links:
            if u == v:
                raise ValueError(f"self-loop link at node {u}")
            key = _norm(u, v)
            if key in seen:
                raise ValueError(f"duplicate link {key}")
            seen.add(key)

    def rooted(self, root: int) -> RootedTree:
        if not 0 <= root < self.node_count:
            raise ValueError(f"root {root} is not a node")
        return RootedTree.from_edges(range(self.node_count), self.tree_edges, root)

    def link_index(self) -> dict[Pair, int]:
        return {_norm(u, v): i for i, (u, v) in enumerate(self.links)}


@dataclass(frozen=True)
class GraphInput:
    """A connected multigraph plus candidate links, before reduction to a tree."""

    node_count: int
    edges: tuple[Pair, ...]
    links: tuple[Pair, ...]

    def __post_init__(self):
        n = self.node_count
        if n < 1:
            raise ValueError("a graph needs at least one node")
        for u, v in (*self.edges, *self.links):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"node id out of range in pair ({u}, {v})")
        if not _is_connected(n, self.edges):
            raise ValueError("graph is not connected")


def _is_connected(n: int, edges: Iterable[Pair]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    return all(seen)


# ---------------------------------------------------------------------------
# text formats


def _lines(text: Union[str, TextIO]) -> list[str]:
    if not isinstance(text, str):
        text = text.read()
    return text.split("\n")


def _ints(parts: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def parse_instance(text: Union[str, TextIO]) -> Union[Instance, GraphInput]:
    """Parse a ``p tap`` or ``p graph`` problem.

    Duplicate links (in either orientation) are dropped, keeping the first
    occurrence. Raises :class:`ParseError` with the offending line number.
    """
    header = None
    kind = None
    n = edges_expected = links_expected = 0
    edges: list[Pair] = []
    links: list[Pair] = []
    seen_links: set[Pair] = set()
    link_lines = 0
    last_line = 0
    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        last_line = lineno
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) >= 2 and parts[1] == "tap" and len(parts) == 4:
                kind = "tap"
                n, links_expected = _ints(parts[2:], lineno)
                edges_expected = n - 1
            elif len(parts) >= 2 and parts[1] == "graph" and len(parts) == 5:
                kind = "graph"
                n, edges_expected, links_expected = _ints(parts[2:], lineno)
            else:
                raise ParseError(f"malformed problem line {line!r}", lineno)
            if n < 1 or edges_expected < 0 or links_expected < 0:
                raise ParseError("problem sizes must be non-negative with at least one node", lineno)
            header = lineno
            continue
        if header is None:
            raise ParseError(f"{tag!r} line before the problem line", lineno)
        if tag not in ("e", "l") or len(parts) != 3:
            raise ParseError(f"malformed line {line!r}", lineno)
        u, v = _ints(parts[1:], lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"node id out of range 1..{n}", lineno)
        u, v = u - 1, v - 1
        if tag == "e":
            if link_lines:
                raise ParseError("edge line after link lines", lineno)
            if len(edges) == edges_expected:
                what = "tree edges" if kind == "tap" else "edges"
                raise ParseError(f"expected {edges_expected} {what}", lineno)
            if u == v:
                raise ParseError("self-loop edge", lineno)
            edges.append((u, v))
        else:
            if link_lines == links_expected:
                raise ParseError(f"expected {links_expected} links", lineno)
            if u == v:
                raise ParseError("self-loop link", lineno)
            link_lines += 1
            key = _norm(u, v)
            if key in seen_links:
                continue
            seen_links.add(key)
            links.append((u, v))
    if header is None:
        raise ParseError("missing problem line")
    if len(edges) != edges_expected:
        what = "tree edges" if kind == "tap" else "edges"
        raise ParseError(f"expected {edges_expected} {what}, got {len(edges)}", last_line)
    if link_lines != links_expected:
        raise ParseError(f"expected {links_expected} links, got {link_lines}", last_line)
    if not _is_connected(n, edges):
        what = "tree" if kind == "tap" else "graph"
        raise ParseError(f"{what} is disconnected", last_line)
    if kind == "tap":
        return Instance(n, tuple(edges), tuple(links))
    return GraphInput(n, tuple(edges), tuple(links))


def serialize_instance(inst: Union[Instance, GraphInput]) -> str:
    out = []
    if isinstance(inst, Instance):
        out.append(f"p tap {inst.node_count} {len(inst.links)}")
        edges = inst.tree_edges
    else:
        out.append(f"p graph {inst.node_count} {len(inst.edges)} {len(inst.links)}")
        edges = inst.edges
    out.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    out.extend(f"l {u + 1} {v + 1}" for u, v in inst.links)
    return "\n".join(out) + "\n"


def format_solution(inst: Instance, link_ids: Iterable[int], tag: str = "tap") -> str:
    """Render a solution as ``s <tag> <size>`` plus sorted ``l u v`` lines."""
    pairs = sorted({_norm(*inst.links[i]) for i in link_ids})
    out = [f"s {tag} {len(pairs)}"]
    out.extend(f"l {u + 1} {v + 1}" for u, v in pairs)
    return "\n".join(out) + "\n"


def parse_solution(text: Union[str, TextIO]) -> list[Pair]:
    """Parse solution text into 0-based link endpoint pairs."""
    size = None
    pairs: list[Pair] = []
    last = 0
    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        last = lineno
        parts = line.split()
        if parts[0] == "s":
            if size is not None or len(parts) != 3:
                raise ParseError(f"malformed solution line {line!r}", lineno)
            (size,) = _ints(parts[2:], lineno)
        elif parts[0] == "l" and len(parts) == 3:
            if size is None:
                raise ParseError("link line before the solution line", lineno)
            u, v = _ints(parts[1:], lineno)
            if u < 1 or v < 1:
                raise ParseError("node ids are 1-based", lineno)
            pairs.append((u - 1, v - 1))
        elif parts[0] in ("k", "a"):
            continue
        else:
            raise ParseError(f"malformed line {line!r}", lineno)
    if size is None:
        raise ParseError("missing solution line")
    if size != len(pairs):
        raise ParseError(f"expected {size} links, got {len(pairs)}", last)
    return pairs


# ---------------------------------------------------------------------------
# reduction of general graphs


def find_bridges(node_count: int, edges: Sequence[Pair]) -> list[int]:
    """Indices of the bridges of a multigraph, in increasing order."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(node_count)]
    for i, (u, v) in enumerate(edges):
        if u == v:
            continue
        adj[u].append((v, i))
        adj[v].append((u, i))
    disc = [-1] * node_count
    low = [0] * node_count
    bridges = []
    timer = 0
    for start in range(node_count):
        if disc[start] != -1:
            continue
        disc[start] = low[start] = timer
        timer += 1
        stack = [(start, -1, iter(adj[start]))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for y, eid in it:
                if eid == via:
                    continue
                if disc[y] == -1:
                    disc[y] = low[y] = timer
                    timer += 1
                    stack.append((y, eid, iter(adj[y])))
                    advanced = True
                    break
                low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[x])
                if low[x] > disc[parent]:
                    bridges.append(via)
    return sorted(bridges)


def reduce_graph(g: GraphInput) -> tuple[Instance, list[int]]:
    """Contract every 2-edge-connected component of ``g`` to one node.

    Components are numbered by their smallest original node, so a tree input
    passes through unchanged. Returns the tree instance and the map from
    original node to tree node. Links are remapped; those inside one
    component vanish and parallels keep the lowest original index.
    """
    bridges = set(find_bridges(g.node_count, g.edges))
    comp = _components(g.node_count, [e for i, e in enumerate(g.edges) if i not in bridges])
    tree_edges = tuple((comp[g.edges[i][0]], comp[g.edges[i][1]]) for i in sorted(bridges))
    links = tuple(_remap_links(g, comp)[0])
    k = max(comp) + 1 if comp else 1
    return Instance(k, tree_edges, links), comp


def reduced_link_origin(g: GraphInput, mapping: Sequence[int]) -> list[int]:
    """For each link of ``reduce_graph(g)``, the index of the graph link it came from."""
    return _remap_links(g, mapping)[1]


def _remap_links(g: GraphInput, comp: Sequence[int]) -> tuple[list[Pair], list[int]]:
    links, origin, seen = [], [], set()
    for i, (u, v) in enumerate(g.links):
        cu, cv = comp[u], comp[v]
        if cu == cv or _norm(cu, cv) in seen:
            continue
        seen.add(_norm(cu, cv))
        links.append((cu, cv))
        origin.append(i)
    return links, origin


def _components(n: int, edges: Iterable[Pair]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    label: dict[int, int] = {}
    comp = []
    for x in range(n):
        r = find(x)
        if r not in label:
            label[r] = len(label)
        comp.append(label[r])
    return comp


# ---------------------------------------------------------------------------
# generation


def generate(nodes: int, extra_links: int = 0, model: str = "random",
             ensure_feasible: bool = True, seed: int = 0) -> Instance:
    """Random instance, deterministic in its arguments.

    Tree shapes: ``random`` (each node picks a uniform earlier parent),
    ``star``, ``caterpillar`` (a spine with legs) and ``binary`` (complete
    binary tree); labels are shuffled afterwards. ``extra_links`` distinct
    random links are drawn, then, if ``ensure_feasible``, every uncovered
    edge gets a link from a random leaf below it to a random node above it.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
    rng = random.Random(seed)
    n = max(2, int(nodes))
    parent = _shape(model, n, rng)
    label = list(range(n))
    rng.shuffle(label)
    tree_edges = tuple((label[parent[i]], label[i]) for i in range(1, n))

    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    extra = max(0, min(int(extra_links), len(all_pairs)))
    chosen = rng.sample(all_pairs, extra)
    links = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in chosen]

    if ensure_feasible:
        tree = RootedTree.from_edges(range(n), tree_edges, label[0])
        covered = set()
        for u, v in links:
            covered.update(tree.path_edges(u, v))
        for child in tree.order[1:]:
            if child in covered:
                continue
            below = [x for x in tree.subtree(child) if not tree.children[x]]
            inside = set(tree.subtree(child))
            above = [x for x in tree.order if x not in inside]
            a = rng.choice(below)
            b = rng.choice(above)
            links.append((a, b))
            covered.update(tree.path_edges(a, b))
    return Instance(n, tree_edges, tuple(links))


def _shape(model: str, n: int, rng: random.Random) -> list[int]:
    """Parent array over 0..n-1 with node 0 as the generation root."""
    if model == "random":
        return [0] + [rng.randrange(i) for i in range(1, n)]
    if model == "star":
        return [0] * n
    if model == "binary":
        return [0] + [(i - 1) // 2 for i in range(1, n)]
    spine = max(2, n // 2)
    return [0] + [i - 1 if i < spine else rng.randrange(spine) for i in range(1, n)]


def instance_from_text(text: str) -> Instance:
    """Parse text that must hold a ``p tap`` problem."""
    inst = parse_instance(io.StringIO(text))
    if not isinstance(inst, Instance):
        raise ParseError("expected a 'p tap' problem")
    return inst
