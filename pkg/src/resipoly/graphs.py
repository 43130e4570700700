"""Multigraphs carrying a level structure (an ordered partition of vertices).

Loops and parallel edges are allowed.  Every edge {u, v} contributes two
mutually reverse arrows u->v and v->u (two half-edges when u == v); the
global arrow order (edge index, orientation) is the canonical coordinate
order for the arrow space used by the linear-algebra layers.  Arrow index
``2 * edge + direction``, so reversal is ``index ^ 1``.

Level values in input documents may be arbitrary integers; they are
compressed to consecutive 1..r preserving order, since only the order
matters.  With the drawing convention that level 1 sits on top, an arrow is
"upward" when its tail level is strictly larger than its head level.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple

__all__ = [
    "Arrow",
    "ArrowClassification",
    "DEFAULT_ENUMERATION_BOUND",
    "GraphDocumentError",
    "LevelStructure",
    "Multigraph",
    "classify_arrows",
    "coarsenings",
    "components_below",
    "is_coarsening",
    "level_components",
    "load_level_graph",
    "ordered_partitions",
    "summits",
]

DEFAULT_ENUMERATION_BOUND = 8

UPWARD = "upward"
DOWNWARD = "downward"
HORIZONTAL = "horizontal"


class GraphDocumentError(ValueError):
    """Malformed graph document or incompatible graph/level inputs."""


class Arrow(NamedTuple):
    edge: int
    direction: int
    tail: str
    head: str

    @property
    def label(self):
        return f"e{self.edge}:{self.tail}>{self.head}"


class Multigraph:
    """Finite multigraph over named vertices.

    ``component_count`` and ``genus`` (first Betti number,
    |E| - |V| + components) are computed on construction.
    """

    __slots__ = (
        "vertices",
        "edges",
        "index",
        "arrows",
        "arrows_with_tail",
        "adjacency",
        "component_count",
        "genus",
    )

    def __init__(self, vertices, edges):
        vertices = tuple(vertices)
        if not vertices:
            raise GraphDocumentError("empty vertex list")
        index = {}
        for v in vertices:
            if not isinstance(v, str):
                raise GraphDocumentError(f"vertex name {v!r} is not a string")
            if v in index:
                raise GraphDocumentError(f"duplicate vertex name {v!r}")
            index[v] = len(index)
        edge_list = []
        for e in edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise GraphDocumentError(f"edge {e!r} is not a vertex pair")
            u, v = pair
            if u not in index:
                raise GraphDocumentError(f"unknown vertex {u!r} in edge {e!r}")
            if v not in index:
                raise GraphDocumentError(f"unknown vertex {v!r} in edge {e!r}")
            edge_list.append((u, v))
        self.vertices = vertices
        self.edges = tuple(edge_list)
        self.index = index

        arrows = []
        arrows_with_tail = {v: [] for v in vertices}
        adjacency = {i: [] for i in range(len(vertices))}
        for i, (u, v) in enumerate(self.edges):
            arrows.append(Arrow(i, 0, u, v))
            arrows.append(Arrow(i, 1, v, u))
            arrows_with_tail[u].append(2 * i)
            arrows_with_tail[v].append(2 * i + 1)
            adjacency[index[u]].append((i, index[v]))
            if u != v:
                adjacency[index[v]].append((i, index[u]))
        self.arrows = tuple(arrows)
        self.arrows_with_tail = {v: tuple(a) for v, a in arrows_with_tail.items()}
        self.adjacency = {i: tuple(n) for i, n in adjacency.items()}

        parent = list(range(len(vertices)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            ra, rb = find(index[u]), find(index[v])
            if ra != rb:
                parent[rb] = ra
        self.component_count = len({find(i) for i in range(len(vertices))})
        self.genus = len(self.edges) - len(vertices) + self.component_count

    @property
    def num_arrows(self):
        return 2 * len(self.edges)

    def reverse(self, arrow_index):
        return arrow_index ^ 1

    def find_arrows(self, tail, head):
        """Indices of all arrows tail->head (several for parallel edges)."""
        return tuple(
            i
            for i, a in enumerate(self.arrows)
            if a.tail == tail and a.head == head
        )

    def induced_components(self, subset):
        """Connected components of the induced subgraph, as vertex tuples.

        Components are sorted by their first vertex in input order; vertices
        within a component likewise.
        """
        chosen = {self.index[v] for v in subset}
        seen = set()
        components = []
        for start in sorted(chosen):
            if start in seen:
                continue
            stack = [start]
            seen.add(start)
            comp = []
            while stack:
                i = stack.pop()
                comp.append(i)
                for _, j in self.adjacency[i]:
                    if j in chosen and j not in seen:
                        seen.add(j)
                        stack.append(j)
            components.append(tuple(self.vertices[i] for i in sorted(comp)))
        return components

    def induced_edges(self, subset):
        """Edge indices with both endpoints (loops included) inside subset."""
        chosen = set(subset)
        return tuple(
            i
            for i, (u, v) in enumerate(self.edges)
            if u in chosen and v in chosen
        )

    def genus_of_induced(self, subset):
        chosen = tuple(dict.fromkeys(subset))
        if not chosen:
            return 0
        edges = len(self.induced_edges(chosen))
        comps = len(self.induced_components(chosen))
        return edges - len(chosen) + comps


class LevelStructure:
    """Ordered partition of a fixed vertex tuple, stored as levels 1..r.

    ``parts[n-1]`` lists the vertices of level n in graph input order.  The
    trivial structure has r = 1 with a single part covering everything.
    """

    __slots__ = ("vertices", "levels", "r", "parts", "_level_of")

    def __init__(self, vertices, levels):
        vertices = tuple(vertices)
        levels = tuple(levels)
        if len(vertices) != len(levels):
            raise GraphDocumentError("level list does not match the vertex list")
        if not vertices:
            raise GraphDocumentError("empty vertex list")
        r = max(levels)
        present = set(levels)
        if min(levels) != 1 or present != set(range(1, r + 1)):
            raise GraphDocumentError("levels must cover 1..r with no gaps")
        self.vertices = vertices
        self.levels = levels
        self.r = r
        parts = [[] for _ in range(r)]
        for v, n in zip(vertices, levels):
            parts[n - 1].append(v)
        self.parts = tuple(tuple(p) for p in parts)
        self._level_of = dict(zip(vertices, levels))

    @classmethod
    def from_map(cls, vertices, mapping):
        """Build from an arbitrary integer level map, compressing to 1..r."""
        vertex_set = set(vertices)
        for key in mapping:
            if key not in vertex_set:
                raise GraphDocumentError(f"unknown vertex {key!r} in level map")
        raw = []
        for v in vertices:
            if v not in mapping:
                raise GraphDocumentError(f"missing level for vertex {v!r}")
            value = mapping[v]
            if isinstance(value, bool) or not isinstance(value, int):
                raise GraphDocumentError(
                    f"non-integer level {value!r} for vertex {v!r}"
                )
            raw.append(value)
        ordered = sorted(set(raw))
        compress = {value: n + 1 for n, value in enumerate(ordered)}
        return cls(vertices, [compress[value] for value in raw])

    @classmethod
    def trivial(cls, vertices):
        return cls(vertices, [1] * len(tuple(vertices)))

    @classmethod
    def from_parts(cls, vertices, parts):
        mapping = {}
        for n, part in enumerate(parts, start=1):
            members = list(part)
            if not members:
                raise GraphDocumentError(f"part {n} is empty")
            for v in members:
                if v in mapping:
                    raise GraphDocumentError(f"vertex {v!r} appears in two parts")
                mapping[v] = n
        return cls.from_map(tuple(vertices), mapping)

    def level_of(self, v):
        return self._level_of[v]

    def part(self, n):
        if not 1 <= n <= self.r:
            raise GraphDocumentError(f"level {n} out of range 1..{self.r}")
        return self.parts[n - 1]

    def prefix(self, n):
        """Vertices of level <= n, in graph order."""
        return tuple(v for v, lv in zip(self.vertices, self.levels) if lv <= n)

    def key(self):
        return self.levels

    @property
    def is_trivial(self):
        return self.r == 1

    def __eq__(self, other):
        if not isinstance(other, LevelStructure):
            return NotImplemented
        return self.vertices == other.vertices and self.levels == other.levels

    def __hash__(self):
        return hash((self.vertices, self.levels))

    def __repr__(self):
        body = " | ".join(",".join(p) for p in self.parts)
        return f"LevelStructure({body})"


class ArrowClassification:
    """Per-arrow upward/downward/horizontal tags plus the derived index sets."""

    __slots__ = (
        "tags",
        "upward",
        "downward",
        "horizontal",
        "vertical_edges",
        "horizontal_edges",
    )

    def __init__(self, tags, vertical_edges, horizontal_edges):
        self.tags = tuple(tags)
        self.upward = tuple(i for i, t in enumerate(self.tags) if t == UPWARD)
        self.downward = tuple(i for i, t in enumerate(self.tags) if t == DOWNWARD)
        self.horizontal = tuple(
            i for i, t in enumerate(self.tags) if t == HORIZONTAL
        )
        self.vertical_edges = tuple(vertical_edges)
        self.horizontal_edges = tuple(horizontal_edges)


def classify_arrows(graph, levels):
    """Tag every arrow; loops are always horizontal."""
    tags = []
    vertical = []
    horizontal = []
    for i, (u, v) in enumerate(graph.edges):
        lu, lv = levels.level_of(u), levels.level_of(v)
        if lu == lv:
            horizontal.append(i)
            tags.extend((HORIZONTAL, HORIZONTAL))
        else:
            vertical.append(i)
            # arrow 2i runs u->v, arrow 2i+1 runs v->u
            tags.append(UPWARD if lu > lv else DOWNWARD)
            tags.append(UPWARD if lv > lu else DOWNWARD)
    return ArrowClassification(tags, vertical, horizontal)


def level_components(graph, levels, n):
    """Connected components of the subgraph induced on the level-n vertices."""
    return graph.induced_components(levels.part(n))


def summits(graph, levels, classification=None):
    """Split the summit level components into irreducible and reducible ones.

    A summit is a level component none of whose vertices is the tail of an
    upward arrow; it is irreducible when it is a single vertex carrying no
    edge (a vertex with a loop is reducible).
    """
    cls = classification or classify_arrows(graph, levels)
    irreducible = []
    reducible = []
    for n in range(1, levels.r + 1):
        for comp in level_components(graph, levels, n):
            has_upward = any(
                cls.tags[a] == UPWARD
                for v in comp
                for a in graph.arrows_with_tail[v]
            )
            if has_upward:
                continue
            if len(comp) == 1 and not graph.induced_edges(comp):
                irreducible.append(comp)
            else:
                reducible.append(comp)
    return irreducible, reducible


def components_below(graph, levels, n):
    """Components of the subgraph strictly below level n, and the special ones.

    A component is special when it receives an upward arrow from level n.
    For n = 1 both lists are empty.
    """
    if not 1 <= n <= levels.r:
        raise GraphDocumentError(f"level {n} out of range 1..{levels.r}")
    below = tuple(
        v for v, lv in zip(levels.vertices, levels.levels) if lv < n
    )
    if not below:
        return [], []
    comps = graph.induced_components(below)
    membership = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            membership[v] = idx
    special_idx = set()
    part = levels.part(n)
    for v in part:
        for a in graph.arrows_with_tail[v]:
            head = graph.arrows[a].head
            if head in membership:
                special_idx.add(membership[head])
    special = [comps[i] for i in sorted(special_idx)]
    return comps, special


def is_coarsening(fine, coarse):
    """True when every part of `fine` sits inside a part of `coarse` and the
    induced map on level indices is nondecreasing."""
    if set(fine.vertices) != set(coarse.vertices):
        raise GraphDocumentError("vertex sets differ")
    images = []
    for part in fine.parts:
        targets = {coarse.level_of(v) for v in part}
        if len(targets) != 1:
            return False
        images.append(targets.pop())
    return all(a <= b for a, b in zip(images, images[1:]))


def _raw_ordered_partitions(items):
    if not items:
        yield []
        return
    rest, last = items[:-1], items[-1]
    for smaller in _raw_ordered_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [smaller[i] + [last]] + smaller[i + 1 :]
        for i in range(len(smaller) + 1):
            yield smaller[:i] + [[last]] + smaller[i:]


def ordered_partitions(vertices, max_vertices=DEFAULT_ENUMERATION_BOUND):
    """Every ordered partition of the vertex tuple, exactly once.

    The count is the Fubini number of len(vertices).
    """
    vertices = tuple(vertices)
    if len(vertices) > max_vertices:
        raise GraphDocumentError(
            f"{len(vertices)} vertices exceed the enumeration bound {max_vertices}"
        )
    for parts in _raw_ordered_partitions(list(vertices)):
        yield LevelStructure.from_parts(vertices, parts)


def coarsenings(levels):
    """All coarsenings of an ordered partition (merges of consecutive parts),
    the structure itself and the trivial one included."""
    r = levels.r
    for gaps in itertools.product((False, True), repeat=r - 1):
        merged = [list(levels.parts[0])]
        for part, cut in zip(levels.parts[1:], gaps):
            if cut:
                merged.append(list(part))
            else:
                merged[-1].extend(part)
        yield LevelStructure.from_parts(levels.vertices, merged)


def load_level_graph(document):
    """Validate a graph document and return (Multigraph, LevelStructure).

    Expected shape: ``{"vertices": [...], "edges": [[u, v], ...],
    "levels": {vertex: integer, ...}}``.  An omitted "levels" entry means
    the trivial one-level structure.  Unknown keys are ignored.
    """
    if not isinstance(document, dict):
        raise GraphDocumentError("graph document must be a JSON object")
    if "vertices" not in document:
        raise GraphDocumentError('graph document lacks a "vertices" list')
    graph = Multigraph(document["vertices"], document.get("edges", []))
    raw_levels = document.get("levels")
    if raw_levels is None:
        structure = LevelStructure.trivial(graph.vertices)
    else:
        if not isinstance(raw_levels, dict):
            raise GraphDocumentError('"levels" must map vertices to integers')
        structure = LevelStructure.from_map(graph.vertices, raw_levels)
    return graph, structure
