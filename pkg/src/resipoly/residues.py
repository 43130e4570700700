"""Residue conditions on the arrow space of a level graph.

Four families of linear conditions cut out a flag of subspaces of Q^(2|E|):

* downward    -- coordinates along downward arrows vanish;
* local       -- the coordinates at each vertex sum to zero;
* rosenlicht  -- the two coordinates of each horizontal edge sum to zero;
* global      -- for each level n and each special component below it, the
                 upward coordinates into that component sum to zero.

Imposing the families cumulatively gives four nested kernels; the last one
is the residue space of the level graph.  The dimensions obey exact
counting identities:

    dim after the downward family  =  2|E| - |E_vertical|
    drop at the local family       =  |V| - #irreducible summits
    drop at the rosenlicht family  =  |E_horizontal| - #reducible summits
    drop at the global family      =  #summits - #graph components

so the residue space has dimension |E| - |V| + c, the genus.  These five
identities are recomputed from scratch for every input and reported; a
mismatch signals an implementation bug, never data to be corrected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    DOWNWARD,
    classify_arrows,
    components_below,
    level_components,
    summits,
)
from .linalg import (
    VectorCollection,
    _echelon_insert,
    kernel,
    rank,
    set_theoretic_checks,
)

__all__ = [
    "FAMILIES",
    "ComponentBlock",
    "ComponentReport",
    "ConstraintSet",
    "IdentityCheck",
    "LevelCounts",
    "LevelSummary",
    "ResidueFlag",
    "build_constraints",
    "build_flag",
    "check_component_relations",
    "flag_dims",
    "flag_identities",
    "level_counts",
    "per_component_report",
    "residue_space",
]

FAMILIES = ("downward", "local", "rosenlicht", "global")


@dataclass(frozen=True)
class ConstraintSet:
    """One family of labeled 0/1 constraint rows over the arrow coordinates."""

    family: str
    rows: tuple  # ((label, vector), ...)

    def vectors(self):
        return [row for _, row in self.rows]

    def labels(self):
        return [label for label, _ in self.rows]


@dataclass(frozen=True)
class LevelCounts:
    vertices: int
    edges: int
    components: int
    genus: int
    levels: int
    vertical_edges: int
    horizontal_edges: int
    summits_irreducible: int
    summits_reducible: int

    @property
    def summits(self):
        return self.summits_irreducible + self.summits_reducible


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: int
    rhs: int

    @property
    def ok(self):
        return self.lhs == self.rhs


def level_counts(graph, levels, classification=None):
    cls = classification or classify_arrows(graph, levels)
    irreducible, reducible = summits(graph, levels, cls)
    return LevelCounts(
        vertices=len(graph.vertices),
        edges=len(graph.edges),
        components=graph.component_count,
        genus=graph.genus,
        levels=levels.r,
        vertical_edges=len(cls.vertical_edges),
        horizontal_edges=len(cls.horizontal_edges),
        summits_irreducible=len(irreducible),
        summits_reducible=len(reducible),
    )


def _unit_row(size, index):
    row = [0] * size
    row[index] = 1
    return tuple(row)


def build_constraints(graph, levels, classification=None):
    """All four constraint families, fully labeled.

    The local row of a vertex is the characteristic vector of its
    non-downward arrows; vertices where that support is empty (irreducible
    summits and isolated vertices) contribute no row.  Global rows are
    generated for every special component, even when linearly dependent on
    the other families.
    """
    cls = classification or classify_arrows(graph, levels)
    width = graph.num_arrows

    downward_rows = tuple(
        (graph.arrows[a].label, _unit_row(width, a)) for a in cls.downward
    )

    local_rows = []
    for v in graph.vertices:
        row = [0] * width
        touched = False
        for a in graph.arrows_with_tail[v]:
            if cls.tags[a] != DOWNWARD:
                row[a] += 1
                touched = True
        if touched:
            local_rows.append((v, tuple(row)))

    rosenlicht_rows = []
    for e in cls.horizontal_edges:
        row = [0] * width
        row[2 * e] += 1
        row[2 * e + 1] += 1
        u, v = graph.edges[e]
        rosenlicht_rows.append((f"e{e}:{u}-{v}", tuple(row)))

    global_rows = []
    for n in range(1, levels.r + 1):
        _, special = components_below(graph, levels, n)
        for comp in special:
            members = set(comp)
            row = [0] * width
            for v in levels.part(n):
                for a in graph.arrows_with_tail[v]:
                    if graph.arrows[a].head in members:
                        row[a] += 1
            label = f"{n}:{'+'.join(comp)}"
            global_rows.append((label, tuple(row)))

    return {
        "downward": ConstraintSet("downward", downward_rows),
        "local": ConstraintSet("local", tuple(local_rows)),
        "rosenlicht": ConstraintSet("rosenlicht", tuple(rosenlicht_rows)),
        "global": ConstraintSet("global", tuple(global_rows)),
    }


def flag_identities(counts, dims):
    """The five dimension identities the flag must satisfy."""
    up, local, ros, res = dims
    return [
        IdentityCheck(
            "downward dimension",
            up,
            2 * counts.edges - counts.vertical_edges,
        ),
        IdentityCheck(
            "local codimension",
            up - local,
            counts.vertices - counts.summits_irreducible,
        ),
        IdentityCheck(
            "rosenlicht codimension",
            local - ros,
            counts.horizontal_edges - counts.summits_reducible,
        ),
        IdentityCheck("global codimension", ros - res, counts.summits - counts.components),
        IdentityCheck(
            "residue dimension",
            res,
            counts.edges - counts.vertices + counts.components,
        ),
    ]


class ResidueFlag:
    """The four nested kernels together with the verification bookkeeping."""

    __slots__ = ("graph", "levels", "classification", "counts", "spaces", "constraints")

    def __init__(self, graph, levels, classification, counts, spaces, constraints):
        self.graph = graph
        self.levels = levels
        self.classification = classification
        self.counts = counts
        self.spaces = spaces  # dict family -> Subspace, cumulative
        self.constraints = constraints

    @property
    def dims(self):
        return tuple(self.spaces[f].dim for f in FAMILIES)

    @property
    def residue(self):
        return self.spaces["global"]

    def identities(self):
        return flag_identities(self.counts, self.dims)

    def inclusions(self):
        """Containment of each flag step in the previous one (always true for
        a correct kernel computation; rechecked, not assumed)."""
        out = []
        for bigger, smaller in zip(FAMILIES, FAMILIES[1:]):
            ok = self.spaces[bigger].contains(self.spaces[smaller])
            out.append((f"{smaller} inside {bigger}", ok))
        return out

    @property
    def ok(self):
        return all(c.ok for c in self.identities()) and all(
            ok for _, ok in self.inclusions()
        )


def build_flag(graph, levels):
    """Impose the four families cumulatively and keep every intermediate kernel."""
    cls = classify_arrows(graph, levels)
    constraints = build_constraints(graph, levels, cls)
    counts = level_counts(graph, levels, cls)
    width = graph.num_arrows
    stacked = []
    spaces = {}
    for family in FAMILIES:
        stacked.extend(constraints[family].vectors())
        spaces[family] = kernel(stacked, num_cols=width)
    return ResidueFlag(graph, levels, cls, counts, spaces, constraints)


def flag_dims(graph, levels, classification=None):
    """The four flag dimensions by integer rank only (no kernels materialized).

    Same mathematics as :func:`build_flag`, used for large sweeps.
    """
    cls = classification or classify_arrows(graph, levels)
    constraints = build_constraints(graph, levels, cls)
    counts = level_counts(graph, levels, cls)
    width = graph.num_arrows
    echelon = []
    dims = []
    for family in FAMILIES:
        for _, row in constraints[family].rows:
            _echelon_insert(echelon, list(row))
        dims.append(width - len(echelon))
    return counts, tuple(dims)


def residue_space(graph, levels):
    """The subspace cut out by all four condition families."""
    constraints = build_constraints(graph, levels)
    stacked = []
    for family in FAMILIES:
        stacked.extend(constraints[family].vectors())
    return kernel(stacked, num_cols=graph.num_arrows)


# ---------------------------------------------------------------------------
# Per-component decomposition


@dataclass(frozen=True)
class ComponentBlock:
    """One component C of the subgraph at levels <= n, with its level-n data.

    The three collections live in the block of coordinates spanned by the
    non-downward arrows with tail in C's level-n vertices; every constraint
    row involved is supported inside a single such block, so blockwise
    codimensions add up to the global ones.
    """

    level: int
    component: tuple
    level_vertices: tuple
    local_labels: tuple
    rosenlicht_labels: tuple
    global_labels: tuple
    block_dim: int
    codim_local: int
    codim_rosenlicht: int
    codim_global: int


@dataclass(frozen=True)
class LevelSummary:
    level: int
    local_count: int
    rosenlicht_count: int
    global_count: int
    block_dim: int
    codim_local: int
    codim_rosenlicht: int
    codim_global: int


@dataclass(frozen=True)
class ComponentReport:
    blocks: tuple
    levels: tuple
    dims: tuple
    totals_consistent: bool


def _component_collections(graph, levels, cls):
    """Yield per (n, C in components of V_{h<=n}) the three row collections.

    Rows are full-width vectors (their support already lies in the block).
    """
    width = graph.num_arrows
    for n in range(1, levels.r + 1):
        upto = levels.prefix(n)
        comps = graph.induced_components(upto)
        _, special_below = components_below(graph, levels, n)
        for comp in comps:
            members = set(comp)
            here = tuple(v for v in levels.part(n) if v in members)
            here_set = set(here)

            block_coords = []
            local_rows = []
            for v in here:
                row = [0] * width
                touched = False
                for a in graph.arrows_with_tail[v]:
                    if cls.tags[a] != DOWNWARD:
                        row[a] += 1
                        touched = True
                        block_coords.append(a)
                if touched:
                    local_rows.append((v, tuple(row)))

            ros_rows = []
            for e in cls.horizontal_edges:
                u, v = graph.edges[e]
                if u in here_set and v in here_set:
                    row = [0] * width
                    row[2 * e] += 1
                    row[2 * e + 1] += 1
                    ros_rows.append((f"e{e}:{u}-{v}", tuple(row)))

            glob_rows = []
            for below in special_below:
                if set(below) <= members:
                    heads = set(below)
                    row = [0] * width
                    for v in here:
                        for a in graph.arrows_with_tail[v]:
                            if graph.arrows[a].head in heads:
                                row[a] += 1
                    glob_rows.append((f"{n}:{'+'.join(below)}", tuple(row)))

            yield n, comp, here, sorted(set(block_coords)), local_rows, ros_rows, glob_rows


def per_component_report(graph, levels):
    """Blockwise collections, cardinalities and codimensions, with totals
    checked against the globally computed flag dimensions."""
    cls = classify_arrows(graph, levels)
    counts, dims = flag_dims(graph, levels, cls)
    blocks = []
    for n, comp, here, coords, local_rows, ros_rows, glob_rows in _component_collections(
        graph, levels, cls
    ):
        lr = [row for _, row in local_rows]
        rr = [row for _, row in ros_rows]
        gr = [row for _, row in glob_rows]
        blocks.append(
            ComponentBlock(
                level=n,
                component=comp,
                level_vertices=here,
                local_labels=tuple(label for label, _ in local_rows),
                rosenlicht_labels=tuple(label for label, _ in ros_rows),
                global_labels=tuple(label for label, _ in glob_rows),
                block_dim=len(coords),
                codim_local=rank(lr),
                codim_rosenlicht=rank(lr + rr),
                codim_global=rank(lr + rr + gr),
            )
        )
    summaries = []
    for n in range(1, levels.r + 1):
        at = [b for b in blocks if b.level == n]
        summaries.append(
            LevelSummary(
                level=n,
                local_count=sum(len(b.local_labels) for b in at),
                rosenlicht_count=sum(len(b.rosenlicht_labels) for b in at),
                global_count=sum(len(b.global_labels) for b in at),
                block_dim=sum(b.block_dim for b in at),
                codim_local=sum(b.codim_local for b in at),
                codim_rosenlicht=sum(b.codim_rosenlicht for b in at),
                codim_global=sum(b.codim_global for b in at),
            )
        )
    up, local, ros, res = dims
    consistent = (
        sum(b.block_dim for b in blocks) == up
        and sum(b.codim_local for b in blocks) == up - local
        and sum(b.codim_rosenlicht for b in blocks) == up - ros
        and sum(b.codim_global for b in blocks) == up - res
    )
    return ComponentReport(tuple(blocks), tuple(summaries), dims, consistent)


def check_component_relations(graph, levels, classification=None):
    """Relatedness predicates on the per-component collections.

    Within every level component, the local rows versus the rosenlicht rows
    must be properly unrelated, and related exactly for reducible summits.
    Within every component of V_{h<=n} that meets level n, the global and
    rosenlicht rows together versus the local rows must be properly
    unrelated, and related whenever the collections are nonempty.  Returns a
    list of failure descriptions (empty means all predicates hold).
    """
    cls = classification or classify_arrows(graph, levels)
    width = graph.num_arrows
    failures = []

    _, reducible = summits(graph, levels, cls)
    reducible_set = set(reducible)
    for n in range(1, levels.r + 1):
        for comp in level_components(graph, levels, n):
            members = set(comp)
            local_rows = []
            for v in comp:
                row = [0] * width
                touched = False
                for a in graph.arrows_with_tail[v]:
                    if cls.tags[a] != DOWNWARD:
                        row[a] += 1
                        touched = True
                if touched:
                    local_rows.append((v, tuple(row)))
            ros_rows = []
            for e in cls.horizontal_edges:
                u, v = graph.edges[e]
                if u in members and v in members:
                    row = [0] * width
                    row[2 * e] += 1
                    row[2 * e + 1] += 1
                    ros_rows.append((f"e{e}", tuple(row)))
            report = set_theoretic_checks(
                VectorCollection(width, local_rows),
                VectorCollection(width, ros_rows),
            )
            if not report.properly_unrelated:
                failures.append(f"level {n} component {comp}: not properly unrelated")
            if report.related != (comp in reducible_set):
                failures.append(
                    f"level {n} component {comp}: related={report.related} "
                    f"but reducible-summit={comp in reducible_set}"
                )

    for n, comp, here, _, local_rows, ros_rows, glob_rows in _component_collections(
        graph, levels, cls
    ):
        if not here:
            continue
        first = VectorCollection(width, glob_rows + ros_rows)
        second = VectorCollection(width, local_rows)
        report = set_theoretic_checks(first, second)
        if not report.properly_unrelated:
            failures.append(
                f"level {n} merged component {comp}: not properly unrelated"
            )
        nonempty = bool(local_rows or ros_rows or glob_rows)
        if report.related != nonempty:
            failures.append(
                f"level {n} merged component {comp}: related={report.related} "
                f"with nonempty={nonempty}"
            )
    return failures
