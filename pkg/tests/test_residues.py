import random

from resipoly.graphs import (
    LevelStructure,
    load_level_graph,
    ordered_partitions,
)
from resipoly.linalg import rank, rank_mod_p
from resipoly.randomized import random_level_structure, random_multigraph
from resipoly.residues import (
    FAMILIES,
    build_constraints,
    build_flag,
    check_component_relations,
    flag_dims,
    per_component_report,
    residue_space,
)

from conftest import reference_rank


def stacked_rows(graph, levels, families=FAMILIES):
    constraints = build_constraints(graph, levels)
    rows = []
    for family in families:
        rows.extend(constraints[family].vectors())
    return rows


class TestConstraints:
    def test_fig1_global_rows(self, fig1):
        graph, levels = fig1[0], fig1[1]
        families = build_constraints(graph, levels)
        rows = dict(families["global"].rows)
        assert set(rows) == {"2:u4", "2:u5"}

        def support(label):
            return sorted(
                graph.arrows[i].label for i, x in enumerate(rows[label]) if x
            )

        assert support("2:u5") == ["e2:u2>u5", "e3:u1>u5", "e4:u3>u5"]
        assert support("2:u4") == ["e0:u1>u4", "e1:u2>u4"]

    def test_trivial_structure_families(self, fig1):
        graph = fig1[0]
        families = build_constraints(graph, LevelStructure.trivial(graph.vertices))
        assert not families["downward"].rows
        assert not families["global"].rows
        assert len(families["rosenlicht"].rows) == len(graph.edges)

    def test_loop_rows(self, loop1):
        graph, levels = loop1[0], loop1[1]
        families = build_constraints(graph, levels)
        (local_label, local_row), = families["local"].rows
        (ros_label, ros_row), = families["rosenlicht"].rows
        assert local_label == "v"
        assert local_row == ros_row == (1, 1)
        assert ros_label != local_label

    def test_downward_rows_are_unit_vectors(self, fig2):
        graph, levels = fig2[0], fig2[1]
        families = build_constraints(graph, levels)
        assert len(families["downward"].rows) == 9
        for _, row in families["downward"].rows:
            assert sum(row) == 1 and set(row) <= {0, 1}

    def test_isolated_vertex_has_no_local_row(self):
        graph, levels = load_level_graph(
            {"vertices": ["a", "b"], "edges": [["a", "a"]]}
        )
        families = build_constraints(graph, levels)
        assert [label for label, _ in families["local"].rows] == ["a"]

    def test_fig1_full_system_rank(self, fig1):
        graph, levels = fig1[0], fig1[1]
        rows = stacked_rows(graph, levels)
        assert rank(rows) == reference_rank(rows) == 11  # 14 - 3
        assert rank_mod_p(rows, 10007) == 11


class TestFlag:
    def test_fig1_dims(self, fig1):
        flag = build_flag(fig1[0], fig1[1])
        assert flag.dims == (9, 6, 4, 3)
        assert flag.ok

    def test_fig2_dims(self, fig2):
        flag = build_flag(fig2[0], fig2[1])
        assert flag.dims == (13, 4, 4, 0)
        assert flag.counts.summits_irreducible == 3
        assert flag.counts.summits_reducible == 2
        assert flag.ok

    def test_k4_trivial_dims(self, k4):
        flag = build_flag(k4[0], k4[1])
        assert flag.dims == (12, 8, 3, 3)
        assert flag.ok

    def test_residue_space_dimensions(self, fig1, fig2):
        assert residue_space(fig1[0], fig1[1]).dim == 3
        assert residue_space(fig2[0], fig2[1]).dim == 0

    def test_edgeless_graph(self):
        graph, levels = load_level_graph({"vertices": ["a", "b", "c"], "edges": []})
        space = residue_space(graph, levels)
        assert space.ambient_dim == 0
        assert space.dim == 0

    def test_fig1_projections_at_the_top(self, fig1):
        # both arrows at u4 are downward, so the projection there vanishes
        # and the kernel of projecting to the whole top level is everything
        from resipoly.linalg import kernel_of_projection, project_image

        graph, levels = fig1[0], fig1[1]
        space = residue_space(graph, levels)
        u4_coords = graph.arrows_with_tail["u4"]
        assert project_image(space, u4_coords).dim == 0
        top = graph.arrows_with_tail["u4"] + graph.arrows_with_tail["u5"]
        assert project_image(space, top).dim == 0
        assert kernel_of_projection(space, top).dim == 3

    def test_family_order_does_not_matter(self, fig1):
        graph, levels = fig1[0], fig1[1]
        reference = residue_space(graph, levels)
        rng = random.Random(31)
        families = list(FAMILIES)
        for _ in range(5):
            rng.shuffle(families)
            rows = stacked_rows(graph, levels, families)
            from resipoly.linalg import kernel

            assert kernel(rows, num_cols=graph.num_arrows) == reference

    def test_fast_dims_agree_with_kernels(self):
        rng = random.Random(32)
        for _ in range(25):
            graph = random_multigraph(rng)
            levels = random_level_structure(rng, graph)
            _, dims = flag_dims(graph, levels)
            assert dims == build_flag(graph, levels).dims

    def test_identity_sweep_small(self):
        rng = random.Random(33)
        for _ in range(10):
            graph = random_multigraph(rng, max_vertices=4, max_edges=6)
            for pi in ordered_partitions(graph.vertices):
                counts, dims = flag_dims(graph, pi)
                up, local, ros, res = dims
                assert up == 2 * counts.edges - counts.vertical_edges
                assert up - local == counts.vertices - counts.summits_irreducible
                assert local - ros == counts.horizontal_edges - counts.summits_reducible
                assert ros - res == counts.summits - counts.components
                assert res == counts.genus

    def test_identities_on_every_partition_of_small_fixtures(
        self, fig1, k4, c3, loop1
    ):
        from resipoly.residues import flag_identities

        for graph, _, _ in (fig1, k4, c3, loop1):
            for pi in ordered_partitions(graph.vertices):
                counts, dims = flag_dims(graph, pi)
                assert all(c.ok for c in flag_identities(counts, dims))

    def test_reducible_summit_relation(self):
        # the local rows of a reducible summit sum to the rosenlicht rows
        rng = random.Random(34)
        seen = 0
        for _ in range(80):
            graph = random_multigraph(rng)
            levels = random_level_structure(rng, graph)
            from resipoly.graphs import classify_arrows, summits

            cls = classify_arrows(graph, levels)
            families = build_constraints(graph, levels, cls)
            local_rows = dict(families["local"].rows)
            _, reducible = summits(graph, levels, cls)
            for comp in reducible:
                seen += 1
                total = [0] * graph.num_arrows
                for v in comp:
                    row = local_rows.get(v)
                    if row:
                        total = [a + b for a, b in zip(total, row)]
                for e in graph.induced_edges(comp):
                    if cls.tags[2 * e] == "horizontal":
                        total[2 * e] -= 1
                        total[2 * e + 1] -= 1
                assert not any(total)
        assert seen > 10

    def test_unique_summit_collapse(self):
        # on a connected graph with a single summit the global family adds nothing
        rng = random.Random(35)
        seen = 0
        for _ in range(200):
            graph = random_multigraph(rng)
            levels = random_level_structure(rng, graph)
            counts, dims = flag_dims(graph, levels)
            if counts.components == 1 and counts.summits_irreducible + counts.summits_reducible == 1:
                seen += 1
                assert dims[2] == dims[3]
        assert seen > 20


class TestPerComponentReport:
    def test_fig2_levels(self, fig2):
        report = per_component_report(fig2[0], fig2[1])
        by_level = {s.level: s for s in report.levels}
        assert (by_level[3].local_count, by_level[3].rosenlicht_count, by_level[3].global_count) == (4, 0, 4)
        assert (by_level[2].local_count, by_level[2].rosenlicht_count, by_level[2].global_count) == (3, 1, 2)
        assert (by_level[1].local_count, by_level[1].rosenlicht_count, by_level[1].global_count) == (2, 1, 0)
        assert by_level[3].codim_global == 7
        assert by_level[2].codim_global == 4
        assert by_level[2].codim_rosenlicht == 3
        assert by_level[1].codim_global == 2
        assert report.totals_consistent

    def test_fig2_level3_block_is_crushed(self, fig2):
        report = per_component_report(fig2[0], fig2[1])
        level3 = [b for b in report.blocks if b.level == 3]
        assert sum(b.block_dim for b in level3) == 7
        assert sum(b.codim_global for b in level3) == 7

    def test_cardinalities_follow_the_counting_rules(self):
        # |lrc| = |level vertices| except for an isolated singleton, |ros| =
        # internal horizontal edges, |glob| = special components inside
        rng = random.Random(36)
        from resipoly.graphs import classify_arrows

        for _ in range(40):
            graph = random_multigraph(rng)
            levels = random_level_structure(rng, graph)
            cls = classify_arrows(graph, levels)
            report = per_component_report(graph, levels)
            for block in report.blocks:
                if not block.level_vertices:
                    assert block.block_dim == 0
                    continue
                if len(block.component) == 1 and not graph.induced_edges(block.component):
                    assert not block.local_labels
                else:
                    assert len(block.local_labels) == len(block.level_vertices)
                members = set(block.level_vertices)
                horizontal_inside = [
                    e
                    for e in cls.horizontal_edges
                    if graph.edges[e][0] in members and graph.edges[e][1] in members
                ]
                assert len(block.rosenlicht_labels) == len(horizontal_inside)

    def test_totals_consistent_on_random_graphs(self):
        rng = random.Random(37)
        for _ in range(40):
            graph = random_multigraph(rng)
            levels = random_level_structure(rng, graph)
            assert per_component_report(graph, levels).totals_consistent


class TestComponentRelations:
    def test_fixtures_pass(self, fig1, fig2, k4, c3, loop1):
        for graph, levels, _ in (fig1, fig2, k4, c3, loop1):
            assert check_component_relations(graph, levels) == []

    def test_random_sweep(self):
        rng = random.Random(38)
        for _ in range(40):
            graph = random_multigraph(rng)
            levels = random_level_structure(rng, graph)
            assert check_component_relations(graph, levels) == []
