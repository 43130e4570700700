"""The full verification suite behind the `verify` command.

Runs exact checks on the shipped fixture documents (including any frozen
expectations they carry) and seeded random sweeps of the dimension
identities, the face correspondence, the degeneration equalities and the
set-theoretic independence properties.  Every reported number is exact;
a failed check is reported with both sides and never corrected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import fixtures
from .degeneration import check_degeneration
from .graphs import (
    LevelStructure,
    components_below,
    load_level_graph,
    ordered_partitions,
)
from .linalg import rank, set_theoretic_checks
from .polytopes import (
    base_polytope,
    check_polytope_faces,
    residue_projection_table,
)
from .randomized import (
    random_coarsening,
    random_level_structure,
    random_multigraph,
    random_sti_collection,
)
from .residues import (
    build_flag,
    check_component_relations,
    flag_dims,
    flag_identities,
    per_component_report,
)

__all__ = ["VerifyConfig", "full_verification", "verify_document"]

FACE_FIXTURE_BOUND = 6
POLYTOPE_FIXTURE_BOUND = 8


@dataclass
class VerifyConfig:
    seed: int = 0
    flag_cases: int = 200
    face_cases: int = 25
    degeneration_cases: int = 50
    collection_cases: int = 1000
    max_vertices: int = 5
    max_edges: int = 8
    include_random: bool = True

    def as_dict(self):
        return {
            "seed": self.seed,
            "flag_cases": self.flag_cases,
            "face_cases": self.face_cases,
            "degeneration_cases": self.degeneration_cases,
            "collection_cases": self.collection_cases,
            "max_vertices": self.max_vertices,
            "max_edges": self.max_edges,
            "include_random": self.include_random,
        }

    @classmethod
    def scaled(cls, seed, cases):
        """Suite sizes derived from one knob: `cases` random graphs for the
        identity sweep, an eighth of that for faces, a quarter for
        degenerations, five times as many independence pairs."""
        return cls(
            seed=seed,
            flag_cases=cases,
            face_cases=max(1, cases // 8),
            degeneration_cases=max(1, cases // 4),
            collection_cases=5 * cases,
        )


def _counts_dict(counts):
    return {
        "vertices": counts.vertices,
        "edges": counts.edges,
        "components": counts.components,
        "genus": counts.genus,
        "levels": counts.levels,
        "vertical_edges": counts.vertical_edges,
        "horizontal_edges": counts.horizontal_edges,
        "summits_irreducible": counts.summits_irreducible,
        "summits_reducible": counts.summits_reducible,
        "summits": counts.summits,
    }


def _identities_list(checks):
    return [
        {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "ok": c.ok} for c in checks
    ]


def _expect_failures(graph, levels, flag, report, expect):
    """Compare computed values against a fixture's frozen expectations."""
    failures = []

    def check(label, got, want):
        if got != want:
            failures.append(f"{label}: computed {got}, fixture expects {want}")

    if "genus" in expect:
        check("genus", flag.counts.genus, expect["genus"])
    if "components" in expect:
        check("components", flag.counts.components, expect["components"])
    if "flag_dims" in expect:
        check("flag dims", list(flag.dims), list(expect["flag_dims"]))
    if "summits" in expect:
        got = [flag.counts.summits_irreducible, flag.counts.summits_reducible]
        check("summit counts", got, list(expect["summits"]))
    if "levels" in expect:
        by_level = {s.level: s for s in report.levels}
        for key in sorted(expect["levels"], key=int):
            want = expect["levels"][key]
            summary = by_level.get(int(key))
            if summary is None:
                failures.append(f"level {key}: missing from the computed report")
                continue
            got = {
                "lrc": summary.local_count,
                "ros": summary.rosenlicht_count,
                "glob": summary.global_count,
                "block_dim": summary.block_dim,
                "codim_local": summary.codim_local,
                "codim_rosenlicht": summary.codim_rosenlicht,
                "codim_global": summary.codim_global,
            }
            for field_name, want_value in want.items():
                check(f"level {key} {field_name}", got.get(field_name), want_value)
    if "global_conditions" in expect:
        rows = {label: vec for label, vec in flag.constraints["global"].rows}
        for item in expect["global_conditions"]:
            label = f"{item['level']}:{'+'.join(item['component'])}"
            vec = rows.get(label)
            if vec is None:
                failures.append(f"global condition {label}: row not generated")
                continue
            got = sorted(
                graph.arrows[i].label for i, x in enumerate(vec) if x
            )
            check(f"global condition {label}", got, sorted(item["arrows"]))
    if "polytope_vertex_count" in expect:
        if len(graph.vertices) <= POLYTOPE_FIXTURE_BOUND:
            trivial = LevelStructure.trivial(graph.vertices)
            poly = base_polytope(residue_projection_table(graph, trivial))
            check(
                "one-level polytope vertex count",
                len(poly.vertices),
                expect["polytope_vertex_count"],
            )
        else:
            failures.append("polytope_vertex_count expected but graph too large")
    return failures


def _component_set_identity_failures(graph, levels):
    """The below-level component identity: the non-special components of the
    strictly-below subgraph are exactly its components that survive as
    components one level up."""
    failures = []
    for n in range(1, levels.r + 1):
        below, special = components_below(graph, levels, n)
        upto = graph.induced_components(levels.prefix(n))
        lhs = set(below) - set(special)
        rhs = set(upto) & set(below)
        if lhs != rhs:
            failures.append(f"level {n}: component identity fails")
    return failures


def _fixture_degenerations(graph, levels):
    """Deterministic coarsening pairs exercised on each fixture."""
    pairs = [(levels, levels)]
    trivial = LevelStructure.trivial(graph.vertices)
    if not levels.is_trivial:
        pairs.append((levels, trivial))
        if levels.r > 2:
            merged = [list(levels.parts[0]) + list(levels.parts[1])]
            merged.extend(list(p) for p in levels.parts[2:])
            pairs.append(
                (levels, LevelStructure.from_parts(graph.vertices, merged))
            )
    elif len(graph.vertices) >= 2:
        split = LevelStructure.from_parts(
            graph.vertices, [[graph.vertices[0]], list(graph.vertices[1:])]
        )
        pairs.append((split, trivial))
    return pairs


def verify_document(name, document, face_bound=FACE_FIXTURE_BOUND):
    """All applicable checks for one graph document; returns a JSON-ready dict."""
    graph, levels = load_level_graph(document)
    expect = document.get("expect", {})

    flag = build_flag(graph, levels)
    identities = flag.identities()
    inclusions = flag.inclusions()
    report = per_component_report(graph, levels)
    relation_failures = check_component_relations(graph, levels)
    identity_failures = _component_set_identity_failures(graph, levels)
    expect_failures = _expect_failures(graph, levels, flag, report, expect)

    section = {
        "name": name,
        "counts": _counts_dict(flag.counts),
        "dims": list(flag.dims),
        "identities": _identities_list(identities),
        "inclusions": [{"name": n, "ok": ok} for n, ok in inclusions],
        "component_totals_ok": report.totals_consistent,
        "levels": [
            {
                "level": s.level,
                "lrc": s.local_count,
                "ros": s.rosenlicht_count,
                "glob": s.global_count,
                "block_dim": s.block_dim,
                "codim_local": s.codim_local,
                "codim_rosenlicht": s.codim_rosenlicht,
                "codim_global": s.codim_global,
            }
            for s in report.levels
        ],
        "relation_failures": relation_failures,
        "component_identity_failures": identity_failures,
        "expect_failures": expect_failures,
    }

    if len(graph.vertices) <= face_bound:
        faces = check_polytope_faces(graph, max_vertices=face_bound)
        section["faces"] = {
            "orientation": faces.orientation,
            "partitions": faces.partitions_checked,
            "distinct_faces": faces.distinct_faces,
            "ok": faces.ok,
            "failures": list(faces.failures),
        }
    else:
        section["faces"] = None

    degenerations = []
    for fine, coarse in _fixture_degenerations(graph, levels):
        result = check_degeneration(graph, fine, coarse)
        degenerations.append(
            {
                "fine": [list(p) for p in fine.parts],
                "coarse": [list(p) for p in coarse.parts],
                "residue_dim": result.residue_dim,
                "limit_ok": result.limit_matches,
                "realization_ok": result.realization_matches,
                "splitting_ok": result.splitting_matches,
                "oracle_ok": result.oracle_matches,
            }
        )
    section["degenerations"] = degenerations

    ok = (
        all(c.ok for c in identities)
        and all(x for _, x in inclusions)
        and report.totals_consistent
        and not relation_failures
        and not identity_failures
        and not expect_failures
        and (section["faces"] is None or section["faces"]["ok"])
        and all(
            d["limit_ok"] and d["realization_ok"] and d["splitting_ok"] and d["oracle_ok"]
            for d in degenerations
        )
    )
    section["ok"] = ok
    return section


def _random_flag_sweep(config):
    rng = random.Random(config.seed)
    failures = []
    partitions = 0
    for case in range(config.flag_cases):
        graph = random_multigraph(rng, config.max_vertices, config.max_edges)
        for pi in ordered_partitions(graph.vertices):
            partitions += 1
            counts, dims = flag_dims(graph, pi)
            checks = flag_identities(counts, dims)
            bad = [c for c in checks if not c.ok]
            if bad:
                failures.append(
                    f"case {case}: {graph.edges} / {pi!r}: "
                    + "; ".join(f"{c.name} {c.lhs}!={c.rhs}" for c in bad)
                )
            relations = check_component_relations(graph, pi)
            if relations:
                failures.append(f"case {case}: {pi!r}: " + "; ".join(relations))
            ident = _component_set_identity_failures(graph, pi)
            if ident:
                failures.append(f"case {case}: {pi!r}: " + "; ".join(ident))
    return {
        "graphs": config.flag_cases,
        "partitions": partitions,
        "ok": not failures,
        "failures": failures[:20],
    }


def _random_face_sweep(config):
    rng = random.Random(config.seed + 1)
    failures = []
    tally = {}
    for case in range(config.face_cases):
        graph = random_multigraph(rng, config.max_vertices, config.max_edges)
        report = check_polytope_faces(graph, max_vertices=config.max_vertices)
        tally[report.orientation] = tally.get(report.orientation, 0) + 1
        if not report.ok:
            failures.append(
                f"case {case}: {graph.edges}: " + "; ".join(report.failures)
            )
    return {
        "graphs": config.face_cases,
        "ok": not failures,
        "orientations": {k: tally[k] for k in sorted(tally)},
        "failures": failures[:20],
    }


def _random_degenerations(config):
    rng = random.Random(config.seed + 2)
    failures = []
    oracle_cases = 0
    for case in range(config.degeneration_cases):
        graph = random_multigraph(rng, config.max_vertices, config.max_edges)
        fine = random_level_structure(rng, graph)
        coarse = random_coarsening(rng, fine)
        result = check_degeneration(graph, fine, coarse, with_oracle=True)
        oracle_cases += 1
        if not result.ok:
            failures.append(
                f"case {case}: {graph.edges} fine={fine!r} coarse={coarse!r}: "
                f"limit={result.limit_matches} realization={result.realization_matches} "
                f"splitting={result.splitting_matches} oracle={result.oracle_matches}"
            )
    return {
        "cases": config.degeneration_cases,
        "oracle_cases": oracle_cases,
        "ok": not failures,
        "failures": failures[:20],
    }


def _random_collections(config):
    rng = random.Random(config.seed + 3)
    failures = []
    unrelated_cases = 0
    properly_unrelated_cases = 0
    for case in range(config.collection_cases):
        ambient = rng.randint(2, 10)
        first = random_sti_collection(rng, ambient)
        second = random_sti_collection(rng, ambient)
        report = set_theoretic_checks(first, second)
        if not (report.sti_1 and report.sti_2):
            failures.append(f"case {case}: generator produced a non-independent collection")
            continue
        union = list(first.vectors) + list(second.vectors)
        if not report.related:
            unrelated_cases += 1
            if rank(union) != len(union):
                failures.append(f"case {case}: unrelated union is linearly dependent")
        if report.properly_unrelated:
            properly_unrelated_cases += 1
            for i in range(len(first.vectors)):
                dropped = [v for j, v in enumerate(first.vectors) if j != i] + list(
                    second.vectors
                )
                if rank(dropped) != len(dropped):
                    failures.append(
                        f"case {case}: dropping vector {i} leaves a dependent union"
                    )
    return {
        "cases": config.collection_cases,
        "unrelated_cases": unrelated_cases,
        "properly_unrelated_cases": properly_unrelated_cases,
        "ok": not failures,
        "failures": failures[:20],
    }


def full_verification(config=None, documents=None):
    """Run the whole suite; returns (report dict, ok flag)."""
    config = config or VerifyConfig()
    if documents is None:
        documents = fixtures.all_documents()
    report = {"config": config.as_dict(), "fixtures": [], "random": None}
    ok = True
    for name, document in documents:
        section = verify_document(name, document)
        report["fixtures"].append(section)
        ok = ok and section["ok"]
    if config.include_random:
        flag_sweep = _random_flag_sweep(config)
        face_sweep = _random_face_sweep(config)
        degenerations = _random_degenerations(config)
        collections = _random_collections(config)
        report["random"] = {
            "flag_sweep": flag_sweep,
            "face_sweep": face_sweep,
            "degenerations": degenerations,
            "collections": collections,
        }
        ok = ok and all(
            section["ok"]
            for section in (flag_sweep, face_sweep, degenerations, collections)
        )
    report["ok"] = ok
    return report, ok
