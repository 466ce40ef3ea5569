"""Symmetry-window graphs, exact verdicts, schedules, DIMACS export."""

import random

import pytest

import centerpole.certifier as certifier
from centerpole.certifier import (
    ScheduleReport,
    SymmetryGraph,
    VerdictKind,
    WindowSpec,
    build_symmetry_graph,
    certify_schedule,
    decide_k_colorable,
    export_dimacs,
    verify_witness,
)
from centerpole.cube import DimensionMismatchError, LatticePoint, build_sandwich, lattice


def graph_from_edges(n, edges, dim=1):
    """Wrap an explicit edge list for solver-level tests."""
    spec = WindowSpec(
        dim=dim, outer=max(n, 1), inner=0, centers=(LatticePoint((0,) * dim),)
    )
    return SymmetryGraph(
        spec=spec,
        vertices=tuple(LatticePoint((i,) * dim) for i in range(n)),
        edges=tuple(sorted(tuple(sorted(e)) for e in edges)),
    )


PATH4 = [(0, 1), (1, 2), (2, 3)]
CYCLE5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
K4 = [(a, b) for a in range(4) for b in range(a + 1, 4)]
PETERSEN = (
    CYCLE5
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
)


class TestWindowSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            WindowSpec(dim=0, outer=1, inner=0, centers=(lattice(),))
        with pytest.raises(ValueError):
            WindowSpec(dim=1, outer=1, inner=1, centers=(lattice(0),))
        with pytest.raises(ValueError):
            WindowSpec(dim=1, outer=2, inner=0, centers=())
        with pytest.raises(ValueError):
            WindowSpec(dim=1, outer=2, inner=0, centers=(lattice(5),))
        with pytest.raises(DimensionMismatchError):
            WindowSpec(dim=2, outer=2, inner=0, centers=(lattice(0),))

    def test_default_center_is_the_origin(self):
        spec = WindowSpec(dim=2, outer=1, inner=0, centers=(lattice(0, 0),))
        assert spec.center == lattice(0, 0)

    def test_shifted_window_admits_shifted_centers(self):
        spec = WindowSpec(
            dim=1,
            outer=2,
            inner=0,
            centers=(lattice(10),),
            center=lattice(9),
        )
        assert spec.center == lattice(9)


class TestGraphConstruction:
    def test_single_center_line_window(self):
        spec = WindowSpec(dim=1, outer=2, inner=0, centers=(lattice(0),))
        graph = build_symmetry_graph(spec)
        assert [v.coords for v in graph.vertices] == [(-2,), (-1,), (1,), (2,)]
        assert graph.edges == ((0, 3), (1, 2))
        assert graph.vertex_count == 4 and graph.edge_count == 2

    def test_annulus_excludes_the_inner_ball(self):
        spec = WindowSpec(dim=2, outer=2, inner=1, centers=(lattice(0, 0),))
        graph = build_symmetry_graph(spec)
        assert all((v - spec.center).norm_inf() == 2 for v in graph.vertices)

    def test_mirrors_landing_outside_create_no_edge(self):
        # center at the window edge: most mirrors leave the annulus
        spec = WindowSpec(dim=1, outer=2, inner=0, centers=(lattice(2),))
        graph = build_symmetry_graph(spec)
        assert graph.edges == ()

    def test_adjacency_is_symmetric(self):
        graph = graph_from_edges(4, PATH4)
        adj = graph.adjacency()
        assert adj == [[1], [0, 2], [1, 3], [2]]


class TestWitnessVerification:
    def test_accepts_proper_colorings_only(self):
        graph = graph_from_edges(4, PATH4)
        assert verify_witness(graph, 2, [0, 1, 0, 1])
        assert not verify_witness(graph, 2, [0, 1, 1, 0])
        assert not verify_witness(graph, 2, [0, 1, 0])
        assert not verify_witness(graph, 2, [0, 1, 0, 2])


class TestDecision:
    def test_rejects_nonpositive_color_count(self):
        with pytest.raises(ValueError):
            decide_k_colorable(graph_from_edges(1, []), 0)

    def test_one_color(self):
        assert (
            decide_k_colorable(graph_from_edges(3, []), 1).kind
            is VerdictKind.COLORABLE
        )
        assert (
            decide_k_colorable(graph_from_edges(2, [(0, 1)]), 1).kind
            is VerdictKind.FORCED
        )

    @pytest.mark.parametrize(
        "edges,n,k,expected",
        [
            (PATH4, 4, 2, VerdictKind.COLORABLE),
            (CYCLE5, 5, 2, VerdictKind.FORCED),
            (CYCLE5, 5, 3, VerdictKind.COLORABLE),
            (K4, 4, 3, VerdictKind.FORCED),
            (K4, 4, 4, VerdictKind.COLORABLE),
            (PETERSEN, 10, 2, VerdictKind.FORCED),
            (PETERSEN, 10, 3, VerdictKind.COLORABLE),
        ],
    )
    def test_known_graphs(self, edges, n, k, expected):
        graph = graph_from_edges(n, edges)
        verdict = decide_k_colorable(graph, k)
        assert verdict.kind is expected
        if expected is VerdictKind.COLORABLE:
            assert verify_witness(graph, k, verdict.witness)
        else:
            assert verdict.witness is None

    @pytest.mark.parametrize(
        "edges,n,k,expected",
        [
            (CYCLE5, 5, 2, VerdictKind.FORCED),
            (CYCLE5, 5, 3, VerdictKind.COLORABLE),
            (K4, 4, 3, VerdictKind.FORCED),
            (PETERSEN, 10, 3, VerdictKind.COLORABLE),
        ],
    )
    def test_conflict_learning_engine_agrees(
        self, monkeypatch, edges, n, k, expected
    ):
        # forcing an immediate escalation routes every core through the
        # clause-learning engine
        monkeypatch.setattr(certifier, "QUICK_SLICE", 0)
        graph = graph_from_edges(n, edges)
        verdict = decide_k_colorable(graph, k)
        assert verdict.kind is expected
        if expected is VerdictKind.COLORABLE:
            assert verify_witness(graph, k, verdict.witness)

    def test_budget_exhaustion_is_reported_not_guessed(self):
        verdict = decide_k_colorable(graph_from_edges(4, K4), 3, budget=0)
        assert verdict.kind is VerdictKind.UNKNOWN
        assert verdict.witness is None
        assert "budget" in verdict.detail

    def test_stats_reflect_the_graph(self):
        graph = graph_from_edges(5, CYCLE5)
        verdict = decide_k_colorable(graph, 3)
        assert verdict.stats.vertices == 5
        assert verdict.stats.edges == 5
        assert verdict.stats.decisions >= 0

    def test_exhaustive_cross_check_on_random_graphs(self):
        from itertools import product

        rng = random.Random(2024)
        for _ in range(40):
            n = rng.randint(1, 7)
            density = rng.random()
            edges = [
                (a, b)
                for a in range(n)
                for b in range(a + 1, n)
                if rng.random() < density
            ]
            k = rng.randint(1, 3)
            graph = graph_from_edges(n, edges)
            verdict = decide_k_colorable(graph, k)
            brute = any(
                all(colors[a] != colors[b] for a, b in edges)
                for colors in product(range(k), repeat=n)
            )
            expected = (
                VerdictKind.COLORABLE if brute else VerdictKind.FORCED
            )
            assert verdict.kind is expected, (n, edges, k)


class TestTranslationInvariance:
    def test_shifted_problems_get_identical_verdicts(self):
        centers = sorted(build_sandwich(1, -1).points())
        shift = lattice(3, -2)
        for inner in (1, 2):
            base_spec = WindowSpec(
                dim=2, outer=inner + 3, inner=inner, centers=tuple(centers)
            )
            moved_spec = WindowSpec(
                dim=2,
                outer=inner + 3,
                inner=inner,
                centers=tuple(c + shift for c in centers),
                center=shift,
            )
            a = decide_k_colorable(build_symmetry_graph(base_spec), 2)
            b = decide_k_colorable(build_symmetry_graph(moved_spec), 2)
            assert a.kind is b.kind
            assert a.stats.vertices == b.stats.vertices
            assert a.stats.edges == b.stats.edges


class TestSchedule:
    def test_single_center_is_forced_for_one_color(self):
        report = certify_schedule([lattice(0)], 1, [1])
        assert isinstance(report, ScheduleReport)
        assert report.dim == 1 and report.k == 1
        row = report.rows[0]
        assert row.inner == 1
        assert row.outer == 3 * (1 + 0 + 1)
        assert row.verdict.kind is VerdictKind.FORCED
        assert row.proved_at_outer == 2

    def test_forced_schedule_with_escalation(self):
        centers = sorted(build_sandwich(1, -1).points())
        report = certify_schedule(centers, 2, [1, 2, 3])
        assert [row.verdict.kind for row in report.rows] == [
            VerdictKind.FORCED
        ] * 3
        assert [row.proved_at_outer for row in report.rows] == [4, 5, 6]
        assert [row.outer for row in report.rows] == [9, 12, 15]

    def test_escalation_off_jumps_to_the_full_window(self):
        centers = sorted(build_sandwich(1, -1).points())
        report = certify_schedule(centers, 2, [1], escalate=False)
        assert report.rows[0].proved_at_outer == report.rows[0].outer == 9

    def test_colorable_pair_of_centers(self):
        centers = [lattice(0, 0), lattice(3, 0)]
        report = certify_schedule(centers, 2, [1], r_factor=1)
        row = report.rows[0]
        assert row.verdict.kind is VerdictKind.COLORABLE
        assert row.proved_at_outer == row.outer == 5
        spec = WindowSpec(
            dim=2, outer=5, inner=1, centers=tuple(centers)
        )
        graph = build_symmetry_graph(spec)
        assert verify_witness(graph, 2, row.verdict.witness)

    def test_unknown_rows_survive_exhaustion(self):
        centers = sorted(build_sandwich(2, 0).points())
        report = certify_schedule(centers, 3, [1], budget=0, r_factor=1)
        assert report.rows[0].verdict.kind is VerdictKind.UNKNOWN

    def test_needs_centers(self):
        with pytest.raises(ValueError):
            certify_schedule([], 2, [1])


def parse_dimacs(text):
    num_vars = None
    clauses = []
    for line in text.splitlines():
        if line.startswith("c") or not line.strip():
            continue
        if line.startswith("p cnf"):
            _, _, v, c = line.split()
            num_vars, num_clauses = int(v), int(c)
            continue
        lits = [int(tok) for tok in line.split()]
        assert lits[-1] == 0
        clauses.append(lits[:-1])
    assert num_vars is not None and len(clauses) == num_clauses
    return num_vars, clauses


def dpll(num_vars, clauses):
    """Reference satisfiability check, deliberately simple."""
    assignment = {}

    def value(lit):
        var = abs(lit)
        if var not in assignment:
            return None
        return assignment[var] == (lit > 0)

    def solve(clauses):
        while True:
            unit = None
            next_clauses = []
            for clause in clauses:
                states = [value(l) for l in clause]
                if any(s is True for s in states):
                    continue
                undecided = [l for l, s in zip(clause, states) if s is None]
                if not undecided:
                    return False
                if len(undecided) == 1:
                    unit = undecided[0]
                next_clauses.append(clause)
            clauses = next_clauses
            if unit is None:
                break
            assignment[abs(unit)] = unit > 0
        if not clauses:
            return True
        branch = abs(clauses[0][0]) if value(clauses[0][0]) is None else next(
            abs(l) for c in clauses for l in c if value(l) is None
        )
        saved = dict(assignment)
        for choice in (True, False):
            assignment.clear()
            assignment.update(saved)
            assignment[branch] = choice
            if solve(clauses):
                return True
        assignment.clear()
        assignment.update(saved)
        return False

    return solve(clauses)


class TestDimacsExport:
    def test_header_and_shape(self):
        graph = graph_from_edges(3, [(0, 1), (1, 2)])
        text = export_dimacs(graph, 2)
        lines = text.splitlines()
        assert lines[0].startswith("c symmetry window")
        p_line = next(l for l in lines if l.startswith("p cnf"))
        num_vars, clauses = parse_dimacs(text)
        assert num_vars == 6
        assert p_line == f"p cnf 6 {len(clauses)}"
        # 3 at-least-one, 3 at-most-one, 2 edges x 2 colors
        assert len(clauses) == 3 + 3 + 4

    def test_rejects_nonpositive_color_count(self):
        with pytest.raises(ValueError):
            export_dimacs(graph_from_edges(1, []), 0)

    @pytest.mark.parametrize(
        "edges,n,k,colorable",
        [
            (CYCLE5, 5, 2, False),
            (CYCLE5, 5, 3, True),
            (K4, 4, 3, False),
            (PATH4, 4, 2, True),
        ],
    )
    def test_round_trip_agrees_with_the_decision(self, edges, n, k, colorable):
        graph = graph_from_edges(n, edges)
        num_vars, clauses = parse_dimacs(export_dimacs(graph, k))
        assert dpll(num_vars, clauses) == colorable
        verdict = decide_k_colorable(graph, k)
        assert (verdict.kind is VerdictKind.COLORABLE) == colorable


class TestSatCore:
    def test_fuzz_against_brute_force(self):
        from centerpole.sat import Solver, lit_of

        rng = random.Random(99)
        for _ in range(60):
            num_vars = rng.randint(1, 8)
            num_clauses = rng.randint(1, 24)
            # clauses as (0-based var, wanted polarity) pairs
            clauses = []
            for _ in range(num_clauses):
                width = rng.randint(1, 3)
                clauses.append(
                    [
                        (rng.randrange(num_vars), rng.random() < 0.5)
                        for _ in range(width)
                    ]
                )

            def brute():
                for bits in range(2**num_vars):
                    assign = [(bits >> i) & 1 == 1 for i in range(num_vars)]
                    if all(
                        any(assign[v] == want for v, want in clause)
                        for clause in clauses
                    ):
                        return True
                return False

            solver = Solver(num_vars)
            for clause in clauses:
                solver.add_clause([lit_of(v, want) for v, want in clause])
            got = solver.solve()
            assert got is not None
            assert got == brute(), clauses
            if got:
                model = solver.model()
                assert all(
                    any(model[v] == want for v, want in clause)
                    for clause in clauses
                )
