"""Tests for the canonical surface and its region graphs."""

import pytest

from cubed.core.canonical_surface import (
    build_canonical_surface,
    check_filling,
    check_region_conditions,
    quarter_square_euler,
    region_graph,
    surface_report,
)
from cubed.core.cube_complex import Gluing, build_complex, disjoint_union
from cubed.core.fixtures import NON_NPC_CLOSED_FIXTURES, NPC_FIXTURES, get_complex_fixture
from cubed.core.types import NotValidated


class TestCanonicalSurface:
    """Tests for build_canonical_surface."""

    def test_three_torus_summary(self):
        summary = build_canonical_surface(get_complex_fixture("t3")).summary()
        assert summary["squares"] == 3
        assert len(summary["components"]) == 3
        assert all(comp["type"] == "torus" for comp in summary["components"])
        assert summary["euler_characteristic"] == 0
        assert summary["double_curves"] == 3
        assert summary["closed_double_curves"] == 3
        assert summary["triple_points"] == 1
        assert summary["face_degrees"] == [4, 4, 4]

    @pytest.mark.parametrize("name", NPC_FIXTURES)
    def test_euler_characteristic_two_ways(self, name):
        c = get_complex_fixture(name)
        surface = build_canonical_surface(c)
        assert surface.euler_characteristic == quarter_square_euler(c)
        assert surface.euler_characteristic == sum(
            comp.euler_characteristic for comp in surface.components
        )

    @pytest.mark.parametrize("name", NPC_FIXTURES)
    def test_one_square_per_cube_axis(self, name):
        c = get_complex_fixture(name)
        assert len(build_canonical_surface(c).squares) == 3 * c.n_cubes

    def test_disjoint_union(self):
        t3 = get_complex_fixture("t3")
        summary = build_canonical_surface(disjoint_union(t3, t3)).summary()
        assert len(summary["components"]) == 6
        assert summary["triple_points"] == 2
        assert summary["squares"] == 6

    @pytest.mark.parametrize(("sym", "merged"), [("id", [(0, 1), (1, 1)]), ("r90", [(0, 1), (1, 2)])])
    def test_gluing_decides_which_squares_meet(self, sym, merged):
        c = build_complex(2, [Gluing(0, 3, 1, 0, sym)])
        surface = build_canonical_surface(c)
        groups = sorted(comp.squares for comp in surface.components)
        assert merged in groups
        assert len(groups) == 4
        assert [(0, 0)] in groups
        assert [(1, 0)] in groups

    def test_needs_validated_cubing(self):
        with pytest.raises(NotValidated):
            build_canonical_surface(get_complex_fixture("deg3edge"))


class TestRegionGraph:
    """Tests for the graph the surface leaves around a vertex."""

    def test_three_torus_region_graph_is_a_cube(self):
        g = region_graph(get_complex_fixture("t3"), 0)
        assert g.n_vertices == 8
        assert g.n_edges == 12
        assert sorted(g.face_degrees()) == [4] * 6

    @pytest.mark.parametrize("name", NPC_FIXTURES)
    def test_npc_vertices_pass(self, name):
        c = get_complex_fixture(name)
        for vertex in c.vertex_classes:
            checks = check_region_conditions(region_graph(c, vertex.index))
            assert [check.verdict for check in checks] == ["PASS", "PASS", "PASS"]

    @pytest.mark.parametrize("name", NON_NPC_CLOSED_FIXTURES)
    def test_some_condition_fails_without_npc(self, name):
        c = get_complex_fixture(name)
        verdicts = [
            check.verdict
            for vertex in c.vertex_classes
            for check in check_region_conditions(region_graph(c, vertex.index))
        ]
        assert "FAIL" in verdicts

    def test_tesseract_faces_are_triangles(self):
        g = region_graph(get_complex_fixture("tesseract"), 0)
        assert sorted(g.face_degrees()) == [3, 3, 3, 3]
        face_check = check_region_conditions(g)[0]
        assert face_check.name == "region_face_degree"
        assert face_check.verdict == "FAIL"
        assert face_check.locations


class TestSurfaceReport:
    """Tests for surface_report."""

    @pytest.mark.parametrize("name", NPC_FIXTURES)
    def test_npc_fixtures_pass(self, name):
        report = surface_report(get_complex_fixture(name))
        assert report.verdict == "PASS"
        assert report.command == "surface"
        names = [check.name for check in report.checks]
        assert names == [
            "region_face_degree",
            "region_two_point_loops",
            "region_three_point_loops",
            "filling",
            "surface_euler_characteristic",
        ]

    def test_closed_identity(self):
        report = surface_report(get_complex_fixture("t3_double"))
        details = report.check("surface_euler_characteristic").details
        assert details["from_edge_classes"] == 0
        assert details["from_cells"] == 0

    def test_filling_counts_balls(self):
        c = get_complex_fixture("t3_double")
        check = check_filling(c)
        assert check.verdict == "PASS"
        assert check.details["balls"] == len(c.vertex_classes)
