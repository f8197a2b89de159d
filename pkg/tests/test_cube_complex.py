"""Tests for cube complexes, vertex links and the non-positive curvature check."""

import itertools

import pytest

from cubed.core.cube_complex import (
    Gluing,
    build_complex,
    disjoint_union,
    edge_degrees,
    link_three_cycles,
    validate_npc,
    vertex_link,
)
from cubed.core.fixtures import (
    COMPLEX_FIXTURES,
    NON_NPC_CLOSED_FIXTURES,
    NPC_FIXTURES,
    get_complex_fixture,
)
from cubed.core.types import BadDihedral, CubedInputError, DuplicateGluing, InconsistentInvolution


class TestBuildComplex:
    """Tests for gluing cubes into a complex."""

    def test_three_torus_classes(self):
        c = get_complex_fixture("t3")
        assert c.is_closed
        assert len(c.edge_classes) == 3
        assert len(c.vertex_classes) == 1
        assert sorted(edge_degrees(c).values()) == [4, 4, 4]

    def test_face_pair_classes(self):
        c = get_complex_fixture("face_pair")
        assert not c.is_closed
        assert len(c.edge_classes) == 20
        assert len(c.vertex_classes) == 12
        assert len(c.boundary_faces) == 10

    @pytest.mark.parametrize("name", sorted(COMPLEX_FIXTURES))
    def test_degree_sum_counts_every_cube_edge(self, name):
        c = get_complex_fixture(name)
        assert sum(edge_degrees(c).values()) == 12 * c.n_cubes

    def test_reverse_record_is_accepted(self):
        records = [Gluing(0, f, 0, f + 3, "id") for f in range(3)]
        with_reverse = build_complex(1, records + [records[0].reverse()])
        assert len(with_reverse.gluings) == 3

    def test_tuple_and_dict_records(self):
        c = build_complex(2, [(0, 3, 1, 0, "id")])
        d = build_complex(2, [{"a": 0, "fa": 3, "b": 1, "fb": 0, "sym": "id"}])
        assert c.digest() == d.digest()

    def test_disjoint_union_shifts_cubes(self):
        c = disjoint_union(get_complex_fixture("t3"), get_complex_fixture("t3"))
        assert c.n_cubes == 2
        assert len(c.vertex_classes) == 2


class TestBuildErrors:
    """Tests for malformed gluing lists."""

    def test_no_cubes(self):
        with pytest.raises(CubedInputError):
            build_complex(0, [])

    def test_face_used_twice(self):
        with pytest.raises(DuplicateGluing):
            build_complex(2, [Gluing(0, 3, 1, 0), Gluing(0, 3, 1, 1)])

    def test_same_record_twice(self):
        with pytest.raises(DuplicateGluing):
            build_complex(2, [Gluing(0, 3, 1, 0), Gluing(0, 3, 1, 0)])

    def test_reverse_disagrees(self):
        with pytest.raises(InconsistentInvolution):
            build_complex(2, [Gluing(0, 3, 1, 0, "r90"), Gluing(1, 0, 0, 3, "r90")])

    def test_face_glued_to_itself(self):
        with pytest.raises(InconsistentInvolution):
            build_complex(1, [Gluing(0, 2, 0, 2)])

    def test_unknown_symmetry(self):
        with pytest.raises(BadDihedral):
            build_complex(2, [Gluing(0, 3, 1, 0, "twist")])

    def test_face_out_of_range(self):
        with pytest.raises(CubedInputError):
            build_complex(2, [Gluing(0, 6, 1, 0)])


class TestVertexLink:
    """Tests for vertex links."""

    def test_three_torus_link_is_octahedron(self):
        link = vertex_link(get_complex_fixture("t3"), 0)
        assert len(link.triangles) == 8
        assert link.n_vertices == 6
        assert len(link.edges) == 12
        assert link.is_closed
        assert link.euler_characteristic() == 2
        assert link.orientation() is not None

    def test_octahedron_three_cycles_are_its_faces(self):
        link = vertex_link(get_complex_fixture("t3"), 0)
        cycles = link_three_cycles(link)
        faces = {link.triangle_edges(t) for t in range(len(link.triangles))}
        assert len(cycles) == 8
        assert set(cycles) == faces

    def test_three_cycles_match_brute_force(self):
        link = vertex_link(get_complex_fixture("tesseract"), 0)
        expected = set()
        for triple in itertools.combinations(link.edges, 3):
            ends = [set(e.ends) for e in triple]
            if any(len(s) != 2 for s in ends):
                continue
            vertices = set().union(*ends)
            if len(vertices) == 3 and all(sum(v in s for s in ends) == 2 for v in vertices):
                expected.add(tuple(sorted(e.index for e in triple)))
        assert set(link_three_cycles(link)) == expected

    def test_require_interior_on_boundary_vertex(self):
        c = get_complex_fixture("cube")
        with pytest.raises(CubedInputError):
            vertex_link(c, 0, require_interior=True)

    def test_unknown_vertex(self):
        with pytest.raises(CubedInputError):
            vertex_link(get_complex_fixture("t3"), 5)


class TestValidateNpc:
    """Tests for validate_npc."""

    @pytest.mark.parametrize("name", NPC_FIXTURES)
    def test_npc_fixtures_pass(self, name):
        report = validate_npc(get_complex_fixture(name))
        assert report.verdict == "PASS"
        assert report.certificate is not None
        assert report.exit_code() == 0

    @pytest.mark.parametrize("name", NON_NPC_CLOSED_FIXTURES)
    def test_low_degree_closed_complexes_fail(self, name):
        report = validate_npc(get_complex_fixture(name))
        assert report.verdict == "FAIL"
        assert report.check("edge_degree").verdict == "FAIL"
        assert report.certificate is None

    def test_degree_three_edge_is_located(self):
        report = validate_npc(get_complex_fixture("deg3edge"))
        check = report.check("edge_degree")
        assert check.verdict == "FAIL"
        assert any("degree 3" in loc for loc in check.locations)

    def test_boundary_edges_are_exempt(self):
        report = validate_npc(get_complex_fixture("cube"))
        assert report.check("edge_degree").verdict == "PASS"
        assert report.check("edge_degree").notes

    def test_report_is_deterministic(self):
        first = validate_npc(get_complex_fixture("checkerboard")).to_dict()
        second = validate_npc(get_complex_fixture("checkerboard")).to_dict()
        assert first == second

    def test_relabelled_gluings_agree(self):
        c = get_complex_fixture("t3_double")
        reversed_records = build_complex(c.n_cubes, [g.reverse() for g in reversed(c.gluings)])
        assert validate_npc(reversed_records).verdict == validate_npc(c).verdict
        assert len(reversed_records.edge_classes) == len(c.edge_classes)
