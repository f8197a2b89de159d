"""Tests for the almost cubed checks."""

import pytest

from cubed.core.fixtures import NPC_FIXTURES, get_complex_fixture
from cubed.core.hierarchy import BORROMEAN_LABELS, borromean_pattern
from cubed.core.surface_conditions import (
    ComplementaryRegion,
    DiskCandidate,
    DoubleCurveSpec,
    Face,
    SurfaceModel,
    check_almost_cubed,
    check_face_degrees,
    classify_triviality,
    enumerate_small_disks,
    region_is_complete,
    surface_model_from_complex,
)
from cubed.core.types import CubedInputError, GenusWithoutMeridians
from cubed.utils.rotation import Loop, Region, RegionMap, alpha


BOUNDED_FIXTURES = ("cube", "face_pair")


def _torus_region(meridians):
    graph = borromean_pattern("C").to_region_map(BORROMEAN_LABELS)
    graph.meridians = meridians
    return ComplementaryRegion(name="C", genus=1, boundary_graph=graph)


class TestFaceDegrees:
    """Tests for check_face_degrees."""

    def test_embedded_surface_passes(self):
        check = check_face_degrees(SurfaceModel(faces=[Face(0)]))
        assert check.verdict == "PASS"
        assert "embedded" in check.notes[0]

    def test_triangle_fails(self):
        m = SurfaceModel(
            faces=[Face(4, "square"), Face(3, "triangle")],
            double_curves=[DoubleCurveSpec("c0", faces=[0, 1])],
        )
        check = check_face_degrees(m)
        assert check.verdict == "FAIL"
        assert check.locations == ["face 1 (triangle) has 3 sides"]

    def test_boundary_faces_are_exempt(self):
        m = SurfaceModel(
            faces=[Face(4, "square"), Face(1, "collar", boundary=True)],
            double_curves=[DoubleCurveSpec("c0", closed=False, faces=[0, 1])],
        )
        check = check_face_degrees(m)
        assert check.verdict == "PASS"
        assert check.details == {"face_degrees": [4], "boundary_faces": 1}
        assert check.notes == ["1 boundary faces are exempt from the degree bound"]

    @pytest.mark.parametrize("name", BOUNDED_FIXTURES)
    def test_cubes_with_boundary(self, name):
        m = surface_model_from_complex(get_complex_fixture(name))
        assert m.double_curves
        assert all(face.boundary for face in m.faces)
        check = check_face_degrees(m)
        assert check.verdict == "PASS"
        assert check.locations == []


class TestAlmostCubed:
    """Tests for check_almost_cubed."""

    @pytest.mark.parametrize("name", NPC_FIXTURES + BOUNDED_FIXTURES)
    def test_canonical_surface_of_npc_cubing_passes(self, name):
        report = check_almost_cubed(surface_model_from_complex(get_complex_fixture(name)))
        assert report.verdict == "PASS"
        assert report.certificate is not None

    def test_injected_triangle_fails(self):
        m = surface_model_from_complex(get_complex_fixture("t3"))
        m.faces.append(Face(3, "injected"))
        report = check_almost_cubed(m)
        assert report.verdict == "FAIL"
        assert report.check("face_degree").verdict == "FAIL"
        assert report.check("small_disks_trivial").verdict == "PASS"

    def test_three_torus_model(self):
        m = surface_model_from_complex(get_complex_fixture("t3"))
        assert len(m.faces) == 3
        assert len(m.double_curves) == 3
        assert len(m.triple_points) == 1
        assert len(set(m.triple_points[0])) == 3
        assert len(m.regions) == 1

    def test_missing_meridians_is_partial(self):
        m = SurfaceModel(faces=[Face(0)], regions=[_torus_region(None)])
        report = check_almost_cubed(m)
        assert report.verdict == "PARTIAL"
        assert report.exit_code() == 2
        assert report.check("no_one_gons").notes

    def test_empty_meridian_list_is_complete(self):
        region = _torus_region([])
        assert region_is_complete(region)
        assert not region_is_complete(_torus_region(None))

    def test_enumeration_needs_meridians(self):
        with pytest.raises(GenusWithoutMeridians):
            enumerate_small_disks(_torus_region(None))

    def test_bad_triple_point(self):
        m = SurfaceModel(faces=[Face(4)], triple_points=[(0, 1, 2)])
        with pytest.raises(CubedInputError):
            check_almost_cubed(m)


def _reversed(loop):
    """The same loop traversed the other way."""
    k = len(loop.crossings)
    return Loop(
        kind=loop.kind,
        crossings=tuple(alpha(x) for x in reversed(loop.crossings)),
        variants=tuple(loop.variants[(k - j) % k] for j in range(k)),
    )


class TestSmallDisks:
    """Tests for enumerate_small_disks and classify_triviality."""

    def test_cube_graph_census(self):
        # the vertex region of the three-torus sees the cube graph on its boundary sphere
        region = surface_model_from_complex(get_complex_fixture("t3")).regions[0]
        candidates = enumerate_small_disks(region)
        counts = {k: sum(1 for d in candidates if d.crossing_count == k) for k in range(4)}
        assert counts == {0: 6, 1: 0, 2: 12, 3: 8}
        assert {d.triviality for d in candidates} == {"TRIVIAL"}
        assert {d.loop.kind for d in candidates if d.crossing_count == 2} == {"edge"}

    def test_empty_graph_has_one_candidate(self):
        graph = RegionMap(n_vertices=0, edges=[], regions=[Region(walks=[])])
        region = ComplementaryRegion(name="ball", genus=0, boundary_graph=graph)
        (candidate,) = enumerate_small_disks(region)
        assert candidate.crossing_count == 0
        assert candidate.triviality == "TRIVIAL"

    def test_long_meridians_are_dropped(self):
        word = borromean_pattern("C").meridian_word((0, 1))
        assert len(word) == 4
        plain = enumerate_small_disks(_torus_region([]))
        with_long = enumerate_small_disks(_torus_region([word]))
        assert with_long == plain
        assert all(d.loop.kind != "meridian" for d in with_long)

    def test_short_meridian_is_kept(self):
        candidates = enumerate_small_disks(_torus_region([()]))
        meridians = [d for d in candidates if d.loop.kind == "meridian"]
        assert len(meridians) == 1
        assert meridians[0].crossing_count == 0
        assert meridians[0].triviality == "ESSENTIAL"

    @pytest.mark.parametrize("name", NPC_FIXTURES)
    def test_triviality_ignores_direction(self, name):
        m = surface_model_from_complex(get_complex_fixture(name))
        for region in m.regions:
            for d in enumerate_small_disks(region):
                if d.loop.kind != "cut":
                    continue
                backwards = DiskCandidate(
                    d.region, _reversed(d.loop), d.boundary_word[::-1], d.triviality
                )
                assert classify_triviality(m, backwards) == classify_triviality(m, d) == d.triviality
