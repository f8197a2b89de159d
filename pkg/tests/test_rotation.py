"""Tests for region maps and small loops."""

import pytest

from cubed.core.hierarchy import triangular_prism_map
from cubed.core.types import CubedInputError
from cubed.utils.rotation import RegionMap, classify_loop, edge_of, meridian_loop, small_loops


def _cut_loops(m, edges):
    loops, _ = small_loops(m, max_crossings=3)
    return [
        loop
        for loop in loops
        if loop.kind == "cut" and {edge_of(x) for x in loop.crossings} == set(edges)
    ]


class TestRegionMap:
    """Tests for RegionMap built from a rotation system."""

    def test_prism_faces(self):
        m = triangular_prism_map()
        assert len(m.regions) == 5
        assert sorted(m.region_degree(r) for r in range(5)) == [3, 3, 4, 4, 4]
        assert m.euler_characteristic() == 2

    def test_missing_dart(self):
        with pytest.raises(CubedInputError):
            RegionMap.from_rotation(2, [(0, 1)], {0: [0]})

    def test_dart_on_two_walks(self):
        m = triangular_prism_map()
        with pytest.raises(CubedInputError):
            RegionMap(n_vertices=6, edges=m.edges, regions=m.regions + [m.regions[0]])


class TestClassifyLoop:
    """Tests for classify_loop."""

    def test_loop_around_a_vertex_is_trivial(self):
        loops = _cut_loops(triangular_prism_map(), [0, 2, 6])
        assert loops
        assert all(classify_loop(triangular_prism_map(), loop) == "TRIVIAL" for loop in loops)

    def test_loop_between_triangles_is_essential(self):
        m = triangular_prism_map()
        loops = _cut_loops(m, [6, 7, 8])
        assert loops
        assert {classify_loop(m, loop) for loop in loops} == {"ESSENTIAL"}

    def test_edge_and_region_loops_are_trivial(self):
        m = triangular_prism_map()
        loops, complete = small_loops(m)
        assert complete
        simple = [loop for loop in loops if loop.kind in ("edge", "region")]
        assert len(simple) == len(m.edges) + len(m.regions)
        assert {classify_loop(m, loop) for loop in simple} == {"TRIVIAL"}

    def test_short_meridian_is_essential(self):
        m = triangular_prism_map()
        assert classify_loop(m, meridian_loop(m, ())) == "ESSENTIAL"
