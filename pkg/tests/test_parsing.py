"""Tests for the input file readers."""

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from cubed.core.cube_complex import CubeComplex, validate_npc
from cubed.core.dehn_surgery import pattern_meet_count
from cubed.core.disk_rewriter import DiskGraph, reduce, tee_arc_example
from cubed.core.hierarchy import HierarchySpec, borromean_fixture, verify_hierarchy
from cubed.core.surface_conditions import SurfaceModel, check_almost_cubed
from cubed.core.types import FormatError
from cubed.utils.parsing import (
    digest,
    load_file,
    parse_cubes,
    parse_disk_graph,
    parse_hierarchy,
    parse_surface,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


class TestLoadFile:
    """Tests for load_file on the shipped fixtures."""

    @pytest.mark.parametrize(
        "name,kind",
        [
            ("t3.cubes", CubeComplex),
            ("kbs1.cubes", CubeComplex),
            ("deg3edge.cubes", CubeComplex),
            ("triangle_face.surf", SurfaceModel),
            ("borromean_cusp.surf", SurfaceModel),
            ("borromean.hier", HierarchySpec),
            ("chords4.dg", DiskGraph),
            ("four_gon.dg", DiskGraph),
            ("tee_arc.dg", DiskGraph),
        ],
    )
    def test_fixture_types(self, name, kind):
        obj, sha = load_file(FIXTURES / name)
        assert isinstance(obj, kind)
        assert sha == digest((FIXTURES / name).read_bytes())

    def test_unknown_suffix(self, tmp_path):
        path = tmp_path / "input.txt"
        path.write_text("{}")
        with pytest.raises(ValueError, match="Unknown input format"):
            load_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_file(tmp_path / "absent.cubes")

    def test_mode_override(self):
        g, _ = load_file(FIXTURES / "chords4.dg", mode="theorem1")
        assert g.mode == "theorem1"


class TestCubes:
    """Tests for .cubes files."""

    def test_three_torus_validates(self):
        c, _ = load_file(FIXTURES / "t3.cubes")
        assert validate_npc(c).verdict == "PASS"

    def test_degree_three_edge_fails(self):
        c, _ = load_file(FIXTURES / "deg3edge.cubes")
        assert validate_npc(c).verdict == "FAIL"

    def test_unknown_key(self):
        with pytest.raises(ValidationError):
            parse_cubes(json.dumps({"cubes": 1, "gluings": [], "colour": "red"}))

    def test_zero_cubes(self):
        with pytest.raises(ValidationError):
            parse_cubes(json.dumps({"cubes": 0}))

    def test_bad_json(self):
        with pytest.raises(FormatError):
            parse_cubes("{not json", "broken.cubes")

    def test_top_level_list(self):
        with pytest.raises(FormatError):
            parse_cubes("[]")


class TestSurfaces:
    """Tests for .surf files."""

    def test_triangle_face_fails(self):
        m, _ = load_file(FIXTURES / "triangle_face.surf")
        assert check_almost_cubed(m).verdict == "FAIL"

    def test_boundary_patterns(self):
        m, _ = load_file(FIXTURES / "borromean_cusp.surf")
        assert sorted(m.boundary_patterns) == ["C2"]
        assert pattern_meet_count(m.boundary_patterns["C2"], (1, 3)) == 12

    def test_region_needs_exactly_one_description(self):
        data = {
            "faces": [{"degree": 4}],
            "regions": [{"name": "R", "boundary_graph": {"n_vertices": 1, "edges": []}}],
        }
        with pytest.raises(FormatError):
            parse_surface(json.dumps(data))


class TestHierarchies:
    """Tests for .hier files."""

    def test_borromean_matches_builtin(self):
        h, _ = load_file(FIXTURES / "borromean.hier")
        assert verify_hierarchy(h).verdict == "PASS"
        assert h.patterns()["C1"].census() == borromean_fixture().patterns()["C1"].census()

    def test_unknown_pattern(self):
        data = {
            "surfaces": [{"name": "S1"}],
            "stages": [{"after": 1, "carriers": [{"name": "C", "pattern": "missing"}]}],
        }
        with pytest.raises(FormatError):
            parse_hierarchy(json.dumps(data))


class TestDiskGraphs:
    """Tests for .dg files."""

    def test_chords_reduce(self):
        g, _ = load_file(FIXTURES / "chords4.dg")
        assert reduce(g).success

    def test_tee_arc_matches_builtin(self):
        g, _ = load_file(FIXTURES / "tee_arc.dg")
        assert g.to_dict() == tee_arc_example().to_dict()

    def test_chords_and_edges_conflict(self):
        data = {"chords": [[0, 1]], "boundary": [0, 1]}
        with pytest.raises(FormatError):
            parse_disk_graph(json.dumps(data))

    def test_bad_vertex_kind(self):
        data = {
            "boundary": [0, 1],
            "vertices": {"0": {"kind": "DEGREE5", "rotation": []}},
            "edges": {"0": {"ends": [["b", 0], ["b", 1]]}},
        }
        with pytest.raises(ValidationError):
            parse_disk_graph(json.dumps(data))
