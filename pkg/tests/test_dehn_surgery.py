"""Tests for slopes, torus patterns and the filling check."""

from collections import deque
from fractions import Fraction

import pytest

from cubed.core.dehn_surgery import (
    PatternArc,
    PatternLoop,
    SurgerySpec,
    TorusPattern,
    check_scan,
    check_surgery,
    normalise_slope,
    pattern_meet_count,
    primitive_slopes,
    scan_slopes,
    slope_intersection,
)
from cubed.core.hierarchy import borromean_fixture, borromean_pattern
from cubed.core.surface_conditions import Face, SurfaceModel
from cubed.core.types import CubedInputError, MissingPattern, PatternError

FILL_SLOPES = [(1, 1), (1, -1), (2, 1), (1, 2), (3, 2), (2, 3), (1, 3), (5, 3), (-3, 4), (4, 5), (1, 0), (0, 1)]

FILL_PAIRS = list(zip(FILL_SLOPES[:10], reversed(FILL_SLOPES[:10]), strict=True))


def _necklace():
    """Loops A and B: one arc from A to B, two arcs from B back to A."""
    return TorusPattern(
        contractible=["A", "B"],
        arcs=[PatternArc("A", (1, 0), "B"), PatternArc("B", (1, 0), "A"), PatternArc("B", (1, 0), "A")],
    )


def _tiled_walls(n, beads=(), arcs=(), lines=()):
    """
    Pattern segments on an n x n square-tiled torus. ("h", x, y) is the unit segment
    of the line y from x to x + 1, ("v", x, y) the unit segment of the line x from y to y + 1.
    beads: cell boxes (x0, x1, y0, y1); arcs: (y, x_from, x_to) running east; lines: heights.
    """
    walls = set()
    for x0, x1, y0, y1 in beads:
        for x in range(x0, x1):
            walls |= {("h", x % n, y0 % n), ("h", x % n, y1 % n)}
        for y in range(y0, y1):
            walls |= {("v", x0 % n, y % n), ("v", x1 % n, y % n)}
    for y, x_from, x_to in arcs:
        x = x_from
        while x % n != x_to % n:
            walls.add(("h", x % n, y % n))
            x += 1
    for y in lines:
        walls |= {("h", x, y % n) for x in range(n)}
    return walls


def _fewest_crossings(n, walls, slope):
    """Cheapest closed cell path of class `slope`: a 0-1 search in the universal cover."""
    p, q = slope
    tx, ty = p * n, q * n
    starts = [(0, y) for y in range(n)] if p else [(x, 0) for x in range(n)]
    xs = (min(0, tx) - 2, max(0, tx) + n + 2)
    ys = (min(0, ty) - 2, max(0, ty) + n + 2)
    best = None
    for start in starts:
        dist = {start: 0}
        queue = deque([start])
        while queue:
            x, y = queue.popleft()
            d = dist[(x, y)]
            moves = (
                ((x + 1, y), ("v", (x + 1) % n, y % n)),
                ((x - 1, y), ("v", x % n, y % n)),
                ((x, y + 1), ("h", x % n, (y + 1) % n)),
                ((x, y - 1), ("h", x % n, y % n)),
            )
            for cell, wall in moves:
                if not (xs[0] <= cell[0] <= xs[1] and ys[0] <= cell[1] <= ys[1]):
                    continue
                cost = d + (wall in walls)
                if cost < dist.get(cell, cost + 1):
                    dist[cell] = cost
                    if wall in walls:
                        queue.append(cell)
                    else:
                        queue.appendleft(cell)
        reached = dist[(start[0] + tx, start[1] + ty)]
        best = reached if best is None else min(best, reached)
    return best


# D1 fills cells x 2..3, y 1..3 with arcs on the lines y = 2, 3; D2 fills x 5..6, y 5..7
BORROMEAN_TILING = _tiled_walls(
    8,
    beads=[(2, 4, 1, 4), (5, 7, 5, 8)],
    arcs=[(2, 4, 2), (3, 4, 2), (6, 7, 5), (7, 7, 5)],
)


class TestSlopes:
    """Tests for slope arithmetic."""

    def test_intersection(self):
        assert slope_intersection((1, 0), (0, 1)) == 1
        assert slope_intersection((1, 0), (3, 2)) == 2
        assert slope_intersection((2, 3), (2, 3)) == 0

    def test_non_primitive_rejected(self):
        with pytest.raises(CubedInputError):
            slope_intersection((2, 4), (1, 0))

    def test_normalise(self):
        assert normalise_slope((-1, 2)) == (1, -2)
        assert normalise_slope((0, -1)) == (0, 1)

    def test_primitive_slopes_are_unoriented(self):
        slopes = primitive_slopes(1)
        assert slopes == [(0, 1), (1, -1), (1, 0), (1, 1)]


class TestTorusPattern:
    """Tests for TorusPattern."""

    def test_borromean_census(self):
        assert borromean_pattern().census() == {"0-gon": 2, "4-gon": 2, "annulus": 2}

    def test_borromean_orbifold_characteristic(self):
        assert borromean_pattern().orbifold_euler_characteristic() == Fraction(0)

    @pytest.mark.parametrize("slope", FILL_SLOPES)
    def test_borromean_meet_count(self, slope):
        assert pattern_meet_count(borromean_pattern(), slope) == 4 * abs(slope[1])

    def test_essential_loops_cost_one_each(self):
        pattern = TorusPattern(loops=[PatternLoop((1, 0), 3)])
        assert pattern_meet_count(pattern, (0, 1)) == 3
        assert pattern_meet_count(pattern, (1, 2)) == 6

    def test_band_cost_is_capped(self):
        pattern = TorusPattern(contractible=["D"], arcs=[PatternArc("D", (0, 1))] * 5)
        assert pattern_meet_count(pattern, (1, 0)) == 2

    def test_empty_pattern(self):
        assert pattern_meet_count(TorusPattern(), (2, 1)) == 0

    def test_directions_must_agree(self):
        with pytest.raises(PatternError):
            TorusPattern(loops=[PatternLoop((1, 0)), PatternLoop((0, 1))])

    def test_arc_on_unknown_loop(self):
        with pytest.raises(PatternError):
            TorusPattern(contractible=["D"], arcs=[PatternArc("E", (1, 0))])

    def test_scan_only_trivial_slope_is_short(self):
        counts = scan_slopes(borromean_pattern(), 5)
        short = [slope for slope, n in counts if n < 4]
        assert short == [(1, 0)]
        assert len(counts) == len(primitive_slopes(5))

    def test_meridian_word_length_matches_count(self):
        pattern = borromean_pattern()
        assert len(pattern.meridian_word((1, 2))) == pattern_meet_count(pattern, (1, 2))

    def test_round_trip(self):
        pattern = borromean_pattern("C1")
        assert TorusPattern.from_dict(pattern.to_dict()).to_dict() == pattern.to_dict()


class TestNecklaces:
    """Tests for arcs joining different contractible loops."""

    def test_strand_of_two_loops(self):
        (strand,) = _necklace().strands()
        assert strand.kind == "band"
        assert strand.beads == ("A", "B")
        assert strand.bundles == (1, 2)
        assert _necklace().bare_loops() == []

    def test_thinnest_bundle_decides_the_cost(self):
        pattern = _necklace()
        assert pattern_meet_count(pattern, (0, 1)) == 1
        assert pattern_meet_count(pattern, (2, 3)) == 3

    def test_census_and_region_map(self):
        pattern = _necklace()
        assert pattern.census() == {"0-gon": 2, "4-gon": 1, "annulus": 1}
        assert pattern.orbifold_euler_characteristic() == Fraction(0)
        graph = pattern.to_region_map()
        graph.validate()
        assert graph.census() == {"0-gon": 2, "4-gon": 1, "annulus": 1}

    def test_meridian_word_takes_the_single_arc(self):
        pattern = _necklace()
        assert len(pattern.meridian_word((1, 2))) == pattern_meet_count(pattern, (1, 2)) == 2

    def test_open_chain_is_rejected(self):
        with pytest.raises(PatternError):
            TorusPattern(contractible=["A", "B"], arcs=[PatternArc("A", (1, 0), "B")])

    def test_branching_is_rejected(self):
        arcs = [PatternArc("A", (1, 0)), PatternArc("A", (1, 0), "B"), PatternArc("B", (1, 0), "A")]
        with pytest.raises(PatternError):
            TorusPattern(contractible=["A", "B"], arcs=arcs)

    def test_unknown_end(self):
        with pytest.raises(PatternError):
            TorusPattern(contractible=["A"], arcs=[PatternArc("A", (1, 0), "Z")])

    def test_round_trip_keeps_ends(self):
        data = _necklace().to_dict()
        assert data["arcs"][0] == {"loop": "A", "direction": [1, 0], "end": "B"}
        assert TorusPattern.from_dict(data).strands() == _necklace().strands()


class TestMeetCountOnTiledTorus:
    """pattern_meet_count against the cheapest closed path on a square-tiled torus."""

    def test_borromean_components(self):
        patterns = borromean_fixture().patterns()
        for slope in primitive_slopes(5):
            expected = _fewest_crossings(8, BORROMEAN_TILING, slope)
            assert pattern_meet_count(patterns["C2"], slope) == expected
            assert pattern_meet_count(patterns["C3"], slope) == expected
            if slope != (1, 0):
                assert expected >= 4

    def test_parallel_loops(self):
        walls = _tiled_walls(8, lines=(1, 3, 5, 7))
        pattern = TorusPattern(loops=[PatternLoop((1, 0), 4)])
        for slope in primitive_slopes(3):
            assert pattern_meet_count(pattern, slope) == _fewest_crossings(8, walls, slope)

    def test_necklace(self):
        walls = _tiled_walls(
            8,
            beads=[(1, 3, 1, 4), (5, 7, 1, 4)],
            arcs=[(2, 3, 5), (2, 7, 1), (3, 7, 1)],
        )
        for slope in primitive_slopes(3):
            assert pattern_meet_count(_necklace(), slope) == _fewest_crossings(8, walls, slope)


class TestMeetCountProperties:
    """Lower bounds and monotonicity of pattern_meet_count."""

    @pytest.mark.parametrize("slope", FILL_SLOPES)
    def test_loops_alone_give_the_intersection_sum(self, slope):
        pattern = TorusPattern(loops=[PatternLoop((2, 1), 3)])
        assert pattern_meet_count(pattern, slope) == 3 * slope_intersection((2, 1), slope)

    @pytest.mark.parametrize("slope", FILL_SLOPES)
    def test_adding_a_loop_never_decreases(self, slope):
        before = pattern_meet_count(borromean_pattern(), slope)
        pattern = borromean_pattern()
        pattern.loops.append(PatternLoop((1, 0)))
        assert pattern_meet_count(pattern, slope) >= before


class TestScan:
    """Tests for check_scan."""

    def test_minimum_per_component(self):
        check = check_scan(borromean_fixture().patterns(), 5)
        assert check.verdict == "PASS"
        assert sorted(check.details["components"]) == ["C1", "C2", "C3"]
        for summary in check.details["components"].values():
            assert summary["min"] == 0
            assert summary["min_slopes"] == ["1/0"]
            assert len(summary["counts"]) == len(primitive_slopes(5))
        assert "C2: 1/0 meets the pattern 0 times" in check.notes

    def test_bound_must_be_positive(self):
        with pytest.raises(CubedInputError):
            check_scan({"C1": borromean_pattern()}, 0)

    def test_appended_by_check_surgery(self):
        report = check_surgery(borromean_fixture(), [SurgerySpec("C2", (1, 2))], scan_bound=2)
        assert [c.name for c in report.checks] == ["base_structure", "meridian_meets_pattern", "slope_scan"]
        assert report.verdict == "PASS"


class TestKleinBottleComponent:
    """A Klein bottle component is read on its orientation double cover."""

    def test_fill_notes_the_cover(self):
        pattern = borromean_pattern("K")
        pattern.klein_bottle = True
        model = SurfaceModel(faces=[Face(0)], boundary_patterns={"K": pattern})
        report = check_surgery(model, [SurgerySpec("K", (1, 1))])
        assert report.verdict == "PASS"
        notes = report.check("meridian_meets_pattern").notes
        assert any("orientation double cover" in note for note in notes)

    def test_scan_notes_the_cover(self):
        pattern = TorusPattern.from_dict({**borromean_pattern("K").to_dict(), "klein_bottle": True})
        check = check_scan({"K": pattern}, 1)
        assert any("orientation double cover" in note for note in check.notes)


class TestSurgerySpec:
    """Tests for SurgerySpec."""

    def test_parse(self):
        spec = SurgerySpec.parse("C2=1/2")
        assert spec.component == "C2"
        assert spec.slope == (1, 2)
        assert spec.meridians == [(1, 2)]

    @pytest.mark.parametrize("text", ["C2", "C2=1", "C2=a/b", "C2=2/4"])
    def test_parse_errors(self, text):
        with pytest.raises(CubedInputError):
            SurgerySpec.parse(text)

    def test_handlebody_needs_meridians(self):
        with pytest.raises(CubedInputError):
            SurgerySpec("C1", (1, 1), handlebody_genus=2, meridian_slopes=[(1, 1)])


class TestCheckSurgery:
    """Tests for check_surgery."""

    @pytest.mark.parametrize("slope", FILL_SLOPES)
    def test_borromean_fills(self, slope):
        report = check_surgery(borromean_fixture(), [SurgerySpec("C2", slope)])
        expected = "PASS" if abs(slope[1]) >= 1 else "FAIL"
        assert report.verdict == expected
        assert report.check("base_structure").verdict == "PASS"

    def test_trivial_slope_is_located(self):
        report = check_surgery(borromean_fixture(), [SurgerySpec("C1", (1, 0))])
        assert report.check("meridian_meets_pattern").locations == [
            "C1: meridian 1/0 meets the pattern 0 times"
        ]

    def test_several_components(self):
        fills = [SurgerySpec("C3", (1, 1)), SurgerySpec("C1", (2, 1))]
        report = check_surgery(borromean_fixture(), fills)
        assert report.verdict == "PASS"
        assert list(report.check("meridian_meets_pattern").details["fills"]) == ["C1", "C3"]

    def test_no_fills(self):
        report = check_surgery(borromean_fixture(), [])
        assert report.verdict == "PASS"
        assert report.certificate.startswith("no filling")

    def test_surface_route_uses_boundary_patterns(self):
        model = SurfaceModel(faces=[Face(0)], boundary_patterns={"C2": borromean_pattern("C2")})
        report = check_surgery(model, [SurgerySpec("C2", (1, 2))])
        assert report.info["route"] == "surface"
        assert report.verdict == "PASS"
        assert report.check("meridian_meets_pattern").details["fills"]["C2"][0]["count"] == 8

    def test_unknown_component(self):
        with pytest.raises(MissingPattern):
            check_surgery(borromean_fixture(), [SurgerySpec("C9", (1, 1))])

    def test_unknown_base(self):
        with pytest.raises(ValueError):
            check_surgery(object(), [])

    @pytest.mark.parametrize("pair", FILL_PAIRS)
    def test_two_components_filled(self, pair):
        fills = [SurgerySpec("C2", pair[0]), SurgerySpec("C3", pair[1])]
        report = check_surgery(borromean_fixture(), fills)
        assert report.verdict == "PASS"
        counts = report.check("meridian_meets_pattern").details["fills"]
        assert counts["C2"][0]["count"] == 4 * abs(pair[0][1])
        assert counts["C3"][0]["count"] == 4 * abs(pair[1][1])

    @pytest.mark.parametrize("slope", FILL_SLOPES)
    def test_reversed_slope_gives_the_same_verdict(self, slope):
        reverse = (-slope[0], -slope[1])
        forward = check_surgery(borromean_fixture(), [SurgerySpec("C3", slope)])
        backward = check_surgery(borromean_fixture(), [SurgerySpec("C3", reverse)])
        assert forward.verdict == backward.verdict
        assert (
            forward.check("meridian_meets_pattern").details["fills"]["C3"][0]["count"]
            == backward.check("meridian_meets_pattern").details["fills"]["C3"][0]["count"]
        )
