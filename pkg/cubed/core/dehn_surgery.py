"""
Dehn fillings of boundary tori carrying a pattern of curves and arcs.

A torus pattern is modelled as parallel strands around the torus, all running in
one common direction c: essential loops, and bands. A band is a necklace of
contractible loops B_0, ..., B_{n-1} where a bundle of parallel arcs leaves B_i
along c and arrives at B_{i+1}, the last bundle closing up at B_0 (n = 1 is a
single loop whose arcs go once around and come back to it). Bare contractible
loops sit in a gap between strands. A curve of slope s crosses the strand stack
|det(c, s)| times, paying 1 per essential loop and, per band, the cheaper of its
thinnest bundle and the 2 points of running through one of its loops.

A Klein bottle component is described on its orientation double cover: pattern,
slopes and counts all live on the covering torus.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from cubed.core.types import (
    CheckResult,
    CubedInputError,
    MissingPattern,
    PatternError,
    Report,
    fold_verdicts,
)
from cubed.utils.rotation import Region, RegionMap

Slope = tuple[int, int]


def is_primitive(slope: Slope) -> bool:
    p, q = slope
    return gcd(abs(p), abs(q)) == 1


def _require_primitive(slope: Slope) -> None:
    if not is_primitive(slope):
        raise CubedInputError(f"Slope {slope} is not primitive")


def normalise_slope(slope: Slope) -> Slope:
    """Representative of the unoriented slope: first nonzero coordinate positive."""
    p, q = slope
    if p < 0 or (p == 0 and q < 0):
        return (-p, -q)
    return (p, q)


def slope_intersection(a: Slope, b: Slope) -> int:
    """Geometric intersection number |p*s - q*r| of slopes (p, q) and (r, s) on a torus."""
    _require_primitive(a)
    _require_primitive(b)
    return abs(a[0] * b[1] - a[1] * b[0])


def primitive_slopes(bound: int) -> list[Slope]:
    """Unoriented primitive slopes with |p|, |q| <= bound."""
    slopes = {
        normalise_slope((p, q))
        for p in range(-bound, bound + 1)
        for q in range(-bound, bound + 1)
        if (p, q) != (0, 0) and is_primitive((p, q))
    }
    return sorted(slopes)


########################################################
########         Types for Torus Patterns      #########
########################################################


@dataclass
class PatternLoop:
    slope: Slope
    multiplicity: int = 1

    def to_dict(self):
        return {"slope": list(self.slope), "multiplicity": self.multiplicity}


@dataclass
class PatternArc:
    """
    An arc leaving the contractible loop `loop` along `direction` and arriving at
    the contractible loop `end` (the same loop when unset).
    """

    loop: str
    direction: Slope
    end: str | None = None

    @property
    def ends(self) -> tuple[str, str]:
        return (self.loop, self.end or self.loop)

    def to_dict(self):
        data = {"loop": self.loop, "direction": list(self.direction)}
        if self.ends[1] != self.loop:
            data["end"] = self.ends[1]
        return data


@dataclass
class Strand:
    kind: str  # "loop" or "band"
    name: str
    bundles: tuple[int, ...] = ()
    beads: tuple[str, ...] = ()

    @property
    def arcs(self) -> int:
        return sum(self.bundles)

    @property
    def cost(self) -> int:
        return 1 if self.kind == "loop" else min(min(self.bundles), 2)


@dataclass
class TorusPattern:
    loops: list[PatternLoop] = field(default_factory=list)
    contractible: list[str] = field(default_factory=list)
    arcs: list[PatternArc] = field(default_factory=list)
    basis: tuple[str, str] = ("mu", "lambda")
    name: str = ""
    klein_bottle: bool = False

    def __post_init__(self):
        for loop in self.loops:
            _require_primitive(loop.slope)
            if loop.multiplicity < 1:
                raise PatternError(f"Loop multiplicity must be positive, got {loop.multiplicity}")
        for arc in self.arcs:
            _require_primitive(arc.direction)
            for end in arc.ends:
                if end not in self.contractible:
                    raise PatternError(f"Arc ends on unknown contractible loop {end!r}")
        directions = {normalise_slope(loop.slope) for loop in self.loops}
        directions |= {normalise_slope(arc.direction) for arc in self.arcs}
        if len(directions) > 1:
            raise PatternError(
                f"Pattern curves run in several directions {sorted(directions)}; "
                "disjoint essential curves on a torus are parallel"
            )
        self.necklaces()

    def necklaces(self) -> list[tuple[tuple[str, ...], tuple[int, ...]]]:
        """
        (loops, bundle sizes) of every band, starting from its first loop in
        `contractible` order; bundle i runs from loops[i] to loops[i + 1].
        """
        successors: dict[str, set[str]] = {}
        predecessors: dict[str, set[str]] = {}
        sizes: dict[tuple[str, str], int] = {}
        for arc in self.arcs:
            start, end = arc.ends
            successors.setdefault(start, set()).add(end)
            predecessors.setdefault(end, set()).add(start)
            sizes[(start, end)] = sizes.get((start, end), 0) + 1

        result = []
        seen: set[str] = set()
        for name in self.contractible:
            if name in seen or (name not in successors and name not in predecessors):
                continue
            beads = []
            bead = name
            while bead not in seen:
                after = successors.get(bead, set())
                before = predecessors.get(bead, set())
                if len(after) != 1 or len(before) != 1:
                    raise PatternError(
                        f"Arcs at contractible loop {bead!r} do not chain once around the torus: "
                        f"they come from {sorted(before)} and go to {sorted(after)}"
                    )
                seen.add(bead)
                beads.append(bead)
                bead = next(iter(after))
            bundles = tuple(sizes[(beads[i], beads[(i + 1) % len(beads)])] for i in range(len(beads)))
            result.append((tuple(beads), bundles))
        return result

    @property
    def direction(self) -> Slope | None:
        if self.loops:
            return normalise_slope(self.loops[0].slope)
        if self.arcs:
            return normalise_slope(self.arcs[0].direction)
        return None

    def strands(self) -> list[Strand]:
        """Essential loops (one per multiplicity) then bands, in the order they sit around the torus."""
        strands = []
        for index, loop in enumerate(self.loops):
            for copy in range(loop.multiplicity):
                strands.append(Strand("loop", f"loop{index}.{copy}"))
        for beads, bundles in self.necklaces():
            strands.append(Strand("band", beads[0], bundles, beads))
        return strands

    def bare_loops(self) -> list[str]:
        touched = {end for arc in self.arcs for end in arc.ends}
        return [name for name in self.contractible if name not in touched]

    def census(self) -> dict[str, int]:
        counts: dict[str, int] = {}

        def add(kind: str, n: int = 1):
            if n:
                counts[kind] = counts.get(kind, 0) + n

        strands = self.strands()
        add("0-gon", len(self.contractible))
        for strand in strands:
            if strand.kind == "band":
                add("4-gon", strand.arcs - len(strand.bundles))
        if not strands:
            add("other")
        else:
            gaps = len(strands)
            if self.bare_loops():
                add("other")
                gaps -= 1
            add("annulus", gaps)
        return dict(sorted(counts.items()))

    def orbifold_euler_characteristic(self) -> Fraction:
        """Sum over regions of chi minus a quarter per corner; zero for a consistent census."""
        strands = self.strands()
        total = Fraction(len(self.contractible))  # one 0-gon each
        bare = len(self.bare_loops())
        if not strands:
            return total + (2 - 2 - bare)
        for i, strand in enumerate(strands):
            above = strands[(i + 1) % len(strands)]
            # two corners per bundle on each side of a band
            corners = 2 * len(strand.bundles) + 2 * len(above.bundles)
            chi = 0 - (bare if i == 0 else 0)
            total += chi - Fraction(corners, 4)
        return total

    def to_region_map(self, labels: dict[str, int] | None = None) -> RegionMap:
        """Embedded graph of the pattern; see module docstring for the layout."""
        return _PatternBuilder(self, labels or {}).build()

    def meridian_word(self, slope: Slope) -> tuple[int, ...]:
        """Crossing darts of a minimal-position curve of the given slope, on `to_region_map()`."""
        _require_primitive(slope)
        builder = _PatternBuilder(self, {})
        builder.build()
        direction = self.direction
        if direction is None:
            return ()
        laps = abs(direction[0] * slope[1] - direction[1] * slope[0])
        word: list[int] = []
        for _ in range(laps):
            for strand in self.strands():
                word += builder.routes[strand.name]
        return tuple(word)

    def to_dict(self):
        return {
            "name": self.name,
            "basis": list(self.basis),
            "loops": [loop.to_dict() for loop in self.loops],
            "contractible": list(self.contractible),
            "arcs": [arc.to_dict() for arc in self.arcs],
            "klein_bottle": self.klein_bottle,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TorusPattern":
        return cls(
            loops=[
                PatternLoop(tuple(item["slope"]), item.get("multiplicity", 1))
                for item in data.get("loops", [])
            ],
            contractible=list(data.get("contractible", [])),
            arcs=[
                PatternArc(item["loop"], tuple(item["direction"]), item.get("end"))
                for item in data.get("arcs", [])
            ],
            basis=tuple(data.get("basis", ("mu", "lambda"))),
            name=data.get("name", ""),
            klein_bottle=data.get("klein_bottle", False),
        )


class _PatternBuilder:
    """Lays out strands south to north; every strand runs east along the common direction."""

    def __init__(self, pattern: TorusPattern, labels: dict[str, int]):
        self.pattern = pattern
        self.labels = labels
        self.n_vertices = 0
        self.kinds: list[str] = []
        self.stems: dict[int, int] = {}
        self.edges: list[tuple[int, int]] = []
        self.edge_labels: list = []
        self.regions: list[Region] = []
        self.routes: dict[str, list[int]] = {}

    def vertex(self, kind: str) -> int:
        self.kinds.append(kind)
        self.n_vertices += 1
        return self.n_vertices - 1

    def edge(self, u: int, v: int, label) -> int:
        self.edges.append((u, v))
        self.edge_labels.append(label)
        return len(self.edges) - 1

    def region(self, name: str, walks: list[list[int]], genus: int = 0):
        prefix = name.split(":")[0]
        label = self.labels.get(name, self.labels.get(prefix))
        self.regions.append(Region(walks=walks, genus=genus, label=label, name=name))

    def build(self) -> RegionMap:
        strands = self.pattern.strands()
        # north[i]: walk of strand i seen from the gap above, heading east
        # south[i]: walk of strand i seen from the gap below, heading west
        north, south = [], []
        for strand in strands:
            if strand.kind == "loop":
                v = self.vertex("marker")
                e = self.edge(v, v, self.labels.get(f"curve:{strand.name}", strand.name))
                north.append([2 * e])
                south.append([2 * e + 1])
                self.routes[strand.name] = [2 * e + 1]
            else:
                top, bottom = self._band(strand)
                north.append(top)
                south.append(bottom)

        outer_bare = []
        for name in self.pattern.bare_loops():
            v = self.vertex("marker")
            e = self.edge(v, v, self.labels.get(f"curve:{name}", name))
            self.region(f"disk:{name}", [[2 * e]])
            outer_bare.append([2 * e + 1])

        if not strands:
            self.region("rest", outer_bare, genus=1)
        for i in range(len(strands)):
            walks = [north[i], south[(i + 1) % len(strands)]]
            if i == 0:
                walks += outer_bare
            self.region(f"gap:{i}", walks)

        return RegionMap(
            n_vertices=self.n_vertices,
            edges=self.edges,
            regions=self.regions,
            carrier_genus=1,
            vertex_kinds=self.kinds,
            stems=self.stems,
            edge_labels=self.edge_labels,
            name=self.pattern.name,
        )

    def _band(self, strand: Strand) -> tuple[list[int], list[int]]:
        beads, bundles = strand.beads, strand.bundles
        n = len(beads)
        # bead i: east tees start bundle i, west tees end bundle i - 1
        east = [[self.vertex("tee") for _ in range(bundles[i])] for i in range(n)]
        west = [[self.vertex("tee") for _ in range(bundles[i - 1])] for i in range(n)]

        # each loop, counterclockwise: bottom, up the east side, top, down the west side
        bottom, up, top, down = [], [], [], []
        for i, bead in enumerate(beads):
            loop_label = self.labels.get(f"curve:{bead}", bead)
            e, w = east[i], west[i]
            bottom.append(self.edge(w[0], e[0], loop_label))
            up.append([self.edge(e[m], e[m + 1], loop_label) for m in range(len(e) - 1)])
            top.append(self.edge(e[-1], w[-1], loop_label))
            down.append([self.edge(w[m + 1], w[m], loop_label) for m in range(len(w) - 1)])
        arcs = []
        for i, bead in enumerate(beads):
            after = (i + 1) % n
            bundle = [
                self.edge(east[i][m], west[after][m], self.labels.get(f"arc:{bead}", f"{bead}.arc{m}"))
                for m in range(bundles[i])
            ]
            for m, arc in enumerate(bundle):
                self.stems[east[i][m]] = arc
                self.stems[west[after][m]] = arc
            arcs.append(bundle)

        for i, bead in enumerate(beads):
            inside = [2 * bottom[i], *(2 * e for e in up[i]), 2 * top[i]]
            inside += [2 * e for e in reversed(down[i])]
            self.region(f"disk:{bead}", [inside])
        for i, bead in enumerate(beads):
            after = (i + 1) % n
            for m in range(bundles[i] - 1):
                self.region(
                    f"strip:{bead}:{m}",
                    [[2 * arcs[i][m], 2 * down[after][m] + 1, 2 * arcs[i][m + 1] + 1, 2 * up[i][m] + 1]],
                )

        thinnest = min(range(n), key=lambda i: bundles[i])
        if bundles[thinnest] <= 2:
            self.routes[strand.name] = [2 * a + 1 for a in arcs[thinnest]]
        else:
            self.routes[strand.name] = [2 * bottom[0] + 1, 2 * top[0]]
        north = [d for i in range(n) for d in (2 * arcs[i][-1], 2 * top[(i + 1) % n] + 1)]
        south = [
            d
            for i in ((-k) % n for k in range(n))
            for d in (2 * bottom[i] + 1, 2 * arcs[(i - 1) % n][0] + 1)
        ]
        return north, south


def pattern_meet_count(pat: TorusPattern, s: Slope) -> int:
    """Minimal number of points in which a curve of slope s meets the pattern."""
    _require_primitive(s)
    direction = pat.direction
    if direction is None:
        return 0
    crossings = slope_intersection(direction, s)
    return crossings * sum(strand.cost for strand in pat.strands())


def scan_slopes(pat: TorusPattern, bound: int) -> list[tuple[Slope, int]]:
    return [(s, pattern_meet_count(pat, s)) for s in primitive_slopes(bound)]


def _cover_note(component: str) -> str:
    return f"{component} is a Klein bottle; its pattern and slopes are read on the orientation double cover"


def check_scan(patterns: dict[str, TorusPattern], bound: int) -> CheckResult:
    """
    Meeting counts of every primitive slope with |p|, |q| <= bound, per patterned
    component. Informational: slopes meeting a pattern fewer than four times are
    listed for the user to judge, not failed.
    """
    if bound < 1:
        raise CubedInputError(f"Scan bound must be at least 1, got {bound}")
    components = {}
    notes = []
    for component in sorted(patterns):
        counts = scan_slopes(patterns[component], bound)
        least = min(n for _, n in counts)
        components[component] = {
            "min": least,
            "min_slopes": [f"{p}/{q}" for (p, q), n in counts if n == least],
            "counts": {f"{p}/{q}": n for (p, q), n in counts},
        }
        notes += [f"{component}: {p}/{q} meets the pattern {n} times" for (p, q), n in counts if n < 4]
        if patterns[component].klein_bottle:
            notes.append(_cover_note(component))
    if not patterns:
        notes.append("no component carries a pattern")
    return CheckResult(
        name="slope_scan",
        verdict="PASS",
        details={"bound": bound, "components": components},
        notes=notes,
    )


########################################################
########            Types for Fillings         #########
########################################################


@dataclass
class SurgerySpec:
    component: str
    slope: Slope
    handlebody_genus: int = 1
    meridian_slopes: list[Slope] = field(default_factory=list)

    def __post_init__(self):
        _require_primitive(self.slope)
        if self.handlebody_genus < 1:
            raise CubedInputError(f"Handlebody genus must be at least 1, got {self.handlebody_genus}")
        if self.handlebody_genus > 1 and len(self.meridian_slopes) != self.handlebody_genus:
            raise CubedInputError(
                f"A genus {self.handlebody_genus} handlebody needs "
                f"{self.handlebody_genus} meridians, got {len(self.meridian_slopes)}"
            )
        for slope in self.meridian_slopes:
            _require_primitive(slope)

    @property
    def meridians(self) -> list[Slope]:
        return self.meridian_slopes if self.handlebody_genus > 1 else [self.slope]

    def to_dict(self):
        return {
            "component": self.component,
            "slope": list(self.slope),
            "handlebody_genus": self.handlebody_genus,
            "meridians": [list(s) for s in self.meridians],
        }

    @classmethod
    def parse(cls, text: str) -> "SurgerySpec":
        """Read `component=p/q`."""
        try:
            component, fraction = text.split("=", 1)
            p, q = fraction.split("/", 1)
            return cls(component=component.strip(), slope=(int(p), int(q)))
        except ValueError as exc:
            raise CubedInputError(f"Cannot read fill {text!r}; expected component=p/q") from exc


def check_surgery(
    base,
    fills: list[SurgerySpec],
    patterns: dict[str, TorusPattern] | None = None,
    scan_bound: int | None = None,
) -> Report:
    """
    Every meridian of every fill must meet its component's pattern at least four
    times. With `scan_bound`, a slope scan of every patterned component is appended.
    """
    from cubed.core.hierarchy import HierarchySpec, verify_hierarchy
    from cubed.core.surface_conditions import SurfaceModel, check_almost_cubed

    if isinstance(base, HierarchySpec):
        route = "hierarchy"
        patterns = patterns or base.patterns()
        base_report = verify_hierarchy(base)
    elif isinstance(base, SurfaceModel):
        route = "surface"
        patterns = patterns or dict(base.boundary_patterns)
        base_report = check_almost_cubed(base)
    else:
        raise ValueError(
            f"Unknown surgery base: {type(base).__name__}. Supported: ['HierarchySpec', 'SurfaceModel']"
        )

    base_check = CheckResult(
        name="base_structure",
        verdict=base_report.verdict,
        details={"route": route},
        locations=[f"{c.name}: {loc}" for c in base_report.checks for loc in c.locations],
    )

    counts = {}
    failures = []
    for fill in sorted(fills, key=lambda f: f.component):
        if fill.component not in patterns:
            raise MissingPattern(f"Filled component {fill.component!r} carries no pattern")
        pattern = patterns[fill.component]
        per_meridian = []
        for slope in fill.meridians:
            count = pattern_meet_count(pattern, slope)
            per_meridian.append({"slope": list(slope), "count": count})
            if count < 4:
                failures.append(
                    f"{fill.component}: meridian {slope[0]}/{slope[1]} meets the pattern {count} times"
                )
        counts[fill.component] = per_meridian
    fill_check = CheckResult(
        name="meridian_meets_pattern",
        verdict="FAIL" if failures else "PASS",
        details={"fills": counts},
        locations=failures,
    )
    if not fills:
        fill_check.notes.append("no fills requested; nothing changes")
    if any(f.handlebody_genus > 1 for f in fills):
        fill_check.notes.append("handlebody fills are certified relative to the supplied meridians")
    for component in sorted({f.component for f in fills}):
        if patterns[component].klein_bottle:
            fill_check.notes.append(_cover_note(component))

    checks = [base_check, fill_check]
    if scan_bound is not None:
        checks.append(check_scan(patterns, scan_bound))
    verdict = fold_verdicts([c.verdict for c in checks])
    certificate = None
    if verdict == "PASS":
        if not fills:
            certificate = "no filling performed; the base structure stands"
        elif route == "surface":
            certificate = "filled manifold is almost cubed: every meridian meets the double curves at least four times"
        else:
            certificate = "hierarchy extends by the meridian disks; peripheral surfaces stay incompressible"
    return Report(
        command="surgery",
        input_digest="",
        checks=checks,
        certificate=certificate,
        info={"route": route, "fills": [f.to_dict() for f in fills]},
    )
