"""
Hierarchy verification. A hierarchy is an ordered list of surfaces S1..Sk, each
with boundary on earlier surfaces or on the boundary of M (index 0). The cut-open
manifolds are never built; each stage is described by the pattern the surfaces
leave on the boundary components ("carriers") of the cut-open manifold.

Regions of a carrier's graph are labelled with the index of the surface they lie
on (0 or None for the boundary of M).
"""

import copy
from dataclasses import dataclass, field

from cubed.core.dehn_surgery import PatternArc, PatternLoop, SurgerySpec, TorusPattern
from cubed.core.surface_conditions import (
    ComplementaryRegion,
    DiskCandidate,
    enumerate_small_disks,
    region_is_complete,
)
from cubed.core.types import (
    CheckResult,
    CubedInputError,
    MissingPattern,
    MissingStageGraph,
    PatternError,
    Report,
    fold_verdicts,
)
from cubed.utils.rotation import RegionMap, arc_is_boundary_parallel


########################################################
########        Types for Hierarchy Specs      #########
########################################################


@dataclass
class BoundaryCurve:
    name: str
    on: int

    def to_dict(self):
        return {"name": self.name, "on": self.on}


@dataclass
class HierarchySurface:
    name: str
    kind: str
    boundary: list[BoundaryCurve] = field(default_factory=list)

    def to_dict(self):
        return {"name": self.name, "kind": self.kind, "boundary": [b.to_dict() for b in self.boundary]}


@dataclass
class PatternRegion:
    carrier: str
    type: str  # "disk", "annulus" or "other"
    n: int

    @property
    def label(self) -> str:
        return f"{self.n}-gon" if self.type == "disk" else self.type

    def to_dict(self):
        return {"carrier": self.carrier, "type": self.type, "n": self.n}


@dataclass
class StageCarrier:
    name: str
    genus: int
    graph: RegionMap | None = None

    def as_region(self) -> ComplementaryRegion:
        if self.graph is None:
            raise MissingStageGraph(f"Carrier {self.name} has no boundary-pattern graph")
        return ComplementaryRegion(name=self.name, genus=self.genus, boundary_graph=self.graph)

    def pattern_regions(self) -> list[PatternRegion]:
        if self.graph is None:
            raise MissingStageGraph(f"Carrier {self.name} has no boundary-pattern graph")
        regions = []
        for r in range(len(self.graph.regions)):
            kind = self.graph.region_type(r)
            if kind.endswith("-gon"):
                regions.append(PatternRegion(self.name, "disk", self.graph.corners(r)))
            else:
                regions.append(PatternRegion(self.name, kind, self.graph.corners(r)))
        return regions

    def census(self) -> dict[str, int]:
        return self.graph.census() if self.graph is not None else {}

    def to_dict(self):
        return {
            "name": self.name,
            "genus": self.genus,
            "graph": None if self.graph is None else self.graph.to_dict(),
        }


@dataclass
class Stage:
    """Boundary pattern after cutting along S1..S_after."""

    after: int
    carriers: list[StageCarrier] = field(default_factory=list)

    def to_dict(self):
        return {"after": self.after, "carriers": [c.to_dict() for c in self.carriers]}


@dataclass
class HierarchySpec:
    surfaces: list[HierarchySurface]
    stages: list[Stage] = field(default_factory=list)
    boundary_patterns: dict[str, TorusPattern] = field(default_factory=dict)
    name: str = ""

    def validate(self) -> None:
        k = len(self.surfaces)
        for stage in self.stages:
            if not 1 <= stage.after <= k:
                raise CubedInputError(f"Stage after S{stage.after} names a surface outside S1..S{k}")
            for carrier in stage.carriers:
                if carrier.graph is None:
                    continue
                carrier.as_region().validate()
        for i, surface in enumerate(self.surfaces, start=1):
            for curve in surface.boundary:
                if not 0 <= curve.on <= k:
                    raise CubedInputError(
                        f"S{i} boundary curve {curve.name} lies on S{curve.on}, which does not exist"
                    )

    def patterns(self) -> dict[str, TorusPattern]:
        return dict(self.boundary_patterns)

    def last_stage(self) -> Stage | None:
        return max(self.stages, key=lambda s: s.after) if self.stages else None

    def without_surface(self, index: int) -> "HierarchySpec":
        """Drop S_index and shift later indices down by one; stage labels shift with them."""
        if not 1 <= index <= len(self.surfaces):
            raise CubedInputError(f"No surface S{index} to remove")

        def shift(j):
            return j - 1 if j is not None and j > index else j

        h = copy.deepcopy(self)
        del h.surfaces[index - 1]
        for surface in h.surfaces:
            for curve in surface.boundary:
                curve.on = shift(curve.on)
        stages = []
        for stage in h.stages:
            stage.after = stage.after - 1 if stage.after >= index else stage.after
            if stage.after < 1:
                continue
            for carrier in stage.carriers:
                if carrier.graph is not None:
                    for region in carrier.graph.regions:
                        region.label = shift(region.label)
            stages.append(stage)
        h.stages = stages
        return h

    def to_dict(self):
        return {
            "name": self.name,
            "surfaces": [s.to_dict() for s in self.surfaces],
            "stages": [s.to_dict() for s in self.stages],
            "boundary_patterns": {k: p.to_dict() for k, p in sorted(self.boundary_patterns.items())},
        }


def _stage_candidates(h: HierarchySpec):
    """(stage, carrier, candidates, complete) for every carrier of every stage."""
    if not h.stages and len(h.surfaces) > 1:
        raise MissingStageGraph(
            f"Hierarchy with {len(h.surfaces)} surfaces carries no stage boundary patterns"
        )
    for stage in sorted(h.stages, key=lambda s: s.after):
        for carrier in sorted(stage.carriers, key=lambda c: c.name):
            region = carrier.as_region()
            yield stage, carrier, enumerate_small_disks(region, allow_partial=True), region_is_complete(region)


def _where(stage: Stage, carrier: StageCarrier, d: DiskCandidate) -> str:
    return f"stage {stage.after} {carrier.name}: {d.crossing_count}-gon {' '.join(d.boundary_word)}"


def check_condition1(h: HierarchySpec) -> Report:
    """Every boundary curve of S_i lies on some S_j with j < i, or on the boundary of M."""
    bad = [
        f"S{i} ({surface.name}) curve {curve.name} lies on S{curve.on}"
        for i, surface in enumerate(h.surfaces, start=1)
        for curve in surface.boundary
        if not 0 <= curve.on < i
    ]
    check = CheckResult(
        name="condition1_boundary_order",
        verdict="FAIL" if bad else "PASS",
        details={"surfaces": len(h.surfaces)},
        locations=bad,
    )
    return Report(command="hierarchy", input_digest="", checks=[check])


def check_condition2(h: HierarchySpec) -> Report:
    """Every disk meeting the boundary pattern in at most three points is trivial."""
    bad, partial = [], []
    counts: dict[str, dict[str, int]] = {}
    for stage, carrier, candidates, complete in _stage_candidates(h):
        if not complete:
            partial.append(f"stage {stage.after} {carrier.name}")
        key = f"stage {stage.after} {carrier.name}"
        counts[key] = {str(k): 0 for k in range(4)}
        for d in candidates:
            counts[key][str(d.crossing_count)] += 1
            if d.triviality != "TRIVIAL":
                bad.append(_where(stage, carrier, d))
    verdict = "FAIL" if bad else ("PARTIAL" if partial else "PASS")
    check = CheckResult(
        name="condition2_small_disks",
        verdict=verdict,
        details={"candidates": counts},
        locations=bad,
    )
    if partial:
        check.notes.append("carriers without a complete meridian system: " + ", ".join(partial))
    if not h.stages:
        check.notes.append("no stages; nothing to enumerate")
    return Report(command="hierarchy", input_digest="", checks=[check])


def _arc_labels(graph: RegionMap, d: DiskCandidate) -> list[int]:
    return [graph.regions[graph.region_of(x)].label or 0 for x in d.loop.crossings]


def check_condition3(h: HierarchySpec) -> Report:
    """A disk meeting the top surface S_j in one arc has that arc parallel into the boundary of S_j."""
    bad, partial = [], []
    examined = 0
    for stage, carrier, candidates, _ in _stage_candidates(h):
        graph = carrier.graph
        for d in candidates:
            if d.loop.kind not in ("cut", "meridian") or not d.loop.crossings:
                continue
            labels = _arc_labels(graph, d)
            top = max(labels)
            if top == 0:
                continue
            arcs = [i for i, label in enumerate(labels) if label == top]
            if len(arcs) != 1:
                continue
            examined += 1
            parallel = arc_is_boundary_parallel(graph, d.loop, arcs[0])
            if parallel is None:
                partial.append(_where(stage, carrier, d))
            elif not parallel:
                bad.append(f"{_where(stage, carrier, d)} (arc on S{top})")
    verdict = "FAIL" if bad else ("PARTIAL" if partial else "PASS")
    check = CheckResult(
        name="condition3_single_arcs",
        verdict=verdict,
        details={"examined": examined},
        locations=bad,
    )
    if partial:
        check.notes.append("arcs in regions of positive genus left undecided: " + "; ".join(partial))
    return Report(command="hierarchy", input_digest="", checks=[check])


def verify_hierarchy(h: HierarchySpec) -> Report:
    h.validate()
    checks = [
        *check_condition1(h).checks,
        *check_condition2(h).checks,
        *check_condition3(h).checks,
    ]
    verdict = fold_verdicts([c.verdict for c in checks])
    census = {}
    last = h.last_stage()
    if last is not None:
        census = {c.name: c.census() for c in sorted(last.carriers, key=lambda c: c.name)}
    return Report(
        command="hierarchy",
        input_digest="",
        checks=checks,
        certificate=(
            "each surface S_i is incompressible and boundary incompressible in the cut open manifold"
            if verdict == "PASS"
            else None
        ),
        info={"surfaces": len(h.surfaces), "stages": len(h.stages), "census": census},
    )


########################################################
########      Borromean rings and its mutants   ########
########################################################

BORROMEAN_LABELS = {"disk:D1": 4, "disk:D2": 5, "strip": 3, "gap": 2}


def borromean_pattern(name: str = "") -> TorusPattern:
    """Two contractible loops, each with two arcs running once around the torus."""
    return TorusPattern(
        contractible=["D1", "D2"],
        arcs=[PatternArc(loop, (1, 0)) for loop in ("D1", "D1", "D2", "D2")],
        name=name,
    )


def pattern_carrier(name: str, pattern: TorusPattern, labels: dict, meridians=None) -> StageCarrier:
    graph = pattern.to_region_map(labels)
    graph.name = name
    graph.meridians = meridians
    return StageCarrier(name=name, genus=1, graph=graph)


def borromean_fixture() -> HierarchySpec:
    """Five-surface hierarchy of the Borromean rings complement, ending on three patterned tori."""
    surfaces = [
        HierarchySurface("S1", "torus"),
        HierarchySurface("S2", "disk with a tube", [BoundaryCurve("a2", 1), BoundaryCurve("b2", 0)]),
        HierarchySurface(
            "S3",
            "disk with a tube",
            [BoundaryCurve("a3", 1), BoundaryCurve("b3", 2), BoundaryCurve("c3", 0)],
        ),
        HierarchySurface("S4", "disk", [BoundaryCurve("a4", 2), BoundaryCurve("b4", 3)]),
        HierarchySurface("S5", "disk", [BoundaryCurve("a5", 3), BoundaryCurve("b5", 4)]),
    ]
    patterns = {name: borromean_pattern(name) for name in ("C1", "C2", "C3")}
    carriers = [
        pattern_carrier(name, pattern, BORROMEAN_LABELS, meridians=[])
        for name, pattern in patterns.items()
    ]
    return HierarchySpec(
        surfaces=surfaces,
        stages=[Stage(after=5, carriers=carriers)],
        boundary_patterns=patterns,
        name="borromean",
    )


def extend_with_fills(h: HierarchySpec, fills: list[SurgerySpec]) -> HierarchySpec:
    """
    Append one meridian disk per fill and a new final stage in which each filled
    carrier's meridian system is the filling slope, routed on its pattern.
    """
    extended = copy.deepcopy(h)
    last = extended.last_stage()
    if last is None:
        raise MissingStageGraph("Cannot extend a hierarchy that has no stages")
    carriers = {c.name: copy.deepcopy(c) for c in last.carriers}
    for fill in sorted(fills, key=lambda f: f.component):
        pattern = extended.boundary_patterns.get(fill.component)
        if pattern is None:
            raise MissingPattern(f"Filled component {fill.component!r} carries no pattern")
        carrier = carriers.get(fill.component)
        if carrier is None or carrier.graph is None:
            raise MissingStageGraph(f"No stage graph for filled component {fill.component!r}")
        if len(carrier.graph.edges) != len(pattern.to_region_map().edges):
            raise PatternError(f"Stage graph of {fill.component} is not the graph of its pattern")
        index = len(extended.surfaces) + 1
        extended.surfaces.append(
            HierarchySurface(
                f"S{index}",
                "meridian disk",
                [BoundaryCurve(f"meridian {fill.slope[0]}/{fill.slope[1]} on {fill.component}", 0)],
            )
        )
        carrier.graph.meridians = [pattern.meridian_word(s) for s in fill.meridians]
    extended.stages.append(
        Stage(after=len(extended.surfaces), carriers=[carriers[name] for name in sorted(carriers)])
    )
    return extended


def bad_ordering() -> HierarchySpec:
    """The boundary of S2 assigned to the later surface S3."""
    h = borromean_fixture()
    h.surfaces[1].boundary[0].on = 3
    h.name = "borromean-bad-ordering"
    return h


def triangular_prism_map(name: str = "prism") -> RegionMap:
    """Triangular prism on a sphere: a triangle cut off by three parallel edges."""
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    rotation = {
        0: [12, 0, 5],
        1: [14, 2, 1],
        2: [16, 4, 3],
        3: [6, 13, 11],
        4: [8, 15, 7],
        5: [10, 17, 9],
    }
    return RegionMap.from_rotation(6, edges, rotation, name=name)


def triangular_region() -> HierarchySpec:
    """A sphere carrier on which the pattern cuts off a triangular region."""
    h = borromean_fixture()
    graph = triangular_prism_map("Y")
    for region in graph.regions:
        region.label = 1
    h.stages[-1].carriers.append(StageCarrier(name="Y", genus=0, graph=graph))
    h.name = "borromean-triangular-region"
    return h


def essential_arc() -> HierarchySpec:
    """
    A torus carrier with two parallel essential curves whose compressing disk
    meets them twice, with its only arc on the top surface running across an annulus.
    """
    h = borromean_fixture()
    pattern = TorusPattern(loops=[PatternLoop((1, 0), 2)], name="E")
    carrier = pattern_carrier("E", pattern, {"gap:0": 5, "gap:1": 1})
    carrier.graph.meridians = [pattern.meridian_word((0, 1))]
    h.stages[-1].carriers.append(carrier)
    h.name = "borromean-essential-arc"
    return h


HIERARCHY_FIXTURES = {
    "borromean": borromean_fixture,
    "bad_ordering": bad_ordering,
    "triangular_region": triangular_region,
    "essential_arc": essential_arc,
}


def get_hierarchy_fixture(name: str) -> HierarchySpec:
    if name not in HIERARCHY_FIXTURES:
        raise ValueError(f"Unknown hierarchy fixture: {name}. Supported: {sorted(HIERARCHY_FIXTURES)}")
    return HIERARCHY_FIXTURES[name]()
