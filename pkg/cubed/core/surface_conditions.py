"""
Almost-cubed checks for an immersed closed surface: face degrees, and the disks
of at most three crossings that each complementary region can see.
"""

from dataclasses import dataclass, field

from cubed.core.canonical_surface import build_canonical_surface, region_graph
from cubed.core.cube_complex import CubeComplex
from cubed.core.dehn_surgery import TorusPattern
from cubed.core.types import (
    CheckResult,
    CubedInputError,
    GenusWithoutMeridians,
    Report,
    fold_verdicts,
)
from cubed.utils.rotation import (
    Loop,
    RegionMap,
    Triviality,
    classify_loop,
    meridian_loop,
    small_loops,
)


########################################################
########        Types for Surface Models       #########
########################################################


@dataclass
class Face:
    degree: int
    name: str = ""
    boundary: bool = False

    def to_dict(self):
        return {"name": self.name, "degree": self.degree, "boundary": self.boundary}


@dataclass
class DoubleCurveSpec:
    name: str
    closed: bool = True
    faces: list[int] = field(default_factory=list)

    def to_dict(self):
        return {"name": self.name, "closed": self.closed, "faces": list(self.faces)}


@dataclass
class ComplementaryRegion:
    """A component of M cut along S: a handlebody with the pattern S leaves on its boundary."""

    name: str
    genus: int
    boundary_graph: RegionMap

    @property
    def meridians(self) -> list[tuple[int, ...]] | None:
        return self.boundary_graph.meridians

    def validate(self) -> None:
        if self.boundary_graph.carrier_genus != self.genus:
            raise CubedInputError(
                f"Region {self.name}: boundary graph lives on genus "
                f"{self.boundary_graph.carrier_genus}, region has genus {self.genus}"
            )
        self.boundary_graph.validate()

    def to_dict(self):
        return {"name": self.name, "genus": self.genus, "boundary_graph": self.boundary_graph.to_dict()}


@dataclass
class SurfaceModel:
    faces: list[Face]
    double_curves: list[DoubleCurveSpec] = field(default_factory=list)
    triple_points: list[tuple[int, int, int]] = field(default_factory=list)
    regions: list[ComplementaryRegion] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    boundary_patterns: dict[str, TorusPattern] = field(default_factory=dict)

    def validate(self) -> None:
        for t, curves in enumerate(self.triple_points):
            if len(curves) != 3:
                raise CubedInputError(f"Triple point {t} has {len(curves)} incident curves, not 3")
            for curve in curves:
                if not 0 <= curve < len(self.double_curves):
                    raise CubedInputError(f"Triple point {t} refers to missing curve {curve}")
        for curve in self.double_curves:
            for face in curve.faces:
                if not 0 <= face < len(self.faces):
                    raise CubedInputError(f"Double curve {curve.name} refers to missing face {face}")
        for region in self.regions:
            region.validate()

    @property
    def embedded(self) -> bool:
        return not self.double_curves and all(face.degree == 0 for face in self.faces)

    def to_dict(self):
        return {
            "faces": [f.to_dict() for f in self.faces],
            "double_curves": [c.to_dict() for c in self.double_curves],
            "triple_points": [list(t) for t in self.triple_points],
            "regions": [r.to_dict() for r in self.regions],
            "boundary_patterns": {k: p.to_dict() for k, p in sorted(self.boundary_patterns.items())},
        }


@dataclass(frozen=True)
class DiskCandidate:
    region: str
    loop: Loop
    boundary_word: tuple[str, ...]
    triviality: Triviality

    @property
    def crossing_count(self) -> int:
        return self.loop.crossing_count

    def to_dict(self):
        return {
            "region": self.region,
            "crossing_count": self.crossing_count,
            "boundary_word": list(self.boundary_word),
            "kind": self.loop.kind,
            "triviality": self.triviality,
        }


def surface_model_from_complex(c: CubeComplex) -> SurfaceModel:
    """Faces, double curves, triple points and vertex regions of the canonical surface."""
    surface = build_canonical_surface(c)
    faces = [
        Face(degree=f.degree, name=f"edge {f.edge_class}", boundary=f.boundary)
        for f in surface.faces
    ]
    curve_of = {}
    curves = []
    for index, curve in enumerate(surface.double_curves):
        for arc in curve.arcs:
            curve_of[arc] = index
        touching = sorted(
            {
                c.edge_class_of[(cube, e)]
                for cube, axis in curve.arcs
                for e in range(12)
                if e // 4 != axis
            }
        )
        curves.append(DoubleCurveSpec(name=f"curve {index}", closed=curve.closed, faces=touching))
    triple_points = [tuple(curve_of[(cube, axis)] for axis in range(3)) for cube in range(c.n_cubes)]

    regions = []
    notes = []
    for vertex in c.vertex_classes:
        if not vertex.interior:
            notes.append(f"vertex {vertex.index} lies on the boundary; its region is a collar")
            continue
        graph = region_graph(c, vertex.index).map
        graph.meridians = []
        regions.append(ComplementaryRegion(name=f"vertex {vertex.index}", genus=0, boundary_graph=graph))
    return SurfaceModel(
        faces=faces,
        double_curves=curves,
        triple_points=triple_points,
        regions=regions,
        notes=notes,
    )


def check_face_degrees(m: SurfaceModel) -> CheckResult:
    if m.embedded:
        return CheckResult(
            name="face_degree",
            verdict="PASS",
            notes=["surface has no double curves; it is embedded"],
        )
    small = [
        f"face {i}{' (' + f.name + ')' if f.name else ''} has {f.degree} sides"
        for i, f in enumerate(m.faces)
        if not f.boundary and f.degree < 4
    ]
    exempt = [f for f in m.faces if f.boundary]
    result = CheckResult(
        name="face_degree",
        verdict="FAIL" if small else "PASS",
        details={
            "face_degrees": sorted(f.degree for f in m.faces if not f.boundary),
            "boundary_faces": len(exempt),
        },
        locations=small,
    )
    if exempt:
        # faces cut by the boundary of M are collars, not polygons
        result.notes.append(f"{len(exempt)} boundary faces are exempt from the degree bound")
    return result


def enumerate_small_disks(r: ComplementaryRegion, allow_partial: bool = False) -> list[DiskCandidate]:
    """
    Loops on the boundary of the region meeting the double curves at most three times
    and bounding a disk there, plus the supplied meridians that qualify.
    """
    g = r.boundary_graph
    if r.genus > 0 and g.meridians is None and not allow_partial:
        raise GenusWithoutMeridians(
            f"Region {r.name} has genus {r.genus} and no meridian system; "
            "its disks cannot be enumerated completely"
        )
    loops, _ = small_loops(g, max_crossings=3)
    candidates = []
    for loop in loops:
        triviality = classify_loop(g, loop)
        if triviality == "NOT_DISK":
            continue
        candidates.append(DiskCandidate(r.name, loop, tuple(loop.word(g)), triviality))
    for word in g.meridians or []:
        loop = meridian_loop(g, word)
        if loop.crossing_count > 3:
            continue
        candidates.append(DiskCandidate(r.name, loop, tuple(loop.word(g)), classify_loop(g, loop)))
    return candidates


def classify_triviality(m: SurfaceModel, d: DiskCandidate) -> Triviality:
    for region in m.regions:
        if region.name == d.region:
            return classify_loop(region.boundary_graph, d.loop)
    raise CubedInputError(f"Disk candidate refers to unknown region {d.region}")


def region_is_complete(r: ComplementaryRegion) -> bool:
    if r.genus > 0 and r.meridians is None:
        return False
    return all(region.planar for region in r.boundary_graph.regions)


def check_almost_cubed(m: SurfaceModel) -> Report:
    """Faces of at least four sides, no 1-gons, and every 2-gon and 3-gon trivial."""
    m.validate()
    faces = check_face_degrees(m)

    one_gons, nontrivial, partial = [], [], []
    census: dict[str, dict[int, int]] = {}
    for region in m.regions:
        if not region_is_complete(region):
            partial.append(region.name)
        candidates = enumerate_small_disks(region, allow_partial=True)
        counts = {k: 0 for k in range(4)}
        for d in candidates:
            counts[d.crossing_count] += 1
            where = f"{region.name}: {' '.join(d.boundary_word)}"
            if d.crossing_count == 1:
                one_gons.append(where)
            elif d.triviality != "TRIVIAL":
                nontrivial.append(where)
        census[region.name] = counts

    def verdict(failures):
        if failures:
            return "FAIL"
        return "PARTIAL" if partial else "PASS"

    one_gon_check = CheckResult(
        name="no_one_gons",
        verdict=verdict(one_gons),
        details={"candidates": census},
        locations=one_gons,
    )
    disk_check = CheckResult(
        name="small_disks_trivial",
        verdict=verdict(nontrivial),
        locations=nontrivial,
    )
    if partial:
        note = (
            "regions without a complete meridian system could not be certified: "
            + ", ".join(partial)
        )
        one_gon_check.notes.append(note)
        disk_check.notes.append(note)

    checks = [faces, one_gon_check, disk_check]
    result = fold_verdicts([check.verdict for check in checks])
    return Report(
        command="almost-cubed",
        input_digest="",
        checks=checks,
        certificate="surface satisfies the almost cubed hypotheses" if result == "PASS" else None,
        info={"faces": len(m.faces), "regions": len(m.regions), "notes": list(m.notes)},
    )
