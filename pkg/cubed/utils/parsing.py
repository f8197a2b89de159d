"""
Readers for the four input formats: .cubes, .surf, .hier and .dg.

All four are JSON objects. The pydantic models below reject unknown keys and
hand their contents to the core constructors, which do the combinatorial checks.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from cubed.core.cube_complex import CubeComplex, Gluing, build_complex
from cubed.core.dehn_surgery import PatternArc, PatternLoop, TorusPattern
from cubed.core.disk_rewriter import DiskEdge, DiskGraph, DiskVertex, chord_arrangement
from cubed.core.hierarchy import (
    BoundaryCurve,
    HierarchySpec,
    HierarchySurface,
    Stage,
    StageCarrier,
    pattern_carrier,
)
from cubed.core.surface_conditions import (
    ComplementaryRegion,
    DoubleCurveSpec,
    Face,
    SurfaceModel,
)
from cubed.core.types import FormatError, ReduceMode
from cubed.utils.rotation import Region, RegionMap


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


########################################################
########            Cube complexes             #########
########################################################


class GluingModel(_Strict):
    a: int
    fa: int
    b: int
    fb: int
    sym: str = "id"


class CubesFile(_Strict):
    cubes: int = Field(ge=1)
    gluings: list[GluingModel] = Field(default_factory=list)
    name: str = ""

    def build(self) -> CubeComplex:
        return build_complex(self.cubes, [Gluing(**g.model_dump()) for g in self.gluings])


########################################################
########      Region maps and torus patterns   #########
########################################################


class RegionModel(_Strict):
    walks: list[list[int]]
    genus: int = 0
    label: int | None = None
    name: str = ""


class RegionMapModel(_Strict):
    """Either explicit regions, or a rotation system from which the regions are traced."""

    n_vertices: int
    edges: list[tuple[int, int]]
    regions: list[RegionModel] | None = None
    rotation: dict[int, list[int]] | None = None
    carrier_genus: int = 0
    vertex_kinds: list[str] = Field(default_factory=list)
    stems: dict[int, int] = Field(default_factory=dict)
    edge_labels: list[Any] = Field(default_factory=list)
    meridians: list[list[int]] | None = None
    name: str = ""

    def build(self) -> RegionMap:
        meridians = None if self.meridians is None else [tuple(m) for m in self.meridians]
        extra: dict[str, Any] = {
            "carrier_genus": self.carrier_genus,
            "vertex_kinds": list(self.vertex_kinds),
            "stems": dict(self.stems),
            "edge_labels": list(self.edge_labels),
            "meridians": meridians,
            "name": self.name,
        }
        if (self.regions is None) == (self.rotation is None):
            raise FormatError(f"Region map {self.name!r} needs exactly one of 'regions' or 'rotation'")
        if self.rotation is not None:
            return RegionMap.from_rotation(self.n_vertices, self.edges, self.rotation, **extra)
        return RegionMap(
            n_vertices=self.n_vertices,
            edges=list(self.edges),
            regions=[Region(walks=r.walks, genus=r.genus, label=r.label, name=r.name) for r in self.regions],
            **extra,
        )


class PatternLoopModel(_Strict):
    slope: tuple[int, int]
    multiplicity: int = 1


class PatternArcModel(_Strict):
    loop: str
    direction: tuple[int, int]
    end: str | None = None


class PatternModel(_Strict):
    loops: list[PatternLoopModel] = Field(default_factory=list)
    contractible: list[str] = Field(default_factory=list)
    arcs: list[PatternArcModel] = Field(default_factory=list)
    basis: tuple[str, str] = ("mu", "lambda")
    name: str = ""
    klein_bottle: bool = False

    def build(self, name: str = "") -> TorusPattern:
        return TorusPattern(
            loops=[PatternLoop(loop.slope, loop.multiplicity) for loop in self.loops],
            contractible=list(self.contractible),
            arcs=[PatternArc(arc.loop, arc.direction, arc.end) for arc in self.arcs],
            basis=self.basis,
            name=self.name or name,
            klein_bottle=self.klein_bottle,
        )


def _patterns(models: dict[str, PatternModel]) -> dict[str, TorusPattern]:
    return {name: model.build(name) for name, model in sorted(models.items())}


########################################################
########            Surface models             #########
########################################################


class FaceModel(_Strict):
    degree: int = Field(ge=0)
    name: str = ""
    boundary: bool = False


class DoubleCurveModel(_Strict):
    name: str
    closed: bool = True
    faces: list[int] = Field(default_factory=list)


class ComplementaryRegionModel(_Strict):
    name: str
    genus: int = Field(default=0, ge=0)
    boundary_graph: RegionMapModel


class SurfFile(_Strict):
    faces: list[FaceModel]
    double_curves: list[DoubleCurveModel] = Field(default_factory=list)
    triple_points: list[tuple[int, int, int]] = Field(default_factory=list)
    regions: list[ComplementaryRegionModel] = Field(default_factory=list)
    boundary_patterns: dict[str, PatternModel] = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)

    def build(self) -> SurfaceModel:
        return SurfaceModel(
            faces=[Face(degree=f.degree, name=f.name, boundary=f.boundary) for f in self.faces],
            double_curves=[DoubleCurveSpec(c.name, c.closed, list(c.faces)) for c in self.double_curves],
            triple_points=[tuple(t) for t in self.triple_points],
            regions=[
                ComplementaryRegion(name=r.name, genus=r.genus, boundary_graph=r.boundary_graph.build())
                for r in self.regions
            ],
            notes=list(self.notes),
            boundary_patterns=_patterns(self.boundary_patterns),
        )


########################################################
########             Hierarchies               #########
########################################################


class BoundaryCurveModel(_Strict):
    name: str
    on: int


class HierarchySurfaceModel(_Strict):
    name: str
    kind: str = "surface"
    boundary: list[BoundaryCurveModel] = Field(default_factory=list)


class CarrierModel(_Strict):
    """A stage carrier: an explicit graph, a named boundary pattern with region labels, or neither."""

    name: str
    genus: int = Field(default=0, ge=0)
    graph: RegionMapModel | None = None
    pattern: str | None = None
    labels: dict[str, int] = Field(default_factory=dict)
    meridian_slopes: list[tuple[int, int]] | None = None


class StageModel(_Strict):
    after: int
    carriers: list[CarrierModel] = Field(default_factory=list)


class HierFile(_Strict):
    name: str = ""
    surfaces: list[HierarchySurfaceModel]
    stages: list[StageModel] = Field(default_factory=list)
    boundary_patterns: dict[str, PatternModel] = Field(default_factory=dict)

    def build(self) -> HierarchySpec:
        patterns = _patterns(self.boundary_patterns)
        stages = []
        for stage in self.stages:
            carriers = []
            for c in stage.carriers:
                if c.graph is not None and c.pattern is not None:
                    raise FormatError(f"Carrier {c.name} gives both a graph and a pattern")
                if c.pattern is not None:
                    if c.pattern not in patterns:
                        raise FormatError(f"Carrier {c.name} names unknown pattern {c.pattern!r}")
                    pattern = patterns[c.pattern]
                    meridians = None
                    if c.meridian_slopes is not None:
                        meridians = [pattern.meridian_word(s) for s in c.meridian_slopes]
                    carriers.append(pattern_carrier(c.name, pattern, c.labels, meridians=meridians))
                else:
                    graph = None if c.graph is None else c.graph.build()
                    carriers.append(StageCarrier(name=c.name, genus=c.genus, graph=graph))
            stages.append(Stage(after=stage.after, carriers=carriers))
        return HierarchySpec(
            surfaces=[
                HierarchySurface(s.name, s.kind, [BoundaryCurve(b.name, b.on) for b in s.boundary])
                for s in self.surfaces
            ],
            stages=stages,
            boundary_patterns=patterns,
            name=self.name,
        )


########################################################
########              Disk graphs              #########
########################################################


class DiskVertexModel(_Strict):
    kind: Literal["DEGREE4", "TEE"]
    rotation: list[tuple[int, int]]
    label: int = 0
    stem: int | None = None


class DiskEdgeModel(_Strict):
    ends: tuple[tuple[Literal["v", "b"], int], tuple[Literal["v", "b"], int]]
    label: int = 0


class DgFile(_Strict):
    """Either `chords` (arcs between numbered boundary positions) or a full rotation system."""

    mode: ReduceMode = "theorem1"
    chords: list[tuple[int, int]] | None = None
    orders: list[list[int]] | None = None
    boundary: list[int] | None = None
    marks: list[int] = Field(default_factory=list)
    vertices: dict[int, DiskVertexModel] = Field(default_factory=dict)
    edges: dict[int, DiskEdgeModel] = Field(default_factory=dict)
    outer: list[tuple[tuple[int, int], tuple[int, int] | None]] = Field(default_factory=list)
    floating: int = Field(default=0, ge=0)
    max_label: int = 0

    def build(self, mode: ReduceMode | None = None) -> DiskGraph:
        mode = mode or self.mode
        if self.chords is not None:
            if self.boundary is not None or self.vertices or self.edges:
                raise FormatError("A disk graph gives either 'chords' or 'boundary'/'vertices'/'edges'")
            return chord_arrangement(self.chords, orders=self.orders, marks=tuple(self.marks), mode=mode)
        if self.boundary is None:
            raise FormatError("A disk graph needs 'chords' or 'boundary'")
        g = DiskGraph(
            boundary=list(self.boundary),
            vertices={
                k: DiskVertex(v.kind, [tuple(d) for d in v.rotation], v.label, v.stem)
                for k, v in self.vertices.items()
            },
            edges={k: DiskEdge([tuple(end) for end in e.ends], e.label) for k, e in self.edges.items()},
            marks=set(self.marks),
            floating=self.floating,
            outer={tuple(d): (None if c is None else tuple(c)) for d, c in self.outer},
            mode=mode,
            max_label=self.max_label,
        )
        g.validate()
        return g


########################################################
########              Entry points             #########
########################################################

FORMATS: dict[str, type[_Strict]] = {
    ".cubes": CubesFile,
    ".surf": SurfFile,
    ".hier": HierFile,
    ".dg": DgFile,
}


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _decode(data: bytes | str, source: str) -> dict:
    try:
        value = json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(value, dict):
        raise FormatError(f"{source}: expected a JSON object at the top level")
    return value


def parse_cubes(data: bytes | str, source: str = "<cubes>") -> CubeComplex:
    return CubesFile.model_validate(_decode(data, source)).build()


def parse_surface(data: bytes | str, source: str = "<surf>") -> SurfaceModel:
    return SurfFile.model_validate(_decode(data, source)).build()


def parse_hierarchy(data: bytes | str, source: str = "<hier>") -> HierarchySpec:
    return HierFile.model_validate(_decode(data, source)).build()


def parse_disk_graph(data: bytes | str, source: str = "<dg>", mode: ReduceMode | None = None) -> DiskGraph:
    return DgFile.model_validate(_decode(data, source)).build(mode)


def load_file(path: str | Path, mode: ReduceMode | None = None) -> tuple[Any, str]:
    """Parse a file by its suffix; returns the object and the sha256 of the raw bytes."""
    path = Path(path)
    suffix = path.suffix
    if suffix not in FORMATS:
        raise ValueError(f"Unknown input format: {suffix or path.name}. Supported: {sorted(FORMATS)}")
    data = path.read_bytes()
    source = str(path)
    if suffix == ".cubes":
        obj = parse_cubes(data, source)
    elif suffix == ".surf":
        obj = parse_surface(data, source)
    elif suffix == ".hier":
        obj = parse_hierarchy(data, source)
    else:
        obj = parse_disk_graph(data, source, mode)
    return obj, digest(data)
