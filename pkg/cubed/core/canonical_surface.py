"""
The canonical surface of a cubing and the graphs it leaves on the vertex regions.

Each cube carries three mid-squares, one per axis. The square (cube, a) has its
corners at the midpoints of the four cube edges parallel to a, so corners of
squares are identified exactly as edge classes are. Its four sides lie on the
faces whose axis is not a; gluing those faces glues the sides.
"""

from dataclasses import dataclass, field

from networkx.utils import UnionFind

from cubed.core.cube_complex import (
    EDGE_BY_CORNERS,
    EDGE_CORNERS,
    CubeComplex,
    VertexClass,
    corner_faces,
    edge_axis,
    face_axis,
    free_axes,
    validate_npc,
    vertex_link,
)
from cubed.core.types import CheckResult, NotValidated, RegionGraphError, Report, fold_verdicts
from cubed.utils.rotation import RegionMap, classify_loop, edge_of, small_loops


def _square_edge(axis: int, u_value: int, v_value: int) -> int:
    return 4 * axis + u_value + 2 * v_value


def _side_direction(axis: int, face: int) -> tuple[int, int]:
    """
    Cube edges at the start and end of a square's side on `face`, traversed
    counterclockwise in the (u, v) coordinates of the square's free axes.
    """
    u, _ = free_axes(axis)
    value = 0 if face < 3 else 1
    if face_axis(face) == u:
        positions = ((0, 1), (0, 0)) if value == 0 else ((1, 0), (1, 1))
    else:
        positions = ((0, 0), (1, 0)) if value == 0 else ((1, 1), (0, 1))
    return tuple(_square_edge(axis, *p) for p in positions)


def _map_edge(cmap: dict[int, int], edge: int) -> int:
    p, q = EDGE_CORNERS[edge]
    return EDGE_BY_CORNERS[frozenset((cmap[p], cmap[q]))]


########################################################
########     Types for the Canonical Surface   #########
########################################################


@dataclass(frozen=True)
class MidSquare:
    cube: int
    axis: int
    # (face, glued square or None) per side, counterclockwise
    sides: tuple[tuple[int, tuple[int, int] | None], ...]

    def to_dict(self):
        return {
            "cube": self.cube,
            "axis": self.axis,
            "sides": [[f, None if s is None else list(s)] for f, s in self.sides],
        }


@dataclass
class SurfaceComponent:
    squares: list[tuple[int, int]]
    euler_characteristic: int
    orientable: bool
    boundary_curves: int

    @property
    def type_name(self) -> str:
        chi, b = self.euler_characteristic, self.boundary_curves
        if self.orientable:
            genus = (2 - chi - b) // 2
            name = {0: "sphere", 1: "torus"}.get(genus, f"genus {genus} surface")
        else:
            crosscaps = 2 - chi - b
            name = {1: "projective plane", 2: "Klein bottle"}.get(
                crosscaps, f"non-orientable genus {crosscaps} surface"
            )
        if b:
            name += f" with {b} boundary curves"
        return name

    def to_dict(self):
        return {
            "squares": len(self.squares),
            "euler_characteristic": self.euler_characteristic,
            "orientable": self.orientable,
            "boundary_curves": self.boundary_curves,
            "type": self.type_name,
        }


@dataclass
class DoubleCurve:
    """A chain of double arcs, one per (cube, axis), closed or ending on the boundary."""

    arcs: list[tuple[int, int]]
    closed: bool

    def to_dict(self):
        return {"arcs": [list(a) for a in self.arcs], "closed": self.closed}


@dataclass
class SurfaceFace:
    """A face of S: the quarter-squares around one edge class."""

    edge_class: int
    degree: int
    boundary: bool

    def to_dict(self):
        return {"edge_class": self.edge_class, "degree": self.degree, "boundary": self.boundary}


@dataclass
class CanonicalSurface:
    complex: CubeComplex = field(repr=False)
    squares: list[MidSquare]
    components: list[SurfaceComponent]
    double_arcs: list[tuple[int, int]]
    double_curves: list[DoubleCurve]
    triple_points: list[int]
    faces: list[SurfaceFace]
    euler_characteristic: int

    def summary(self) -> dict:
        return {
            "squares": len(self.squares),
            "components": [c.to_dict() for c in self.components],
            "euler_characteristic": self.euler_characteristic,
            "double_arcs": len(self.double_arcs),
            "double_curves": len(self.double_curves),
            "closed_double_curves": sum(1 for c in self.double_curves if c.closed),
            "triple_points": len(self.triple_points),
            "face_degrees": sorted(f.degree for f in self.faces),
        }


def build_canonical_surface(c: CubeComplex, require_npc: bool = True) -> CanonicalSurface:
    """Glue the mid-squares of every cube along the face gluings of the complex."""
    if require_npc:
        report = validate_npc(c)
        if report.verdict != "PASS":
            raise NotValidated("The canonical surface needs a cubing that passes validate_npc")

    keys = [(cube, a) for cube in range(c.n_cubes) for a in range(3)]
    uf = UnionFind(keys)
    # relation[(square, other)] = +1 when orientations must agree
    relations: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {k: [] for k in keys}
    squares = []
    side_classes = set()
    boundary_sides = []

    for cube, a in keys:
        sides = []
        for face in range(6):
            if face_axis(face) == a:
                continue
            start, end = _side_direction(a, face)
            glued = c.neighbour(cube, face)
            if glued is None:
                sides.append((face, None))
                side_classes.add((cube, a, face))
                boundary_sides.append((cube, a, face))
                continue
            other, other_face, _ = glued
            cmap = c.corner_map(cube, face)
            image_start, image_end = _map_edge(cmap, start), _map_edge(cmap, end)
            other_axis = edge_axis(image_start)
            uf.union((cube, a), (other, other_axis))
            sides.append((face, (other, other_axis)))
            side_classes.add(min((cube, a, face), (other, other_axis, other_face)))
            natural = _side_direction(other_axis, other_face)
            relation = -1 if (image_start, image_end) == natural else 1
            relations[(cube, a)].append(((other, other_axis), relation))
        squares.append(MidSquare(cube, a, tuple(sides)))

    groups: dict = {}
    for key in keys:
        groups.setdefault(uf[key], []).append(key)
    components = []
    for members in sorted(groups.values()):
        components.append(_component(c, members, relations, side_classes, boundary_sides))

    arc_uf = UnionFind(keys)
    for cube, axis in keys:
        for face in (axis, axis + 3):
            glued = c.neighbour(cube, face)
            if glued is not None:
                arc_uf.union((cube, axis), (glued[0], face_axis(glued[1])))
    arc_groups: dict = {}
    for key in keys:
        arc_groups.setdefault(arc_uf[key], []).append(key)
    double_curves = [
        DoubleCurve(
            arcs=sorted(members),
            closed=all(c.is_glued(cube, f) for cube, axis in members for f in (axis, axis + 3)),
        )
        for members in sorted(arc_groups.values())
    ]

    faces = [SurfaceFace(e.index, e.degree, e.boundary) for e in c.edge_classes]
    chi = len(c.edge_classes) - len(side_classes) + len(keys)
    surface = CanonicalSurface(
        complex=c,
        squares=squares,
        components=components,
        double_arcs=list(keys),
        double_curves=double_curves,
        triple_points=list(range(c.n_cubes)),
        faces=faces,
        euler_characteristic=chi,
    )
    return surface


def _component(c, members, relations, side_classes, boundary_sides) -> SurfaceComponent:
    member_set = set(members)
    corners = {
        c.edge_class_of[(cube, _square_edge(a, u, v))]
        for cube, a in members
        for u in (0, 1)
        for v in (0, 1)
    }
    sides = {s for s in side_classes if (s[0], s[1]) in member_set}
    chi = len(corners) - len(sides) + len(members)

    orientation = {members[0]: 1}
    orientable = True
    queue = [members[0]]
    while queue:
        square = queue.pop()
        for other, relation in relations[square]:
            wanted = orientation[square] * relation
            if other not in orientation:
                orientation[other] = wanted
                queue.append(other)
            elif orientation[other] != wanted:
                orientable = False

    circles = UnionFind()
    for cube, a, face in boundary_sides:
        if (cube, a) not in member_set:
            continue
        start, end = _side_direction(a, face)
        circles.union(
            ("side", cube, a, face),
            ("corner", c.edge_class_of[(cube, start)]),
            ("corner", c.edge_class_of[(cube, end)]),
        )
    boundary_curves = len({circles[x] for x in list(circles)})
    return SurfaceComponent(sorted(members), chi, orientable, boundary_curves)


########################################################
########         Region graphs on spheres      #########
########################################################


@dataclass
class RegionGraph:
    """The graph the canonical surface leaves on the sphere around a vertex: dual of its link."""

    vertex: VertexClass
    map: RegionMap

    @property
    def n_vertices(self) -> int:
        return self.map.n_vertices

    @property
    def n_edges(self) -> int:
        return len(self.map.edges)

    def face_degrees(self) -> list[int]:
        return [self.map.region_degree(r) for r in range(len(self.map.regions))]

    def to_dict(self):
        return {
            "vertex": self.vertex.index,
            "vertices": self.n_vertices,
            "edges": self.n_edges,
            "face_degrees": sorted(self.face_degrees()),
        }


def region_graph(c: CubeComplex, v) -> RegionGraph:
    """Dualise the link of v: one triple point per link triangle, one edge per link edge."""
    link = vertex_link(c, v)
    if not link.interior or not link.is_closed:
        raise RegionGraphError(f"Vertex {link.vertex.index} is not interior")
    signs = link.orientation()
    if signs is None or link.euler_characteristic() != 2 or not link.is_connected():
        raise RegionGraphError(f"Link of vertex {link.vertex.index} is not an oriented sphere")

    edges = [(e.sides[0][0], e.sides[1][0]) for e in link.edges]
    dart_at: dict[tuple[int, int], int] = {}
    for e in link.edges:
        for side_index, (t, face, _, _) in enumerate(e.sides):
            dart_at[(t, face)] = 2 * e.index + side_index

    rotation = {}
    for t, (_, k) in enumerate(link.triangles):
        faces_by_axis = {face_axis(f): f for f in corner_faces(k)}
        # boundary order of the triangle: edge opposite axis 2, then 0, then 1
        order = [dart_at[(t, faces_by_axis[a])] for a in (2, 0, 1)]
        rotation[t] = order if signs[t] == 1 else order[::-1]

    m = RegionMap.from_rotation(
        len(link.triangles), edges, rotation, name=f"vertex {link.vertex.index}"
    )
    return RegionGraph(vertex=link.vertex, map=m)


def check_region_conditions(g: RegionGraph) -> list[CheckResult]:
    """Face degrees at least 4, and every loop meeting the graph 2 or 3 times cuts off an arc or a Y."""
    m = g.map
    name = f"vertex {g.vertex.index}"
    small_faces = [
        f"{name}: face {r} has degree {d}" for r, d in enumerate(g.face_degrees()) if d < 4
    ]
    face_check = CheckResult(
        name="region_face_degree",
        verdict="FAIL" if small_faces else "PASS",
        details={"face_degrees": sorted(g.face_degrees())},
        locations=small_faces,
    )

    loops, _ = small_loops(m, max_crossings=3)
    two_failures, lenient_failures, three_failures = [], [], []
    counts = {1: 0, 2: 0, 3: 0}
    for loop in loops:
        k = loop.crossing_count
        if loop.kind != "cut":
            continue
        counts[k] += 1
        verdict = classify_loop(m, loop)
        if verdict != "ESSENTIAL":
            continue
        where = f"{name}: loop crossing edges {[edge_of(x) for x in loop.crossings]}"
        if k <= 2:
            two_failures.append(where)
            if not _crosses_parallel_pair(m, loop):
                lenient_failures.append(where)
        else:
            three_failures.append(where)

    arc_check = CheckResult(
        name="region_two_point_loops",
        verdict="FAIL" if two_failures else "PASS",
        details={"loops": counts[1] + counts[2]},
        locations=two_failures,
    )
    if bool(two_failures) != bool(lenient_failures):
        arc_check.notes.append(
            "ignoring loops that cross a pair of parallel edges, this check would "
            + ("pass" if not lenient_failures else "fail")
        )
    y_check = CheckResult(
        name="region_three_point_loops",
        verdict="FAIL" if three_failures else "PASS",
        details={"loops": counts[3]},
        locations=three_failures,
    )
    return [face_check, arc_check, y_check]


def _crosses_parallel_pair(m: RegionMap, loop) -> bool:
    if loop.crossing_count != 2:
        return False
    first, second = (m.edges[edge_of(x)] for x in loop.crossings)
    return set(first) == set(second)


def check_filling(c: CubeComplex) -> CheckResult:
    """One complementary region per vertex class: a ball when its link is a sphere, a collar on the boundary."""
    census = []
    failures = []
    for vertex in c.vertex_classes:
        link = vertex_link(c, vertex.index)
        if not vertex.interior:
            census.append({"vertex": vertex.index, "region": "collar"})
            continue
        sphere = (
            link.is_closed
            and link.is_connected()
            and link.euler_characteristic() == 2
            and link.orientation() is not None
        )
        census.append({"vertex": vertex.index, "region": "ball" if sphere else "not a ball"})
        if not sphere:
            failures.append(f"vertex {vertex.index}: complementary region is not a ball")
    return CheckResult(
        name="filling",
        verdict="FAIL" if failures else "PASS",
        details={
            "regions": len(census),
            "balls": sum(1 for r in census if r["region"] == "ball"),
            "collars": sum(1 for r in census if r["region"] == "collar"),
        },
        locations=failures,
    )


def surface_report(c: CubeComplex) -> Report:
    """Canonical surface census, region graph conditions at every interior vertex, and filling."""
    surface = build_canonical_surface(c)
    checks = []
    per_condition: dict[str, list[CheckResult]] = {}
    for vertex in c.vertex_classes:
        if not vertex.interior:
            continue
        for result in check_region_conditions(region_graph(c, vertex.index)):
            per_condition.setdefault(result.name, []).append(result)
    for name, results in per_condition.items():
        checks.append(
            CheckResult(
                name=name,
                verdict=fold_verdicts([r.verdict for r in results]),
                details={"regions": len(results)},
                locations=[loc for r in results for loc in r.locations],
                notes=sorted({n for r in results for n in r.notes}),
            )
        )
    checks.append(check_filling(c))
    chi_by_components = sum(comp.euler_characteristic for comp in surface.components)
    chi_by_quarters = quarter_square_euler(c)
    values = {chi_by_components, chi_by_quarters, surface.euler_characteristic}
    details = {
        "from_cells": surface.euler_characteristic,
        "from_components": chi_by_components,
        "from_quarters": chi_by_quarters,
    }
    if c.is_closed:
        # closed: edge classes minus three per cube
        details["from_edge_classes"] = len(c.edge_classes) - 3 * c.n_cubes
        values.add(details["from_edge_classes"])
    checks.append(
        CheckResult(
            name="surface_euler_characteristic",
            verdict="PASS" if len(values) == 1 else "FAIL",
            details=details,
        )
    )
    verdict = fold_verdicts([check.verdict for check in checks])
    return Report(
        command="surface",
        input_digest=c.digest(),
        checks=checks,
        certificate="canonical surface satisfies the region conditions" if verdict == "PASS" else None,
        info=surface.summary(),
    )


def quarter_square_euler(c: CubeComplex) -> int:
    """Euler characteristic of S from its subdivision into quarter-squares around edge midpoints."""
    vertices, edges = set(), set()
    n_quarters = 0
    for cube in range(c.n_cubes):
        for a in range(3):
            vertices.add(("centre", cube, a))
            n_quarters += 4
            for face in range(6):
                if face_axis(face) == a:
                    continue
                glued = c.neighbour(cube, face)
                cmap = c.corner_map(cube, face) if glued else None
                ends = _side_direction(a, face)
                side = {(cube, face, a)}
                if glued:
                    side.add((glued[0], glued[1], edge_axis(_map_edge(cmap, ends[0]))))
                side = frozenset(side)
                vertices.add(("mid", side))
                edges.add(("spoke", cube, a, face))
                for corner_edge in ends:
                    vertices.add(("corner", c.edge_class_of[(cube, corner_edge)]))
                    half = {(cube, corner_edge)}
                    if glued:
                        half.add((glued[0], _map_edge(cmap, corner_edge)))
                    edges.add(("half", side, frozenset(half)))
    return len(vertices) - len(edges) + n_quarters
