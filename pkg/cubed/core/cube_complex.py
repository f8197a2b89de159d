"""
Cube complexes glued from standard cubes along their square faces.

Cube combinatorics are fixed once here and every orbit chase in the package
goes through these tables:

- corner k has coordinates (k & 1, (k >> 1) & 1, (k >> 2) & 1), i.e. k = x + 2y + 4z
- face f lies on axis f % 3 at coordinate 0 (f < 3) or 1 (f >= 3), so f and f + 3 are parallel
- the four corners of a face are listed in position order (0,0), (1,0), (1,1), (0,1)
  in the two remaining axes, smaller axis first
- edge e runs along axis e // 4; e % 4 = (bit of the smaller other axis) + 2 * (bit of the larger)

A gluing (a, fa, b, fb, sym) sends the corner at position i of face fa of cube a
to the corner at position sym(i) of face fb of cube b.
"""

import hashlib
import json
import uuid
from dataclasses import dataclass, field
from itertools import combinations, product

import networkx as nx
from networkx.utils import UnionFind

from cubed.core.types import (
    BadDihedral,
    CheckResult,
    CubedInputError,
    DuplicateGluing,
    InconsistentInvolution,
    NotClosedLink,
    Report,
    fold_verdicts,
)

SYMMETRIES = ("id", "r90", "r180", "r270", "m0", "m1", "m2", "m3")
_ROTATIONS = ("id", "r90", "r180", "r270")
_FACE_POSITIONS = ((0, 0), (1, 0), (1, 1), (0, 1))


def apply_symmetry(sym: str, position: int) -> int:
    """Act on a face-corner position 0..3 by a symmetry of the square."""
    if sym in _ROTATIONS:
        return (position + _ROTATIONS.index(sym)) % 4
    return (int(sym[1]) - position) % 4


def invert_symmetry(sym: str) -> str:
    if sym in _ROTATIONS:
        return _ROTATIONS[(-_ROTATIONS.index(sym)) % 4]
    return sym


def corner_bits(corner: int) -> tuple[int, int, int]:
    return (corner & 1, (corner >> 1) & 1, (corner >> 2) & 1)


def corner_from_bits(bits: tuple[int, int, int] | list[int]) -> int:
    return bits[0] + 2 * bits[1] + 4 * bits[2]


def face_axis(face: int) -> int:
    return face % 3


def face_side(face: int) -> int:
    return 0 if face < 3 else 1


def free_axes(axis: int) -> tuple[int, int]:
    first, second = (a for a in range(3) if a != axis)
    return first, second


def _face_corners(face: int) -> tuple[int, ...]:
    axis = face_axis(face)
    first, second = free_axes(axis)
    corners = []
    for u, v in _FACE_POSITIONS:
        bits = [0, 0, 0]
        bits[axis] = face_side(face)
        bits[first] = u
        bits[second] = v
        corners.append(corner_from_bits(bits))
    return tuple(corners)


def _edge_corners(edge: int) -> tuple[int, int]:
    axis = edge // 4
    first, second = free_axes(axis)
    bits = [0, 0, 0]
    bits[first] = edge % 4 & 1
    bits[second] = edge % 4 >> 1
    low = corner_from_bits(bits)
    return low, low | (1 << axis)


FACE_CORNERS: tuple[tuple[int, ...], ...] = tuple(_face_corners(f) for f in range(6))
EDGE_CORNERS: tuple[tuple[int, int], ...] = tuple(_edge_corners(e) for e in range(12))
EDGE_BY_CORNERS: dict[frozenset[int], int] = {
    frozenset(ends): e for e, ends in enumerate(EDGE_CORNERS)
}


def edge_axis(edge: int) -> int:
    return edge // 4


def edge_faces(edge: int) -> tuple[int, int]:
    """The two faces of a cube containing the given edge."""
    low = corner_bits(EDGE_CORNERS[edge][0])
    first, second = free_axes(edge_axis(edge))
    return first + 3 * low[first], second + 3 * low[second]


def corner_faces(corner: int) -> tuple[int, int, int]:
    bits = corner_bits(corner)
    return tuple(axis + 3 * bits[axis] for axis in range(3))


def axis_between(c0: int, c1: int) -> int:
    """Axis of the cube edge joining two adjacent corners."""
    return ((c0 ^ c1) & 7).bit_length() - 1


########################################################
########        Types for Cube Complexes       #########
########################################################


@dataclass(frozen=True)
class Gluing:
    a: int
    fa: int
    b: int
    fb: int
    sym: str = "id"

    def reverse(self) -> "Gluing":
        return Gluing(self.b, self.fb, self.a, self.fa, invert_symmetry(self.sym))

    def corner_map(self) -> dict[int, int]:
        """Corner of cube a on face fa -> corner of cube b on face fb."""
        source = FACE_CORNERS[self.fa]
        target = FACE_CORNERS[self.fb]
        return {source[i]: target[apply_symmetry(self.sym, i)] for i in range(4)}

    def to_dict(self):
        return {"a": self.a, "fa": self.fa, "b": self.b, "fb": self.fb, "sym": self.sym}

    @classmethod
    def from_dict(cls, data: dict) -> "Gluing":
        return cls(
            a=data.get("a"),
            fa=data.get("fa"),
            b=data.get("b"),
            fb=data.get("fb"),
            sym=data.get("sym", "id"),
        )


@dataclass(frozen=True)
class EdgeClass:
    """An edge of the glued cell structure; degree counts the cube-edges around it."""

    index: int
    representatives: tuple[tuple[int, int], ...]
    boundary: bool

    @property
    def degree(self) -> int:
        return len(self.representatives)

    def to_dict(self):
        return {
            "index": self.index,
            "degree": self.degree,
            "boundary": self.boundary,
            "representatives": [list(r) for r in self.representatives],
        }


@dataclass(frozen=True)
class VertexClass:
    index: int
    corners: tuple[tuple[int, int], ...]
    interior: bool
    owner: str = field(default="", compare=False, repr=False)

    def to_dict(self):
        return {
            "index": self.index,
            "interior": self.interior,
            "corners": [list(c) for c in self.corners],
        }


@dataclass(frozen=True)
class CubeComplex:
    n_cubes: int
    gluings: tuple[Gluing, ...]
    partner: dict[tuple[int, int], tuple[int, int, str]] = field(compare=False, repr=False)
    edge_classes: tuple[EdgeClass, ...] = field(compare=False, repr=False)
    vertex_classes: tuple[VertexClass, ...] = field(compare=False, repr=False)
    edge_class_of: dict[tuple[int, int], int] = field(compare=False, repr=False)
    vertex_class_of: dict[tuple[int, int], int] = field(compare=False, repr=False)
    edge_end_class_of: dict[tuple[int, int, int], int] = field(compare=False, repr=False)
    token: str = field(default_factory=lambda: uuid.uuid4().hex, compare=False, repr=False)

    @property
    def cubes(self) -> range:
        return range(self.n_cubes)

    @property
    def boundary_faces(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (cube, face)
            for cube in range(self.n_cubes)
            for face in range(6)
            if (cube, face) not in self.partner
        )

    @property
    def is_closed(self) -> bool:
        return len(self.partner) == 6 * self.n_cubes

    def is_glued(self, cube: int, face: int) -> bool:
        return (cube, face) in self.partner

    def neighbour(self, cube: int, face: int) -> tuple[int, int, str] | None:
        """(cube, face, sym) glued to the given face, or None on the boundary."""
        return self.partner.get((cube, face))

    def corner_map(self, cube: int, face: int) -> dict[int, int]:
        other, other_face, sym = self.partner[(cube, face)]
        return Gluing(cube, face, other, other_face, sym).corner_map()

    def to_dict(self):
        return {"cubes": self.n_cubes, "gluings": [g.to_dict() for g in self.gluings]}

    def digest(self) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()


def _sorted_groups(uf: UnionFind, keys) -> list[tuple]:
    groups: dict = {}
    for key in keys:
        groups.setdefault(uf[key], []).append(key)
    return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])


def build_complex(n_cubes: int, gluings) -> CubeComplex:
    """
    Glue n_cubes standard cubes by the given records and compute edge and vertex classes.

    Records may be Gluing instances, dicts or (a, fa, b, fb, sym) tuples. A record
    and its reverse may both be listed as long as they agree.
    """
    if not isinstance(n_cubes, int) or n_cubes < 1:
        raise CubedInputError(f"A cube complex needs at least one cube, got {n_cubes!r}")

    partner: dict[tuple[int, int], tuple[int, int, str]] = {}
    kept: list[Gluing] = []
    seen: set[Gluing] = set()
    for raw in gluings:
        gluing = _coerce_gluing(raw)
        _check_record(gluing, n_cubes)
        if gluing in seen:
            raise DuplicateGluing(f"Gluing {gluing.to_dict()} is listed twice")
        seen.add(gluing)

        here = partner.get((gluing.a, gluing.fa))
        there = partner.get((gluing.b, gluing.fb))
        if here is None and there is None:
            partner[(gluing.a, gluing.fa)] = (gluing.b, gluing.fb, gluing.sym)
            partner[(gluing.b, gluing.fb)] = (gluing.a, gluing.fa, invert_symmetry(gluing.sym))
            kept.append(gluing)
        elif here == (gluing.b, gluing.fb, gluing.sym):
            continue  # reverse of an earlier record
        elif here is not None and here[:2] == (gluing.b, gluing.fb):
            raise InconsistentInvolution(
                f"Face ({gluing.a}, {gluing.fa}) is glued to ({gluing.b}, {gluing.fb}) "
                f"by {here[2]} and by {gluing.sym}; the reverse record disagrees"
            )
        else:
            taken = (gluing.a, gluing.fa) if here is not None else (gluing.b, gluing.fb)
            raise DuplicateGluing(f"Face {taken} appears in more than one gluing")

    token = uuid.uuid4().hex
    edge_uf, vertex_uf, end_uf = UnionFind(), UnionFind(), UnionFind()
    for gluing in kept:
        cmap = gluing.corner_map()
        corners = FACE_CORNERS[gluing.fa]
        for p in corners:
            vertex_uf.union((gluing.a, p), (gluing.b, cmap[p]))
        for i in range(4):
            p, q = corners[i], corners[(i + 1) % 4]
            edge = EDGE_BY_CORNERS[frozenset((p, q))]
            image = EDGE_BY_CORNERS[frozenset((cmap[p], cmap[q]))]
            edge_uf.union((gluing.a, edge), (gluing.b, image))
            for x, y in ((p, q), (q, p)):
                end_uf.union(
                    (gluing.a, x, axis_between(x, y)),
                    (gluing.b, cmap[x], axis_between(cmap[x], cmap[y])),
                )

    all_edges = [(cube, e) for cube in range(n_cubes) for e in range(12)]
    all_corners = [(cube, k) for cube in range(n_cubes) for k in range(8)]
    all_ends = [(cube, k, axis) for cube in range(n_cubes) for k in range(8) for axis in range(3)]

    edge_classes = []
    edge_class_of = {}
    for index, group in enumerate(_sorted_groups(edge_uf, all_edges)):
        boundary = any(
            (cube, face) not in partner for cube, e in group for face in edge_faces(e)
        )
        edge_classes.append(EdgeClass(index, group, boundary))
        edge_class_of.update({member: index for member in group})

    vertex_classes = []
    vertex_class_of = {}
    for index, group in enumerate(_sorted_groups(vertex_uf, all_corners)):
        interior = all((cube, face) in partner for cube, k in group for face in corner_faces(k))
        vertex_classes.append(VertexClass(index, group, interior, owner=token))
        vertex_class_of.update({member: index for member in group})

    edge_end_class_of = {}
    for index, group in enumerate(_sorted_groups(end_uf, all_ends)):
        edge_end_class_of.update({member: index for member in group})

    return CubeComplex(
        n_cubes=n_cubes,
        gluings=tuple(kept),
        partner=partner,
        edge_classes=tuple(edge_classes),
        vertex_classes=tuple(vertex_classes),
        edge_class_of=edge_class_of,
        vertex_class_of=vertex_class_of,
        edge_end_class_of=edge_end_class_of,
        token=token,
    )


def _coerce_gluing(raw) -> Gluing:
    if isinstance(raw, Gluing):
        return raw
    if isinstance(raw, dict):
        return Gluing.from_dict(raw)
    if isinstance(raw, list | tuple) and len(raw) == 5:
        return Gluing(*raw)
    raise CubedInputError(f"Cannot read gluing record {raw!r}")


def _check_record(gluing: Gluing, n_cubes: int) -> None:
    for cube in (gluing.a, gluing.b):
        if not isinstance(cube, int) or not 0 <= cube < n_cubes:
            raise CubedInputError(f"Cube {cube!r} out of range 0..{n_cubes - 1}")
    for face in (gluing.fa, gluing.fb):
        if not isinstance(face, int) or not 0 <= face < 6:
            raise CubedInputError(f"Face {face!r} out of range 0..5")
    if gluing.sym not in SYMMETRIES:
        raise BadDihedral(f"Unknown square symmetry: {gluing.sym}. Supported: {list(SYMMETRIES)}")
    if (gluing.a, gluing.fa) == (gluing.b, gluing.fb):
        raise InconsistentInvolution(f"Face ({gluing.a}, {gluing.fa}) is glued to itself")


def disjoint_union(first: CubeComplex, second: CubeComplex) -> CubeComplex:
    shift = first.n_cubes
    moved = [Gluing(g.a + shift, g.fa, g.b + shift, g.fb, g.sym) for g in second.gluings]
    return build_complex(first.n_cubes + second.n_cubes, [*first.gluings, *moved])


def edge_degrees(c: CubeComplex) -> dict[EdgeClass, int]:
    """Number of square corners around each edge class; boundary classes carry `boundary=True`."""
    return {edge: edge.degree for edge in c.edge_classes}


########################################################
########           Types for Vertex Links      #########
########################################################


def _axis_sign(i: int, j: int) -> int:
    return 1 if (j - i) % 3 == 1 else -1


@dataclass(frozen=True)
class LinkEdge:
    """
    An edge of a vertex link. Each side is (triangle, cube face, axis at ends[0], axis at ends[1]);
    interior edges have two sides, free edges one.
    """

    index: int
    ends: tuple[int, int]
    sides: tuple[tuple[int, int, int, int], ...]

    @property
    def free(self) -> bool:
        return len(self.sides) == 1

    def to_dict(self):
        return {"index": self.index, "ends": list(self.ends), "sides": [list(s) for s in self.sides]}


@dataclass(frozen=True)
class VertexLink:
    """
    Triangulated link of a vertex class: one triangle per cube corner in the class.

    Link vertices are the edge-ends at the vertex, numbered 0..m-1 locally;
    triangle t has corners (vertex along x, along y, along z).
    """

    vertex: VertexClass
    triangles: tuple[tuple[int, int], ...]
    triangle_vertices: tuple[tuple[int, int, int], ...]
    edges: tuple[LinkEdge, ...]
    n_vertices: int

    @property
    def interior(self) -> bool:
        return self.vertex.interior

    @property
    def free_edges(self) -> list[LinkEdge]:
        return [e for e in self.edges if e.free]

    @property
    def is_closed(self) -> bool:
        return not self.free_edges

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.triangles)

    def triangle_edges(self, t: int) -> tuple[int, ...]:
        return tuple(
            sorted(e.index for e in self.edges for side in e.sides if side[0] == t)
        )

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.n_vertices))
        for e in self.edges:
            g.add_edge(*e.ends, key=e.index)
        return g

    def is_connected(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.triangles)))
        for e in self.edges:
            if len(e.sides) == 2:
                g.add_edge(e.sides[0][0], e.sides[1][0])
        return len(self.triangles) > 0 and nx.is_connected(g)

    def orientation(self) -> dict[int, int] | None:
        """A coherent +-1 orientation of the triangles, or None if the link is non-orientable."""
        adjacency: dict[int, list[tuple[int, int]]] = {t: [] for t in range(len(self.triangles))}
        for e in self.edges:
            if len(e.sides) != 2:
                continue
            (t1, _, i1, j1), (t2, _, i2, j2) = e.sides
            # coherent orientations run opposite ways along the shared edge
            relation = -_axis_sign(i1, j1) * _axis_sign(i2, j2)
            adjacency[t1].append((t2, relation))
            adjacency[t2].append((t1, relation))
        signs: dict[int, int] = {}
        for start in adjacency:
            if start in signs:
                continue
            signs[start] = 1
            queue = [start]
            while queue:
                t = queue.pop()
                for other, relation in adjacency[t]:
                    wanted = signs[t] * relation
                    if other not in signs:
                        signs[other] = wanted
                        queue.append(other)
                    elif signs[other] != wanted:
                        return None
        return signs

    def to_dict(self):
        return {
            "vertex": self.vertex.index,
            "interior": self.interior,
            "triangles": [list(t) for t in self.triangles],
            "n_vertices": self.n_vertices,
            "n_edges": len(self.edges),
            "euler_characteristic": self.euler_characteristic(),
        }


def _resolve_vertex(c: CubeComplex, v) -> VertexClass:
    if isinstance(v, VertexClass):
        if v.owner and v.owner != c.token:
            raise CubedInputError(f"Vertex class {v.index} belongs to a different complex")
        v = v.index
    if not isinstance(v, int) or not 0 <= v < len(c.vertex_classes):
        raise CubedInputError(f"Complex has no vertex class {v!r}")
    return c.vertex_classes[v]


def vertex_link(c: CubeComplex, v, require_interior: bool = False) -> VertexLink:
    """
    Build the link of vertex class v. Triangle edges are paired exactly when the
    square faces carrying them are glued.
    """
    vertex = _resolve_vertex(c, v)
    triangles = vertex.corners
    tri_index = {corner: t for t, corner in enumerate(triangles)}

    global_ends = sorted(
        {c.edge_end_class_of[(cube, k, axis)] for cube, k in triangles for axis in range(3)}
    )
    local = {g: i for i, g in enumerate(global_ends)}
    triangle_vertices = tuple(
        tuple(local[c.edge_end_class_of[(cube, k, axis)]] for axis in range(3))
        for cube, k in triangles
    )

    edges: list[LinkEdge] = []
    done: set[tuple[int, int]] = set()
    for t, (cube, k) in enumerate(triangles):
        for face in corner_faces(k):
            if (t, face) in done:
                continue
            done.add((t, face))
            i, j = free_axes(face_axis(face))
            ends = (triangle_vertices[t][i], triangle_vertices[t][j])
            sides = [(t, face, i, j)]
            if c.is_glued(cube, face):
                other, other_face, _ = c.neighbour(cube, face)
                cmap = c.corner_map(cube, face)
                image = cmap[k]
                t2 = tri_index[(other, image)]
                i2 = axis_between(image, cmap[k ^ (1 << i)])
                j2 = axis_between(image, cmap[k ^ (1 << j)])
                done.add((t2, other_face))
                sides.append((t2, other_face, i2, j2))
            edges.append(LinkEdge(len(edges), ends, tuple(sides)))

    link = VertexLink(
        vertex=vertex,
        triangles=triangles,
        triangle_vertices=triangle_vertices,
        edges=tuple(edges),
        n_vertices=len(global_ends),
    )
    if require_interior and not link.is_closed:
        raise NotClosedLink(
            f"Link of vertex {vertex.index} has {len(link.free_edges)} free edges"
        )
    return link


def link_three_cycles(link: VertexLink) -> list[tuple[int, int, int]]:
    """Every 3-cycle of link edges, as sorted triples of link-edge indices."""
    g = link.graph()
    simple = nx.Graph(g)
    simple.remove_edges_from(nx.selfloop_edges(simple))
    cycles = set()
    for clique in nx.enumerate_all_cliques(simple):
        if len(clique) < 3:
            continue
        if len(clique) > 3:
            break
        x, y, z = clique
        for e1, e2, e3 in product(g[x][y], g[y][z], g[x][z]):
            cycles.add(tuple(sorted((e1, e2, e3))))
    return sorted(cycles)


########################################################
########        Non-positive curvature         #########
########################################################


def check_edge_degrees(c: CubeComplex) -> CheckResult:
    low = [e for e in c.edge_classes if not e.boundary and e.degree < 4]
    exempt = [e for e in c.edge_classes if e.boundary]
    result = CheckResult(
        name="edge_degree",
        verdict="FAIL" if low else "PASS",
        details={
            "interior_degrees": sorted(e.degree for e in c.edge_classes if not e.boundary),
            "boundary_edges": len(exempt),
        },
        locations=[f"edge {e.index} has degree {e.degree}" for e in low],
    )
    if exempt:
        result.notes.append(
            f"{len(exempt)} boundary edge classes are exempt from the degree bound"
        )
    return result


def _sphere_problems(link: VertexLink) -> list[str]:
    problems = []
    if not link.is_closed:
        problems.append(f"{len(link.free_edges)} free link edges")
    if not link.is_connected():
        problems.append("link is disconnected")
    if link.euler_characteristic() != 2:
        problems.append(f"link Euler characteristic {link.euler_characteristic()}")
    if link.orientation() is None:
        problems.append("link is non-orientable")
    return problems


def _short_cycle_problems(link: VertexLink) -> list[str]:
    problems = []
    seen: dict[frozenset[int], int] = {}
    for e in link.edges:
        if e.ends[0] == e.ends[1]:
            problems.append(f"link edge {e.index} is a loop")
            continue
        key = frozenset(e.ends)
        if key in seen:
            problems.append(f"link edges {seen[key]} and {e.index} are parallel")
        else:
            seen[key] = e.index
    return problems


def validate_npc(c: CubeComplex) -> Report:
    """Edge degrees, link spheres, link 3-cycles and link short cycles for every vertex."""
    links = [vertex_link(c, v.index) for v in c.vertex_classes]

    sphere_failures = []
    for link in links:
        if link.interior:
            sphere_failures += [f"vertex {link.vertex.index}: {p}" for p in _sphere_problems(link)]
    sphere = CheckResult(
        name="link_sphere",
        verdict="FAIL" if sphere_failures else "PASS",
        details={"interior_vertices": sum(1 for link in links if link.interior)},
        locations=sphere_failures,
    )
    if any(not link.interior for link in links):
        sphere.notes.append("boundary vertex links are disks and exempt from the sphere condition")

    cycle_failures = []
    cycle_counts = {}
    for link in links:
        faces = {link.triangle_edges(t) for t in range(len(link.triangles))}
        cycles = link_three_cycles(link)
        cycle_counts[link.vertex.index] = len(cycles)
        cycle_failures += [
            f"vertex {link.vertex.index}: 3-cycle of link edges {list(cycle)} bounds no triangle"
            for cycle in cycles
            if cycle not in faces
        ]
    three_cycles = CheckResult(
        name="link_three_cycles",
        verdict="FAIL" if cycle_failures else "PASS",
        details={"three_cycles": cycle_counts},
        locations=cycle_failures,
    )

    short_failures = []
    for link in links:
        short_failures += [f"vertex {link.vertex.index}: {p}" for p in _short_cycle_problems(link)]
    short = CheckResult(
        name="link_short_cycles",
        verdict="FAIL" if short_failures else "PASS",
        locations=short_failures,
    )

    checks = [check_edge_degrees(c), sphere, three_cycles, short]
    verdict = fold_verdicts([check.verdict for check in checks])
    return Report(
        command="validate",
        input_digest=c.digest(),
        checks=checks,
        certificate="cubing of non-positive curvature" if verdict == "PASS" else None,
        info={
            "cubes": c.n_cubes,
            "closed": c.is_closed,
            "edge_classes": len(c.edge_classes),
            "vertex_classes": len(c.vertex_classes),
            "boundary_components": boundary_census(c),
        },
    )


def boundary_census(c: CubeComplex) -> list[dict]:
    """
    Components of the unglued faces with their Euler characteristics. Reported for
    information; a square-covered torus or Klein bottle has characteristic 0.
    """
    faces = c.boundary_faces
    if not faces:
        return []
    uf = UnionFind(faces)
    by_edge: dict[int, list[tuple[int, int]]] = {}
    for cube, face in faces:
        corners = FACE_CORNERS[face]
        for i in range(4):
            edge = EDGE_BY_CORNERS[frozenset((corners[i], corners[(i + 1) % 4]))]
            by_edge.setdefault(c.edge_class_of[(cube, edge)], []).append((cube, face))
    for members in by_edge.values():
        for other in members[1:]:
            uf.union(members[0], other)

    census = []
    for group in _sorted_groups(uf, faces):
        members = set(group)
        edges = {cls for cls, touching in by_edge.items() if members & set(touching)}
        vertices = {
            c.vertex_class_of[(cube, k)] for cube, face in group for k in FACE_CORNERS[face]
        }
        census.append(
            {
                "faces": len(group),
                "euler_characteristic": len(vertices) - len(edges) + len(group),
            }
        )
    return census
