"""
Rewriting of the graph a disk D meets a surface in, down to the empty graph.

Darts are (edge id, side): (e, 0) runs from ends[0] to ends[1] and the face of a
dart lies on its left. Vertex rotations list the darts leaving a vertex
counterclockwise, and the boundary circle C lists its slots counterclockwise. A
slot holds either one edge end or a corner mark.
"""

import copy
import itertools
import math
import random
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, Literal

import networkx as nx
from networkx.utils import UnionFind

from cubed.core.types import (
    CheckResult,
    CubedInputError,
    ForbiddenOneGon,
    InvalidSite,
    ReduceMode,
    Report,
    Stuck,
)

DEFAULT_MAX_STEPS = 10000

Dart = tuple[int, int]
End = tuple[str, int]
VertexKind = Literal["DEGREE4", "TEE"]
MoveKind = Literal[
    "ISOLATED_LOOP",
    "INNER_COMPONENT_DESCENT",
    "BOUNDARY_2GON",
    "BOUNDARY_3GON",
    "INTERNAL_2GON",
    "INTERNAL_3GON_INVERT",
]

FACE_MOVES: tuple[MoveKind, ...] = ("BOUNDARY_2GON", "BOUNDARY_3GON", "INTERNAL_2GON")


def alpha(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


########################################################
########          Types for Disk Graphs        #########
########################################################


@dataclass
class DiskVertex:
    kind: VertexKind
    rotation: list[Dart]
    label: int = 0
    stem: int | None = None

    def opposite(self, d: Dart) -> Dart:
        i = self.rotation.index(d)
        return self.rotation[(i + 2) % 4]

    def straight(self, d: Dart) -> Dart:
        """The other non-stem dart of a T vertex."""
        others = [x for x in self.rotation if x[0] != self.stem and x != d]
        if len(others) != 1:
            raise InvalidSite(f"Dart {d} does not run straight through this vertex")
        return others[0]

    def continuation(self, d: Dart) -> Dart | None:
        """Dart leaving the vertex on the same curve as the arriving dart alpha(d)."""
        if self.kind == "DEGREE4":
            return self.opposite(d)
        if d[0] == self.stem:
            return None
        return self.straight(d)

    def to_dict(self):
        return {
            "kind": self.kind,
            "rotation": [list(d) for d in self.rotation],
            "label": self.label,
            "stem": self.stem,
        }


@dataclass
class DiskEdge:
    ends: list[End]
    label: int = 0

    def to_dict(self):
        return {"ends": [list(end) for end in self.ends], "label": self.label}


@dataclass(frozen=True)
class Face:
    darts: tuple[Dart, ...]
    corners: int
    segments: tuple[tuple[int, int, int], ...] = ()
    outer: bool = False

    @property
    def interior(self) -> bool:
        return not self.segments

    @property
    def marks(self) -> int:
        return sum(seg[2] for seg in self.segments)


@dataclass(frozen=True, order=True)
class Complexity:
    value: tuple[int, ...]
    mode: str = field(default="theorem1", compare=False)

    def to_dict(self):
        return {"mode": self.mode, "value": list(self.value)}

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.value) + ")"


@dataclass
class DiskGraph:
    boundary: list[int] = field(default_factory=list)
    vertices: dict[int, DiskVertex] = field(default_factory=dict)
    edges: dict[int, DiskEdge] = field(default_factory=dict)
    marks: set[int] = field(default_factory=set)
    floating: int = 0
    outer: dict[Dart, Dart | None] = field(default_factory=dict)
    mode: ReduceMode = "theorem1"
    max_label: int = 0

    def __post_init__(self):
        if not self.max_label:
            self.max_label = max((v.label for v in self.vertices.values()), default=0)

    def tail(self, d: Dart) -> End:
        return tuple(self.edges[d[0]].ends[d[1]])

    def head(self, d: Dart) -> End:
        return tuple(self.edges[d[0]].ends[1 - d[1]])

    def darts(self) -> list[Dart]:
        return [(e, s) for e in sorted(self.edges) for s in (0, 1)]

    @property
    def is_empty(self) -> bool:
        return not self.edges and not self.floating

    def copy(self) -> "DiskGraph":
        return copy.deepcopy(self)

    def slot_darts(self) -> dict[int, Dart]:
        out = {}
        for e, edge in self.edges.items():
            for s, end in enumerate(edge.ends):
                if end[0] == "b":
                    out[end[1]] = (e, s)
        return out

    def next_edge_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def next_slot_id(self) -> int:
        return max([*self.boundary, *self.marks], default=-1) + 1

    def _is_corner(self, v: DiskVertex, e_in: int, e_out: int) -> bool:
        if v.kind == "DEGREE4":
            return True
        return v.stem in (e_in, e_out)

    def _step(self, d: Dart, slot_darts: dict[int, Dart]):
        h = self.head(d)
        if h[0] == "v":
            v = self.vertices[h[1]]
            nxt = v.rotation[v.rotation.index(alpha(d)) - 1]
            return nxt, int(self._is_corner(v, d[0], nxt[0])), None
        n = len(self.boundary)
        pos = self.boundary.index(h[1])
        marks = 0
        for k in range(1, n + 1):
            slot = self.boundary[(pos + k) % n]
            if slot in self.marks:
                marks += 1
                continue
            return slot_darts[slot], 2 + marks, (h[1], slot, marks)
        raise CubedInputError(f"Boundary slot {h[1]} has no edge to continue to")

    def faces(self) -> list[Face]:
        slot_darts = self.slot_darts()
        seen: set[Dart] = set()
        faces = []
        for d in self.darts():
            if d in seen:
                continue
            walk, corners, segments = [], 0, []
            x = d
            while x not in seen:
                seen.add(x)
                walk.append(x)
                x, c, seg = self._step(x, slot_darts)
                corners += c
                if seg:
                    segments.append(seg)
            faces.append(
                Face(
                    darts=tuple(walk),
                    corners=corners,
                    segments=tuple(segments),
                    outer=any(w in self.outer for w in walk),
                )
            )
        return faces

    def face_of(self, faces: list[Face] | None = None) -> dict[Dart, int]:
        faces = self.faces() if faces is None else faces
        return {d: i for i, f in enumerate(faces) for d in f.darts}

    def components(self) -> list[frozenset[int]]:
        uf = UnionFind(self.edges)
        for v in self.vertices.values():
            es = [d[0] for d in v.rotation]
            for e in es[1:]:
                uf.union(es[0], e)
        return sorted((frozenset(c) for c in uf.to_sets()), key=min)

    def touches_boundary(self, component: frozenset[int]) -> bool:
        return any(end[0] == "b" for e in component for end in self.edges[e].ends)

    def islands(self) -> list[frozenset[int]]:
        """Components that miss C."""
        return [c for c in self.components() if not self.touches_boundary(c)]

    def component_vertices(self, component: frozenset[int]) -> set[int]:
        return {end[1] for e in component for end in self.edges[e].ends if end[0] == "v"}

    def euler_characteristic(self) -> int:
        faces = self.faces()
        islands = self.islands()
        island_edges = set().union(*islands) if islands else set()
        main_faces = sum(1 for f in faces if f.darts[0][0] not in island_edges)
        if not self.slot_darts():
            main_faces += 1
        island_faces = len(faces) - sum(1 for f in faces if f.darts[0][0] not in island_edges)
        return len(self.vertices) - len(self.edges) + main_faces + island_faces - 2 * len(islands)

    def complexity(self) -> Complexity:
        edges = len(self.edges) + self.floating
        if self.mode == "theorem1":
            return Complexity((len(self.vertices), edges), self.mode)
        counts = [
            sum(1 for v in self.vertices.values() if v.label == label)
            for label in range(self.max_label, 0, -1)
        ]
        return Complexity((*counts, edges), self.mode)

    def census(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for f in self.faces():
            if f.outer:
                continue
            key = f"{'boundary' if f.segments else 'interior'} {f.corners}-gon"
            out[key] = out.get(key, 0) + 1
        return dict(sorted(out.items()))

    def validate(self) -> None:
        if len(set(self.boundary)) != len(self.boundary):
            raise CubedInputError("Boundary circle lists a slot twice")
        if not self.marks <= set(self.boundary):
            raise CubedInputError("Corner marks must be boundary slots")
        slot_ends: dict[int, Dart] = {}
        for e, edge in self.edges.items():
            if len(edge.ends) != 2:
                raise CubedInputError(f"Edge {e} has {len(edge.ends)} ends")
            for s, end in enumerate(edge.ends):
                kind, ref = end
                if kind == "v":
                    if ref not in self.vertices or (e, s) not in self.vertices[ref].rotation:
                        raise CubedInputError(f"Edge {e} end {s} is not in the rotation of vertex {ref}")
                elif kind == "b":
                    if ref not in self.boundary or ref in self.marks:
                        raise CubedInputError(f"Edge {e} ends at {ref}, which is not an edge slot")
                    if ref in slot_ends:
                        raise CubedInputError(f"Slot {ref} holds two edge ends")
                    slot_ends[ref] = (e, s)
                else:
                    raise CubedInputError(f"Unknown end kind: {kind}. Supported: ['v', 'b']")
        unused = [s for s in self.boundary if s not in self.marks and s not in slot_ends]
        if unused:
            raise CubedInputError(f"Boundary slots without an edge: {unused}")
        for vid, v in self.vertices.items():
            expected = 4 if v.kind == "DEGREE4" else 3
            if len(v.rotation) != expected or len(set(v.rotation)) != expected:
                raise CubedInputError(f"Vertex {vid} ({v.kind}) needs {expected} distinct darts")
            for d in v.rotation:
                if d[0] not in self.edges or tuple(self.edges[d[0]].ends[d[1]]) != ("v", vid):
                    raise CubedInputError(f"Vertex {vid} lists dart {d} that does not leave it")
            if v.kind == "TEE":
                if self.mode != "theorem3":
                    raise CubedInputError(f"Vertex {vid} is a T vertex; use theorem3 mode")
                if v.stem not in {d[0] for d in v.rotation}:
                    raise CubedInputError(f"Vertex {vid} has stem {v.stem} outside its rotation")
                if v.label < 1:
                    raise CubedInputError(f"Vertex {vid} needs a positive label")
            elif self.mode == "theorem3":
                raise CubedInputError(f"Vertex {vid} has degree 4; theorem3 mode takes T vertices only")
        for island in self.islands():
            owned = [d for d in self.outer if d[0] in island]
            if len(owned) != 1:
                raise CubedInputError(f"Island with edges {sorted(island)} has {len(owned)} outer darts")
        chi = self.euler_characteristic()
        if chi != 1:
            raise CubedInputError(f"Rotation system is not planar in the disk: Euler characteristic {chi}")

    def reflected(self) -> "DiskGraph":
        """Mirror image: every cyclic order reversed."""
        g = self.copy()
        for v in g.vertices.values():
            v.rotation.reverse()
        g.boundary.reverse()
        g.outer = {alpha(d): (None if c is None else alpha(c)) for d, c in self.outer.items()}
        return g

    def rotated(self, k: int) -> "DiskGraph":
        g = self.copy()
        if g.boundary:
            k %= len(g.boundary)
            g.boundary = g.boundary[k:] + g.boundary[:k]
        return g

    def to_dict(self):
        return {
            "mode": self.mode,
            "boundary": list(self.boundary),
            "marks": sorted(self.marks),
            "floating": self.floating,
            "max_label": self.max_label,
            "vertices": {str(k): v.to_dict() for k, v in sorted(self.vertices.items())},
            "edges": {str(k): e.to_dict() for k, e in sorted(self.edges.items())},
            "outer": [[list(d), None if c is None else list(c)] for d, c in sorted(self.outer.items())],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DiskGraph":
        def dart(x) -> Dart:
            return (int(x[0]), int(x[1]))

        vertices = {
            int(k): DiskVertex(
                kind=v["kind"],
                rotation=[dart(d) for d in v["rotation"]],
                label=v.get("label", 0),
                stem=v.get("stem"),
            )
            for k, v in data.get("vertices", {}).items()
        }
        edges = {
            int(k): DiskEdge(ends=[(str(a), int(b)) for a, b in e["ends"]], label=e.get("label", 0))
            for k, e in data.get("edges", {}).items()
        }
        return cls(
            boundary=list(data.get("boundary", [])),
            vertices=vertices,
            edges=edges,
            marks=set(data.get("marks", [])),
            floating=data.get("floating", 0),
            outer={dart(d): (None if c is None else dart(c)) for d, c in data.get("outer", [])},
            mode=data.get("mode", "theorem1"),
            max_label=data.get("max_label", 0),
        )


########################################################
########         Types for Rewrite Traces      #########
########################################################


@dataclass(frozen=True)
class RewriteMove:
    kind: MoveKind
    site: tuple[Dart, ...] = ()
    target: tuple[int, ...] = ()

    def to_dict(self):
        return {"kind": self.kind, "site": [list(d) for d in self.site], "target": list(self.target)}


@dataclass
class RewriteStep:
    index: int
    move: RewriteMove
    before: Complexity
    after: Complexity
    euler_characteristic: int
    containment: tuple[int, int] | None = None
    subtrace: list["RewriteStep"] = field(default_factory=list)

    @property
    def decreases(self) -> bool:
        if self.after < self.before:
            return True
        return self.containment is not None and self.containment[1] < self.containment[0]

    def to_dict(self):
        out: dict[str, Any] = {
            "index": self.index,
            "move": self.move.to_dict(),
            "before": self.before.to_dict(),
            "after": self.after.to_dict(),
            "euler_characteristic": self.euler_characteristic,
        }
        if self.containment is not None:
            out["containment"] = list(self.containment)
        if self.subtrace:
            out["subtrace"] = [s.to_dict() for s in self.subtrace]
        return out

    def lines(self, indent: str = "") -> list[str]:
        line = f"{indent}{self.index}: {self.move.kind} {self.before} -> {self.after} chi={self.euler_characteristic}"
        if self.containment is not None:
            line += f" contained {self.containment[0]} -> {self.containment[1]}"
        out = [line]
        for step in self.subtrace:
            out.extend(step.lines(indent + "    "))
        return out


@dataclass
class ReductionTrace:
    steps: list[RewriteStep]
    final: DiskGraph
    mode: ReduceMode

    @property
    def success(self) -> bool:
        return self.final.is_empty

    def lines(self) -> list[str]:
        return [line for step in self.steps for line in step.lines()]

    def to_dict(self):
        return {
            "mode": self.mode,
            "success": self.success,
            "steps": [s.to_dict() for s in self.steps],
        }


########################################################
########           Sites and Moves             #########
########################################################


def _canonical(darts: tuple[Dart, ...]) -> tuple[Dart, ...]:
    i = darts.index(min(darts))
    return tuple(darts[i:] + darts[:i])


def _boundary_walk(g: DiskGraph, face: Face) -> tuple[Dart, ...]:
    """The face walk started at the dart that leaves C."""
    for i, d in enumerate(face.darts):
        if g.tail(d)[0] == "b":
            return face.darts[i:] + face.darts[:i]
    raise InvalidSite(f"Face {list(face.darts)} does not leave the boundary")


def _site_walk(g: DiskGraph, kind: MoveKind, face: Face) -> tuple[Dart, ...] | None:
    """The ordered walk of face when it has the shape move kind acts on, else None."""
    if face.outer:
        return None
    if kind == "BOUNDARY_2GON":
        if len(face.segments) != 1 or face.marks or face.corners != 2:
            return None
        return _boundary_walk(g, face)
    if kind == "BOUNDARY_3GON":
        if len(face.segments) != 1 or face.marks or face.corners != 3 or len(face.darts) != 2:
            return None
        d1, d2 = _boundary_walk(g, face)
        x = g.head(d1)
        if d1[0] == d2[0] or x[0] != "v":
            return None
        v = g.vertices[x[1]]
        if v.kind == "TEE" and v.stem not in (d1[0], d2[0]):
            return None
        return (d1, d2)
    if kind == "INTERNAL_2GON":
        if not face.interior or face.corners != 2 or len(face.darts) != 2:
            return None
        d1, d2 = face.darts
        u, v = g.tail(d1), g.head(d1)
        if d1[0] == d2[0] or u == v or u[0] != "v" or v[0] != "v":
            return None
        if g.mode == "theorem3":
            stem = g.vertices[u[1]].stem
            if stem != g.vertices[v[1]].stem or stem not in (d1[0], d2[0]):
                return None
        return face.darts
    if kind == "INTERNAL_3GON_INVERT":
        if g.mode != "theorem1" or not face.interior or face.corners != 3 or len(face.darts) != 3:
            return None
        if len({g.tail(d) for d in face.darts}) != 3 or len({d[0] for d in face.darts}) != 3:
            return None
        return face.darts
    raise ValueError(
        f"Unknown face move: {kind}. Supported: "
        "['BOUNDARY_2GON', 'BOUNDARY_3GON', 'INTERNAL_2GON', 'INTERNAL_3GON_INVERT']"
    )


def _drop_edge(g: DiskGraph, e: int, remap: dict) -> None:
    if g.edges.pop(e, None) is not None:
        remap[(e, 0)] = None
        remap[(e, 1)] = None


def _merge(g: DiskGraph, path: list[Dart], label: int, remap: dict) -> int | None:
    """Replace a path through deleted vertices by one edge; a closed path becomes a floating loop."""
    first, last = path[0], path[-1]
    edge_ids = {d[0] for d in path}
    if len(path) > 1 and first[0] == last[0]:
        for e in edge_ids:
            _drop_edge(g, e, remap)
        g.floating += 1
        return None
    start, end = g.tail(first), g.head(last)
    new = g.next_edge_id()
    g.edges[new] = DiskEdge([start, end], label)
    for endpoint, old, new_dart in ((start, first, (new, 0)), (end, alpha(last), (new, 1))):
        if endpoint[0] == "v":
            v = g.vertices[endpoint[1]]
            v.rotation[v.rotation.index(old)] = new_dart
            if v.stem == old[0]:
                v.stem = new
    for e in edge_ids:
        _drop_edge(g, e, remap)
    for d in path:
        remap[d] = (new, 0)
        remap[alpha(d)] = (new, 1)
    return new


def _apply_boundary_2gon(g: DiskGraph, walk: tuple[Dart, ...], remap: dict) -> None:
    a = g.tail(walk[0])[1]
    b = g.head(walk[-1])[1]
    n = len(g.boundary)
    i = g.boundary.index(b)
    if g.boundary[(i + 1) % n] != a:
        raise InvalidSite(f"Slots {b} and {a} are not adjacent on the boundary")
    new_slots = []
    slot = g.next_slot_id()
    for vid in reversed([g.head(d)[1] for d in walk[:-1]]):
        v = g.vertices.pop(vid)
        stem = next(d for d in v.rotation if d[0] == v.stem)
        g.edges[stem[0]].ends[stem[1]] = ("b", slot)
        new_slots.append(slot)
        slot += 1
    for d in walk:
        _drop_edge(g, d[0], remap)
    g.boundary = new_slots + [g.boundary[(i + 2 + k) % n] for k in range(n - 2)]


def _apply_boundary_3gon(g: DiskGraph, walk: tuple[Dart, ...], remap: dict) -> None:
    d1, d2 = walk
    a, x, b = g.tail(d1)[1], g.head(d1)[1], g.head(d2)[1]
    v = g.vertices.pop(x)
    if g.mode == "theorem1":
        f1, f2 = v.opposite(alpha(d1)), v.opposite(d2)
        if {f1[0], f2[0]} & {d1[0], d2[0]}:
            raise InvalidSite(f"Boundary 3-gon at vertex {x} closes on itself")
        g.edges[f1[0]].ends[f1[1]] = ("b", b)
        g.edges[f2[0]].ends[f2[1]] = ("b", a)
        _drop_edge(g, d1[0], remap)
        _drop_edge(g, d2[0], remap)
        return
    if v.stem == d2[0]:
        label = g.edges[d1[0]].label
        far = v.straight(alpha(d1))
        _drop_edge(g, d2[0], remap)
        g.boundary.remove(b)
        _merge(g, [d1, far], label, remap)
    else:
        label = g.edges[d2[0]].label
        far = v.straight(d2)
        _drop_edge(g, d1[0], remap)
        g.boundary.remove(a)
        _merge(g, [alpha(far), d2], label, remap)


def _apply_internal_2gon(g: DiskGraph, walk: tuple[Dart, ...], remap: dict) -> list[Dart | None]:
    d1, d2 = walk
    u, v = g.tail(d1)[1], g.head(d1)[1]
    U, V = g.vertices[u], g.vertices[v]
    if g.mode == "theorem3":
        lam, mu = (d1, d2) if U.stem == d1[0] else (d2, d1)
        P, Q = g.vertices[g.tail(mu)[1]], g.vertices[g.head(mu)[1]]
        gp, gq = P.straight(mu), Q.straight(alpha(mu))
        if {gp[0], gq[0]} & {lam[0], mu[0]}:
            raise InvalidSite(f"2-gon between vertices {u} and {v} closes on itself")
        label = g.edges[mu[0]].label
        del g.vertices[u], g.vertices[v]
        _drop_edge(g, lam[0], remap)
        new = _merge(g, [alpha(gp), mu, gq], label, remap)
        return [None if new is None else (new, 0)]
    oAu, oBu = U.opposite(d1), U.opposite(alpha(d2))
    oAv, oBv = V.opposite(alpha(d1)), V.opposite(d2)
    lens = {d1[0], d2[0]}
    strand_a, strand_b = {oAu[0], oAv[0]}, {oBu[0], oBv[0]}
    if (strand_a | strand_b) & lens or strand_a & strand_b:
        raise InvalidSite(f"2-gon between vertices {u} and {v} is not a lens of two strands")
    label_a, label_b = g.edges[d1[0]].label, g.edges[d2[0]].label
    del g.vertices[u], g.vertices[v]
    na = _merge(g, [alpha(oAu), d1, oAv], label_a, remap)
    nb = _merge(g, [alpha(oBv), d2, oBu], label_b, remap)
    return [None if n is None else (n, 0) for n in (na, nb)]


def _apply_invert(g: DiskGraph, walk: tuple[Dart, ...], remap: dict) -> None:
    """Pass one strand across the crossing of the other two: the triangle turns inside out."""
    verts = [g.tail(d)[1] for d in walk]
    if any(g.vertices[x].kind != "DEGREE4" for x in verts):
        raise InvalidSite("Only crossings of degree 4 can be inverted")
    new_rot = {x: list(g.vertices[x].rotation) for x in verts}
    reattach, ext = [], []
    for d in walk:
        x, y = g.tail(d)[1], g.head(d)[1]
        rx, ry = g.vertices[x].rotation, g.vertices[y].rotation
        tx, ty = g.vertices[x].opposite(d), g.vertices[y].opposite(alpha(d))
        ext += [tx[0], ty[0]]
        new_rot[x][rx.index(tx)] = d
        new_rot[x][rx.index(d)] = ty
        new_rot[y][ry.index(ty)] = alpha(d)
        new_rot[y][ry.index(alpha(d))] = tx
        reattach += [(ty, x), (tx, y)]
    if len(set(ext)) != 6 or set(ext) & {d[0] for d in walk}:
        raise InvalidSite(f"3-gon {list(walk)} does not have six distinct outgoing edges")
    for t, target in reattach:
        g.edges[t[0]].ends[t[1]] = ("v", target)
    for x in verts:
        g.vertices[x].rotation = new_rot[x]


########################################################
########        Bigons and Containment         #########
########################################################


@dataclass(frozen=True)
class Bigon:
    """Two strands leaving u side by side and meeting again at v, interiors disjoint."""

    ends: tuple[int, int]
    darts: tuple[Dart, ...]

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(d[0] for d in self.darts)


def _strand(g: DiskGraph, d: Dart) -> list[tuple[int, Dart]]:
    out, seen, x = [], set(), d
    while True:
        h = g.head(x)
        if h[0] != "v" or h[1] in seen:
            return out
        seen.add(h[1])
        out.append((h[1], x))
        v = g.vertices[h[1]]
        if v.kind != "DEGREE4":
            return out
        x = v.opposite(alpha(x))
        if x == d:
            return out


def bigons(g: DiskGraph) -> list[Bigon]:
    found: dict[tuple, Bigon] = {}
    for u in sorted(g.vertices):
        U = g.vertices[u]
        if U.kind != "DEGREE4":
            continue
        for i in range(4):
            walk_a = _strand(g, U.rotation[i])
            walk_b = _strand(g, U.rotation[(i + 1) % 4])
            pos_b = {v: k for k, (v, _) in enumerate(walk_b)}
            for ka, (v, arr_a) in enumerate(walk_a):
                if v not in pos_b:
                    continue
                if v == u:
                    break
                kb = pos_b[v]
                rot = g.vertices[v].rotation
                if (rot.index(alpha(arr_a)) - rot.index(alpha(walk_b[kb][1]))) % 2 == 0:
                    break
                darts = tuple(x for _, x in walk_a[: ka + 1]) + tuple(
                    alpha(x) for _, x in reversed(walk_b[: kb + 1])
                )
                key = (frozenset((u, v)), frozenset(d[0] for d in darts))
                found.setdefault(key, Bigon((min(u, v), max(u, v)), darts))
                break
    return sorted(found.values(), key=lambda b: (b.ends, sorted(b.edges)))


def containment(g: DiskGraph, bigon: Bigon, faces: list[Face] | None = None) -> int:
    """Edges strictly inside the bigon, the side away from C or from the outer face."""
    faces = g.faces() if faces is None else faces
    face_of = g.face_of(faces)
    dual = nx.Graph()
    dual.add_nodes_from(range(len(faces)))
    for e in g.edges:
        if e not in bigon.edges:
            dual.add_edge(face_of[(e, 0)], face_of[(e, 1)])
    outside: set[int] = set()
    for i, f in enumerate(faces):
        if (f.segments or f.outer) and i not in outside:
            outside |= nx.node_connected_component(dual, i)
    return sum(1 for e in g.edges if e not in bigon.edges and face_of[(e, 0)] not in outside)


def _min_containment(g: DiskGraph, ends: tuple[int, ...]) -> int | None:
    faces = g.faces()
    values = [containment(g, b, faces) for b in bigons(g) if b.ends == tuple(ends)]
    return min(values, default=None)


def _invert_move(g: DiskGraph, faces: list[Face]) -> RewriteMove | None:
    scored = [(containment(g, b, faces), b) for b in bigons(g)]
    scored = [(count, b) for count, b in scored if count > 0]
    if not scored:
        return None
    count, target = min(scored, key=lambda x: (x[0], x[1].ends, sorted(x[1].edges)))
    for f in faces:
        walk = _site_walk(g, "INTERNAL_3GON_INVERT", f)
        if walk is None:
            continue
        trial = g.copy()
        try:
            _apply_invert(trial, walk, {})
        except InvalidSite:
            continue
        after = _min_containment(trial, target.ends)
        if after is not None and after < count:
            return RewriteMove("INTERNAL_3GON_INVERT", site=_canonical(walk), target=target.ends)
    return None


########################################################
########              Reduction                #########
########################################################


def _outer_dart(g: DiskGraph, island: frozenset[int]) -> Dart:
    for d in sorted(g.outer):
        if d[0] in island:
            return d
    raise CubedInputError(f"Island with edges {sorted(island)} has no outer dart")


def _innermost_island(g: DiskGraph, islands: list[frozenset[int]], faces: list[Face]) -> Dart:
    face_of = g.face_of(faces)
    containers = {c for c in g.outer.values() if c is not None}
    for island in sorted(islands, key=min):
        d = _outer_dart(g, island)
        inside = {(e, s) for e in island for s in (0, 1) if face_of[(e, s)] != face_of[d]}
        if not containers & inside:
            return d
    return _outer_dart(g, min(islands, key=min))


def find_reducible_site(g: DiskGraph) -> RewriteMove | None:
    """The first applicable move in priority order, or None when no move applies."""
    if g.floating:
        return RewriteMove("ISOLATED_LOOP")
    faces = g.faces()
    islands = g.islands()
    if islands and (len(islands) > 1 or g.slot_darts()):
        return RewriteMove("INNER_COMPONENT_DESCENT", site=(_innermost_island(g, islands, faces),))
    if g.mode == "theorem1":
        for f in faces:
            if f.interior and not f.outer and f.corners == 1:
                raise ForbiddenOneGon(f"Interior 1-gon at darts {[list(d) for d in f.darts]}")
    for kind in FACE_MOVES:
        for f in faces:
            if _site_walk(g, kind, f) is not None:
                return RewriteMove(kind, site=_canonical(f.darts))
    if g.mode == "theorem1":
        return _invert_move(g, faces)
    return None


def _survivor(g: DiskGraph, walk: tuple[Dart, ...], remap: dict) -> Dart | None:
    for d in walk:
        x = remap.get(d, d)
        if x is not None and x[0] in g.edges:
            return x
    return None


def _restore_islands(g: DiskGraph, old_outer: dict, walks: dict, remap: dict, lens: list) -> None:
    outer = {}
    for d, c in old_outer.items():
        nd = _survivor(g, walks[d], remap)
        if nd is not None:
            outer[nd] = None if c is None else _survivor(g, walks[c], remap)
    g.outer = outer
    lens = [d for d in lens if d is not None and d[0] in g.edges]
    for island in g.islands():
        if any(d[0] in island for d in g.outer):
            continue
        own = [d for d in lens if d[0] in island]
        other = [d for d in lens if d[0] not in island]
        if own:
            g.outer[own[0]] = other[0] if other else None
        else:
            g.outer[(min(island), 0)] = None


def _descend(g: DiskGraph, outer_dart: Dart, max_steps: int) -> tuple[DiskGraph, list[RewriteStep]]:
    if outer_dart not in g.outer:
        raise InvalidSite(f"Dart {outer_dart} is not the outer dart of an island")
    component = next(c for c in g.components() if outer_dart[0] in c)
    verts = g.component_vertices(component)
    sub = DiskGraph(
        vertices={v: copy.deepcopy(g.vertices[v]) for v in verts},
        edges={e: copy.deepcopy(g.edges[e]) for e in component},
        outer={outer_dart: None},
        mode=g.mode,
        max_label=g.max_label,
    )
    trace = reduce(sub, max_steps=max_steps)
    for e in component:
        del g.edges[e]
    for v in verts:
        del g.vertices[v]
    del g.outer[outer_dart]
    g.outer = {d: (c if c is None or c[0] in g.edges else None) for d, c in g.outer.items()}
    return g, trace.steps


def _apply(g: DiskGraph, move: RewriteMove, max_steps: int) -> tuple[DiskGraph, list[RewriteStep]]:
    g = g.copy()
    if move.kind == "ISOLATED_LOOP":
        if not g.floating:
            raise InvalidSite("No floating loop to remove")
        g.floating -= 1
        return g, []
    if move.kind == "INNER_COMPONENT_DESCENT":
        return _descend(g, move.site[0], max_steps)

    faces = g.faces()
    face = next((f for f in faces if set(f.darts) == set(move.site)), None)
    walk = None if face is None else _site_walk(g, move.kind, face)
    if walk is None:
        raise InvalidSite(f"{move.kind} does not apply at {[list(d) for d in move.site]}")
    face_of = g.face_of(faces)
    tracked = set(g.outer) | {c for c in g.outer.values() if c is not None}
    walks = {d: faces[face_of[d]].darts for d in tracked}
    old_outer = dict(g.outer)
    remap: dict[Dart, Dart | None] = {}
    lens: list[Dart | None] = []
    if move.kind == "BOUNDARY_2GON":
        _apply_boundary_2gon(g, walk, remap)
    elif move.kind == "BOUNDARY_3GON":
        _apply_boundary_3gon(g, walk, remap)
    elif move.kind == "INTERNAL_2GON":
        lens = _apply_internal_2gon(g, walk, remap)
    else:
        _apply_invert(g, walk, remap)
    _restore_islands(g, old_outer, walks, remap, lens)
    return g, []


def apply_move(g: DiskGraph, move: RewriteMove, max_steps: int = DEFAULT_MAX_STEPS) -> DiskGraph:
    """The graph after one move; g itself is left unchanged."""
    return _apply(g, move, max_steps)[0]


def _stuck_message(g: DiskGraph) -> str:
    census = ", ".join(f"{k}: {v}" for k, v in g.census().items())
    message = f"No reducible site on a graph with {len(g.vertices)} vertices and {len(g.edges)} edges ({census})"
    if g.mode == "theorem1":
        message += "; the disk meets the surface outside the almost cubed hypotheses"
    return message


def reduce(
    g: DiskGraph,
    max_steps: int = DEFAULT_MAX_STEPS,
    on_step: Callable[[RewriteStep], None] | None = None,
) -> ReductionTrace:
    """Apply moves until the graph is empty; raise Stuck when none applies."""
    g.validate()
    current = g.copy()
    steps: list[RewriteStep] = []
    while not current.is_empty:
        if len(steps) >= max_steps:
            raise Stuck(
                f"Graph not empty after {max_steps} moves",
                trace=ReductionTrace(steps, current, g.mode),
                graph=current,
            )
        move = find_reducible_site(current)
        if move is None:
            raise Stuck(_stuck_message(current), trace=ReductionTrace(steps, current, g.mode), graph=current)
        before = current.complexity()
        contained_before = _min_containment(current, move.target) if move.target else None
        current, subtrace = _apply(current, move, max_steps)
        contained = None
        if contained_before is not None:
            contained = (contained_before, _min_containment(current, move.target) or 0)
        step = RewriteStep(
            index=len(steps) + 1,
            move=move,
            before=before,
            after=current.complexity(),
            euler_characteristic=current.euler_characteristic(),
            containment=contained,
            subtrace=subtrace,
        )
        steps.append(step)
        if on_step is not None:
            on_step(step)
    return ReductionTrace(steps, current, g.mode)


def _flatten(steps: list[RewriteStep]) -> list[RewriteStep]:
    return [x for s in steps for x in (s, *_flatten(s.subtrace))]


def reduce_report(
    g: DiskGraph,
    max_steps: int = DEFAULT_MAX_STEPS,
    on_step: Callable[[RewriteStep], None] | None = None,
) -> Report:
    info = {"mode": g.mode, "vertices": len(g.vertices), "edges": len(g.edges)}
    try:
        trace = reduce(g, max_steps=max_steps, on_step=on_step)
    except Stuck as exc:
        partial = exc.trace.lines() if exc.trace is not None else []
        remaining = exc.graph.census() if exc.graph is not None else {}
        check = CheckResult(
            name="reduction",
            verdict="FAIL",
            details={"steps": len(partial), "remaining_faces": remaining},
            locations=[str(exc)],
            notes=partial,
        )
        return Report(command="reduce", input_digest="", checks=[check], info=info)

    steps = _flatten(trace.steps)
    bad_euler = [f"step {s.index} {s.move.kind}" for s in steps if s.euler_characteristic != 1]
    flat = [f"step {s.index} {s.move.kind}" for s in steps if not s.decreases]
    checks = [
        CheckResult(
            name="reduction",
            verdict="PASS",
            details={"steps": len(trace.steps), "moves": len(steps)},
            notes=trace.lines(),
        ),
        CheckResult(name="euler_invariant", verdict="FAIL" if bad_euler else "PASS", locations=bad_euler),
        CheckResult(name="measure_decreasing", verdict="FAIL" if flat else "PASS", locations=flat),
    ]
    report = Report(command="reduce", input_digest="", checks=checks, info=info)
    if report.verdict == "PASS":
        report.certificate = f"disk graph reduces to the empty graph in {len(steps)} moves"
    return report


########################################################
########          Chord Arrangements           #########
########################################################


def _inside(x: int, p: int, q: int, n: int) -> bool:
    """x lies on the counterclockwise arc from p to q."""
    return 0 < (x - p) % n < (q - p) % n


def _crosses(a: tuple[int, int], b: tuple[int, int], n: int) -> bool:
    return _inside(b[0], a[0], a[1], n) != _inside(b[1], a[0], a[1], n)


def straight_line_orders(chords: list[tuple[int, int]], angles: list[float]) -> list[list[int]]:
    """For each chord, the chords it crosses in order from its first end, drawn straight."""
    n = len(angles)

    def point(k):
        return (math.cos(angles[k]), math.sin(angles[k]))

    def cross(a, b):
        return a[0] * b[1] - a[1] * b[0]

    orders = []
    for i, (p, q) in enumerate(chords):
        P, Q = point(p), point(q)
        d = (Q[0] - P[0], Q[1] - P[1])
        hits = []
        for j, (r, s) in enumerate(chords):
            if j == i or not _crosses(chords[i], chords[j], n):
                continue
            R, S = point(r), point(s)
            e = (S[0] - R[0], S[1] - R[1])
            t = cross((R[0] - P[0], R[1] - P[1]), e) / cross(d, e)
            hits.append((t, j))
        orders.append([j for _, j in sorted(hits)])
    return orders


def chord_arrangement(
    chords: list[tuple[int, int]],
    orders: list[list[int]] | None = None,
    marks: tuple[int, ...] = (),
    angles: list[float] | None = None,
    mode: ReduceMode = "theorem1",
    check: bool = True,
) -> DiskGraph:
    """
    Disk graph of arcs with ends on C, crossing transversally.

    Args:
        chords: endpoint positions, counterclockwise around C
        orders: for each chord the chords it crosses, from its first end; straight
            chords when omitted
        marks: positions that carry a corner mark instead of an edge end
        angles: where the positions sit on the circle; evenly spaced when omitted
    """
    chords = [tuple(c) for c in chords]
    n = 2 * len(chords) + len(marks)
    if sorted([x for c in chords for x in c] + list(marks)) != list(range(n)):
        raise CubedInputError(f"Chord ends and marks must use positions 0..{n - 1} exactly once")
    if angles is None:
        # slightly irregular so that no three chords meet in a point
        angles = [2 * math.pi * (k + 0.1 * (k * k % 7) / 7) / n for k in range(n)]
    partners = [
        [j for j in range(len(chords)) if j != i and _crosses(chords[i], chords[j], n)]
        for i in range(len(chords))
    ]
    if orders is None:
        orders = straight_line_orders(chords, angles)
    for i, order in enumerate(orders):
        if sorted(order) != partners[i]:
            raise CubedInputError(f"Chord {i} crosses {partners[i]}, order lists {list(order)}")

    vertex_of: dict[frozenset[int], int] = {}
    for i, crossed in enumerate(partners):
        for j in crossed:
            vertex_of.setdefault(frozenset((i, j)), len(vertex_of))

    edges: dict[int, DiskEdge] = {}
    before: dict[tuple[int, int], int] = {}
    after: dict[tuple[int, int], int] = {}
    for i, (p, q) in enumerate(chords):
        nodes = [("b", p)] + [("v", vertex_of[frozenset((i, j))]) for j in orders[i]] + [("b", q)]
        for k in range(len(nodes) - 1):
            e = len(edges)
            edges[e] = DiskEdge([nodes[k], nodes[k + 1]])
            if nodes[k][0] == "v":
                after[(i, nodes[k][1])] = e
            if nodes[k + 1][0] == "v":
                before[(i, nodes[k + 1][1])] = e

    vertices = {}
    for pair, vid in vertex_of.items():
        i, j = sorted(pair)
        i_fwd, i_bwd = (after[(i, vid)], 0), (before[(i, vid)], 1)
        j_fwd, j_bwd = (after[(j, vid)], 0), (before[(j, vid)], 1)
        # chord j runs from the right of chord i to its left
        if _inside(chords[j][0], chords[i][0], chords[i][1], n):
            rotation = [i_fwd, j_fwd, i_bwd, j_bwd]
        else:
            rotation = [i_fwd, j_bwd, i_bwd, j_fwd]
        vertices[vid] = DiskVertex("DEGREE4", rotation)

    g = DiskGraph(boundary=list(range(n)), vertices=vertices, edges=edges, marks=set(marks), mode=mode)
    if check:
        g.validate()
    return g


def perfect_matchings(points: list[int]):
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points)):
        rest = points[1:k] + points[k + 1 :]
        for matching in perfect_matchings(rest):
            yield [(first, points[k])] + matching


def chord_arrangements(max_chords: int = 4):
    """Every planar arrangement of up to max_chords chords, one crossing order per choice."""
    for count in range(1, max_chords + 1):
        n = 2 * count
        for matching in perfect_matchings(list(range(n))):
            partners = [
                [j for j in range(count) if j != i and _crosses(matching[i], matching[j], n)]
                for i in range(count)
            ]
            for orders in itertools.product(*(itertools.permutations(p) for p in partners)):
                g = chord_arrangement(matching, orders=[list(o) for o in orders], check=False)
                if g.euler_characteristic() == 1:
                    yield g


def random_chord_arrangement(rng: random.Random, n_chords: int) -> DiskGraph:
    """Straight chords between random points of the circle."""
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(2 * n_chords))
    positions = list(range(2 * n_chords))
    rng.shuffle(positions)
    chords = [(positions[2 * k], positions[2 * k + 1]) for k in range(n_chords)]
    return chord_arrangement(chords, angles=angles)


def four_gon_witness() -> DiskGraph:
    """Two pairs of parallel chords crossing in a grid with corner marks between: every face has four corners."""
    return chord_arrangement([(1, 8), (2, 7), (4, 11), (5, 10)], marks=(0, 3, 6, 9))


def tee_arc_example() -> DiskGraph:
    """One arc on the lower surface, and an arc of the upper one ending on it."""
    return DiskGraph(
        boundary=[0, 1, 2],
        vertices={0: DiskVertex("TEE", [(0, 1), (2, 1), (1, 0)], label=2, stem=2)},
        edges={
            0: DiskEdge([("b", 0), ("v", 0)], label=1),
            1: DiskEdge([("v", 0), ("b", 2)], label=1),
            2: DiskEdge([("b", 1), ("v", 0)], label=2),
        },
        mode="theorem3",
    )
