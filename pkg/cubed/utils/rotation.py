"""
Graphs embedded on closed surfaces, cut into labelled regions, and the loops
that meet them in at most three points.

Edge e carries darts 2e (from edges[e][0] to edges[e][1]) and 2e + 1 (reverse).
Every region lists its boundary as cyclic walks of darts, with the region on
the left of each dart, so each dart belongs to exactly one walk.

A loop crossing the graph k > 0 times is the cyclic dart sequence (x_0, ..., x_{k-1})
it crosses: it leaves region(x_i) across edge(x_i) into region(x_i ^ 1), which is
also region(x_{i+1}). Arc i of the loop lies in region(x_i), entering across
x_{i-1} ^ 1 and leaving across x_i.
"""

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any, Literal

import networkx as nx
from networkx.utils import UnionFind

from cubed.core.types import CubedInputError

VertexKind = Literal["triple", "tee", "cross", "marker"]
LoopKind = Literal["region", "cut", "edge", "meridian"]
Triviality = Literal["TRIVIAL", "ESSENTIAL", "NOT_DISK", "UNDECIDED"]


def alpha(dart: int) -> int:
    return dart ^ 1


def edge_of(dart: int) -> int:
    return dart >> 1


########################################################
########          Types for Region Maps        #########
########################################################


@dataclass
class Region:
    walks: list[list[int]]
    genus: int = 0
    label: Any = None
    name: str = ""

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.walks)

    @property
    def planar(self) -> bool:
        return self.genus == 0

    def to_dict(self):
        return {
            "name": self.name,
            "label": self.label,
            "genus": self.genus,
            "walks": [list(w) for w in self.walks],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Region":
        return cls(
            walks=[list(w) for w in data.get("walks", [])],
            genus=data.get("genus", 0),
            label=data.get("label"),
            name=data.get("name", ""),
        )


@dataclass
class RegionMap:
    """
    A graph on a closed surface of genus `carrier_genus` with its complementary regions.

    `meridians` is None when no meridian system was supplied, which leaves loop
    enumeration incomplete on carriers of positive genus; an empty list means the
    system was supplied and is empty.
    """

    n_vertices: int
    edges: list[tuple[int, int]]
    regions: list[Region]
    carrier_genus: int = 0
    vertex_kinds: list[str] = field(default_factory=list)
    stems: dict[int, int] = field(default_factory=dict)
    edge_labels: list[Any] = field(default_factory=list)
    meridians: list[tuple[int, ...]] | None = None
    name: str = ""

    def __post_init__(self):
        if not self.vertex_kinds:
            self.vertex_kinds = ["triple"] * self.n_vertices
        if not self.edge_labels:
            self.edge_labels = [None] * len(self.edges)
        self._locate = {}
        for r, region in enumerate(self.regions):
            for w, walk in enumerate(region.walks):
                for p, dart in enumerate(walk):
                    if dart in self._locate:
                        raise CubedInputError(f"Dart {dart} lies on two region walks")
                    self._locate[dart] = (r, w, p)

    @property
    def n_darts(self) -> int:
        return 2 * len(self.edges)

    def tail(self, dart: int) -> int:
        return self.edges[edge_of(dart)][dart & 1]

    def head(self, dart: int) -> int:
        return self.edges[edge_of(dart)][1 - (dart & 1)]

    def region_of(self, dart: int) -> int:
        return self._locate[dart][0]

    def locate(self, dart: int) -> tuple[int, int, int]:
        """(region, walk, position) of a dart."""
        return self._locate[dart]

    def degree(self, vertex: int) -> int:
        return sum(1 for u, v in self.edges for end in (u, v) if end == vertex)

    def euler_characteristic(self) -> int:
        return (
            self.n_vertices
            - len(self.edges)
            + sum(region.euler_characteristic for region in self.regions)
        )

    def validate(self) -> None:
        """Every dart on exactly one walk, walks are closed, and the Euler count fits the carrier."""
        missing = [d for d in range(self.n_darts) if d not in self._locate]
        if missing:
            raise CubedInputError(f"Darts {missing} lie on no region walk")
        for r, region in enumerate(self.regions):
            for walk in region.walks:
                for p, dart in enumerate(walk):
                    following = walk[(p + 1) % len(walk)]
                    if self.head(dart) != self.tail(following):
                        raise CubedInputError(
                            f"Region {r}: walk is broken between darts {dart} and {following}"
                        )
        expected = 2 - 2 * self.carrier_genus
        if self.euler_characteristic() != expected:
            raise CubedInputError(
                f"Region map has Euler characteristic {self.euler_characteristic()}, "
                f"expected {expected} for a carrier of genus {self.carrier_genus}"
            )
        for vertex, kind in enumerate(self.vertex_kinds):
            if kind == "tee" and vertex not in self.stems:
                raise CubedInputError(f"T-vertex {vertex} has no stem edge")

    def is_corner(self, incoming: int, outgoing: int) -> bool:
        """Whether a walk turning at head(incoming) makes a corner of its region there."""
        vertex = self.head(incoming)
        kind = self.vertex_kinds[vertex]
        if kind == "marker":
            return False
        if kind == "tee":
            stem = self.stems[vertex]
            return stem in (edge_of(incoming), edge_of(outgoing))
        return True

    def corners(self, r: int) -> int:
        total = 0
        for walk in self.regions[r].walks:
            for p, dart in enumerate(walk):
                total += self.is_corner(dart, walk[(p + 1) % len(walk)])
        return total

    def region_degree(self, r: int) -> int:
        return sum(len(walk) for walk in self.regions[r].walks)

    def region_type(self, r: int) -> str:
        region = self.regions[r]
        if region.genus == 0 and len(region.walks) <= 1:
            return f"{self.corners(r)}-gon"
        if region.genus == 0 and len(region.walks) == 2:
            return "annulus"
        return "other"

    def census(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for r in range(len(self.regions)):
            kind = self.region_type(r)
            counts[kind] = counts.get(kind, 0) + 1
        return dict(sorted(counts.items()))

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.n_vertices))
        for e, (u, v) in enumerate(self.edges):
            g.add_edge(u, v, key=e)
        return g

    def dual_graph(self) -> nx.MultiGraph:
        """Regions as nodes, one edge per graph edge joining the regions on its two sides."""
        g = nx.MultiGraph()
        g.add_nodes_from(range(len(self.regions)))
        for e in range(len(self.edges)):
            g.add_edge(self.region_of(2 * e), self.region_of(2 * e + 1), key=e)
        return g

    @classmethod
    def from_rotation(
        cls,
        n_vertices: int,
        edges: list[tuple[int, int]],
        rotation: dict[int, list[int]],
        **kwargs,
    ) -> "RegionMap":
        """
        Cellular map from a rotation system: rotation[v] is the cyclic order of darts
        leaving v. Each face of the map becomes a disk region.
        """
        successor = {}
        for darts in rotation.values():
            for p, dart in enumerate(darts):
                successor[dart] = darts[(p + 1) % len(darts)]
        n_darts = 2 * len(edges)
        missing = [d for d in range(n_darts) if d not in successor]
        if missing:
            raise CubedInputError(f"Rotation system omits darts {missing}")

        seen: set[int] = set()
        regions = []
        for start in range(n_darts):
            if start in seen:
                continue
            walk = []
            dart = start
            while dart not in seen:
                seen.add(dart)
                walk.append(dart)
                dart = successor[alpha(dart)]
            regions.append(Region(walks=[walk]))
        return cls(n_vertices=n_vertices, edges=list(edges), regions=regions, **kwargs)

    def to_dict(self):
        return {
            "name": self.name,
            "carrier_genus": self.carrier_genus,
            "n_vertices": self.n_vertices,
            "vertex_kinds": list(self.vertex_kinds),
            "stems": {str(v): e for v, e in sorted(self.stems.items())},
            "edges": [list(e) for e in self.edges],
            "edge_labels": list(self.edge_labels),
            "regions": [region.to_dict() for region in self.regions],
            "meridians": None if self.meridians is None else [list(m) for m in self.meridians],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RegionMap":
        meridians = data.get("meridians")
        return cls(
            n_vertices=data["n_vertices"],
            edges=[tuple(e) for e in data.get("edges", [])],
            regions=[Region.from_dict(r) for r in data.get("regions", [])],
            carrier_genus=data.get("carrier_genus", 0),
            vertex_kinds=list(data.get("vertex_kinds", [])),
            stems={int(v): e for v, e in data.get("stems", {}).items()},
            edge_labels=list(data.get("edge_labels", [])),
            meridians=None if meridians is None else [tuple(m) for m in meridians],
            name=data.get("name", ""),
        )


########################################################
########      Types for Loops and their Sides   ########
########################################################


@dataclass(frozen=True)
class Loop:
    """
    A simple closed curve in general position with respect to a region map.

    For `cut` and `meridian` loops, `crossings` is the cyclic dart sequence and
    `variants[i]` says, for an arc whose ends lie on one walk of a region with
    several walks, which other walks go with the piece running forward from the
    arc's entry to its exit. `region` loops stay inside `region` and separate the
    walks in `variants[0]` from the rest; `edge` loops encircle part of `edge`.
    """

    kind: LoopKind
    crossings: tuple[int, ...] = ()
    variants: tuple[frozenset[int] | None, ...] = ()
    region: int | None = None
    edge: int | None = None

    @property
    def crossing_count(self) -> int:
        if self.kind == "edge":
            return 2
        return len(self.crossings)

    def arc_regions(self, m: RegionMap) -> list[int]:
        return [m.region_of(x) for x in self.crossings]

    def word(self, m: RegionMap) -> list[str]:
        """Boundary word: region traversed, then the edge crossed."""
        if self.kind == "region":
            return [f"R{self.region}"]
        if self.kind == "edge":
            e = self.edge
            return [f"R{m.region_of(2 * e)}", f"e{e}", f"R{m.region_of(2 * e + 1)}", f"e{e}"]
        items = []
        for x in self.crossings:
            items += [f"R{m.region_of(x)}", f"e{edge_of(x)}"]
        return items

    def to_dict(self):
        return {
            "kind": self.kind,
            "crossings": list(self.crossings),
            "variants": [None if v is None else sorted(v) for v in self.variants],
            "region": self.region,
            "edge": self.edge,
        }


@dataclass
class Side:
    """One component of the carrier cut open along a loop."""

    vertices: set[int]
    full_edges: set[int]
    halves: set[int]
    euler_characteristic: int

    @property
    def is_disk(self) -> bool:
        return self.euler_characteristic == 1

    @property
    def is_empty(self) -> bool:
        return not self.vertices and not self.full_edges and not self.halves

    def graph(self, m: RegionMap) -> nx.MultiGraph:
        """The graph inside this side, with each crossing point as an extra leaf node."""
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.full_edges:
            g.add_edge(*m.edges[e], key=("edge", e))
        for d in self.halves:
            g.add_edge(m.tail(d), ("crossing", edge_of(d)), key=("half", d))
        return g


def _chain_ok(m: RegionMap, crossings: tuple[int, ...]) -> bool:
    k = len(crossings)
    return all(
        m.region_of(alpha(crossings[i - 1])) == m.region_of(crossings[i]) for i in range(k)
    )


def _canonical(crossings: tuple[int, ...]) -> tuple[int, ...]:
    k = len(crossings)
    reverse = tuple(alpha(x) for x in reversed(crossings))
    options = [crossings[i:] + crossings[:i] for i in range(k)]
    options += [reverse[i:] + reverse[:i] for i in range(k)]
    return min(options)


def _arc_variants(m: RegionMap, entry: int, exit_: int) -> list[frozenset[int] | None]:
    """Ways to draw an arc from the entry dart to the exit dart inside their region."""
    r, w_in, _ = m.locate(entry)
    region = m.regions[r]
    _, w_out, _ = m.locate(exit_)
    if w_in != w_out:
        return [None]
    others = [w for w in range(len(region.walks)) if w != w_in]
    return [
        frozenset(subset)
        for size in range(len(others) + 1)
        for subset in itertools.combinations(others, size)
    ]


def small_loops(m: RegionMap, max_crossings: int = 3) -> tuple[list[Loop], bool]:
    """
    Loops meeting the graph in at most `max_crossings` points, one per isotopy class
    the cut representation distinguishes. Returns (loops, complete); complete is False
    when a region of positive genus had to be skipped.
    """
    complete = True
    loops: list[Loop] = []

    for r, region in enumerate(m.regions):
        if not region.planar:
            complete = False
            continue
        walks = range(len(region.walks))
        if len(region.walks) <= 1:
            loops.append(Loop(kind="region", region=r, variants=(frozenset(walks),)))
            continue
        for size in range(1, len(region.walks)):
            for subset in itertools.combinations(walks, size):
                if 0 in subset:
                    loops.append(Loop(kind="region", region=r, variants=(frozenset(subset),)))

    for e in range(len(m.edges)):
        loops.append(Loop(kind="edge", edge=e))

    skipped = {r for r, region in enumerate(m.regions) if not region.planar}
    sequences: set[tuple[int, ...]] = set()

    def extend(prefix: tuple[int, ...]):
        region = m.region_of(alpha(prefix[-1]))
        if region == m.region_of(prefix[0]):
            sequences.add(_canonical(prefix))
        if len(prefix) == max_crossings or region in {m.region_of(x) for x in prefix}:
            return
        used_edges = {edge_of(x) for x in prefix}
        for walk in m.regions[region].walks:
            for nxt in walk:
                if edge_of(nxt) not in used_edges:
                    extend(prefix + (nxt,))

    for start in range(m.n_darts):
        extend((start,))

    for crossings in sorted(sequences):
        arc_regions = [m.region_of(x) for x in crossings]
        if len(set(arc_regions)) != len(crossings) or len({edge_of(x) for x in crossings}) != len(
            crossings
        ):
            continue
        if set(arc_regions) & skipped:
            complete = False
            continue
        options = [
            _arc_variants(m, alpha(crossings[i - 1]), crossings[i]) for i in range(len(crossings))
        ]
        for variants in itertools.product(*options):
            loops.append(Loop(kind="cut", crossings=crossings, variants=tuple(variants)))

    return loops, complete


def meridian_loop(m: RegionMap, crossings: Iterable[int]) -> Loop:
    crossings = tuple(crossings)
    if crossings and not _chain_ok(m, crossings):
        raise CubedInputError(f"Meridian word {list(crossings)} is not a closed crossing sequence")
    variants = []
    for i in range(len(crossings)):
        options = _arc_variants(m, alpha(crossings[i - 1]), crossings[i])
        variants.append(options[0])
    return Loop(kind="meridian", crossings=crossings, variants=tuple(variants))


def loop_sides(m: RegionMap, loop: Loop) -> list[Side]:
    """Cut the carrier along the loop and describe each resulting piece."""
    if loop.kind == "edge":
        raise CubedInputError("Edge loops are classified without cutting")
    uf = UnionFind()
    crossed = {edge_of(x) for x in loop.crossings}
    pieces: list[tuple[tuple, int]] = []

    for v in range(m.n_vertices):
        uf.union(("v", v))
    for d in range(m.n_darts):
        uf.union(("h", d), ("v", m.tail(d)))
    for e in range(len(m.edges)):
        if e not in crossed:
            uf.union(("h", 2 * e), ("h", 2 * e + 1))

    def attach(node, darts, extra_halves=()):
        uf.union(node)
        for d in darts:
            uf.union(node, ("h", d))
            uf.union(node, ("h", alpha(d)))
        for h in extra_halves:
            uf.union(node, ("h", h))

    cut_regions = {}
    if loop.kind == "region":
        cut_regions[loop.region] = None
    for i, x in enumerate(loop.crossings):
        cut_regions[m.region_of(x)] = i

    for r, region in enumerate(m.regions):
        if r not in cut_regions:
            node = ("r", r)
            attach(node, [d for walk in region.walks for d in walk])
            pieces.append((node, region.euler_characteristic))
            continue
        b = len(region.walks)
        i = cut_regions[r]
        if i is None:
            subset = loop.variants[0]
            inside, outside = ("p", r, 0), ("p", r, 1)
            attach(inside, [d for w in sorted(subset) for d in region.walks[w]])
            attach(outside, [d for w in range(b) if w not in subset for d in region.walks[w]])
            pieces.append((inside, 1 - len(subset)))
            pieces.append((outside, 1 - (b - len(subset))))
            continue
        entry, exit_ = alpha(loop.crossings[i - 1]), loop.crossings[i]
        _, w_in, p_in = m.locate(entry)
        _, w_out, p_out = m.locate(exit_)
        if w_in != w_out:
            node = ("p", r, 0)
            others = [d for walk in region.walks for d in walk if d not in (entry, exit_)]
            attach(node, others, extra_halves=(entry, alpha(entry), exit_, alpha(exit_)))
            pieces.append((node, region.euler_characteristic + 1))
            continue
        walk = region.walks[w_in]
        n = len(walk)
        forward = [walk[(p_in + s) % n] for s in range(1, (p_out - p_in) % n)]
        backward = [walk[(p_out + s) % n] for s in range(1, (p_in - p_out) % n)]
        subset = loop.variants[i] or frozenset()
        rest = [w for w in range(b) if w != w_in and w not in subset]
        piece_a, piece_b = ("p", r, 0), ("p", r, 1)
        attach(
            piece_a,
            forward + [d for w in sorted(subset) for d in region.walks[w]],
            extra_halves=(alpha(entry), exit_),
        )
        attach(
            piece_b,
            backward + [d for w in rest for d in region.walks[w]],
            extra_halves=(alpha(exit_), entry),
        )
        pieces.append((piece_a, 1 - len(subset)))
        pieces.append((piece_b, 1 - len(rest)))

    groups: dict = {}
    for node, chi in pieces:
        groups.setdefault(uf[node], []).append(chi)
    sides = []
    for root, chis in sorted(groups.items(), key=lambda item: repr(item[0])):
        vertices = {v for v in range(m.n_vertices) if uf[("v", v)] == root}
        halves = {
            d for d in range(m.n_darts) if edge_of(d) in crossed and uf[("h", d)] == root
        }
        full = {e for e in range(len(m.edges)) if e not in crossed and uf[("h", 2 * e)] == root}
        chi = len(vertices) - len(full) - len(halves) + sum(chis)
        sides.append(Side(vertices, full, halves, chi))
    return sides


def _is_path(g: nx.MultiGraph) -> bool:
    return g.number_of_nodes() > 0 and nx.is_tree(g) and max(d for _, d in g.degree()) <= 2


def _is_tripod(g: nx.MultiGraph) -> bool:
    if g.number_of_nodes() == 0 or not nx.is_tree(g):
        return False
    degrees = [d for _, d in g.degree()]
    return degrees.count(3) == 1 and max(degrees) == 3


def classify_loop(m: RegionMap, loop: Loop) -> Triviality:
    """
    0 crossings: trivial iff it bounds an empty disk. 1: always essential. 2: trivial
    iff it cuts off a disk holding a single arc. 3: trivial iff it cuts off a single Y.
    Meridians meeting the graph at most three times are essential.
    """
    if loop.kind == "edge":
        return "TRIVIAL"
    if loop.kind == "meridian":
        return "ESSENTIAL" if loop.crossing_count <= 3 else "UNDECIDED"
    if loop.kind == "region" and len(m.regions[loop.region].walks) <= 1:
        return "TRIVIAL"
    sides = loop_sides(m, loop)
    disks = [side for side in sides if side.is_disk]
    if len(sides) < 2 or not disks:
        return "NOT_DISK"
    k = loop.crossing_count
    if k == 1:
        return "ESSENTIAL"
    for side in disks:
        g = side.graph(m)
        if k == 0 and side.is_empty:
            return "TRIVIAL"
        if k == 2 and _is_path(g):
            return "TRIVIAL"
        if k == 3 and _is_tripod(g):
            return "TRIVIAL"
    return "ESSENTIAL"


def arc_is_boundary_parallel(m: RegionMap, loop: Loop, i: int) -> bool | None:
    """Whether arc i of the loop cuts a disk off its region; None for regions of positive genus."""
    x = loop.crossings[i]
    r = m.region_of(x)
    region = m.regions[r]
    if not region.planar:
        return None
    entry = alpha(loop.crossings[i - 1])
    _, w_in, _ = m.locate(entry)
    _, w_out, _ = m.locate(x)
    if w_in != w_out:
        return False
    others = len(region.walks) - 1
    subset = loop.variants[i] or frozenset()
    return len(subset) in (0, others)
