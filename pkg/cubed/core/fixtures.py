"""Named cube complexes used by the CLI, the shipped fixture files and the test suite."""

from collections.abc import Callable

from cubed.core.cube_complex import CubeComplex, Gluing, build_complex


def three_torus() -> CubeComplex:
    """One cube, opposite faces identified by translation."""
    return build_complex(1, [Gluing(0, f, 0, f + 3, "id") for f in range(3)])


def three_torus_double() -> CubeComplex:
    """Two cubes stacked along x, glued into a 2x1x1 three-torus."""
    return build_complex(
        2,
        [
            Gluing(0, 3, 1, 0, "id"),
            Gluing(1, 3, 0, 0, "id"),
            *(Gluing(cube, f, cube, f + 3, "id") for cube in range(2) for f in (1, 2)),
        ],
    )


def checkerboard_torus() -> CubeComplex:
    """Two cubes, every face of cube 0 glued to the opposite face of cube 1."""
    return build_complex(2, [Gluing(0, f, 1, (f + 3) % 6, "id") for f in range(6)])


def klein_bottle_times_circle() -> CubeComplex:
    """One cube; the x-faces are glued by a reflection flipping y."""
    return build_complex(
        1,
        [Gluing(0, 0, 0, 3, "m1"), Gluing(0, 1, 0, 4, "id"), Gluing(0, 2, 0, 5, "id")],
    )


def degree_three_edge() -> CubeComplex:
    """Three cubes around a common z-edge; that interior edge has degree 3."""
    return build_complex(3, [Gluing(i, 1, (i + 1) % 3, 0, "id") for i in range(3)])


def tesseract_boundary() -> CubeComplex:
    """
    The eight facets of the 4-cube. Facet (i, s) has x_i = s and local axes the
    remaining coordinates in increasing order; it is cube 2 * i + s.
    """

    def local(i: int, j: int) -> int:
        return [k for k in range(4) if k != i].index(j)

    gluings = []
    for i in range(4):
        for j in range(i + 1, 4):
            for s in (0, 1):
                for t in (0, 1):
                    gluings.append(
                        Gluing(2 * i + s, local(i, j) + 3 * t, 2 * j + t, local(j, i) + 3 * s, "id")
                    )
    return build_complex(8, gluings)


def doubled_cube() -> CubeComplex:
    """Two cubes glued face to face along all six faces; every edge has degree 2."""
    return build_complex(2, [Gluing(0, f, 1, f, "id") for f in range(6)])


def doubled_box() -> CubeComplex:
    """A 1x1x2 box of two cubes glued to a copy of itself along its boundary."""
    gluings = [Gluing(0, 5, 1, 2, "id"), Gluing(2, 5, 3, 2, "id")]
    gluings += [Gluing(0, f, 2, f, "id") for f in (0, 1, 2, 3, 4)]
    gluings += [Gluing(1, f, 3, f, "id") for f in (0, 1, 3, 4, 5)]
    return build_complex(4, gluings)


def single_cube() -> CubeComplex:
    return build_complex(1, [])


def face_pair() -> CubeComplex:
    """Two cubes sharing one face."""
    return build_complex(2, [Gluing(0, 3, 1, 0, "id")])


COMPLEX_FIXTURES: dict[str, Callable[[], CubeComplex]] = {
    "t3": three_torus,
    "t3_double": three_torus_double,
    "checkerboard": checkerboard_torus,
    "kbs1": klein_bottle_times_circle,
    "deg3edge": degree_three_edge,
    "tesseract": tesseract_boundary,
    "doubled_cube": doubled_cube,
    "doubled_box": doubled_box,
    "cube": single_cube,
    "face_pair": face_pair,
}

NPC_FIXTURES = ("t3", "t3_double", "checkerboard", "kbs1")
NON_NPC_CLOSED_FIXTURES = ("tesseract", "doubled_cube", "doubled_box")


def get_complex_fixture(name: str) -> CubeComplex:
    if name not in COMPLEX_FIXTURES:
        raise ValueError(
            f"Unknown complex fixture: {name}. Supported: {sorted(COMPLEX_FIXTURES)}"
        )
    return COMPLEX_FIXTURES[name]()
