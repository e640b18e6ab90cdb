"""Shared test and CLI fixtures: combinatorial surfaces, weights, geometry.

Geometric fixtures (octahedron, tetrahedra, random hulls) live here too so
that the CLI, the tests, and the experiment scripts agree on one source.
"""

from __future__ import annotations

import cmath
import functools
import math

import numpy as np

from . import cellsurf, mink
from .cellsurf import CellSurface, from_face_vertex_lists
from .surfgroup import Genus2Complex


@functools.lru_cache(maxsize=1)
def genus2_complex():
    """The 10-vertex genus-2 octagon fixture (cached; carries labels)."""
    return Genus2Complex()


def genus2_surface_file():
    """Path of the shipped "surf v1" serialization of the genus-2 fixture."""
    import importlib.resources as res
    return res.files("endlab").joinpath("data/genus2.surf")


def tetrahedron_surface():
    """Boundary of the tetrahedron, faces counterclockwise from outside."""
    return from_face_vertex_lists([[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])


#: octahedron vertices are indexed +x,-x,+y,-y,+z,-z
_OCTA_AXES = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]

#: faces listed counterclockwise as seen from inside, which makes the
#: argument of the edge cross-ratios the (positive) interior angle
_OCTA_FACES = [
    [4, 2, 0], [4, 1, 2], [4, 3, 1], [4, 0, 3],
    [5, 0, 2], [5, 2, 1], [5, 1, 3], [5, 3, 0],
]


def octahedron_surface():
    """Boundary of the octahedron (8 triangles, all vertex degrees 4)."""
    return from_face_vertex_lists(_OCTA_FACES)


def octahedron_null_vectors(scales=None):
    """Future null vectors over the six octahedron directions.

    ``scales`` optionally rescales each decoration by e^{s_v}.
    """
    out = []
    for i, ax in enumerate(_OCTA_AXES):
        u = np.array([ax[0], ax[1], ax[2], 1.0], dtype=float)
        if scales is not None:
            u = math.exp(scales[i]) * u
        out.append(u)
    return out


def genus2_theta_uniform():
    """All weights 2*pi/3: every face of the fixture sums to 2*pi."""
    g = genus2_complex()
    return np.full(g.surface.n_edges, 2.0 * math.pi / 3.0)


def genus2_theta_bad_link(spoke=0.8 * math.pi):
    """Weights with correct face sums but a short failing contractible cycle.

    The four edges at trisection vertex 1 are pinned to ``spoke``; its link
    4-cycle then sums to 8*pi - 2*4*spoke < 2*pi while every face still
    sums to 2*pi (remaining weights solved by least squares).  Returns
    (theta, link_cycle_edge_ids).
    """
    g = genus2_complex()
    s = g.surface
    star = s.vertex_star(1)
    spokes = sorted({d // 2 for d in star})
    link_edges = sorted({int(s.fnext[d]) // 2 for d in star})

    n = s.n_edges
    pins = {e: spoke for e in spokes}
    a_rows = []
    b = []
    for cyc in s.face_cycles:
        row = np.zeros(n)
        for d in cyc:
            row[d // 2] += 1.0
        a_rows.append(row)
        b.append(2.0 * math.pi)
    a = np.array(a_rows)
    bvec = np.array(b)
    free = [e for e in range(n) if e not in pins]
    rhs = bvec - a[:, spokes] @ np.array([pins[e] for e in spokes])
    afree = a[:, free]
    from scipy.optimize import lsq_linear
    sol = lsq_linear(afree, rhs, bounds=(0.05, math.pi - 0.05))
    theta = np.empty(n)
    theta[free] = sol.x
    for e, val in pins.items():
        theta[e] = val
    assert np.all(theta > 0) and np.all(theta < math.pi)
    assert np.max(np.abs(a @ theta - bvec)) < 1e-10
    return theta, link_edges


# ---------------------------------------------------------------------------
# geometric fixtures


def ideal_octahedron(scales=None):
    """Regular ideal octahedron with unit-scale decorations (optionally
    rescaled per vertex); all exterior dihedral angles are pi/2."""
    from . import polysurf
    geoms = [polysurf.ideal_point(u) for u in octahedron_null_vectors(scales)]
    return polysurf.PolySurface(octahedron_surface(), geoms)


def rotated_ideal_octahedron():
    """Ideal octahedron rotated so that no vertex hits the chart's
    projection direction (0,0,-1); all Gauss-map images are then circles."""
    from . import polysurf
    from scipy.linalg import expm
    gens = mink.so31_basis()
    rot = expm(0.35 * gens[1] + 0.25 * gens[2])
    geoms = [polysurf.ideal_point(rot @ u) for u in octahedron_null_vectors()]
    return polysurf.PolySurface(octahedron_surface(), geoms)


def tetra_chart_points(z=None):
    """CP^1 chart positions (0, 1, inf, z) of an ideal tetrahedron."""
    if z is None:
        z = cmath.exp(1j * math.pi / 3.0)
    return [0j, 1 + 0j, complex(math.inf, 0.0), z]


def ideal_tetrahedron(z=None, scales=None):
    """Ideal tetrahedron over chart points 0, 1, inf, z (default regular)."""
    from . import polysurf
    pts = tetra_chart_points(z)
    geoms = []
    for i, p in enumerate(pts):
        u = mink.chart_to_null(p)
        if scales is not None:
            u = math.exp(scales[i]) * u
        geoms.append(polysurf.ideal_point(u))
    return polysurf.PolySurface(tetrahedron_surface(), geoms)


_TETRA_DIRS = np.array([
    (1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0),
]) / math.sqrt(3.0)


def compact_tetrahedron(radius=1.0):
    """Regular compact tetrahedron at the given circumradius about the origin."""
    from . import polysurf
    geoms = []
    for d in _TETRA_DIRS:
        v = np.array([*(math.sinh(radius) * d), math.cosh(radius)])
        geoms.append(polysurf.compact_point(v))
    return polysurf.PolySurface(tetrahedron_surface(), geoms)


def hyperideal_tetrahedron(k=2.0):
    """Regular hyperideal tetrahedron: vertices (k d, sqrt(k^2-1)) in dS^3."""
    from . import polysurf
    geoms = []
    for d in _TETRA_DIRS:
        v = np.array([*(k * d), math.sqrt(k * k - 1.0)])
        geoms.append(polysurf.hyper_point(v))
    return polysurf.PolySurface(tetrahedron_surface(), geoms)


def _separated_directions(rng, n, min_angle=0.55):
    """Unit directions with pairwise angular separation, by rejection."""
    dirs = []
    attempts = 0
    while len(dirs) < n:
        attempts += 1
        if attempts > 20000:
            raise RuntimeError("direction sampling failed; lower min_angle")
        d = rng.normal(size=3)
        d = d / np.linalg.norm(d)
        if all(np.dot(d, e) < math.cos(min_angle) for e in dirs):
            dirs.append(d)
    return np.array(dirs)


def _hull_faces(points3):
    """Outward-oriented triangles of the convex hull of 3d points."""
    from scipy.spatial import ConvexHull
    hull = ConvexHull(points3)
    if len(hull.vertices) != len(points3):
        raise RuntimeError("input points are not in convex position")
    faces = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        a, b, c = simplex
        normal = eq[:3]
        if np.dot(np.cross(points3[b] - points3[a], points3[c] - points3[a]),
                  normal) < 0:
            a, b, c = a, c, b
        faces.append([int(a), int(b), int(c)])
    return faces


def random_convex_compact(seed, n=8):
    """Seeded random convex compact surface: n points on a sphere in H^3."""
    from . import polysurf
    rng = np.random.default_rng(seed)
    n = max(n, 5)
    dirs = _separated_directions(rng, n)
    radius = 0.8 + 0.4 * rng.random()
    klein = math.tanh(radius) * dirs
    faces = _hull_faces(klein)
    surface = from_face_vertex_lists(faces, n_vertices=n)
    geoms = [polysurf.compact_point(
        np.array([*(math.sinh(radius) * d), math.cosh(radius)]))
        for d in dirs]
    return polysurf.PolySurface(surface, geoms)


def random_ideal(seed, n=8, decorated=True):
    """Seeded random ideal surface: n ideal points with random decorations."""
    from . import polysurf
    rng = np.random.default_rng(seed)
    n = max(n, 5)
    dirs = _separated_directions(rng, n)
    # inside-ccw orientation, matching the cross-ratio angle convention
    faces = [f[::-1] for f in _hull_faces(dirs)]
    surface = from_face_vertex_lists(faces, n_vertices=n)
    geoms = []
    for d in dirs:
        u = np.array([d[0], d[1], d[2], 1.0])
        if decorated:
            u = math.exp(rng.uniform(-0.3, 0.3)) * u
        geoms.append(polysurf.ideal_point(u))
    return polysurf.PolySurface(surface, geoms)


def flat_vertex_pyramid(rho=0.9, height=0.8):
    """Double pyramid over a square with the lower apex flattened into the
    equatorial plane; the flat vertex admits a first-order isometric motion,
    so the rigidity kernel exceeds the trivial dimension."""
    from . import polysurf
    base = []
    for i in range(4):
        phi = 2.0 * math.pi * i / 4.0
        base.append(np.array([math.sinh(rho) * math.cos(phi),
                              math.sinh(rho) * math.sin(phi), 0.0,
                              math.cosh(rho)]))
    top = np.array([0.0, 0.0, math.sinh(height), math.cosh(height)])
    flat = np.array([0.0, 0.0, 0.0, 1.0])
    pts = base + [top, flat]
    faces = [[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4],
             [1, 0, 5], [2, 1, 5], [3, 2, 5], [0, 3, 5]]
    surface = from_face_vertex_lists(faces, n_vertices=6)
    geoms = [polysurf.compact_point(p) for p in pts]
    return polysurf.PolySurface(surface, geoms, strict=False)
