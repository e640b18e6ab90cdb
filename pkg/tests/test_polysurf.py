import math

import numpy as np
import pytest

from endlab import fixtures, mink, polysurf
from endlab.cellsurf import from_face_vertex_lists
from endlab.decor import BACKWARD, FORWARD
from endlab.mink import mdot
from endlab.polysurf import (PolyBuildError, PolySurface, UnsupportedGeometry,
                             VertexGeom, build, compact_point, hyper_point,
                             ideal_point, parse_poly, serialize_poly)


def test_octahedron_builds_right_angles():
    oc = fixtures.ideal_octahedron()
    assert np.allclose(oc.dihedral_angles(), math.pi / 2, atol=1e-12)


def test_octahedron_rescale_adds_to_incident_edges():
    t = 0.41
    base = fixtures.ideal_octahedron()
    scaled = fixtures.ideal_octahedron(scales=[t, 0, 0, 0, 0, 0])
    l0 = base.edge_lengths()
    l1 = scaled.edge_lengths()
    for e, (u, v) in enumerate(base.tri.edges):
        expect = l0[e] + (t if 0 in (u, v) else 0.0)
        assert abs(l1[e] - expect) < 1e-12


def test_ideal_tetrahedron_angles():
    tet = fixtures.ideal_tetrahedron()
    interior = math.pi - tet.dihedral_angles()
    assert np.allclose(interior, math.pi / 3, atol=1e-10)
    # generic shape: interior angles are arg z, arg 1/(1-z), arg (z-1)/z
    z = 0.9 + 1.2j
    tet2 = fixtures.ideal_tetrahedron(z)
    interior2 = sorted(math.pi - a for a in tet2.dihedral_angles())
    expected = sorted([np.angle(z), np.angle(1 / (1 - z)),
                       np.angle((z - 1) / z)] * 2)
    assert np.allclose(interior2, expected, atol=1e-10)


def test_compact_tetrahedron_gram_oracle():
    r = 1.0
    ct = fixtures.compact_tetrahedron(r)
    # independent Gram computation: cosh l = cosh^2 r - sinh^2 r cos(angle),
    # regular tetrahedron directions have pairwise cosine -1/3
    expect = math.acosh(math.cosh(r) ** 2 + math.sinh(r) ** 2 / 3.0)
    assert np.allclose(ct.edge_lengths(), expect, atol=1e-12)


def test_hyperideal_truncated_length():
    ht = fixtures.hyperideal_tetrahedron(k=2.0)
    # adjacent vertices pair to -(k^2/3 + k^2 - 1) = -13/3
    assert np.allclose(ht.edge_lengths(), math.acosh(13.0 / 3.0), atol=1e-12)


def double_pyramid(h_top, h_bot=-0.8, rho=0.9):
    pts = []
    for i in range(4):
        phi = 2 * math.pi * i / 4
        pts.append(np.array([math.sinh(rho) * math.cos(phi),
                             math.sinh(rho) * math.sin(phi), 0.0,
                             math.cosh(rho)]))
    pts.append(np.array([0.0, 0.0, math.sinh(h_top), math.cosh(h_top)]))
    pts.append(np.array([0.0, 0.0, math.sinh(h_bot), math.cosh(h_bot)]))
    faces = [[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4],
             [1, 0, 5], [2, 1, 5], [3, 2, 5], [0, 3, 5]]
    surf = from_face_vertex_lists(faces, n_vertices=6)
    return build(surf, [compact_point(p) for p in pts])


def test_concave_vertex_rejected():
    # a tetrahedron cannot be dented (4 points are always in convex
    # position); push the top apex of a double pyramid through the base
    # plane instead
    double_pyramid(0.8)  # convex control
    with pytest.raises(PolyBuildError, match="concave"):
        double_pyramid(-0.3)


def test_mixed_kinds_rejected():
    geoms = [compact_point(np.array([0.0, 0, 0, 1])),
             ideal_point(np.array([1.0, 0, 0, 1])),
             ideal_point(np.array([0.0, 1, 0, 1])),
             ideal_point(np.array([0.0, 0, 1, 1]))]
    with pytest.raises(UnsupportedGeometry):
        build(fixtures.tetrahedron_surface(), geoms)


# ---------------------------------------------------------------------------
# links


def test_compact_link_standard_frame():
    t = 0.77
    points = [np.array([0.0, 0, 0, 1]),
              np.array([0.0, 0, math.sinh(t), math.cosh(t)]),
              np.array([math.sinh(t), 0, 0, math.cosh(t)]),
              np.array([0.0, math.sinh(t), 0, math.cosh(t)])]
    # not convex necessarily; build loosely just to read links
    ps = build(fixtures.tetrahedron_surface(),
               [compact_point(p) for p in points], strict=False)
    links = ps.links()
    d = next(d for d in range(ps.tri.n_darts)
             if ps.tri.tail(d) == 0 and ps.tri.head(d) == 1)
    assert np.allclose(links.coords[d], [0.0, 0.0, 1.0], atol=1e-12)


def test_octahedron_vertex_link_is_square():
    oc = fixtures.ideal_octahedron()
    links = oc.links()
    star = oc.tri.vertex_star(4)  # the +z vertex
    pts = [links.coords[d] for d in star]
    assert len(pts) == 4
    side = [np.linalg.norm(pts[i] - pts[(i + 1) % 4]) for i in range(4)]
    diag = [np.linalg.norm(pts[0] - pts[2]), np.linalg.norm(pts[1] - pts[3])]
    assert np.allclose(side, side[0], atol=1e-12)
    assert np.allclose(diag, math.sqrt(2) * side[0], atol=1e-12)


def convex_polygon_2d(points):
    n = len(points)
    cross = []
    for i in range(n):
        a = points[(i + 1) % n] - points[i]
        b = points[(i + 2) % n] - points[(i + 1) % n]
        cross.append(a[0] * b[1] - a[1] * b[0])
    return all(c > 0 for c in cross) or all(c < 0 for c in cross)


def spherical_convex(points):
    n = len(points)
    dets = []
    for i in range(n):
        dets.append(np.linalg.det(np.array([points[i], points[(i + 1) % n],
                                            points[(i + 2) % n]])))
    return all(d > 0 for d in dets) or all(d < 0 for d in dets)


def test_links_form_convex_polygons():
    oc = fixtures.ideal_octahedron()
    links = oc.links()
    for v in range(6):
        pts = [links.coords[d] for d in oc.tri.vertex_star(v)]
        assert convex_polygon_2d(pts)
    rc = fixtures.random_convex_compact(11, 8)
    links = rc.links()
    for v in range(8):
        pts = [links.coords[d] for d in rc.tri.vertex_star(v)]
        assert spherical_convex(pts)


# ---------------------------------------------------------------------------
# duality


def test_dual_tetrahedron_lengths_are_angles():
    ct = fixtures.compact_tetrahedron(0.9)
    dual = ct.dual_surface()
    assert np.allclose(dual.edge_lengths(), ct.dihedral_angles(), atol=1e-10)


def test_dual_involution_recovers_planes():
    ct = fixtures.compact_tetrahedron(0.9)
    dual = ct.dual_surface()
    # dual faces of the dual correspond to primal vertices; their planes'
    # normals are the original vertex positions
    for v in range(ct.base.n_vertices):
        n = dual.face_normals[v]
        p = mink.normalize_timelike(n)
        assert np.allclose(p, ct.vectors[v], atol=1e-9)


def test_dual_random_fixture():
    rc = fixtures.random_convex_compact(17, 7)
    dual = rc.dual_surface()
    ne = rc.base.n_edges
    # dual edges reuse primal ids; triangulation diagonals come after
    assert np.allclose(dual.edge_lengths()[:ne], rc.dihedral_angles(),
                       atol=1e-10)
    for v in range(rc.base.n_vertices):
        p = mink.normalize_timelike(dual.base_face_normal(v))
        assert np.allclose(p, rc.vectors[v], atol=1e-9)


# ---------------------------------------------------------------------------
# isometry invariance


def test_lengths_angles_isometry_invariant():
    rng = np.random.default_rng(7)
    for fixture in (fixtures.compact_tetrahedron(1.1),
                    fixtures.ideal_octahedron([0.1, -0.2, 0.0, 0.3, -0.1, 0.2]),
                    fixtures.hyperideal_tetrahedron(1.8)):
        a = mink.random_isometry(rng)
        moved = fixture.with_vertex_vectors([a @ v for v in fixture.vectors],
                                            reference=a @ fixture.reference)
        assert np.allclose(moved.edge_lengths(), fixture.edge_lengths(),
                           atol=1e-10)
        assert np.allclose(moved.dihedral_angles(), fixture.dihedral_angles(),
                           atol=1e-10)


# ---------------------------------------------------------------------------
# fan triangulation of polygon faces


def square_pyramid():
    # base square 0..3 in the plane x3=0, apex 4 above
    rho, h = 0.8, 0.7
    pts = []
    for i in range(4):
        phi = 2 * math.pi * i / 4
        pts.append(np.array([math.sinh(rho) * math.cos(phi),
                             math.sinh(rho) * math.sin(phi), 0.0,
                             math.cosh(rho)]))
    pts.append(np.array([0.0, 0.0, math.sinh(h), math.cosh(h)]))
    faces = [[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4], [3, 2, 1, 0]]
    surf = from_face_vertex_lists(faces, n_vertices=5)
    return build(surf, [compact_point(p) for p in pts])


def test_quad_face_triangulated_flat_diagonal():
    ps = square_pyramid()
    assert ps.base.n_faces == 5 and ps.tri.n_faces == 6
    assert len(ps.diagonal_edges) == 1
    angles = ps.dihedral_angles()
    diag = next(iter(ps.diagonal_edges))
    assert abs(angles[diag]) < 1e-9
    # structural edges are strictly convex
    for e in range(ps.tri.n_edges):
        if e != diag:
            assert angles[e] > 0.1


def test_nonplanar_quad_rejected():
    rho, h = 0.8, 0.7
    pts = []
    for i in range(4):
        phi = 2 * math.pi * i / 4
        bump = 0.1 if i == 0 else 0.0
        pts.append(np.array([math.sinh(rho) * math.cos(phi),
                             math.sinh(rho) * math.sin(phi), -bump,
                             math.cosh(rho)]))
    pts.append(np.array([0.0, 0.0, math.sinh(h), math.cosh(h)]))
    faces = [[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4], [3, 2, 1, 0]]
    surf = from_face_vertex_lists(faces, n_vertices=5)
    with pytest.raises(PolyBuildError, match="non-planar"):
        build(surf, [compact_point(p) for p in pts])


# ---------------------------------------------------------------------------
# gauss circles


def circle_exterior_cos(c1, c2):
    (_, z1, r1), (_, z2, r2) = c1, c2
    d = abs(z1 - z2)
    return (d * d - r1 * r1 - r2 * r2) / (2 * r1 * r2)


def test_gauss_circles_octahedron():
    # the axis-aligned octahedron has a vertex at the projection direction,
    # so rotate: all eight images are then honest circles
    oc = fixtures.rotated_ideal_octahedron()
    circles = oc.gauss_circles()
    assert len(circles) == 8
    assert all(c[0] == "circle" for c in circles)
    s = oc.base
    for e in range(s.n_edges):
        c1 = circles[int(s.dart_face[2 * e])]
        c2 = circles[int(s.dart_face[2 * e + 1])]
        assert abs(circle_exterior_cos(c1, c2)) < 1e-9  # orthogonal


def test_gauss_circles_exterior_angle_sum_at_vertices():
    # Delaunay face condition: around each ideal vertex the exterior
    # intersection angles of consecutive circles sum to 2*pi
    oc = fixtures.rotated_ideal_octahedron()
    circles = oc.gauss_circles()
    s = oc.base
    for v in range(s.n_vertices):
        star = s.vertex_star(v)
        total = 0.0
        for d in star:
            c1 = circles[int(s.dart_face[d])]
            c2 = circles[int(s.dart_face[d ^ 1])]
            total += math.acos(max(-1, min(1, circle_exterior_cos(c1, c2))))
        assert abs(total - 2 * math.pi) < 1e-9


def test_gauss_circles_tetrahedron_records():
    # vertices 0, 1, inf, zeta: the three faces through the chart's
    # infinity are lines, the face (0, zeta, 1) is a circle
    tet = fixtures.ideal_tetrahedron()
    recs = tet.gauss_circles()
    kinds = sorted(r[0] for r in recs)
    assert kinds == ["circle", "line", "line", "line"]
    # the face through 0, 1, inf is the real axis: y = 0
    line_real = [r for r in recs if r[0] == "line" and abs(r[1]) < 1e-12]
    assert any(abs(b - 1.0) < 1e-12 and abs(c) < 1e-12
               for (_, a, b, c) in line_real)


def test_gauss_circles_angles_generic_tetrahedron():
    z = 0.8 + 1.1j
    tet = fixtures.ideal_tetrahedron(z)
    recs = tet.gauss_circles()
    ext = tet.dihedral_angles()
    s = tet.base
    for e in range(s.n_edges):
        r1 = recs[int(s.dart_face[2 * e])]
        r2 = recs[int(s.dart_face[2 * e + 1])]
        if r1[0] == "circle" and r2[0] == "circle":
            ang = math.acos(max(-1, min(1, circle_exterior_cos(r1, r2))))
            assert abs(ang - ext[e]) < 1e-9


# ---------------------------------------------------------------------------
# decorations from deformations


def killing_field_at(ps, gen_index):
    gen = mink.so31_basis()[gen_index]
    return [gen @ v for v in ps.vectors]


def test_killing_deformation_certified_consistent():
    ct = fixtures.compact_tetrahedron(1.0)
    for i in range(6):
        z = killing_field_at(ct, i)
        dec = ct.decoration_from_deformation(z, certified=True)
        assert dec.states.shape == (ct.tri.n_edges,)


def test_zero_deformation_trivial():
    ct = fixtures.compact_tetrahedron(1.0)
    z = [np.zeros(4) for _ in range(4)]
    dec = ct.decoration_from_deformation(z, certified=True)
    assert not dec.states.any()


def test_radial_scaling_not_length_preserving():
    r = 1.0
    ct = fixtures.compact_tetrahedron(r)
    z = []
    for d in fixtures._TETRA_DIRS:
        z.append(np.array([*(math.cosh(r) * d), math.sinh(r)]))
    with pytest.raises(PolyBuildError, match="not length-preserving"):
        ct.decoration_from_deformation(z, certified=True)


# ---------------------------------------------------------------------------
# poly v1 format


def test_poly_roundtrip():
    oc = fixtures.ideal_octahedron([0.1, 0, -0.1, 0, 0.2, 0])
    text = serialize_poly(oc)
    back = parse_poly(text)
    assert serialize_poly(back) == text
    assert np.allclose(back.edge_lengths(), oc.edge_lengths(), atol=0)


def test_poly_parse_geom_error():
    oc = fixtures.ideal_octahedron()
    text = serialize_poly(oc).replace("geom 0 ideal", "geom 0 weird", 1)
    with pytest.raises(Exception):
        parse_poly(text)
