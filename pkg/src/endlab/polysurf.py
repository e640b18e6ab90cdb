"""Geometric polyhedral surfaces over a cell surface.

A PolySurface attaches to each vertex of a CellSurface one of three kinds
of geometric data: a point of H^3 (compact), a decorated horosphere vector
(ideal, future null; the scale is the decoration), or a point of dS^3
(hyperideal).  Faces must be planar, the surface locally convex; face
plane normals are oriented away from the convex side (negative pairing
with an interior reference point), so exterior dihedral angles are
acos(<n1,n2>).

Edge lengths by endpoint kind: compact pairs use acosh(-<p,q>); ideal
pairs use the decorated length log(-<u,w>/2), a representative of the
per-vertex-shift quotient; hyperideal pairs use the truncated length
acosh(-<v0,v1>) when the edge crosses H^3, and the spacelike de Sitter
distance acos(<v0,v1>) on dual surfaces (whose edges stay in dS^3).
Surfaces mixing vertex kinds are rejected.

Non-triangular faces are fan-triangulated from their lowest-index vertex;
the added diagonals are flagged, carry exterior angle 0, and participate
in the length data.  Only finite polyhedral configurations are modelled;
properness of a surface in an end has no finite analogue here and is
recorded as unverified in the build diagnostics.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import mink
from .cellsurf import CellSurface, SurfaceFormatError, parse_surf, serialize_surf, twin
from .decor import BACKWARD, FORWARD, Decoration
from .mink import GeometryError, mdot

TAU_PLANE = 1e-8

COMPACT, IDEAL, HYPER = "compact", "ideal", "hyper"


class PolyBuildError(ValueError):
    pass


class UnsupportedGeometry(PolyBuildError):
    pass


@dataclass(frozen=True)
class VertexGeom:
    """Tagged vertex data: compact H^3 point, ideal horosphere, dS^3 point."""

    kind: str
    vec: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vec, dtype=float)
        if self.kind == COMPACT:
            v = mink.normalize_timelike(v)
        elif self.kind == IDEAL:
            if not mink.is_future_null(v):
                raise PolyBuildError("ideal vertex needs a future null vector")
        elif self.kind == HYPER:
            v = mink.normalize_spacelike(v)
        else:
            raise PolyBuildError("unknown vertex kind %r" % self.kind)
        object.__setattr__(self, "vec", v)

    def rescaled(self, t):
        if self.kind != IDEAL:
            raise PolyBuildError("only ideal decorations rescale")
        return VertexGeom(IDEAL, math.exp(t) * self.vec)


def compact_point(v):
    return VertexGeom(COMPACT, v)


def ideal_point(u):
    return VertexGeom(IDEAL, u)


def hyper_point(v):
    return VertexGeom(HYPER, v)


# ---------------------------------------------------------------------------
# fan triangulation of polygon faces


def _triangulate(base):
    """Triangulated copy of ``base``: (surface, diagonal edge ids).

    Polygon faces are fanned from their lowest-index vertex; original edge
    ids are preserved, diagonals appended after them.
    """
    if base.is_quasi_simplicial():
        return base, set()
    edges = list(base.edges)
    cycles = []
    diagonals = set()
    for cyc in base.face_cycles:
        m = len(cyc)
        if m == 3:
            cycles.append(list(cyc))
            continue
        if m < 3:
            raise PolyBuildError("face with fewer than 3 sides")
        verts = [base.tail(d) for d in cyc]
        p = verts.index(min(verts))
        rot = cyc[p:] + cyc[:p]
        vrot = verts[p:] + verts[:p]
        # fan: triangles (v0, v_i, v_{i+1}); diagonal i runs v0 -> v_i
        diag_dart = {}
        for i in range(2, m - 1):
            e_id = len(edges)
            edges.append((vrot[0], vrot[i]))
            diagonals.add(e_id)
            diag_dart[i] = 2 * e_id
        for i in range(1, m - 1):
            first = rot[0] if i == 1 else diag_dart[i]
            last = twin(diag_dart[i + 1]) if i + 1 <= m - 2 else rot[m - 1]
            cycles.append([first, rot[i], last])
    tri = CellSurface(base.n_vertices, edges, cycles, None)
    return tri, diagonals


# ---------------------------------------------------------------------------
# frames and links


def _gram_schmidt_frame(v):
    """Minkowski-orthonormal frame of the complement of a non-null v.

    Returns (rows, signs): rows[i] with <rows[i], rows[j]> = signs[i] d_ij,
    deterministic over the canonical seed order.
    """
    basis = [np.asarray(v, dtype=float)]
    norms = [mdot(v, v)]
    rows, signs = [], []
    for seed in np.eye(4):
        w = seed.copy()
        for b, q in zip(basis, norms):
            w = w - (mdot(w, b) / q) * b
        q = mdot(w, w)
        if abs(q) < 1e-10:
            continue
        w = w / math.sqrt(abs(q))
        basis.append(w)
        norms.append(math.copysign(1.0, q))
        rows.append(w)
        signs.append(int(math.copysign(1.0, q)))
        if len(rows) == 3:
            break
    if len(rows) != 3:
        raise PolyBuildError("degenerate tangent frame")
    return np.array(rows), np.array(signs)


def horosphere_chart(u):
    """Flat chart data of the horosphere with vector u.

    Returns (ea, eb, m): unit spacelike chart axes and the opposite null
    vector with <u, m> = -2.  Chart points are
    p(xi) = ((1+|xi|^2)/2) u/... -- concretely coordinates of a point p on
    the horosphere are xi = (<p, ea>, <p, eb>).
    """
    u = np.asarray(u, dtype=float)
    m_raw = np.array([-u[0], -u[1], -u[2], u[3]])
    m = m_raw / (u[3] * u[3])
    spatial = u[:3]
    axes = []
    for seed in np.eye(3):
        w = seed - (seed @ spatial) / (spatial @ spatial) * spatial
        for a in axes:
            w = w - (w @ a[:3]) * a[:3]
        nrm = np.linalg.norm(w)
        if nrm < 1e-10:
            continue
        axes.append(np.array([w[0], w[1], w[2], 0.0]) / nrm)
        if len(axes) == 2:
            break
    if len(axes) != 2:
        raise PolyBuildError("degenerate horosphere chart")
    return axes[0], axes[1], m


def ideal_link_point(u_v, u_w):
    """Intersection of the geodesic (u_v, u_w) with the horosphere of u_v."""
    mu = -mdot(u_v, u_w)
    if mu <= 0:
        raise GeometryError("same ideal point")
    return 0.5 * u_v + u_w / mu


@dataclass
class VertexFrame:
    kind: str
    vectors: np.ndarray          # rows: frame vectors (3x4) or chart (ea, eb, m)
    signs: np.ndarray            # metric signs of the coordinates


@dataclass
class LinkBundle:
    """Per-vertex frames and per-dart link coordinates.

    For a dart d with tail v: compact/hyper vertices store the unit tangent
    at v along the edge, as frame coordinates (3,) and as a 4-vector; ideal
    vertices store the chart coordinates (2,) of the intersection of the
    edge with the decorated horosphere, and the intersection point itself.
    """

    frames: list
    coords: dict
    raw: dict

    def dim(self, v):
        return 2 if self.frames[v].kind == IDEAL else 3


# ---------------------------------------------------------------------------
# the surface


class PolySurface:
    def __init__(self, base, geoms, *, is_dual=False, reference=None,
                 strict=True, tau_plane=TAU_PLANE):
        if base.n_vertices != len(geoms):
            raise PolyBuildError("one vertex datum per vertex required")
        self.base = base
        self.geoms = list(geoms)
        self.is_dual = bool(is_dual)
        self.strict = bool(strict)
        self.tau_plane = float(tau_plane)
        kinds = {g.kind for g in self.geoms}
        if len(kinds) > 1:
            raise UnsupportedGeometry("mixed vertex kinds are unsupported: %s"
                                      % sorted(kinds))
        self.kind = next(iter(kinds))
        self.tri, self.diagonal_edges = _triangulate(base)
        self.vectors = np.array([g.vec for g in self.geoms])
        if reference is None:
            reference = self._default_reference()
        self.reference = np.asarray(reference, dtype=float)
        self.diagnostics = {
            "properness": "global properness unverified (finite model)",
        }
        self.face_normals = self._face_normals()
        self._check_planarity()
        self._check_convexity()
        self._links = None

    # -- construction helpers ---------------------------------------------

    def _default_reference(self):
        if self.kind == HYPER:
            return np.array([0.0, 0.0, 0.0, 1.0])
        c = self.vectors.sum(axis=0)
        if mdot(c, c) >= 0:
            raise PolyBuildError("vertex data has no timelike centroid; "
                                 "pass an explicit reference")
        return mink.normalize_timelike(c)

    def _face_normals(self):
        g = np.diag(mink.METRIC_DIAG)
        out = np.empty((self.tri.n_faces, 4))
        self._planarity_margin = np.empty(self.tri.n_faces)
        for f, cyc in enumerate(self.base.face_cycles):
            vids = [self.base.tail(d) for d in cyc]
            q = self.vectors[vids]
            mat = q @ g
            _, sing, vt = np.linalg.svd(mat)
            self._planarity_margin[f] = (sing[3] / sing[0]
                                         if mat.shape[0] >= 4 else 0.0)
            n = vt[3]
            nn = mdot(n, n)
            if nn > 0:
                n = n / math.sqrt(nn)
            elif nn < 0:
                n = mink.normalize_timelike(n)
            else:
                raise PolyBuildError("face %d has a null support plane" % f)
            pairing = mdot(n, self.reference)
            if pairing > 0:
                n = -n
            out[f] = n
        if self.tri.n_faces != self.base.n_faces:
            # triangulated faces inherit their polygon's plane
            full = np.empty((self.tri.n_faces, 4))
            fi = 0
            for f, cyc in enumerate(self.base.face_cycles):
                for _ in range(max(1, len(cyc) - 2)):
                    full[fi] = out[f]
                    fi += 1
            return full
        return out

    def _check_planarity(self):
        bad = [f for f in range(self.base.n_faces)
               if self._planarity_margin[f] > self.tau_plane]
        self.diagnostics["planarity_margins"] = self._planarity_margin
        if bad:
            raise PolyBuildError("non-planar declared face: %s" % bad)

    def _check_convexity(self):
        """Opposite apex of each edge must not rise above the face plane."""
        margins = np.zeros(self.tri.n_edges)
        flat = []
        for e in range(self.tri.n_edges):
            d1, d2 = 2 * e, 2 * e + 1
            f1 = int(self.tri.dart_face[d1])
            f2 = int(self.tri.dart_face[d2])
            apex = self.tri.tail(int(self.tri.fnext[self.tri.fnext[d2]]))
            val = mdot(self.vectors[apex], self.face_normals[f1])
            scale = max(1.0, float(np.max(np.abs(self.vectors[apex]))))
            margins[e] = val / scale
            if e in self.diagonal_edges:
                continue
            if val > 1e-7 * scale:
                if self.strict:
                    raise PolyBuildError("locally concave structural edge %d" % e)
                flat.append(e)
            elif val > -1e-9 * scale:
                flat.append(e)
        self.diagnostics["convexity_margins"] = margins
        self.diagnostics["flat_edges"] = flat
        if self.kind == HYPER and not self.is_dual:
            missing = [e for e in range(self.tri.n_edges)
                       if mdot(self.vectors[self.tri.edges[e][0]],
                               self.vectors[self.tri.edges[e][1]]) > -1.0]
            if missing and self.strict:
                raise PolyBuildError("hyperideal edge missing H^3: %s" % missing)
            self.diagnostics["edges_missing_h3"] = missing

    # -- geometric data -----------------------------------------------------

    def edge_lengths(self):
        """Per-edge lengths; for ideal surfaces a representative of the
        quotient by per-vertex decoration shifts (see length_quotient_flag).
        """
        out = np.empty(self.tri.n_edges)
        for e, (a, b) in enumerate(self.tri.edges):
            va, vb = self.vectors[a], self.vectors[b]
            if self.kind == COMPACT:
                out[e] = mink.hyp_distance(va, vb)
            elif self.kind == IDEAL:
                out[e] = mink.decorated_length(va, vb)
            else:
                c = float(mdot(va, vb))
                if c <= -1.0:
                    out[e] = math.acosh(-c)
                elif abs(c) < 1.0:
                    if not self.is_dual:
                        raise PolyBuildError(
                            "hyperideal edge missing H^3: %d" % e)
                    out[e] = math.acos(c)
                else:
                    raise PolyBuildError("degenerate hyperideal edge %d" % e)
        return out

    @property
    def length_quotient_flag(self):
        return self.kind == IDEAL

    def dihedral_angles(self):
        """Exterior dihedral angles acos(<n1,n2>); 0 on diagonals."""
        out = np.empty(self.tri.n_edges)
        for e in range(self.tri.n_edges):
            f1 = int(self.tri.dart_face[2 * e])
            f2 = int(self.tri.dart_face[2 * e + 1])
            n1, n2 = self.face_normals[f1], self.face_normals[f2]
            if mdot(n1, n1) < 0 or mdot(n2, n2) < 0:
                raise PolyBuildError("dihedral angle needs spacelike normals")
            c = float(mdot(n1, n2))
            if abs(c) > 1.0 + 1e-9:
                raise mink.UltraparallelError(math.acosh(abs(c)))
            out[e] = math.acos(min(1.0, max(-1.0, c)))
            if e in self.diagonal_edges and out[e] > 1e-7:
                raise PolyBuildError("diagonal edge %d is not flat" % e)
        return out

    def links(self):
        if self._links is not None:
            return self._links
        frames = []
        for v in range(self.tri.n_vertices):
            g = self.geoms[v]
            if g.kind == IDEAL:
                ea, eb, m = horosphere_chart(g.vec)
                frames.append(VertexFrame(IDEAL, np.array([ea, eb, m]),
                                          np.array([1, 1])))
            else:
                rows, signs = _gram_schmidt_frame(g.vec)
                frames.append(VertexFrame(g.kind, rows, signs))
        coords, raw = {}, {}
        for d in range(self.tri.n_darts):
            v = self.tri.tail(d)
            w = self.tri.head(d)
            gv = self.geoms[v]
            qv, qw = self.vectors[v], self.vectors[w]
            if gv.kind == IDEAL:
                p = ideal_link_point(qv, qw)
                ea, eb, _ = frames[v].vectors
                coords[d] = np.array([mdot(p, ea), mdot(p, eb)])
                raw[d] = p
            else:
                t = qw - (mdot(qw, qv) / mdot(qv, qv)) * qv
                tt = mdot(t, t)
                if abs(tt) < 1e-14:
                    raise PolyBuildError("degenerate edge direction at dart %d" % d)
                t = t / math.sqrt(abs(tt))
                rows, signs = frames[v].vectors, frames[v].signs
                coords[d] = np.array([mdot(t, rows[i]) * signs[i]
                                      for i in range(3)])
                raw[d] = t
        self._links = LinkBundle(frames, coords, raw)
        return self._links

    # -- derived constructions ----------------------------------------------

    def gauss_circles(self):
        """Ideal-boundary circles of the face planes in the fixed CP^1 chart.

        Chart: stereographic projection from the null direction (0,0,-1,1).
        Returns one record per base face: ("circle", center, radius) or
        ("line", a, b, c) for a*x + b*y + c = 0 with (a,b) unit.
        """
        if self.kind != IDEAL:
            raise UnsupportedGeometry("gauss_circles needs an ideal surface")
        out = []
        seen = 0
        for f, cyc in enumerate(self.base.face_cycles):
            tri_index = seen
            seen += max(1, len(cyc) - 2)
            n = self.face_normals[tri_index]
            denom = n[2] + n[3]
            if abs(denom) > 1e-9:
                center = complex(n[0] / denom, n[1] / denom)
                out.append(("circle", center, 1.0 / abs(denom)))
            else:
                # boundary condition in the chart: 2 n1 x + 2 n2 y = n4 - n3
                a, b, c = 2 * n[0], 2 * n[1], n[2] - n[3]
                nrm = math.hypot(a, b)
                a, b, c = a / nrm, b / nrm, c / nrm
                if a < 0 or (a == 0 and b < 0):
                    a, b, c = -a, -b, -c
                out.append(("line", a, b, c))
        return out

    def dual_surface(self):
        """Dual surface: vertices are the de Sitter duals of the face planes.

        Requires a convex compact surface.  Edge lengths of the dual equal
        the exterior dihedral angles of this surface, edge by edge (the
        dual complex reuses primal edge ids).
        """
        from .cellsurf import dual_cell_surface
        if self.kind != COMPACT:
            raise UnsupportedGeometry("dual_surface needs a compact surface")
        if self.base.n_faces != self.tri.n_faces:
            raise UnsupportedGeometry("dual_surface needs a triangulated base")
        dual_base = dual_cell_surface(self.base)
        geoms = [hyper_point(self.face_normals[f])
                 for f in range(self.base.n_faces)]
        return PolySurface(dual_base, geoms, is_dual=True,
                           reference=self.reference, strict=False)

    def base_face_normal(self, f):
        """Support-plane normal of base face f (first triangle of its fan)."""
        first = 0
        for i, cyc in enumerate(self.base.face_cycles):
            if i == f:
                return self.face_normals[first]
            first += max(1, len(cyc) - 2)
        raise IndexError(f)

    def with_vertex_vectors(self, vecs, reference=None):
        """Same combinatorics and kinds over replaced vertex vectors."""
        geoms = [VertexGeom(g.kind, v) for g, v in zip(self.geoms, vecs)]
        if reference is None and self.kind == HYPER:
            reference = self.reference
        return PolySurface(self.base, geoms, is_dual=self.is_dual,
                           reference=reference, strict=False,
                           tau_plane=math.inf)

    def decoration_from_deformation(self, z, tau_orient=None, certified=False):
        """Edge decoration induced by a first-order deformation.

        For compact/hyperideal surfaces ``z`` is one tangent 4-vector per
        vertex; an edge is oriented away from the endpoint where the
        pairing with the link tangent is positive.  For ideal surfaces
        ``z`` is one affine function per vertex, given as (w, c) with a
        2-vector w in the horosphere chart; the pairing is w . xi + c at
        the link point.  With ``certified`` set, the two endpoint values of
        every edge must cancel (a length-preserving deformation), else a
        PolyBuildError is raised.
        """
        links = self.links()
        vals = np.empty(self.tri.n_darts)
        scale = 0.0
        for d in range(self.tri.n_darts):
            v = self.tri.tail(d)
            if self.kind == IDEAL:
                w, c = z[v]
                vals[d] = float(np.dot(w, links.coords[d]) + c)
            else:
                vals[d] = float(mdot(np.asarray(z[v], dtype=float),
                                     links.raw[d]))
            scale = max(scale, abs(vals[d]))
        if tau_orient is None:
            tau_orient = 1e-9 * max(scale, 1e-30)
        if certified:
            for e in range(self.tri.n_edges):
                resid = abs(vals[2 * e] + vals[2 * e + 1])
                if resid > 1e3 * tau_orient + 1e-8 * max(scale, 1.0):
                    raise PolyBuildError(
                        "not length-preserving: edge %d residual %.3g"
                        % (e, resid))
        states = np.zeros(self.tri.n_edges, dtype=int)
        for e in range(self.tri.n_edges):
            a = vals[2 * e]
            if a > tau_orient:
                states[e] = FORWARD
            elif a < -tau_orient:
                states[e] = BACKWARD
        return Decoration(self.tri, states)


def build(base, geoms, **kw):
    return PolySurface(base, geoms, **kw)


# ---------------------------------------------------------------------------
# poly v1 text format


def serialize_poly(ps):
    text = serialize_surf(ps.base)
    lines = []
    for v, g in enumerate(ps.geoms):
        lines.append("geom %d %s %.17g %.17g %.17g %.17g"
                     % (v, g.kind, *g.vec))
    return text + "\n".join(lines) + "\n"


def parse_poly(text, **kw):
    surface = parse_surf(text)
    geoms = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "geom":
            continue
        if len(parts) != 7 or parts[2] not in (COMPACT, IDEAL, HYPER):
            raise SurfaceFormatError("bad geom record", line=ln)
        try:
            geoms[int(parts[1])] = VertexGeom(
                parts[2], np.array([float(x) for x in parts[3:7]]))
        except (ValueError, PolyBuildError) as exc:
            raise SurfaceFormatError(str(exc), line=ln) from exc
    if sorted(geoms) != list(range(surface.n_vertices)):
        raise SurfaceFormatError("geom records must cover all vertices")
    return PolySurface(surface, [geoms[v] for v in range(surface.n_vertices)],
                       **kw)
