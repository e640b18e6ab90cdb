"""Infinitesimal rigidity operators of polyhedral surfaces.

Two adjoint pairs are assembled over explicit bases.

Compact/hyperideal surfaces: the length-variation operator maps a tangent
vector Z_v at each vertex to the first-order variation of every edge
length, row e being <u_{e-,e}, Z_{e-}> + <u_{e+,e}, Z_{e+}> for the unit
link tangents u.  The angle-motion operator maps edge weight variations
t_e to the per-vertex closing vectors (sum of t_e u_{v,e} over edges at
v); with the vertex frames' metric signs it is the adjoint of the former,
and its kernel describes angle variations realizable by deformations that
keep all edge lengths.

Ideal surfaces with decorations: a first-order motion of a decorated
vertex is an affine function on its horosphere chart; dropping the
constant (a decoration shift) leaves a parallel 1-form, two numbers per
vertex.  The decorated-length variation operator evaluates these 1-forms
at the link points of each edge and projects to the quotient of R^E by
per-vertex shifts, realized concretely as the orthogonal complement of
the shift map's image - which is exactly the space of edge weights with
zero sum at every vertex.  The ideal angle-variation operator goes the
other way, from that constraint space to the per-vertex chart vectors
(sum of t_e xi_{v,e}), and is the adjoint.  The constraint space carries
an exact integer basis (kept alongside the orthonormal one) so the
per-vertex zero-sum condition holds with no rounding at all.

The trivial-motion oracle evaluates the six generators of so(3,1) at the
vertex data; on convex fixtures these span the kernels of the length
operators, which is the finite-polyhedron analogue of projective
rigidity.  (Closed equivariant surfaces of genus g >= 2 in ends have no
global isometries and their ideal angle-variation kernels have dimension
6g-6; finite polyhedra carry the 6 global motions instead, and only the
algebraic identities and the polyhedral kernel counts are checked here.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from . import mink
from .decor import Decoration, is_tight, pak_report
from .mink import mdot
from .polysurf import COMPACT, HYPER, IDEAL, PolySurface

TAU_RANK = 1e-8
MIN_GAP = 10.0


class IndeterminateRankError(ValueError):
    """Spectral gap too small to certify a kernel dimension."""

    def __init__(self, spectrum):
        self.spectrum = np.asarray(spectrum)
        super().__init__("indeterminate rank; spectrum attached")


@dataclass
class OperatorBundle:
    """A matrix over explicit bases with spectral bookkeeping.

    ``domain_metric`` holds the diagonal signs of the domain pairing (the
    hyperideal tangent frames are Lorentzian); ``int_basis``, when present,
    is an exact integer basis of the domain realized inside a larger
    coordinate space (columns of ``embedding`` give the orthonormal basis
    actually used for coordinates).
    """

    matrix: np.ndarray
    domain: str
    codomain: str
    domain_metric: np.ndarray = None
    codomain_metric: np.ndarray = None
    embedding: np.ndarray = None
    int_basis: np.ndarray = None
    tau_rank: float = TAU_RANK
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        if self.domain_metric is None:
            self.domain_metric = np.ones(m.shape[1])
        if self.codomain_metric is None:
            self.codomain_metric = np.ones(m.shape[0])
        u, s, vt = np.linalg.svd(m)
        self.singular_values = s
        self._vt = vt

    def apply(self, x):
        return self.matrix @ np.asarray(x, dtype=float)

    def pair_domain(self, x, y):
        return float(np.sum(self.domain_metric * np.asarray(x) * np.asarray(y)))

    def pair_codomain(self, x, y):
        return float(np.sum(self.codomain_metric * np.asarray(x) * np.asarray(y)))

    def kernel_basis(self, tau_rank=None):
        tau = self.tau_rank if tau_rank is None else tau_rank
        s = self.singular_values
        smax = s[0] if len(s) else 0.0
        rank = int(np.sum(s > tau * smax)) if smax > 0 else 0
        return self._vt[rank:].T

    def rank_profile(self, tau_rank=None):
        """(rank, kernel dim, spectral gap) under the tolerance."""
        tau = self.tau_rank if tau_rank is None else tau_rank
        s = self.singular_values
        n = self.matrix.shape[1]
        smax = s[0] if len(s) else 0.0
        if smax == 0.0:
            return 0, n, math.inf
        rank = int(np.sum(s > tau * smax))
        if rank >= len(s) or rank == 0:
            gap = math.inf
        else:
            below = s[rank]
            gap = math.inf if below == 0.0 else s[rank - 1] / below
        return rank, n - rank, gap


def kernel_dimension(bundle, tau_rank=None, min_gap=MIN_GAP):
    """Certified kernel dimension: singular values below tau * sigma_max.

    Raises IndeterminateRankError (spectrum attached) when the gap between
    kept and dropped singular values is under ``min_gap``.
    """
    rank, dim, gap = bundle.rank_profile(tau_rank)
    if gap < min_gap:
        raise IndeterminateRankError(bundle.singular_values)
    return dim, gap


# ---------------------------------------------------------------------------
# compact / hyperideal pair


def length_variation_operator(ps):
    """Pairing of vertex motions with the link tangents, edge by edge.

    Row e applied to Z gives <u_{e-,e}, Z_{e-}> + <u_{e+,e}, Z_{e+}> with
    the unit tangents pointing along the edge toward the far endpoint;
    since moving a vertex toward its neighbor shortens the edge, this is
    the NEGATIVE of the first-order length variation.  Its kernel (the
    length-preserving motions) and the adjointness with the angle-motion
    operator are insensitive to that overall sign.
    """
    if ps.kind == IDEAL:
        raise ValueError("use decorated_length_variation_operator for ideal")
    links = ps.links()
    ne, nv = ps.tri.n_edges, ps.tri.n_vertices
    mat = np.zeros((ne, 3 * nv))
    for d in range(ps.tri.n_darts):
        v = ps.tri.tail(d)
        rows = links.frames[v].vectors
        for i in range(3):
            mat[d // 2, 3 * v + i] += mdot(links.raw[d], rows[i])
    metric = np.concatenate([links.frames[v].signs for v in range(nv)]).astype(float)
    return OperatorBundle(mat, domain="vertex tangents (+)T_v",
                          codomain="edge weights R^E",
                          domain_metric=metric,
                          meta={"kind": ps.kind, "surface_edges": ne})


def angle_motion_operator(ps):
    """Closing vectors of edge-weight variations: for each vertex the sum
    of t_e u_{v,e}, in frame coordinates.  Adjoint to the length-variation
    operator under the frame metric; its kernel is the space of angle
    variations realizable by deformations preserving all edge lengths."""
    if ps.kind == IDEAL:
        raise ValueError("use ideal_angle_variation_operator for ideal")
    links = ps.links()
    ne, nv = ps.tri.n_edges, ps.tri.n_vertices
    mat = np.zeros((3 * nv, ne))
    for v in range(nv):
        rows = links.frames[v].vectors
        signs = links.frames[v].signs
        for d in ps.tri.vertex_star(v):
            for i in range(3):
                mat[3 * v + i, d // 2] += signs[i] * mdot(links.raw[d], rows[i])
    metric = np.concatenate([links.frames[v].signs for v in range(nv)]).astype(float)
    return OperatorBundle(mat, domain="edge weights R^E",
                          codomain="vertex tangents (+)T_v",
                          codomain_metric=metric,
                          meta={"kind": ps.kind})


# ---------------------------------------------------------------------------
# ideal pair and the shift quotient


def shift_map_matrix(surface):
    """Integer matrix of the per-vertex shift map into edge weights.

    Column v is the indicator of edges at v (2 for loops); its transpose's
    kernel is the zero-sum constraint space.
    """
    m = np.zeros((surface.n_edges, surface.n_vertices), dtype=int)
    for e, (u, v) in enumerate(surface.edges):
        m[e, u] += 1
        m[e, v] += 1
    return m


def zero_sum_basis(surface):
    """(integer basis, orthonormal basis) of the per-vertex zero-sum space.

    The integer columns satisfy the constraints exactly in floating point;
    the shift map is checked injective (fails only for bipartite graphs,
    which triangulation skeletons never are).
    """
    m = shift_map_matrix(surface)
    sm = sympy.Matrix(m.T.tolist())
    null = sm.nullspace()
    if surface.n_edges - len(null) != surface.n_vertices:
        raise ValueError("per-vertex shift map is not injective")
    cols = []
    for vec in null:
        denl = [x.q for x in vec]
        lcm = 1
        for q in denl:
            lcm = sympy.ilcm(lcm, q)
        cols.append([int(x * lcm) for x in vec])
    b_int = np.array(cols, dtype=float).T
    q, _ = np.linalg.qr(b_int)
    return b_int, q


def _ideal_link_rows(ps):
    """Chart coordinates of link points: matrix (2|V|) x |E| accumulating
    xi_{v,e} into the rows of vertex v for each edge at v."""
    links = ps.links()
    nv, ne = ps.tri.n_vertices, ps.tri.n_edges
    a = np.zeros((2 * nv, ne))
    for d in range(ps.tri.n_darts):
        v = ps.tri.tail(d)
        a[2 * v:2 * v + 2, d // 2] += links.coords[d]
    return a


def decorated_length_variation_operator(ps):
    """Per-vertex parallel 1-forms to decorated-length variations, in the
    zero-sum realization of the shift quotient.

    Columns: two 1-form coefficients per vertex (the chart differentials);
    rows: coordinates in the orthonormal zero-sum basis.  The exact integer
    basis is kept on the bundle for constraint-exact tests.
    """
    if ps.kind != IDEAL:
        raise ValueError("ideal surfaces only")
    b_int, q = zero_sum_basis(ps.tri)
    nv, ne = ps.tri.n_vertices, ps.tri.n_edges
    links = ps.links()
    raw = np.zeros((ne, 2 * nv))
    for d in range(ps.tri.n_darts):
        v = ps.tri.tail(d)
        raw[d // 2, 2 * v:2 * v + 2] += links.coords[d]
    mat = q.T @ raw
    return OperatorBundle(mat, domain="(+)H_v* (two 1-form coords per vertex)",
                          codomain="edge weights mod shifts (zero-sum coords)",
                          embedding=q, int_basis=b_int,
                          meta={"kind": ps.kind, "raw_rows": raw})


def ideal_angle_variation_operator(ps):
    """Zero-sum edge weight variations to per-vertex chart vectors.

    The domain constraint (weights at each vertex sum to zero) makes the
    chart sums translation-invariant, hence honest parallel vectors.
    Adjoint to the decorated-length variation operator.
    """
    if ps.kind != IDEAL:
        raise ValueError("ideal surfaces only")
    b_int, q = zero_sum_basis(ps.tri)
    a = _ideal_link_rows(ps)
    mat = a @ q
    return OperatorBundle(mat, domain="zero-sum edge weights (R^E)_0",
                          codomain="(+)H_v (chart vectors, two per vertex)",
                          embedding=q, int_basis=b_int,
                          meta={"kind": ps.kind})


# ---------------------------------------------------------------------------
# trivial-motion oracle


def trivial_motion_basis(ps):
    """Coordinates of the six so(3,1) generators in the operator domain.

    Compact/hyperideal: Killing fields evaluated at the vertices, in frame
    coordinates.  Ideal: the induced parallel 1-forms on the horosphere
    charts (the normal displacement of a horosphere under the motion u' =
    A u is the affine function p -> -<p, A u>).  Returns an orthonormal
    matrix whose columns span the trivial motions.
    """
    links = ps.links()
    cols = []
    for gen in mink.so31_basis():
        if ps.kind == IDEAL:
            vec = np.zeros(2 * ps.tri.n_vertices)
            for v in range(ps.tri.n_vertices):
                ea, eb, _ = links.frames[v].vectors
                du = gen @ ps.vectors[v]
                vec[2 * v] = -mdot(ea, du)
                vec[2 * v + 1] = -mdot(eb, du)
        else:
            vec = np.zeros(3 * ps.tri.n_vertices)
            for v in range(ps.tri.n_vertices):
                z = gen @ ps.vectors[v]
                rows = links.frames[v].vectors
                signs = links.frames[v].signs
                for i in range(3):
                    vec[3 * v + i] = signs[i] * mdot(z, rows[i])
        cols.append(vec)
    basis = np.array(cols).T
    qb, r = np.linalg.qr(basis)
    keep = np.abs(np.diag(r)) > 1e-10 * max(1.0, np.max(np.abs(r)))
    return qb[:, keep]


def adjointness_residual(ps, n_pairs=100, rng=None):
    """Max |<L(Z), t> - <Z, M(t)>| / (|Z| |t|) over random pairs, for the
    adjoint operator pair appropriate to the surface kind."""
    if rng is None:
        rng = np.random.default_rng(0)
    if ps.kind == IDEAL:
        lop = decorated_length_variation_operator(ps)
        mop = ideal_angle_variation_operator(ps)
    else:
        lop = length_variation_operator(ps)
        mop = angle_motion_operator(ps)
    worst = 0.0
    for _ in range(n_pairs):
        z = rng.normal(size=lop.matrix.shape[1])
        t = rng.normal(size=mop.matrix.shape[1])
        lhs = float(np.dot(lop.apply(z), t))
        rhs = mop.pair_codomain(z, mop.apply(t))
        denom = np.linalg.norm(z) * np.linalg.norm(t)
        worst = max(worst, abs(lhs - rhs) / denom)
    return worst


# ---------------------------------------------------------------------------
# kernel vectors as deformations, and the rigidity verdict


def kernel_vector_as_deformation(ps, coords):
    """Convert kernel coordinates of the length operator into deformation
    data consumable by decoration_from_deformation."""
    links = ps.links()
    if ps.kind == IDEAL:
        # choose decoration-shift constants so the raw length variation
        # vanishes, not only its quotient class
        raw = decorated_length_variation_operator(ps).meta["raw_rows"]
        delta = raw @ coords
        m = shift_map_matrix(ps.tri).astype(float)
        a, *_ = np.linalg.lstsq(m, delta, rcond=None)
        out = []
        for v in range(ps.tri.n_vertices):
            w = np.array([coords[2 * v], coords[2 * v + 1]])
            out.append((w, -float(a[v])))
        return out
    out = []
    for v in range(ps.tri.n_vertices):
        rows = links.frames[v].vectors
        z = sum(coords[3 * v + i] * rows[i] for i in range(3))
        out.append(z)
    return out


@dataclass
class RigidityVerdict:
    kind: str
    kernel_dim: int
    gap: float
    trivial_dim: int
    residual_dim: int
    trivial_match_residual: float
    adjointness: float
    decorations: list
    spectrum: np.ndarray
    notes: list


def projective_rigidity_verdict(ps, tau_rank=TAU_RANK, rng=None):
    """Kernel of the length-variation operator vs the trivial motions.

    Residual dimension 0 on convex fixtures is the finite analogue of
    rigidity within a fixed end; each near-kernel vector also reports the
    induced edge decoration and its component counting.
    """
    if ps.kind == IDEAL:
        op = decorated_length_variation_operator(ps)
    else:
        op = length_variation_operator(ps)
    dim, gap = kernel_dimension(op, tau_rank)
    kb = op.kernel_basis(tau_rank)
    tb = trivial_motion_basis(ps)
    # trivial motions must lie inside the kernel
    resid = float(np.linalg.norm(tb - kb @ (kb.T @ tb)))
    residual_dim = dim - tb.shape[1]
    decos = []
    for j in range(kb.shape[1]):
        z = kernel_vector_as_deformation(ps, kb[:, j])
        dec = ps.decoration_from_deformation(z)
        rep = pak_report(dec)
        decos.append({
            "tight": is_tight(dec).tight,
            "oriented_edges": dec.n_oriented(),
            "components_outside_coverage": sum(
                1 for c in rep.components if not c.chain_closes),
            "identities_hold": rep.all_identities_hold(),
        })
    notes = ["finite polyhedron: trivial subspace is the 6 global motions",
             "closed genus-g surfaces in ends would instead carry a "
             "6g-6 dimensional ideal angle kernel"]
    return RigidityVerdict(
        kind=ps.kind, kernel_dim=dim, gap=gap, trivial_dim=tb.shape[1],
        residual_dim=residual_dim, trivial_match_residual=resid,
        adjointness=adjointness_residual(ps, rng=rng),
        decorations=decos, spectrum=op.singular_values, notes=notes)
