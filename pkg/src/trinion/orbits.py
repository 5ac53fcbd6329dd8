"""Coadjoint and dressing orbits, the linear orbit bracket, and moment solvers.

Orbit points are stored as realized matrices: a coadjoint orbit point is an
anti-Hermitian ``X = k I(H) k^{-1}``; a dressing orbit point is a dual-group
element ``AD*_k e(I(H))``.  The zero-level solver finds triples with
``X1 + X2 + X3 = 0``; the dual-level solver finds ``k*1 k*2 k*3 = e``.  Both
run damped Gauss-Newton on SU(n)^3 with exponential retractions and seeded
random restarts, so identical inputs and seed give identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decompositions import KStarElement, dressing_action, e_map, f_map
from .errors import EvaluationError, IllConditioned, NonRegular
from .lie_core import CartanVector, pair

__all__ = [
    "OrbitPoint",
    "DressingOrbitPoint",
    "MomentSolution",
    "NoSolution",
    "orbit_point",
    "sample_orbit",
    "kk_bracket",
    "diag_coadjoint",
    "diag_dressing",
    "solve_moment_zero",
    "solve_moment_kstar",
    "gauge_fix",
    "tangent_rank",
]


@dataclass
class OrbitPoint:
    """Point of a coadjoint orbit with its chamber label and unitary witness."""

    X: np.ndarray
    H: CartanVector
    witness: np.ndarray = None

    def spectrum_residual(self):
        """Mismatch between spec(-iX) and the orbit label, as multisets."""
        ev = np.sort(np.linalg.eigvalsh(-1j * self.X))[::-1]
        return float(np.max(np.abs(ev - np.array(self.H.theta))))


@dataclass
class DressingOrbitPoint:
    """Dual-group orbit point with its chamber label and deformation scale."""

    kstar: KStarElement
    H: CartanVector
    t: float
    witness: np.ndarray = None

    def spectrum_residual(self):
        """Mismatch of spec f(k*) against exp(2 t theta)-type targets."""
        ev = np.sort(np.linalg.eigvalsh(f_map(self.kstar).matrix))
        want = np.sort(np.exp(-2.0 * self.t * np.array(self.H.theta)))
        return float(np.max(np.abs(ev - want) / want))


@dataclass
class NoSolution:
    """Returned when the restart budget is exhausted above the threshold."""

    best_residual: float
    trials: int


@dataclass
class MomentSolution:
    """Solution of a moment-level constraint on a triple orbit product."""

    kind: str  # "zero" or "dual"
    points: list
    residual: float
    regularity_rank: int
    t: float = 0.0
    u: np.ndarray = None
    trial: int = field(default=0, repr=False)


def orbit_point(ctx, H, k):
    """Realize ``Ad_k I(H)`` as an orbit point with witness k."""
    x = k @ H.matrix @ k.conj().T
    return OrbitPoint(X=x, H=H, witness=np.asarray(k))


def sample_orbit(ctx, H, seed):
    """Haar-uniform orbit point, deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    return orbit_point(ctx, H, ctx.random_unitary(rng))


def kk_bracket(ctx, psi1, psi2, P, fd_step=1e-5):
    """Linear (orbit) bracket ``<P, [grad psi1, grad psi2]>`` at P in su(n).

    Gradients are central differences over the orthonormal compact basis,
    realized as su(n) elements; the pairing is the invariant form.
    """
    P = np.asarray(P)
    g1 = np.empty(ctx.dim_compact)
    g2 = np.empty(ctx.dim_compact)
    for a, t in enumerate(ctx.compact_basis):
        g1[a] = (psi1(P + fd_step * t) - psi1(P - fd_step * t)) / (2 * fd_step)
        g2[a] = (psi2(P + fd_step * t) - psi2(P - fd_step * t)) / (2 * fd_step)
    if not (np.all(np.isfinite(g1)) and np.all(np.isfinite(g2))):
        raise EvaluationError("test function returned a non-finite value")
    grad1 = np.einsum("a,aij->ij", g1, ctx.compact_basis)
    grad2 = np.einsum("a,aij->ij", g2, ctx.compact_basis)
    return float(pair(P, grad1 @ grad2 - grad2 @ grad1).real)


def diag_coadjoint(k, points):
    """Diagonal conjugation action on a triple of coadjoint orbit points."""
    return [OrbitPoint(X=k @ p.X @ k.conj().T, H=p.H,
                       witness=None if p.witness is None else k @ p.witness)
            for p in points]


def diag_dressing(ctx, k, points, u=None):
    """Diagonal dressing action: each factor is dressed by the running unitary."""
    out = []
    run = np.asarray(k)
    for p in points:
        rho, rho_star = dressing_action(ctx, run, p.kstar, u=u)
        out.append(DressingOrbitPoint(kstar=rho_star, H=p.H, t=p.t,
                                      witness=None if p.witness is None else run @ p.witness))
        run = rho
    return out


# ---------------------------------------------------------------------------
# solvers
# ---------------------------------------------------------------------------

def _exp_su(ctx, w):
    """Exponential of an anti-Hermitian matrix via eigendecomposition."""
    vals, vecs = np.linalg.eigh(1j * w)
    return (vecs * np.exp(-1j * vals)) @ vecs.conj().T


def _zero_residual(ctx, hs, ks):
    xs = [k @ h.matrix @ k.conj().T for k, h in zip(ks, hs)]
    m = xs[0] + xs[1] + xs[2]
    return xs, -np.real(np.einsum("bij,ji->b", ctx.compact_basis, m))


def _gauss_newton_zero(ctx, hs, ks, tol, max_iter=200):
    """Damped Gauss-Newton for ||X1+X2+X3||; analytic Jacobian."""
    nb = ctx.dim_compact
    lam = 1e-3
    xs, f = _zero_residual(ctx, hs, ks)
    best = np.linalg.norm(f)
    stall_ref, stall_count = best, 0
    for _ in range(max_iter):
        if best <= tol:
            break
        comms = np.concatenate(
            [np.einsum("aij,jk->aik", ctx.compact_basis, x)
             - np.einsum("ij,ajk->aik", x, ctx.compact_basis) for x in xs])
        jac = -np.real(np.einsum("bij,aji->ba", ctx.compact_basis, comms))
        g = jac.T @ f
        if np.linalg.norm(g) < 1e-15:
            break
        step = np.linalg.solve(jac.T @ jac + lam * np.eye(3 * nb), -g)
        new_ks = [
            _exp_su(ctx, np.einsum("a,aij->ij", step[i * nb:(i + 1) * nb], ctx.compact_basis)) @ ks[i]
            for i in range(3)
        ]
        xs_new, f_new = _zero_residual(ctx, hs, new_ks)
        if np.linalg.norm(f_new) < best:
            ks, xs, f = new_ks, xs_new, f_new
            best = np.linalg.norm(f)
            lam = max(lam * 0.3, 1e-12)
        else:
            lam *= 8.0
            if lam > 1e8:
                break
        # give up on stalls far above the target: residual floor reached
        stall_count += 1
        if stall_count >= 12:
            if best > 1e3 * tol and best > 0.9 * stall_ref:
                break
            stall_ref, stall_count = best, 0
    return ks, best


def _regularity(ctx, xs, threshold=1e-6):
    """Rank of the diagonal-action differential; detects continuous stabilizers."""
    rows = []
    for t in ctx.compact_basis:
        rows.append(np.concatenate([ctx.compact_coords(t @ x - x @ t) for x in xs]))
    sv = np.linalg.svd(np.array(rows), compute_uv=False)
    rank = int(np.sum(sv > threshold))
    return rank, sv


def solve_moment_zero(ctx, h1, h2, h3, seed=0, tol=1e-10, restarts=32, max_iter=200):
    """Find orbit points with ``X1 + X2 + X3 = 0`` or report failure.

    Runs seeded Gauss-Newton restarts; returns a ``MomentSolution`` on the
    first trial reaching ``tol`` and ``NoSolution`` with the best residual
    otherwise.  Identical inputs and seed give identical output.
    """
    hs = [h1, h2, h3]
    best = np.inf
    for trial in range(restarts):
        rng = np.random.default_rng((seed, trial))
        ks = [ctx.random_unitary(rng) for _ in range(3)]
        ks, res = _gauss_newton_zero(ctx, hs, ks, tol, max_iter)
        best = min(best, res)
        if res <= tol:
            xs, _ = _zero_residual(ctx, hs, ks)
            rank, _ = _regularity(ctx, xs)
            pts = [OrbitPoint(X=x, H=h, witness=k) for x, h, k in zip(xs, hs, ks)]
            return MomentSolution(kind="zero", points=pts, residual=float(res),
                                  regularity_rank=rank, trial=trial)
    return NoSolution(best_residual=float(best), trials=restarts)


def _dual_points(ctx, hs, ks, t, u):
    pts = []
    run_mats = []
    for k, h in zip(ks, hs):
        base = e_map(ctx, h.matrix, t, u)
        _, rho_star = dressing_action(ctx, k, base, u=u)
        pts.append(rho_star)
        run_mats.append(rho_star.matrix)
    return pts, run_mats


def _dual_residual(ctx, hs, ks, t, u):
    pts, mats = _dual_points(ctx, hs, ks, t, u)
    m = mats[0] @ mats[1] @ mats[2] - np.eye(ctx.n)
    return pts, np.concatenate([m.real.ravel(), m.imag.ravel()])


def solve_moment_kstar(ctx, h1, h2, h3, t, u=None, seed=0, tol=1e-9, restarts=32,
                       max_iter=120, warm_start=True):
    """Find dressing orbit points with ``k*1 k*2 k*3 = e`` or report failure.

    Same restart contract as the zero-level solver; the Jacobian is built by
    central differences through the dressing pipeline.  When ``warm_start``
    is set, trial 0 seeds from the zero-level solution's witnesses.
    """
    hs = [h1, h2, h3]
    nb = ctx.dim_compact
    fd = 1e-6
    best = np.inf
    for trial in range(restarts):
        rng = np.random.default_rng((seed, trial))
        if trial == 0 and warm_start:
            zero = solve_moment_zero(ctx, h1, h2, h3, seed=seed, restarts=8)
            if isinstance(zero, NoSolution):
                ks = [ctx.random_unitary(rng) for _ in range(3)]
            else:
                ks = [p.witness for p in zero.points]
        else:
            ks = [ctx.random_unitary(rng) for _ in range(3)]
        lam = 1e-3
        _, f = _dual_residual(ctx, hs, ks, t, u)
        res = np.linalg.norm(f)
        for _ in range(max_iter):
            if res <= tol:
                break
            cols = []
            for i in range(3):
                for tb in ctx.compact_basis:
                    kp = [kk.copy() for kk in ks]
                    km = [kk.copy() for kk in ks]
                    ep = _exp_su(ctx, fd * tb)
                    kp[i] = ep @ ks[i]
                    km[i] = ep.conj().T @ ks[i]
                    _, fp = _dual_residual(ctx, hs, kp, t, u)
                    _, fm = _dual_residual(ctx, hs, km, t, u)
                    cols.append((fp - fm) / (2 * fd))
            jac = np.array(cols).T
            g = jac.T @ f
            if np.linalg.norm(g) < 1e-14:
                break
            step = np.linalg.solve(jac.T @ jac + lam * np.eye(3 * nb), -g)
            new_ks = [
                _exp_su(ctx, np.einsum("a,aij->ij", step[i * nb:(i + 1) * nb], ctx.compact_basis)) @ ks[i]
                for i in range(3)
            ]
            _, f_new = _dual_residual(ctx, hs, new_ks, t, u)
            if np.linalg.norm(f_new) < res:
                ks, f = new_ks, f_new
                res = np.linalg.norm(f)
                lam = max(lam * 0.3, 1e-12)
            else:
                lam *= 8.0
                if lam > 1e8:
                    break
        best = min(best, res)
        if res <= tol:
            pts, mats = _dual_points(ctx, hs, ks, t, u)
            xs = [_dual_log(ctx, p, t) for p in pts]
            rank, _ = _regularity(ctx, xs)
            out = [DressingOrbitPoint(kstar=p, H=h, t=t, witness=k)
                   for p, h, k in zip(pts, hs, ks)]
            return MomentSolution(kind="dual", points=out, residual=float(res),
                                  regularity_rank=rank, t=float(t), u=u, trial=trial)
    return NoSolution(best_residual=float(best), trials=restarts)


def _dual_log(ctx, p, t):
    """Recover the anti-Hermitian orbit realization from f(k*) = exp(2 i t X)."""
    kstar = p.kstar if isinstance(p, DressingOrbitPoint) else p
    w, v = np.linalg.eigh(f_map(kstar).matrix)
    return -1j * (v * (np.log(w) / (2.0 * t))) @ v.conj().T


# ---------------------------------------------------------------------------
# gauge fixing and the reduced dimension
# ---------------------------------------------------------------------------

def _align_first(ctx, x1, h1):
    """Unitary v with v^† x1 v = I(H1); columns ordered by decreasing theta."""
    vals, vecs = np.linalg.eigh(1j * x1)  # ascending -theta = descending theta
    v = vecs / np.linalg.det(vecs) ** (1.0 / ctx.n)
    return v


def _torus_phases(ctx, x2, tol=1e-10):
    """Diagonal phases making the superdiagonal of x2 real nonnegative."""
    n = ctx.n
    sup = np.array([x2[m, m + 1] for m in range(n - 1)])
    if np.min(np.abs(sup)) < tol:
        raise NonRegular("vanishing superdiagonal entry: residual torus not fixable")
    delta = np.angle(sup)  # phi_m - phi_{m+1}; conjugation scales entry by e^{-i delta}
    phi = np.zeros(n)
    for m in range(n - 2, -1, -1):
        phi[m] = phi[m + 1] + delta[m]
    phi -= phi.mean()
    return np.exp(1j * phi)


def gauge_fix(ctx, solution):
    """Canonical representative of the quotient by the diagonal action.

    The first point is rotated exactly onto ``I(H1)``; the residual torus is
    fixed by making the superdiagonal of the second point real nonnegative.
    Idempotent; raises ``NonRegular`` when a continuous stabilizer or a
    vanishing superdiagonal blocks the normal form.
    """
    if solution.kind == "zero":
        xs = [p.X for p in solution.points]
        rank, _ = _regularity(ctx, xs)
        if rank < ctx.dim_compact:
            raise NonRegular("positive-dimensional stabilizer at the solution")
        v = _align_first(ctx, xs[0], solution.points[0].H)
        xs = [v.conj().T @ x @ v for x in xs]
        d = _torus_phases(ctx, xs[1])
        dm = np.diag(d)
        xs = [dm.conj().T @ x @ dm for x in xs]
        xs[0] = solution.points[0].H.matrix
        move = v @ dm
        pts = [OrbitPoint(X=x, H=p.H,
                          witness=None if p.witness is None else move.conj().T @ p.witness)
               for x, p in zip(xs, solution.points)]
        res = float(np.linalg.norm(ctx.compact_coords(xs[0] + xs[1] + xs[2])))
        return MomentSolution(kind="zero", points=pts, residual=res,
                              regularity_rank=rank, trial=solution.trial)

    t = solution.t
    u = solution.u
    ys = [_dual_log(ctx, p, t) for p in solution.points]
    rank, _ = _regularity(ctx, ys)
    if rank < ctx.dim_compact:
        raise NonRegular("positive-dimensional stabilizer at the solution")
    v = _align_first(ctx, ys[0], solution.points[0].H)
    pts = diag_dressing(ctx, v.conj().T, solution.points, u=u)
    d = np.diag(_torus_phases(ctx, _dual_log(ctx, pts[1], t)))
    pts = diag_dressing(ctx, d.conj().T, pts, u=u)
    pts[0] = DressingOrbitPoint(kstar=e_map(ctx, pts[0].H.matrix, t, u), H=pts[0].H, t=t,
                                witness=pts[0].witness)
    mats = [p.kstar.matrix for p in pts]
    res = float(np.linalg.norm(mats[0] @ mats[1] @ mats[2] - np.eye(ctx.n)))
    return MomentSolution(kind="dual", points=pts, residual=res,
                          regularity_rank=rank, t=t, u=u, trial=solution.trial)


def tangent_rank(ctx, solution, threshold=1e-8):
    """Dimension of the reduced multiplicity space at a regular solution.

    Computed as dim ker(constraint differential on orbit tangents) minus the
    dimension of the diagonal-action orbit.  Raises ``IllConditioned`` when
    singular values cluster at the threshold and ``NonRegular`` when the
    diagonal action has a continuous stabilizer.
    """
    nb = ctx.dim_compact
    if solution.kind == "zero":
        xs = [p.X for p in solution.points]
        cols = []
        for i in range(3):
            for t in ctx.compact_basis:
                col = np.zeros(nb)
                colv = ctx.compact_coords(t @ xs[i] - xs[i] @ t)
                cols.append((i, colv))
        jac = np.array([c for _, c in cols]).T
        slot_nullity = []
        for i in range(3):
            block = np.array([c for j, c in cols if j == i]).T
            sv = np.linalg.svd(block, compute_uv=False)
            _check_gap(sv, threshold)
            slot_nullity.append(int(np.sum(sv <= threshold)))
        sv = np.linalg.svd(jac, compute_uv=False)
        _check_gap(sv, threshold)
        rank_j = int(np.sum(sv > threshold))
        reg_rank, svb = _regularity(ctx, xs)
        if reg_rank < nb:
            raise NonRegular("continuous stabilizer: reduced space is singular here")
        return (3 * nb - rank_j) - sum(slot_nullity) - reg_rank

    # dual level: finite-difference differentials through the dressing pipeline
    t, u = solution.t, solution.u
    hs = [p.H for p in solution.points]
    ks = [p.witness for p in solution.points]
    fd = 1e-6
    cols = []
    slot_cols = {0: [], 1: [], 2: []}
    for i in range(3):
        for tb in ctx.compact_basis:
            kp = [kk.copy() for kk in ks]
            km = [kk.copy() for kk in ks]
            ep = _exp_su(ctx, fd * tb)
            kp[i] = ep @ ks[i]
            km[i] = ep.conj().T @ ks[i]
            _, fp = _dual_residual(ctx, hs, kp, t, u)
            _, fm = _dual_residual(ctx, hs, km, t, u)
            col = (fp - fm) / (2 * fd)
            cols.append(col)
            ptsp, mp = _dual_points(ctx, hs, kp, t, u)
            ptsm, mm = _dual_points(ctx, hs, km, t, u)
            slot_cols[i].append(
                np.concatenate([(a - b).ravel().view(float) for a, b in zip(mp, mm)]) / (2 * fd)
            )
    jac = np.array(cols).T
    sv = np.linalg.svd(jac, compute_uv=False)
    _check_gap(sv, threshold)
    rank_j = int(np.sum(sv > threshold * max(1.0, sv[0])))
    slot_nullity = []
    for i in range(3):
        block = np.array(slot_cols[i]).T
        svb = np.linalg.svd(block, compute_uv=False)
        _check_gap(svb, threshold)
        slot_nullity.append(int(np.sum(svb <= threshold * max(1.0, svb[0]))))
    ys = [_dual_log(ctx, p, t) for p in solution.points]
    reg_rank, _ = _regularity(ctx, ys)
    if reg_rank < nb:
        raise NonRegular("continuous stabilizer: reduced space is singular here")
    return (3 * nb - rank_j) - sum(slot_nullity) - reg_rank


def _check_gap(sv, threshold):
    if np.any((sv > 0.1 * threshold) & (sv < 10.0 * threshold)):
        raise IllConditioned("singular values cluster at the rank threshold")
