"""Primal-dual path-following interior-point method for block-embedded SDPs.

The solver handles programs of the form

    maximize    sum_a <C_a, X_a>
    subject to  sum_a Embed_a(X_a) = B,      X_a  PSD,

where each variable block X_a is a symmetric d_a x d_a matrix and Embed_a
scatters its packed (svec) entries onto a fixed index set of the packed
ambient space R^m.  The Lagrangian dual is

    minimize    <B, Y>
    subject to  S_a := Gather_a(Y) - C_a  PSD,

with Gather_a the adjoint of the embedding.  A slack block whose embedding
covers all m coordinates (as in the discrimination SDP, where it carries the
Gram inequality) makes the primal operator surjective and the Schur
complement positive definite.

Algorithm: infeasible start, Nesterov-Todd scaling, Mehrotra
predictor-corrector.  Per iteration the scaling point of each block pair
(X_a, S_a) is computed from Cholesky factors and an SVD, the scaled
complementarity equation is solved through the dense Schur complement
M = sum_a Embed_a W_a Gather_a (assembled by the kernels backend), and both
search directions reuse the single Cholesky factorization of M.  The method
stops when the duality gap is small relative to the dual objective and both
feasibility residuals are below an absolute tolerance, which is what the
returned certificate pair promises.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve, solve_triangular

from .kernels import add_block, smat, svec, symkron, tri_meta

STATUS_OPTIMAL = "optimal"
STATUS_MAX_ITER = "max_iter"
STATUS_NUMERICS = "infeasible_numerics"

_STEP_FRACTION = 0.98
_MIN_STEP = 1e-10


@dataclass
class IpmResult:
    """Certificate pair and convergence statistics of one solve."""

    x_blocks: list  # primal blocks, symmetric matrices
    y: np.ndarray  # dual matrix variable (ambient space)
    s_blocks: list  # dual slack blocks, symmetric matrices
    primal_obj: float
    dual_obj: float
    gap: float  # dual_obj - primal_obj
    relgap: float
    pres: float  # Frobenius norm of the equality residual
    dres: float  # norm of the stacked dual residuals
    iterations: int
    status: str


def _max_step(chol_lower, direction):
    """Largest t with  current + t * direction  PSD, for current = L L^T."""
    h = solve_triangular(chol_lower, direction, lower=True, check_finite=False)
    h = solve_triangular(chol_lower, h.T, lower=True, check_finite=False)
    emin = np.linalg.eigvalsh(0.5 * (h + h.T))[0]
    if emin >= -1e-14:
        return np.inf
    return 1.0 / (-emin)


def _factor_schur(schur):
    """Cholesky of the Schur complement, with escalating jitter on failure."""
    jitter = 0.0
    scale = np.trace(schur) / schur.shape[0]
    for _ in range(4):
        try:
            return cho_factor(schur + jitter * np.eye(schur.shape[0]), lower=True)
        except np.linalg.LinAlgError:
            jitter = max(1e-14 * scale, 100.0 * jitter)
    raise np.linalg.LinAlgError("Schur complement not positive definite")


class _Block:
    """Per-block cached metadata (packing order and embedding indices)."""

    def __init__(self, dim, cost_vec, idx):
        self.dim = dim
        self.ii, self.jj, self.ff = tri_meta(dim)
        self.cost = cost_vec
        self.idx = idx


def solve_block_sdp(dims, costs, embeds, b, gap_tol=1e-7, feas_tol=1e-8, max_iter=200):
    """Run the interior-point method on one block-embedded SDP.

    Parameters
    ----------
    dims : block matrix dimensions d_a.
    costs : per-block objective matrices C_a (symmetric arrays).
    embeds : per-block int arrays mapping packed block entries into R^m.
        Their union must cover all m coordinates.
    b : packed right-hand side (svec of the ambient matrix B).
    gap_tol : relative duality-gap tolerance.
    feas_tol : absolute tolerance on both feasibility residual norms.
    max_iter : iteration cap; exceeded caps return the best iterate seen.
    """
    m = b.shape[0]
    blocks = [
        _Block(d, svec(np.asarray(c, dtype=float)), np.asarray(idx, dtype=np.int64))
        for d, c, idx in zip(dims, costs, embeds)
    ]
    nu = float(sum(dims))  # total matrix dimension: barrier degree

    scale_p = max(1.0, float(np.max(np.abs(b))))
    scale_d = max(1.0, max(float(np.max(np.abs(bl.cost))) for bl in blocks))
    xs = [scale_p * svec(np.eye(bl.dim)) for bl in blocks]
    ss = [scale_d * svec(np.eye(bl.dim)) for bl in blocks]
    y = np.zeros(m)

    best = None
    best_err = np.inf
    status = STATUS_MAX_ITER
    iterations = 0

    def snapshot(stats):
        return IpmResult(
            x_blocks=[smat(x, bl.dim) for x, bl in zip(xs, blocks)],
            y=y.copy(),
            s_blocks=[smat(s, bl.dim) for s, bl in zip(ss, blocks)],
            **stats,
        )

    for it in range(max_iter + 1):
        iterations = it
        ax = np.zeros(m)
        for bl, x in zip(blocks, xs):
            ax[bl.idx] += x
        rp = b - ax
        rds = [y[bl.idx] - bl.cost - s for bl, s in zip(blocks, ss)]

        pobj = float(sum(bl.cost @ x for bl, x in zip(blocks, xs)))
        dobj = float(b @ y)
        gap = dobj - pobj
        mu = float(sum(x @ s for x, s in zip(xs, ss))) / nu
        pres = float(np.linalg.norm(rp))
        dres = float(np.sqrt(sum(float(rd @ rd) for rd in rds)))
        relgap = abs(gap) / max(1.0, abs(dobj))

        stats = dict(
            primal_obj=pobj,
            dual_obj=dobj,
            gap=gap,
            relgap=relgap,
            pres=pres,
            dres=dres,
            iterations=it,
            status=status,
        )
        if not np.isfinite(pres + dres + gap + mu):
            status = STATUS_NUMERICS
            break
        err = max(pres, dres, relgap)
        if err < best_err:
            best_err = err
            best = snapshot(stats)
        if pres <= feas_tol and dres <= feas_tol and relgap <= gap_tol:
            status = STATUS_OPTIMAL
            stats["status"] = status
            return snapshot(stats)
        if it == max_iter:
            status = STATUS_MAX_ITER
            break

        # Nesterov-Todd scaling per block: R^{-1} X R^{-T} = R^T S R = diag(lam)
        try:
            scal = []
            for bl, x, s in zip(blocks, xs, ss):
                big_x = smat(x, bl.dim)
                big_s = smat(s, bl.dim)
                lx = np.linalg.cholesky(big_x)
                ls = np.linalg.cholesky(big_s)
                u, lam, vt = np.linalg.svd(ls.T @ lx)
                root = np.sqrt(lam)
                r = lx @ vt.T / root
                rinv = (ls @ u / root).T
                w = r @ r.T
                kron = symkron(w, bl.ii, bl.jj, bl.ff)
                scal.append((lx, ls, r, rinv, lam, kron))

            schur = np.zeros((m, m))
            for bl, (_, _, _, _, _, kron) in zip(blocks, scal):
                add_block(schur, kron, bl.idx)
            schur_fac = _factor_schur(schur)
        except np.linalg.LinAlgError:
            status = STATUS_NUMERICS
            break

        def newton(rcs):
            rhs = -rp.copy()
            for bl, rd, rc, (_, _, _, _, _, kron) in zip(blocks, rds, rcs, scal):
                rhs[bl.idx] += rc - kron @ rd
            dy = cho_solve(schur_fac, rhs)
            # one refinement pass: the Schur complement grows ill-conditioned
            # near the boundary and the raw solve would floor the residuals
            dy += cho_solve(schur_fac, rhs - schur @ dy)
            dss = [dy[bl.idx] + rd for bl, rd in zip(blocks, rds)]
            dxs = [
                rc - kron @ ds
                for rc, ds, (_, _, _, _, _, kron) in zip(rcs, dss, scal)
            ]
            return dy, dxs, dss

        def feasible_steps(dxs, dss):
            ap = ad = np.inf
            for bl, dx, ds, (lx, ls, *_rest) in zip(blocks, dxs, dss, scal):
                ap = min(ap, _max_step(lx, smat(dx, bl.dim)))
                ad = min(ad, _max_step(ls, smat(ds, bl.dim)))
            return ap, ad

        # predictor: pure Newton step toward complementarity zero
        rc_aff = [-x for x in xs]
        _, dxs_a, dss_a = newton(rc_aff)
        ap_a, ad_a = feasible_steps(dxs_a, dss_a)
        ap_a = min(1.0, ap_a)
        ad_a = min(1.0, ad_a)
        mu_aff = (
            sum(
                (x + ap_a * dx) @ (s + ad_a * ds)
                for x, dx, s, ds in zip(xs, dxs_a, ss, dss_a)
            )
            / nu
        )
        sigma = min(1.0, max(0.0, (mu_aff / mu) ** 3))

        # corrector: recenter and add the second-order Mehrotra term
        rcs = []
        for bl, dx, ds, (_, _, r, rinv, lam, _) in zip(blocks, dxs_a, dss_a, scal):
            dx_scaled = rinv @ smat(dx, bl.dim) @ rinv.T
            ds_scaled = r.T @ smat(ds, bl.dim) @ r
            target = -0.5 * (dx_scaled @ ds_scaled + ds_scaled @ dx_scaled)
            target[np.diag_indices(bl.dim)] += sigma * mu - lam * lam
            d = 2.0 * target / (lam[:, None] + lam[None, :])
            rcs.append(svec(r @ d @ r.T))
        dy, dxs, dss = newton(rcs)
        ap, ad = feasible_steps(dxs, dss)
        ap = min(1.0, _STEP_FRACTION * ap)
        ad = min(1.0, _STEP_FRACTION * ad)
        if min(ap, ad) < _MIN_STEP:
            status = STATUS_NUMERICS
            break

        for a in range(len(blocks)):
            xs[a] = xs[a] + ap * dxs[a]
            ss[a] = ss[a] + ad * dss[a]
        y = y + ad * dy

    if best is None:  # pragma: no cover - first iterate is always recorded
        raise RuntimeError("no iterate recorded")
    best.status = status
    best.iterations = iterations
    return best
