"""Real and complex induced (p, q) norms of matrices.

Three routes are provided:

* ``opnorm_exact``: closed forms for p = 1, q = inf and (2, 2);
* ``opnorm_search``: multistart dual power iteration (monotone ascent on the
  unit p-sphere), with vertex enumeration / phase polishing for p = inf sources;
* ``opnorm_oracle``: brute-force evaluation on a dense angular grid of the
  sphere, only for tiny dimensions.  It shares nothing with the other two
  except the norm evaluation itself.

Weighted spaces are reduced to counting measure by the diagonal change of
variables x -> mu^(1/p) x.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize_scalar

from .lp import (
    INF,
    CVector,
    DimensionError,
    DiscreteMeasure,
    Field,
    NormCertificate,
    _pnorm,
    check_exponent,
    dual_exponent,
)

_VERTEX_ENUM_MAX_N = 16


@dataclass(frozen=True)
class OperatorSpec:
    matrix: np.ndarray
    source_p: float
    target_q: float
    source_measure: DiscreteMeasure = None
    target_measure: DiscreteMeasure = None

    def __post_init__(self):
        A = np.atleast_2d(np.array(self.matrix, dtype=complex))
        if A.ndim != 2 or A.size == 0:
            raise DimensionError("matrix must be a non-empty 2-d array")
        if not np.any(A.imag):
            A = A.real.copy()
        A.setflags(write=False)
        m, n = A.shape
        src = self.source_measure or DiscreteMeasure.counting(n)
        tgt = self.target_measure or DiscreteMeasure.counting(m)
        if len(src) != n or len(tgt) != m:
            raise DimensionError(
                f"matrix is {m}x{n} but measures have lengths {len(tgt)} (target), {len(src)} (source)"
            )
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "source_p", check_exponent(self.source_p))
        object.__setattr__(self, "target_q", check_exponent(self.target_q))
        object.__setattr__(self, "source_measure", src)
        object.__setattr__(self, "target_measure", tgt)

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.matrix)

    @property
    def source_scale(self) -> np.ndarray:
        return self.source_measure.scale(self.source_p)

    @property
    def target_scale(self) -> np.ndarray:
        return self.target_measure.scale(self.target_q)

    def reduced_matrix(self) -> np.ndarray:
        """Matrix of the equivalent counting-measure problem."""
        return self.target_scale[:, None] * self.matrix / self.source_scale[None, :]

    def source_norm(self, x) -> float:
        return float(_pnorm(self.source_scale * np.abs(np.asarray(x)), self.source_p))

    def target_norm(self, y) -> float:
        return float(_pnorm(self.target_scale * np.abs(np.asarray(y)), self.target_q))

    def ratio(self, x) -> float:
        x = np.asarray(x)
        den = self.source_norm(x)
        return self.target_norm(self.matrix @ x) / den if den > 0 else 0.0


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 64
    max_iters: int = 5000
    step_tolerance: float = 1e-10
    value_tolerance: float = 1e-8
    rng_seed: int = 42
    smoothing_epsilon: float = 0.05

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if min(self.step_tolerance, self.value_tolerance, self.smoothing_epsilon) <= 0:
            raise ValueError("tolerances must be positive")


def _certificate(spec, u, fld, method, converged=True, **info) -> NormCertificate:
    """Map a counting-measure witness u back to the original variables and normalize."""
    x = np.asarray(u) / spec.source_scale
    if fld == Field.REAL:
        x = np.real(x)
    nx = spec.source_norm(x)
    if nx > 0:
        x = x / nx
    else:
        x = np.zeros(spec.shape[1])
        x[0] = 1.0 / spec.source_scale[0]
    value = spec.target_norm(spec.matrix @ x)
    return NormCertificate(float(value), CVector.from_complex(x), Field(fld), method, bool(converged), info)


# ---------------------------------------------------------------- exact forms


def opnorm_exact(spec: OperatorSpec, field: Field) -> NormCertificate | None:
    """Closed-form norm for p = 1, q = inf or p = q = 2; ``None`` otherwise.

    For q = inf with a complex matrix and a real search field there is no
    closed form, so the q = inf route only applies to real matrices or the
    complex field.
    """
    fld = Field(field)
    B = spec.reduced_matrix()
    m, n = B.shape
    p, q = spec.source_p, spec.target_q

    if p == 1:
        cols = _pnorm(np.abs(B), q, axis=0)
        j = int(np.argmax(cols))
        u = np.zeros(n)
        u[j] = 1.0
        return _certificate(spec, u, fld, "exact:column")

    if q == INF and (spec.is_real or fld == Field.COMPLEX):
        pd = dual_exponent(p)
        rows = _pnorm(np.abs(B), pd, axis=1)
        i = int(np.argmax(rows))
        a = B[i]
        if rows[i] == 0:
            u = np.ones(n)
        else:
            u = _dual_vector(np.conj(a)[:, None], pd)[:, 0]
        return _certificate(spec, u, fld, "exact:row")

    if p == 2 and q == 2:
        if fld == Field.REAL and not spec.is_real:
            B = np.vstack([B.real, B.imag])
        _, _, vh = np.linalg.svd(B)
        u = np.conj(vh[0])
        return _certificate(spec, u, fld, "exact:svd")

    return None


# ------------------------------------------------------------ power iteration


def _sgn(z: np.ndarray) -> np.ndarray:
    # via the angle: z / |z| overflows for subnormal complex entries
    if not np.iscomplexobj(z):
        return np.sign(z)
    return np.where(z != 0, np.exp(1j * np.angle(z)), 0)


def _dual_vector(Z: np.ndarray, r: float) -> np.ndarray:
    """Column-wise unit vectors X in l_{r'} norming Z: <X, Z> = ||Z||_r, ||X||_{r'} = 1."""
    A = np.abs(Z)
    if r == 1:
        X = _sgn(Z)
        X[A == 0] = 1.0
        return X
    if r == INF:
        idx = np.argmax(A, axis=0)
        X = np.zeros_like(Z)
        cols = np.arange(Z.shape[1])
        s = _sgn(Z[idx, cols])
        s[s == 0] = 1.0
        X[idx, cols] = s
        return X
    nrm = _pnorm(A, r, axis=0)
    nrm = np.where(nrm > 0, nrm, 1.0)
    return _sgn(Z) * (A / nrm) ** (r - 1)


def _normalize_cols(X, p):
    nrm = _pnorm(np.abs(X), p, axis=0)
    nrm = np.where(nrm > 0, nrm, 1.0)
    return X / nrm


def _power_ascent(B, X, p, q, real, max_iters, value_tol, step_tol):
    """Batched dual power iteration maximizing ||B x||_q over ||x||_p = 1.

    Each step is an ascent step: ||B x_new||_q >= <w, B x_new> = ||z||_{p'} >= ||B x||_q
    where w norms Bx and z = B^H w.  Returns (X, values, converged, iterations).
    """
    pd = dual_exponent(p)
    X = _normalize_cols(X, p)
    vals = _pnorm(np.abs(B @ X), q, axis=0)
    active = np.ones(X.shape[1], dtype=bool)
    iters = 0
    for iters in range(1, max_iters + 1):
        Xa = X[:, active]
        W = _dual_vector(B @ Xa, q)
        Z = B.conj().T @ W
        if real:
            Z = Z.real
        Xn = _dual_vector(Z, pd)
        if real:
            Xn = Xn.real
        vn = _pnorm(np.abs(B @ Xn), q, axis=0)
        vo = vals[active]
        accept = vn >= vo
        gain = np.where(accept, vn - vo, 0.0)
        step = np.abs(Xn - Xa).max(axis=0)
        Xa = np.where(accept[None, :], Xn, Xa)
        done = (gain <= value_tol * np.maximum(vo, 1e-300)) & ((step <= step_tol) | ~accept)
        idx = np.flatnonzero(active)
        X[:, idx] = Xa
        vals[idx] = np.where(accept, vn, vo)
        active[idx[done]] = False
        if not active.any():
            break
    return X, vals, ~active, iters


def _vertex_enumeration(B, q):
    """Exact real inf -> q norm: maximum of ||B s||_q over sign vectors s (s_0 = +1)."""
    n = B.shape[1]
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=n - 1)), dtype=float).reshape(2 ** (n - 1), n - 1)
    S = np.hstack([np.ones((signs.shape[0], 1)), signs]).T
    vals = _pnorm(np.abs(B @ S), q, axis=0)
    k = int(np.argmax(vals))
    return S[:, k], float(vals[k])


def _phase_polish(B, x, q, tol, sweeps=50):
    """Coordinate-wise phase optimization of a unimodular vector for the inf -> q problem."""
    x = x.astype(complex).copy()
    grid = np.linspace(0.0, 2 * np.pi, 64, endpoint=False)
    best = float(_pnorm(np.abs(B @ x), q))
    for _ in range(sweeps):
        start = best
        for j in range(x.size):
            rest = B @ x - B[:, j] * x[j]

            def f(t):
                return -float(_pnorm(np.abs(rest + B[:, j] * np.exp(1j * t)), q))

            vals = np.abs(rest[:, None] + B[:, j][:, None] * np.exp(1j * grid)[None, :])
            k = int(np.argmax(_pnorm(vals, q, axis=0)))
            h = grid[1] - grid[0]
            res = minimize_scalar(f, bounds=(grid[k] - h, grid[k] + h), method="bounded",
                                  options={"xatol": 1e-12})
            if -res.fun > best:
                x[j] = np.exp(1j * res.x)
                best = -res.fun
        if best - start <= tol * max(best, 1e-300):
            break
    return x, best


def _initial_points(n, restarts, seed, real):
    cols = []
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        v = rng.standard_normal(n)
        if not real:
            v = v + 1j * rng.standard_normal(n)
        cols.append(v)
    X = np.array(cols).T
    return X if real else X.astype(complex)


def _smoothed(r, eps):
    if r == 1:
        return 1.0 + eps
    if r == INF:
        return 1.0 / eps
    return r


def opnorm_search(spec: OperatorSpec, field: Field, cfg: SearchConfig | None = None) -> NormCertificate:
    """Best local maximum of ||Ax||_q / ||x||_p over multistart dual power iteration.

    The search runs over R^n for ``Field.REAL`` and C^n for ``Field.COMPLEX``.
    Non-smooth exponents (1 or inf) are first approached through smoothed
    exponents and then iterated with the true ones.  Real inf-sources are
    finished by sign-vertex enumeration (n <= 16), complex ones by
    coordinate-wise phase refinement.
    """
    cfg = cfg or SearchConfig()
    fld = Field(field)
    real = fld == Field.REAL
    B = spec.reduced_matrix()
    if real and np.iscomplexobj(B):
        B = B.astype(complex)
    p, q = spec.source_p, spec.target_q
    n = B.shape[1]

    X = _initial_points(n, cfg.restarts, cfg.rng_seed, real)
    method = "power"
    ps, qs = _smoothed(p, cfg.smoothing_epsilon), _smoothed(q, cfg.smoothing_epsilon)
    if (ps, qs) != (p, q):
        X, _, _, _ = _power_ascent(B, X, ps, qs, real, cfg.max_iters, cfg.value_tolerance, cfg.step_tolerance)
        method = "smoothed+power"
    X, vals, conv, iters = _power_ascent(B, X, p, q, real, cfg.max_iters, cfg.value_tolerance,
                                         cfg.step_tolerance)
    k = int(np.argmax(vals))
    u, value, converged = X[:, k], float(vals[k]), bool(conv[k])

    if p == INF and real and n <= _VERTEX_ENUM_MAX_N:
        s, sv = _vertex_enumeration(B, q)
        if sv > value:
            u, value = s, sv
        converged = True
        method += "+vertex"
    elif p == INF and not real:
        u2, v2 = _phase_polish(B, _dual_vector(u[:, None], 1)[:, 0], q, cfg.value_tolerance)
        if v2 > value:
            u, value = u2, v2
        method += "+phase"

    return _certificate(spec, u, fld, method, converged, iterations=iters, best_restart=k)


def opnorm(spec: OperatorSpec, field: Field, cfg: SearchConfig | None = None) -> NormCertificate:
    """Exact norm when a closed form applies, multistart search otherwise."""
    cert = opnorm_exact(spec, field)
    return cert if cert is not None else opnorm_search(spec, field, cfg)


# --------------------------------------------------------------------- oracle


@dataclass(frozen=True)
class OracleCertificate:
    """Result of the grid oracle; ``resolution`` bounds how far below the true supremum it may be."""

    certificate: NormCertificate
    resolution: float
    density: int
    points: int
    info: dict = field(default_factory=dict)

    @property
    def value(self) -> float:
        return self.certificate.value


def _sphere_points(angles: list[np.ndarray]) -> np.ndarray:
    """Hyperspherical coordinates -> unit vectors; returns array of shape (d, *grid)."""
    grids = np.meshgrid(*angles, indexing="ij")
    d = len(angles) + 1
    out = []
    sin_prod = np.ones_like(grids[0]) if grids else np.ones(())
    for k in range(d - 1):
        out.append(sin_prod * np.cos(grids[k]))
        sin_prod = sin_prod * np.sin(grids[k])
    out.append(sin_prod)
    return np.array(out)


def opnorm_oracle(spec: OperatorSpec, field: Field, grid_density: int = 1000,
                  allow_large: bool = False, max_points: int = 20_000_000,
                  chunk: int = 1 << 18) -> OracleCertificate:
    """Exhaustive evaluation of the norm ratio on an angular grid of the Euclidean sphere.

    Real problems use directions in R^n; complex ones fix the global phase
    (x_0 >= 0 real) and use R^(2n-1).  Antipodal symmetry halves the last angle.
    The ratio is scale invariant so Euclidean directions suffice.  The
    reported resolution is sqrt(d-1)/2 times the largest change of the ratio
    between grid neighbours, times a safety factor 2.
    """
    fld = Field(field)
    m, n = spec.shape
    real = fld == Field.REAL
    d = n if real else 2 * n - 1
    limit_ok = (real and n <= 3) or (not real and n <= 2)
    if not limit_ok and not allow_large:
        raise DimensionError(
            f"oracle refuses n={n} for {fld.value} field (max 3 real / 2 complex); pass allow_large=True"
        )
    if grid_density < 2:
        raise ValueError("grid_density must be at least 2")

    if d == 1:
        cert = _certificate(spec, spec.source_scale, fld, "oracle")
        return OracleCertificate(cert, 0.0, grid_density, 1)
    npts = grid_density * (grid_density + 1) ** (d - 2)
    if npts > max_points:
        raise ValueError(f"grid of {npts} points exceeds max_points={max_points}")

    h = np.pi / grid_density
    angles = [np.linspace(0.0, np.pi, grid_density + 1) for _ in range(d - 2)]
    angles.append(np.arange(grid_density) * h)
    P = _sphere_points(angles)  # (d, ...)
    shape = P.shape[1:]
    P = P.reshape(d, -1)
    if real:
        X = P
    else:
        X = np.empty((n, P.shape[1]), dtype=complex)
        X[0] = P[0]
        X[1:] = P[1::2] + 1j * P[2::2]

    src, tgt = spec.source_scale, spec.target_scale
    vals = np.empty(X.shape[1])
    for s in range(0, X.shape[1], chunk):
        Xc = X[:, s : s + chunk]
        num = _pnorm(tgt[:, None] * np.abs(spec.matrix @ Xc), spec.target_q, axis=0)
        den = _pnorm(src[:, None] * np.abs(Xc), spec.source_p, axis=0)
        vals[s : s + chunk] = num / den
    k = int(np.argmax(vals))
    grid_vals = vals.reshape(shape)
    jump = 0.0
    for ax in range(grid_vals.ndim):
        if grid_vals.shape[ax] > 1:
            jump = max(jump, float(np.abs(np.diff(grid_vals, axis=ax)).max()))
    # the last angle wraps onto the antipode, where the ratio is the same
    last = grid_vals.ndim - 1
    wrap = np.abs(np.take(grid_vals, [0], axis=last) - np.take(grid_vals, [-1], axis=last))
    if d == 2:
        jump = max(jump, float(wrap.max()))
    resolution = 2.0 * math.sqrt(d - 1) / 2.0 * jump

    cert = _certificate(spec, X[:, k] * spec.source_scale, fld, "oracle", True)
    return OracleCertificate(cert, resolution, grid_density, int(X.shape[1]))


# ------------------------------------------------------------------ transpose


def transpose_spec(spec: OperatorSpec) -> OperatorSpec:
    """(A, p, q) -> (A', q', p'); both norms are preserved.  Counting measures only."""
    if not (spec.source_measure.is_counting and spec.target_measure.is_counting):
        raise NotImplementedError("transpose duality is only implemented for counting measures")
    return OperatorSpec(spec.matrix.T, dual_exponent(spec.target_q), dual_exponent(spec.source_p))


def with_matrix(spec: OperatorSpec, matrix) -> OperatorSpec:
    return replace(spec, matrix=matrix)


def opnorm_absolute(A, alpha, beta, field: Field, cfg: SearchConfig | None = None,
                    exact: bool = True) -> NormCertificate:
    """Norm of A from (C^n, alpha) to (C^m, beta) for diagonal-scaled Hoelder norms.

    The scales are folded into the matrix (B = D_beta A D_alpha^-1) so weighted
    maximum norms, which a measure cannot express, reduce to the plain case.
    """
    A = np.atleast_2d(np.asarray(A))
    m, n = A.shape
    da, db = alpha.diag(n), beta.diag(m)
    red = OperatorSpec(db[:, None] * A / da[None, :], alpha.p, beta.p)
    cert = opnorm(red, field, cfg) if exact else opnorm_search(red, field, cfg)
    x = cert.witness.to_complex() / da
    if Field(field) == Field.REAL:
        x = x.real
    x = x / alpha(x)
    value = float(beta(A @ x))
    return NormCertificate(value, CVector.from_complex(x), cert.field, cert.method, cert.converged, cert.info)
