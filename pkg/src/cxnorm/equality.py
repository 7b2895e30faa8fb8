"""Checks for the operator classes whose real and complex norms coincide.

Every verifier compares the two norms directly and, where it makes sense,
also recomputes the intermediate quantities of the equality argument: the
phase rotation that turns a complex witness into an equally good real one,
and the circle integrals behind it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import sqrtm
from scipy.optimize import minimize_scalar

from .engine import OperatorSpec, SearchConfig, opnorm, opnorm_absolute, opnorm_search
from .lp import (
    INF,
    AbsoluteNorm,
    CVector,
    DiscreteMeasure,
    Field,
    NormCertificate,
    as_complex,
    check_exponent,
    phase_function,
    real_part_rotation,
    weighted_pnorm,
)


@dataclass(frozen=True)
class QuadratureGrid:
    """M equispaced nodes on [0, 2 pi) with equal weights 2 pi / M."""

    M: int = 4096

    def __post_init__(self):
        if self.M < 16:
            raise ValueError("quadrature grid needs M >= 16")

    @property
    def nodes(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M

    @property
    def weight(self) -> float:
        return 2 * np.pi / self.M

    def integrate(self, values) -> float:
        return float(np.sum(values) * self.weight)


DEFAULT_GRID = QuadratureGrid()


def rotation_norms(x, p, grid: QuadratureGrid = DEFAULT_GRID, mu: DiscreteMeasure | None = None) -> np.ndarray:
    """phi -> ||Re(exp(i phi) x)||_{p, mu} sampled on the grid nodes."""
    p = check_exponent(p)
    R = np.abs(real_part_rotation(x, grid.nodes))
    if mu is not None:
        R = R * mu.scale(p)
    if p == INF:
        return R.max(axis=1)
    return (R**p).sum(axis=1) ** (1.0 / p)


def cos_moment(q: float, grid: QuadratureGrid = DEFAULT_GRID, shift: float = 0.0) -> float:
    """Quadrature of |cos(shift + phi)|^q over [0, 2 pi)."""
    return grid.integrate(np.abs(np.cos(shift + grid.nodes)) ** q)


def exact_cos_moment(q: float) -> float:
    """Closed form of the integral of |cos phi|^q over [0, 2 pi): 2 sqrt(pi) Gamma((q+1)/2) / Gamma(q/2 + 1)."""
    return 2 * math.sqrt(math.pi) * math.exp(math.lgamma((q + 1) / 2) - math.lgamma(q / 2 + 1))


# ------------------------------------------------------------ circle integrals


@dataclass(frozen=True)
class IntegralCheck:
    lhs: float
    rhs: float
    allowance: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs + self.allowance

    @property
    def tight(self) -> bool:
        return abs(self.lhs - self.rhs) <= self.allowance


def integral_inequality_check(x, p, q, grid: QuadratureGrid = DEFAULT_GRID,
                              mu: DiscreteMeasure | None = None) -> IntegralCheck:
    """Compare the circle integral of ||Re(e^{i phi} x)||_p^q with that of |cos phi|^q.

    For a unit vector and 1 <= p <= q < inf the first never exceeds the second,
    with equality at p = q.  The allowance 10 (2 pi / M) q ||x||_p absorbs the
    quadrature error at the |cos|^q kinks.
    """
    p, q = check_exponent(p), check_exponent(q)
    if not p <= q < INF:
        raise ValueError(f"need 1 <= p <= q < inf, got p={p}, q={q}")
    z = as_complex(x).ravel()
    norm = weighted_pnorm(z, p, mu)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"x must have unit {p}-norm, got {norm!r}")
    lhs = grid.integrate(rotation_norms(z, p, grid, mu) ** q)
    rhs = cos_moment(q, grid)
    return IntegralCheck(lhs, rhs, 10 * grid.weight * q * norm)


@dataclass(frozen=True)
class HolderRouteCheck:
    combined: float
    separate: float
    terms: np.ndarray
    closed_form_terms: np.ndarray


def holder_route_check(x, p, q, grid: QuadratureGrid = DEFAULT_GRID) -> HolderRouteCheck:
    """Minkowski step of the finite-dimensional argument.

    With f_t(phi) = |x_t|^p |cos(phi_t + phi)|^p and the functional
    |||f||| = (int |f|^(q/p))^(p/q), compares |||sum f_t||| with sum |||f_t|||.
    Each term also equals |x_t|^p (int |cos|^q)^(p/q) in closed form.
    """
    p, q = check_exponent(p), check_exponent(q)
    if not p <= q < INF:
        raise ValueError(f"need 1 <= p <= q < inf, got p={p}, q={q}")
    z = as_complex(x).ravel()
    phases = phase_function(z)
    F = np.abs(z)[None, :] ** p * np.abs(np.cos(phases[None, :] + grid.nodes[:, None])) ** p

    def triple(f):
        return grid.integrate(np.abs(f) ** (q / p)) ** (p / q)

    terms = np.array([triple(F[:, t]) for t in range(z.size)])
    closed = np.abs(z) ** p * exact_cos_moment(q) ** (p / q)
    return HolderRouteCheck(triple(F.sum(axis=1)), float(terms.sum()), terms, closed)


# -------------------------------------------------------------- phase choices


def phase_selection_finite(y, c: float) -> float:
    """Angle phi_c with ||Re(e^{i phi_c} y)||_inf >= c ||y||_inf, by phase bucketing.

    Entries with |y_t| >= sqrt(c) ||y||_inf are sorted into n arcs of width
    2 pi / n around the centers 2 pi l / n, where cos(pi / n) > sqrt(c).
    Rotating back by the center of any occupied arc works.
    """
    z = as_complex(y).ravel()
    if not 0 < c < 1:
        raise ValueError("c must lie in (0, 1)")
    ymax = np.abs(z).max(initial=0.0)
    if ymax == 0:
        raise ValueError("phase selection needs y != 0")
    rc = math.sqrt(c)
    n = 2
    while math.cos(math.pi / n) <= rc:
        n += 1
    big = np.abs(z) >= rc * ymax
    phases = np.mod(phase_function(z[big]), 2 * np.pi)
    width = 2 * np.pi / n
    buckets = np.mod(np.rint(phases / width).astype(int), n)
    ell = int(buckets.min())
    return float(np.mod(-width * ell, 2 * np.pi))


def phase_argmax_sup(y, grid: QuadratureGrid = DEFAULT_GRID) -> tuple[float, float]:
    """Angle phi_0 in (-pi, pi] maximizing ||Re(e^{i phi} y)||_inf, and the maximum.

    The signed maximum max_t Re(e^{i phi} y_t) is searched on the grid and then
    refined; its maximizer also maximizes the absolute version and the value
    equals ||y||_inf.
    """
    z = as_complex(y).ravel()
    if not np.any(z):
        raise ValueError("phase selection needs y != 0")
    nodes = grid.nodes - np.pi

    def signed(phi):
        return np.max(real_part_rotation(z, phi), axis=-1)

    vals = signed(nodes)
    k = int(np.argmax(vals))
    h = grid.weight
    res = minimize_scalar(lambda t: -float(signed(np.asarray(t))), bounds=(nodes[k] - h, nodes[k] + h),
                          method="bounded", options={"xatol": 1e-12})
    phi0 = float(res.x) if -res.fun >= vals[k] else float(nodes[k])
    # the peak is flat in phi; snap to the exact angle of the entry that attains it
    t = int(np.argmax(real_part_rotation(z, phi0)))
    snap = -float(phase_function(z[t:t + 1])[0])
    if signed(np.asarray(snap)) >= signed(np.asarray(phi0)):
        phi0 = snap
    phi0 = float(np.angle(np.exp(1j * phi0)))
    if phi0 == -np.pi:
        phi0 = np.pi
    return phi0, float(np.abs(real_part_rotation(z, phi0)).max())


@dataclass(frozen=True)
class RotationWitness:
    """A real vector obtained by rotating a complex witness, as in the equality argument."""

    phi: float
    source_side: float
    target_side: float
    real_vector: np.ndarray
    complex_ratio: float
    real_ratio: float
    commutation_error: float


def rotate_to_real(A, x, spec: OperatorSpec, grid: QuadratureGrid = DEFAULT_GRID) -> RotationWitness:
    """Pick phi with ||Re(e^{i phi} x/||x||)||_p <= ||Re(e^{i phi} Ax/||Ax||)||_q and set x~ = Re(e^{i phi} x).

    For q = inf the angle is the phase maximizer of Ax; otherwise the grid
    angle maximizing the difference of the two sides is used.
    """
    A = np.asarray(A, dtype=float)
    z = as_complex(x).ravel()
    y = A @ z
    if not np.any(y):
        raise ValueError("rotation argument needs Ax != 0")
    nx, ny = spec.source_norm(z), spec.target_norm(y)
    if spec.target_q == INF:
        phi, _ = phase_argmax_sup(spec.target_scale * y, grid)
        phis = np.array([phi])
    else:
        phis = grid.nodes
    xs = np.abs(real_part_rotation(z / nx, phis)) * spec.source_scale
    ys = np.abs(real_part_rotation(y / ny, phis)) * spec.target_scale
    sx = xs.max(axis=-1) if spec.source_p == INF else (xs**spec.source_p).sum(axis=-1) ** (1 / spec.source_p)
    sy = ys.max(axis=-1) if spec.target_q == INF else (ys**spec.target_q).sum(axis=-1) ** (1 / spec.target_q)
    sx, sy = np.atleast_1d(sx), np.atleast_1d(sy)
    k = int(np.argmax(sy - sx))
    phi = float(phis[k])
    xt = real_part_rotation(z, phi)
    commute = float(np.abs(real_part_rotation(y, phi) - A @ xt).max())
    return RotationWitness(phi, float(sx[k]), float(sy[k]), xt, ny / nx, spec.ratio(xt), commute)


# ----------------------------------------------------------------- verifiers


@dataclass
class EqualityReport:
    name: str
    real: NormCertificate
    complex: NormCertificate
    rtol: float
    checks: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def gap(self) -> float:
        return abs(self.complex.value - self.real.value) / max(self.real.value, 1e-300)

    @property
    def passed(self) -> bool:
        return self.gap <= self.rtol and all(bool(v) for v in self.checks.values())

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "real": self.real.value,
            "complex": self.complex.value,
            "gap": self.gap,
            "rtol": self.rtol,
            "checks": {k: bool(v) for k, v in self.checks.items()},
            **self.extra,
            "passed": self.passed,
        }


def verify_main_theorem(A, p, q, cfg: SearchConfig | None = None, source_measure=None, target_measure=None,
                        rtol: float = 1e-4, grid: QuadratureGrid = DEFAULT_GRID) -> EqualityReport:
    """Real matrix, 1 <= p <= q <= inf: both norms agree, and the complex witness rotates to a real one."""
    A = np.asarray(A)
    if np.iscomplexobj(A) and np.any(A.imag):
        raise ValueError("the equality theorem concerns real matrices")
    A = np.real(A).astype(float)
    p, q = check_exponent(p), check_exponent(q)
    if p > q:
        raise ValueError(f"p={p} > q={q}: the norms may differ; see the counterexamples module")
    spec = OperatorSpec(A, p, q, source_measure, target_measure)
    real = opnorm(spec, Field.REAL, cfg)
    cplx = opnorm(spec, Field.COMPLEX, cfg)
    checks = {}
    x = cplx.witness.to_complex()
    if np.any(A @ x):
        rot = rotate_to_real(A, x, spec, grid)
        # both sides are 1-Lipschitz in phi, so a grid angle is off by at most one step
        slack = 2 * grid.weight if q < INF else 1e-10
        checks["phase_condition"] = rot.source_side <= rot.target_side + slack
        checks["rotated_ratio"] = rot.real_ratio >= rot.complex_ratio * (1 - slack / rot.source_side) - 1e-12
        checks["commutation"] = bool(rot.commutation_error <= 1e-12 * max(1.0, np.abs(A).sum() * np.abs(x).max()))
    return EqualityReport("main_theorem", real, cplx, rtol, checks)


def verify_weighted_max(A, alpha: AbsoluteNorm, w, cfg: SearchConfig | None = None,
                        rtol: float = 1e-6) -> EqualityReport:
    """Absolute source norm, weighted max target: the sign pattern of the active row gives a real maximizer."""
    A = np.asarray(A, dtype=float)
    if not isinstance(alpha, AbsoluteNorm):
        raise TypeError("source norm must be an AbsoluteNorm")
    beta = AbsoluteNorm.weighted_max(w)
    real = opnorm_absolute(A, alpha, beta, Field.REAL, cfg, exact=False)
    cplx = opnorm_absolute(A, alpha, beta, Field.COMPLEX, cfg, exact=False)
    x = cplx.witness.to_complex()
    y = beta.diag(A.shape[0]) * np.abs(A @ x)
    j = int(np.argmax(y))
    xt = np.where(A[j] >= 0, np.abs(x), -np.abs(x))
    r_c = beta(A @ x) / alpha(x)
    r_t = beta(A @ xt) / alpha(xt)
    checks = {"sign_vector": r_t >= r_c - 1e-10, "same_source_norm": abs(alpha(xt) - alpha(x)) <= 1e-12}
    return EqualityReport("weighted_max", real, cplx, rtol, checks)


def dual_norm_real_attainment(a, alpha: AbsoluteNorm, cfg: SearchConfig | None = None) -> EqualityReport:
    """For real a the dual norm max |a'x| / ||x||_alpha is attained at a real x (the m = 1 case)."""
    a = np.asarray(a, dtype=float).reshape(1, -1)
    return verify_weighted_max(a, alpha, np.ones(1), cfg)


def verify_nonnegative(A, alpha: AbsoluteNorm, beta: AbsoluteNorm, cfg: SearchConfig | None = None,
                       samples: int = 100, seed: int = 0, rtol: float = 1e-6) -> EqualityReport:
    """Entrywise nonnegative A: |Af| <= A|f|, the norms agree, and |witness| is as good as the witness."""
    A = np.asarray(A, dtype=float)
    if np.any(A < 0):
        raise ValueError("matrix must be entrywise nonnegative")
    real = opnorm_absolute(A, alpha, beta, Field.REAL, cfg, exact=False)
    cplx = opnorm_absolute(A, alpha, beta, Field.COMPLEX, cfg, exact=False)
    rng = np.random.default_rng(seed)
    n = A.shape[1]
    F = rng.standard_normal((n, samples)) + 1j * rng.standard_normal((n, samples))
    modulus_ok = bool(np.all(np.abs(A @ F) <= A @ np.abs(F) + 1e-12 * (1 + A @ np.abs(F))))
    x = cplx.witness.to_complex()
    xa = np.abs(x)
    orthant = beta(A @ xa) / alpha(xa) >= cplx.value - 1e-10 * max(1.0, cplx.value)
    return EqualityReport("nonnegative", real, cplx, rtol, {"modulus": modulus_ok, "orthant": orthant})


@dataclass
class ModulusReport:
    complex_norm: float
    modulus_norm: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.complex_norm <= self.modulus_norm + self.tol

    def to_record(self) -> dict:
        return {"name": "modulus_bound", "complex": self.complex_norm, "modulus_real": self.modulus_norm,
                "passed": self.passed}


def verify_modulus_bound(A, alpha: AbsoluteNorm, beta: AbsoluteNorm, cfg: SearchConfig | None = None,
                         tol: float = 1e-8) -> ModulusReport:
    """Complex norm of A never exceeds the real norm of the entrywise modulus |A|."""
    A = np.asarray(A, dtype=complex)
    cplx = opnorm_absolute(A, alpha, beta, Field.COMPLEX, cfg)
    mod = opnorm_absolute(np.abs(A), alpha, beta, Field.REAL, cfg)
    return ModulusReport(cplx.value, mod.value, tol)


def _cholesky_spd(G, name):
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1] or not np.allclose(G, G.T, rtol=1e-12, atol=1e-12):
        raise ValueError(f"{name} must be a symmetric square matrix")
    try:
        return np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"{name} is not positive definite") from exc


def gram_norm(x, G) -> float:
    """sqrt(<Re x, Re x>_G + <Im x, Im x>_G)."""
    z = as_complex(x)
    G = np.asarray(G, dtype=float)
    return float(np.sqrt(z.real @ G @ z.real + z.imag @ G @ z.imag))


def verify_inner_product(A, Gx, Gy, cfg: SearchConfig | None = None, rtol: float = 1e-6,
                         grid: QuadratureGrid = DEFAULT_GRID) -> EqualityReport:
    """Inner-product norms on both sides: norms agree and match sigma_max(Gy^1/2 A Gx^-1/2)."""
    A = np.asarray(A, dtype=float)
    Lx, Ly = _cholesky_spd(Gx, "Gx"), _cholesky_spd(Gy, "Gy")
    B = Ly.T @ A @ np.linalg.inv(Lx.T)
    spec = OperatorSpec(B, 2, 2)
    real_u = opnorm_search(spec, Field.REAL, cfg)
    cplx_u = opnorm_search(spec, Field.COMPLEX, cfg)

    def back(cert):
        x = np.linalg.solve(Lx.T, cert.witness.to_complex())
        if cert.field == Field.REAL:
            x = x.real
        x = x / gram_norm(x, Gx)
        return NormCertificate(gram_norm(A @ x, Gy), CVector.from_complex(x), cert.field, cert.method,
                               cert.converged)

    real, cplx = back(real_u), back(cplx_u)
    closed = float(np.linalg.svd(np.real(sqrtm(Gy)) @ A @ np.linalg.inv(np.real(sqrtm(Gx))), compute_uv=False)[0])
    x = cplx.witness.to_complex()
    rot = grid.integrate([gram_norm(r, Gx) ** 2 for r in real_part_rotation(x, grid.nodes)])
    checks = {
        "closed_form": abs(real.value - closed) <= rtol * closed and abs(cplx.value - closed) <= rtol * closed,
        "pi_identity": abs(rot - np.pi * gram_norm(x, Gx) ** 2) <= 1e-8 * np.pi,
    }
    return EqualityReport("inner_product", real, cplx, rtol, checks, {"closed_form": closed})
