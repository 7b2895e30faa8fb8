"""Complexification norms induced by a functional on the circle.

Given a real norm on R^n and a monotone, shift-invariant norm nu on
functions over [0, 2 pi), the complex vector x gets the norm
nu(phi -> ||Re(e^{i phi} x)||).  With nu normalized to nu(|cos|) = 1 this
extends the real norm, and real matrices keep their operator norm.

nu is only ever seen through samples on an equispaced grid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .engine import OperatorSpec, SearchConfig, opnorm
from .equality import QuadratureGrid, _cholesky_spd
from .lp import INF, AbsoluteNorm, CVector, Field, NormCertificate, as_complex, check_exponent

NU_KINDS = ("lp_circle", "sup_circle")


@dataclass(frozen=True)
class NuFunctional:
    """Circle functional: normalized L_s norm (``lp_circle``) or sup norm (``sup_circle``)."""

    kind: str = "lp_circle"
    s: float = 2.0
    M: int = 4096
    normalization: float = field(init=False)

    def __post_init__(self):
        if self.kind not in NU_KINDS:
            raise ValueError(f"unknown nu kind {self.kind!r}; expected one of {NU_KINDS}")
        object.__setattr__(self, "s", check_exponent(self.s))
        grid = QuadratureGrid(self.M)
        object.__setattr__(self, "normalization", 1.0)
        raw = self._raw(np.abs(np.cos(grid.nodes)))
        object.__setattr__(self, "normalization", 1.0 / raw)

    @property
    def grid(self) -> QuadratureGrid:
        return QuadratureGrid(self.M)

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    def _raw(self, f: np.ndarray) -> np.ndarray:
        if self.kind == "sup_circle":
            return f.max(axis=-1)
        h = 2 * np.pi / self.M
        if self.s == INF:
            return f.max(axis=-1)
        # summing in sorted order makes grid shifts exact, not just equal to rounding
        return (np.sort(f**self.s, axis=-1).sum(axis=-1) * h) ** (1.0 / self.s)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "s": "inf" if self.s == INF else self.s, "M": self.M}


def nu_eval(nu: NuFunctional, f) -> float | np.ndarray:
    """nu applied to samples of a nonnegative function on ``nu.nodes`` (last axis)."""
    f = np.asarray(f, dtype=float)
    if f.shape[-1] != nu.M:
        raise ValueError(f"expected {nu.M} samples, got {f.shape[-1]}")
    if np.any(f < 0):
        raise ValueError("nu is applied to nonnegative functions only")
    return nu.normalization * nu._raw(f)


@dataclass(frozen=True)
class GramNorm:
    """sqrt(x' G x) on R^n for a symmetric positive definite G."""

    G: np.ndarray

    def __post_init__(self):
        G = np.array(self.G, dtype=float)
        _cholesky_spd(G, "G")
        G.setflags(write=False)
        object.__setattr__(self, "G", G)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.sqrt(np.einsum("...i,ij,...j->...", x, self.G, x))

    def to_dict(self) -> dict:
        return {"kind": "gram", "G": self.G.tolist()}


def base_norm_from_dict(d: dict):
    if d["kind"] == "gram":
        return GramNorm(d["G"])
    return AbsoluteNorm.from_dict(d)


@dataclass(frozen=True)
class ExtensionNorm:
    base: AbsoluteNorm | GramNorm
    nu: NuFunctional = field(default_factory=NuFunctional)

    def samples(self, x) -> np.ndarray:
        """phi -> ||Re(e^{i phi} x)||_base on the grid; x may be a batch (..., n)."""
        z = as_complex(x)
        c, s = np.cos(self.nu.nodes), np.sin(self.nu.nodes)
        R = c[:, None] * z.real[..., None, :] - s[:, None] * z.imag[..., None, :]
        return self.base(R)

    def __call__(self, x):
        return nu_eval(self.nu, self.samples(x))

    def to_dict(self) -> dict:
        return {"base": self.base.to_dict(), "nu": self.nu.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "ExtensionNorm":
        nu = d.get("nu", {})
        return cls(base_norm_from_dict(d["base"]), NuFunctional(nu.get("kind", "lp_circle"), nu.get("s", 2.0),
                                                                nu.get("M", 4096)))

    @classmethod
    def from_json(cls, text: str) -> "ExtensionNorm":
        return cls.from_dict(json.loads(text))


def extension_norm_eval(ext: ExtensionNorm, x) -> float:
    return float(ext(x))


# ------------------------------------------------------------------- axioms


@dataclass
class AxiomReport:
    samples: int
    triangle_violations: int
    homogeneity_violations: int
    positivity_violations: int
    max_homogeneity_error: float

    @property
    def violations(self) -> int:
        return self.triangle_violations + self.homogeneity_violations + self.positivity_violations

    @property
    def passed(self) -> bool:
        return self.violations == 0


def homogeneity_tolerance(ext: ExtensionNorm, x) -> float:
    """Off-grid phase shifts are exact only up to the grid: 10/M times the Lipschitz bound."""
    z = as_complex(x)
    lip = ext.nu.normalization * float(np.abs(z).sum()) * float(np.max(_base_unit_bound(ext.base, z.size)))
    return 10.0 / ext.nu.M * lip + 1e-12 * max(1.0, float(ext(z)))


def _base_unit_bound(base, n):
    """Max of the base norm over the coordinate vectors."""
    return base(np.eye(n))


def verify_norm_axioms(ext: ExtensionNorm, n: int, samples: int = 200, seed: int = 0) -> AxiomReport:
    """Triangle inequality, complex homogeneity and positivity on random triples (x, y, lambda)."""
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    Y = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    lam = rng.standard_normal(samples) + 1j * rng.standard_normal(samples)
    nx, ny, nxy = ext(X), ext(Y), ext(X + Y)
    nlx = ext(lam[:, None] * X)
    tri = int(np.sum(nxy > nx + ny + 1e-9))
    tol = np.array([homogeneity_tolerance(ext, lam[k] * X[k]) for k in range(samples)])
    herr = np.abs(nlx - np.abs(lam) * nx)
    hom = int(np.sum(herr > tol))
    pos = int(np.sum(nx <= 0))
    return AxiomReport(samples, tri, hom, pos, float(herr.max()))


def extension_error(ext: ExtensionNorm, n: int, samples: int = 500, seed: int = 0) -> float:
    """Max |ext(x) - base(x)| over random real x."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, n))
    return float(np.max(np.abs(ext(X) - ext.base(X))))


# --------------------------------------------------------- operator norms


def _holder_grad(base: AbsoluteNorm, R: np.ndarray, g: np.ndarray) -> np.ndarray:
    """d ||R_k||_base / d R_k row-wise for a Hoelder base with 1 < p < inf."""
    d = base.diag(R.shape[-1])
    u = d * R
    p = base.p
    gs = np.where(g > 0, g, 1.0)
    return d * np.sign(u) * (np.abs(u) / gs[:, None]) ** (p - 1)


def _gram_grad(base: GramNorm, R, g):
    gs = np.where(g > 0, g, 1.0)
    return (R @ base.G) / gs[:, None]


def _smooth(ext: ExtensionNorm) -> bool:
    if ext.nu.kind != "lp_circle" or ext.nu.s == INF:
        return False
    if isinstance(ext.base, GramNorm):
        return True
    return 1 < ext.base.p < INF


def _value_and_grad(ext: ExtensionNorm, A: np.ndarray, xr: np.ndarray, xi: np.ndarray):
    """ext(A x) and its gradient w.r.t. (Re x, Im x) for real A; smooth cases only."""
    c, s = np.cos(ext.nu.nodes), np.sin(ext.nu.nodes)
    R = c[:, None] * (A @ xr)[None, :] - s[:, None] * (A @ xi)[None, :]
    g = ext.base(R)
    nu = ext.nu
    h = 2 * np.pi / nu.M
    total = (g**nu.s).sum() * h
    val = nu.normalization * total ** (1 / nu.s)
    if total <= 0:
        return val, np.zeros(xr.size), np.zeros(xi.size)
    dnu = nu.normalization * total ** (1 / nu.s - 1) * h * g ** (nu.s - 1)
    dg = _gram_grad(ext.base, R, g) if isinstance(ext.base, GramNorm) else _holder_grad(ext.base, R, g)
    G = dnu[:, None] * dg  # d/dR_k
    gr = A.T @ (c @ G)
    gi = -(A.T @ (s @ G))
    return val, gr, gi


def _ratio_search(A, ext_src, ext_tgt, real: bool, starts: np.ndarray):
    m, n = A.shape
    I = np.eye(n)
    smooth = _smooth(ext_src) and _smooth(ext_tgt)

    def split(v):
        return (v, np.zeros(n)) if real else (v[:n], v[n:])

    def obj(v):
        xr, xi = split(v)
        if smooth:
            ny, gry, giy = _value_and_grad(ext_tgt, A, xr, xi)
            nx, grx, gix = _value_and_grad(ext_src, I, xr, xi)
            if nx <= 0 or ny <= 0:
                return 0.0, np.zeros_like(v)
            f = -(np.log(ny) - np.log(nx))
            gr = -(gry / ny - grx / nx)
            gi = -(giy / ny - gix / nx)
            return f, (gr if real else np.concatenate([gr, gi]))
        z = xr + 1j * xi
        nx, ny = ext_src(z), ext_tgt(A @ z)
        return (-(np.log(ny) - np.log(nx)) if nx > 0 and ny > 0 else 0.0)

    best_val, best_x = -np.inf, None
    for v0 in starts:
        res = minimize(obj, v0, jac=smooth, method="L-BFGS-B", options={"maxiter": 2000, "ftol": 1e-15, "gtol": 1e-11})
        xr, xi = split(res.x)
        z = xr + 1j * xi
        val = float(ext_tgt(A @ z) / ext_src(z))
        if val > best_val:
            best_val, best_x = val, z / ext_src(z)
    return best_val, best_x


def extension_opnorm(A, ext_src: ExtensionNorm, ext_tgt: ExtensionNorm, field: Field,
                     cfg: SearchConfig | None = None, starts: int = 12, seeds=()) -> NormCertificate:
    """Multistart quasi-Newton maximization of ext_tgt(Ax) / ext_src(x) over R^n or C^n.

    ``seeds`` are extra starting vectors (real ones are embedded in C^n).
    """
    cfg = cfg or SearchConfig()
    A = np.asarray(A, dtype=float)
    n = A.shape[1]
    real = Field(field) == Field.REAL
    dim = n if real else 2 * n
    rng = np.random.default_rng(cfg.rng_seed)
    V = list(rng.standard_normal((starts, dim)))
    for x0 in seeds:
        z = as_complex(x0).ravel()
        V.append(z.real if real else np.concatenate([z.real, z.imag]))
    val, x = _ratio_search(A, ext_src, ext_tgt, real, np.array(V))
    return NormCertificate(val, CVector.from_complex(x), Field(field), "lbfgs", True)


@dataclass
class PreservationReport:
    real: NormCertificate
    complex: NormCertificate
    base_real: float | None
    chain_ok: bool
    rtol: float

    @property
    def gap(self) -> float:
        return abs(self.complex.value - self.real.value) / max(self.real.value, 1e-300)

    @property
    def passed(self) -> bool:
        base_ok = self.base_real is None or abs(self.base_real - self.real.value) <= self.rtol * self.base_real
        return self.gap <= self.rtol and self.chain_ok and base_ok

    def to_record(self) -> dict:
        return {"name": "opnorm_preservation", "real": self.real.value, "complex": self.complex.value,
                "gap": self.gap, "base_real": self.base_real, "chain": self.chain_ok, "passed": self.passed}


def verify_opnorm_preservation(A, ext_src: ExtensionNorm, ext_tgt: ExtensionNorm, cfg: SearchConfig | None = None,
                               rtol: float = 1e-4, starts: int = 12) -> PreservationReport:
    """Real and complex operator norms under extension norms built from the same nu agree.

    Also checks ||Ax||_Y <= ||A||^R ||x||_X at the complex witness, and compares
    the real norm with the engine's value for unweighted Hoelder bases.  The
    complex search is seeded with the best real witness, since real vectors are
    complex candidates too.
    """
    if ext_src.nu != ext_tgt.nu:
        raise ValueError("source and target extension norms must share the same nu")
    A = np.asarray(A, dtype=float)
    seeds = []
    base_real = None
    if isinstance(ext_src.base, AbsoluteNorm) and isinstance(ext_tgt.base, AbsoluteNorm) \
            and ext_src.base.scale is None and ext_tgt.base.scale is None:
        cert = opnorm(OperatorSpec(A, ext_src.base.p, ext_tgt.base.p), Field.REAL, cfg)
        base_real = cert.value
        seeds.append(cert.witness.real_part())
    real = extension_opnorm(A, ext_src, ext_tgt, Field.REAL, cfg, starts, seeds)
    cplx = extension_opnorm(A, ext_src, ext_tgt, Field.COMPLEX, cfg, starts, [real.witness.to_complex()])
    real_bound = real.value if base_real is None else max(real.value, base_real)
    x = cplx.witness.to_complex()
    lhs = float(ext_tgt(A @ x))
    rhs = real_bound * float(ext_src(x))
    chain = lhs <= rhs * (1 + rtol)
    return PreservationReport(real, cplx, base_real, chain, rtol)
