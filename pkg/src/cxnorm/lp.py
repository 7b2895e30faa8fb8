"""Weighted l_p norms on complexified spaces.

Exponents are plain floats with ``INF = math.inf`` marking the sup-norm.
Complex vectors are handled as numpy complex arrays internally; ``CVector``
is the explicit (re, im) container used at the API and file boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

INF = math.inf


class DimensionError(ValueError):
    """Raised when vector, measure or matrix sizes disagree."""


class Field(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


def check_exponent(p) -> float:
    """Return ``p`` as a float exponent, raising ValueError unless 1 <= p <= inf."""
    if isinstance(p, str):
        p = p.strip().lower()
        p = INF if p in ("inf", "infinity", "oo") else float(p)
    p = float(p)
    if math.isnan(p) or p < 1:
        raise ValueError(f"exponent must lie in [1, inf], got {p!r}")
    return p


def dual_exponent(p) -> float:
    """Conjugate exponent p/(p-1), with 1 <-> inf."""
    p = check_exponent(p)
    if p == 1:
        return INF
    if p == INF:
        return 1.0
    if p == 2:
        return 2.0
    return p / (p - 1)


@dataclass(frozen=True)
class DiscreteMeasure:
    """Positive point masses on {0, ..., n-1}."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        if w.size == 0 or not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValueError("measure weights must be finite and strictly positive")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def counting(cls, n: int) -> "DiscreteMeasure":
        return cls(np.ones(int(n)))

    def __len__(self):
        return self.weights.size

    @property
    def is_counting(self) -> bool:
        return bool(np.all(self.weights == 1.0))

    def scale(self, p) -> np.ndarray:
        """Diagonal d with ||x||_{p,mu} = ||d * x||_p (ones for p = inf)."""
        p = check_exponent(p)
        if p == INF:
            return np.ones_like(self.weights)
        return self.weights ** (1.0 / p)

    def to_list(self) -> list:
        return self.weights.tolist()


@dataclass(frozen=True)
class CVector:
    """A complex vector stored as its real and imaginary parts."""

    re: np.ndarray
    im: np.ndarray = None

    def __post_init__(self):
        re = np.array(self.re, dtype=float).ravel()
        im = np.zeros_like(re) if self.im is None else np.array(self.im, dtype=float).ravel()
        if re.shape != im.shape:
            raise DimensionError(f"re and im lengths differ: {re.size} != {im.size}")
        re.setflags(write=False)
        im.setflags(write=False)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def from_complex(cls, z) -> "CVector":
        z = np.asarray(z, dtype=complex).ravel()
        return cls(z.real, z.imag)

    def to_complex(self) -> np.ndarray:
        return self.re + 1j * self.im

    def __len__(self):
        return self.re.size

    @property
    def is_real(self) -> bool:
        return not np.any(self.im)

    def real_part(self) -> "CVector":
        return CVector(self.re)

    def imag_part(self) -> "CVector":
        return CVector(self.im)

    def conj(self) -> "CVector":
        return CVector(self.re, -self.im)

    def to_dict(self) -> dict:
        return {"re": self.re.tolist(), "im": self.im.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "CVector":
        return cls(d["re"], d.get("im"))


def as_complex(x) -> np.ndarray:
    """Coerce a CVector or array-like to a complex numpy array."""
    if isinstance(x, CVector):
        return x.to_complex()
    return np.asarray(x, dtype=complex)


@dataclass(frozen=True)
class NormCertificate:
    """A computed operator norm together with the unit vector that attains it."""

    value: float
    witness: CVector
    field: Field
    method: str
    converged: bool = True
    info: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "value": float(self.value),
            "witness_re": self.witness.re.tolist(),
            "witness_im": self.witness.im.tolist(),
            "field": Field(self.field).value,
            "method": self.method,
            "converged": bool(self.converged),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NormCertificate":
        return cls(
            value=float(d["value"]),
            witness=CVector(d["witness_re"], d["witness_im"]),
            field=Field(d["field"]),
            method=d["method"],
            converged=bool(d["converged"]),
        )


def _pnorm(a: np.ndarray, p: float, axis=-1) -> np.ndarray:
    """p-norm of nonnegative magnitudes along ``axis``."""
    if p == INF:
        return a.max(axis=axis)
    if p == 1:
        return a.sum(axis=axis)
    if p == 2:
        return np.sqrt((a * a).sum(axis=axis))
    return (a**p).sum(axis=axis) ** (1.0 / p)


def weighted_pnorm(x, p, mu: DiscreteMeasure | None = None) -> float:
    """(sum_t mu_t |x_t|^p)^(1/p), or max_t |x_t| for p = inf.

    Weights are ignored at p = inf since every atom carries positive mass.
    """
    p = check_exponent(p)
    z = as_complex(x).ravel()
    if mu is None:
        return float(_pnorm(np.abs(z), p))
    if len(mu) != z.size:
        raise DimensionError(f"vector length {z.size} does not match measure length {len(mu)}")
    return float(_pnorm(mu.scale(p) * np.abs(z), p))


def phase_function(x) -> np.ndarray:
    """Entrywise argument in [-pi, pi] with x_t = exp(i phi_t) |x_t|.

    Uses the half-angle form 2 atan(Im / (Re + |x|)) with the branch value pi on
    the closed negative real axis. Zero entries map to 0.
    """
    z = as_complex(x)
    re, im = z.real, z.imag
    mod = np.hypot(re, im)
    out = np.full(z.shape, np.pi)
    neg_axis = (im == 0) & (re <= 0)
    ok = ~neg_axis
    # re + |x| can underflow to 0 for tiny im; atan(+-inf) then gives the right limit
    with np.errstate(divide="ignore"):
        out[ok] = 2.0 * np.arctan(im[ok] / (re[ok] + mod[ok]))
    out[mod == 0] = 0.0
    return out


def real_part_rotation(x, phi) -> np.ndarray:
    """Re(exp(i phi) x) = cos(phi) Re x - sin(phi) Im x.

    ``phi`` may be an array of angles, in which case one row per angle is returned.
    """
    z = as_complex(x)
    phi = np.asarray(phi, dtype=float)
    if phi.ndim == 0:
        return np.cos(phi) * z.real - np.sin(phi) * z.imag
    return np.cos(phi)[:, None] * z.real[None, :] - np.sin(phi)[:, None] * z.imag[None, :]


@dataclass(frozen=True)
class AbsoluteNorm:
    """An absolute norm ||d * x||_p with a positive diagonal scale d.

    Covers the plain Hoelder norms, weighted Hoelder norms from a measure and
    weighted maximum norms max_j w_j |x_j|.  Evaluation reduces along the last axis.
    """

    kind: str
    p: float
    scale: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", check_exponent(self.p))
        if self.scale is not None:
            s = np.asarray(self.scale, dtype=float).ravel()
            if np.any(s <= 0) or not np.all(np.isfinite(s)):
                raise ValueError("norm weights must be finite and strictly positive")
            s.setflags(write=False)
            object.__setattr__(self, "scale", s)

    @classmethod
    def holder(cls, p) -> "AbsoluteNorm":
        return cls("holder", p)

    @classmethod
    def weighted_holder(cls, p, mu) -> "AbsoluteNorm":
        mu = mu if isinstance(mu, DiscreteMeasure) else DiscreteMeasure(mu)
        return cls("weighted_holder", p, mu.scale(p))

    @classmethod
    def weighted_max(cls, w) -> "AbsoluteNorm":
        return cls("weighted_max", INF, w)

    def diag(self, n: int) -> np.ndarray:
        if self.scale is None:
            return np.ones(n)
        if self.scale.size != n:
            raise DimensionError(f"norm defined on length {self.scale.size}, got {n}")
        return np.asarray(self.scale)

    def __call__(self, x) -> float | np.ndarray:
        a = np.abs(np.asarray(x))
        if self.scale is not None:
            a = a * self.diag(a.shape[-1])
        return _pnorm(a, self.p)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "p": "inf" if self.p == INF else self.p}
        if self.scale is not None:
            d["scale"] = self.scale.tolist()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AbsoluteNorm":
        return cls(d["kind"], check_exponent(d["p"]), d.get("scale"))
