"""Bounds on the complex/real operator-norm ratio.

The constant c_X = sup (||Re x|| + ||Im x||) / ||x|| controls the ratio:
||A||^C <= c_X ||A||^R.  For weighted l_p it has the closed form ``cx_lp``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .lp import INF, CVector, DimensionError, DiscreteMeasure, as_complex, check_exponent, weighted_pnorm

RATIO_SLACK = 1e-10


@dataclass(frozen=True)
class RatioReport:
    ratio: float
    bound: float
    x: CVector
    p: float

    @property
    def violated(self) -> bool:
        return self.ratio > self.bound + RATIO_SLACK


def cx_lp(p) -> float:
    """sqrt(2) for 1 <= p <= 2, 2^(1 - 1/p) for 2 <= p < inf, 2 for p = inf."""
    p = check_exponent(p)
    if p <= 2:
        return math.sqrt(2.0)
    if p == INF:
        return 2.0
    return 2.0 ** (1.0 - 1.0 / p)


def ratio_check(x, p, mu: DiscreteMeasure | None = None) -> RatioReport:
    z = as_complex(x).ravel()
    nx = weighted_pnorm(z, p, mu)
    if nx == 0:
        raise ValueError("ratio undefined at x = 0")
    ratio = (weighted_pnorm(z.real, p, mu) + weighted_pnorm(z.imag, p, mu)) / nx
    return RatioReport(ratio, cx_lp(p), CVector.from_complex(z), check_exponent(p))


def pathological_norm(x, r: float) -> float:
    """r |x_1 + i x_2| + |x_2| on C^2; not conjugation invariant, and c_X >= r."""
    z = as_complex(x).ravel()
    if z.size != 2:
        raise DimensionError(f"pathological norm is defined on C^2, got length {z.size}")
    return float(r * abs(z[0] + 1j * z[1]) + abs(z[1]))


def _structured_vectors(n: int) -> list[np.ndarray]:
    """Known extremal candidates: (1, i), (1+i) e_j, e_j +- e_k, e_j + i e_k, equal Re/Im."""
    out = []
    eye = np.eye(n)
    for j in range(n):
        out.append(eye[j].astype(complex))
        out.append((1 + 1j) * eye[j])
        for k in range(j + 1, n):
            for s in (1, -1, 1j, -1j):
                out.append(eye[j] + s * eye[k])
                out.append(s * eye[j] + eye[k])
    out.append((1 + 1j) * np.ones(n))
    return out


def cx_estimate(norm_fn: Callable[[np.ndarray], float], n: int, samples: int = 10_000,
                seed: int = 0) -> tuple[float, np.ndarray]:
    """Lower bound on c_X for a black-box norm on C^n.

    Maximizes (||Re x|| + ||Im x||) / ||x|| over structured candidates plus
    ``samples`` random complex Gaussian vectors.  Returns (estimate, witness).
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    cands = _structured_vectors(n)
    Z = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    best, arg = -np.inf, None
    for z in itertools.chain(cands, Z):
        nz = norm_fn(z)
        if nz <= 0:
            continue
        r = (norm_fn(z.real.astype(complex)) + norm_fn(z.imag.astype(complex))) / nz
        if r > best:
            best, arg = r, z
    return float(best), arg


def cx_sample_max(p, n: int, samples: int, seed: int = 0, mu: DiscreteMeasure | None = None):
    """Vectorized max of the Re/Im ratio over random complex vectors in weighted l_p."""
    p = check_exponent(p)
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    # sparsify and align some samples so boundary cases are visited
    Z[: samples // 4] *= rng.random((samples // 4, n)) < 0.5
    Z[samples // 4 : samples // 2] = (rng.standard_normal((samples // 2 - samples // 4, n))
                                      * np.exp(1j * rng.uniform(0, 2 * np.pi)))
    d = np.ones(n) if mu is None else mu.scale(p)

    def nrm(a):
        a = d * np.abs(a)
        return a.max(axis=1) if p == INF else (a**p).sum(axis=1) ** (1 / p)

    nz = nrm(Z)
    keep = nz > 0
    r = (nrm(Z.real) + nrm(Z.imag))[keep] / nz[keep]
    k = int(np.argmax(r))
    return float(r[k]), Z[keep][k]


def equality_witness(p, n: int = 2) -> np.ndarray:
    """A vector attaining cx_lp(p): Re x = Im x for p <= 2, disjoint equal-norm parts otherwise."""
    p = check_exponent(p)
    if n < 2:
        raise DimensionError("equality witnesses need n >= 2")
    x = np.zeros(n, dtype=complex)
    if p <= 2:
        x[0], x[1] = 1 + 1j, 0.5 + 0.5j
    else:
        x[0], x[1] = 1.0, 1j
    return x


def jensen_check(f, w, s: float) -> tuple[float, float]:
    """kappa(sum f w) <= sum kappa(f) w for kappa(t) = t^s, s >= 1.

    Returns (lhs, rhs) and raises AssertionError if the inequality fails by more than 1e-12.
    """
    f = np.asarray(f, dtype=float)
    w = np.asarray(w, dtype=float)
    if s < 1:
        raise ValueError("power must be >= 1 for convexity")
    if np.any(f < 0) or np.any(w < 0):
        raise ValueError("f and w must be nonnegative")
    if abs(w.sum() - 1.0) > 1e-12:
        raise ValueError(f"weights must sum to 1, got {w.sum()!r}")
    lhs = float((f @ w) ** s)
    rhs = float((f**s) @ w)
    if lhs > rhs + 1e-12:
        raise AssertionError(f"Jensen inequality violated: {lhs!r} > {rhs!r}")
    return lhs, rhs
