"""Real matrices whose complex (p, q) norm strictly exceeds the real one when p > q.

Gap fixtures are stored as JSON under ``fixtures/`` (inside the package, or
the directory named by ``CXNORM_FIXTURE_DIR``) and rechecked by the tests.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .engine import OperatorSpec, SearchConfig, opnorm_oracle, opnorm_search
from .lp import INF, CVector, Field, check_exponent, weighted_pnorm

FIXTURE_ENV = "CXNORM_FIXTURE_DIR"
DEFAULT_PAIRS = {"A2x2": [(INF, 1.0)], "A6x3": [(3.0, 1.5), (4.0, 1.5)], "A3x6": [(3.0, 1.5), (3.0, 4.0 / 3.0)]}


def matrix_A2x2() -> np.ndarray:
    return np.array([[1.0, -1.0], [1.0, 1.0]])


def matrix_A6x3() -> np.ndarray:
    return np.array(
        [[1, 1, 0], [1, -1, 0], [0, 1, 1], [0, 1, -1], [1, 0, 1], [1, 0, -1]], dtype=float
    )


def matrix_A3x6() -> np.ndarray:
    return np.array(
        [[1, 1, 1, 1, 0, 0], [1, -1, 0, 0, 1, 1], [0, 0, 1, -1, 1, -1]], dtype=float
    )


MATRICES = {"A2x2": matrix_A2x2, "A6x3": matrix_A6x3, "A3x6": matrix_A3x6}


def transpose_column_permutation() -> tuple[int, ...]:
    """Column order ``perm`` with matrix_A3x6() == matrix_A6x3().T[:, perm]."""
    At, target = matrix_A6x3().T, matrix_A3x6()
    for perm in itertools.permutations(range(6)):
        if np.array_equal(At[:, list(perm)], target):
            return perm
    raise LookupError("A3x6 is not a column permutation of A6x3'")


# --------------------------------------------------------------- perturbation


def perturbation_excess(eps: float, p, q) -> float:
    """R(eps) - 4 for R(eps) = ||A v(eps)||_q^q / ||v(eps)||_p^q, v(eps) = (1, eps, 0).

    A v(eps) = (1+eps, 1-eps, eps, eps, 1, 1); the difference to 4 is formed
    without cancellation via expm1/log1p.
    """
    p, q = check_exponent(p), check_exponent(q)
    if eps == 0:
        return 0.0
    num_excess = math.expm1(q * math.log1p(eps)) + math.expm1(q * math.log1p(-eps)) + 2 * eps**q
    shrink = 0.0 if p == INF else math.expm1(-(q / p) * math.log1p(eps**p))
    return num_excess + 4 * shrink + num_excess * shrink


def perturbation_ratio(eps: float, p, q) -> float:
    return 4.0 + perturbation_excess(eps, p, q)


@dataclass
class PerturbationReport:
    p: float
    q: float
    eps: list
    excess: list
    normalized: list
    threshold: float | None
    approaches_one: bool

    @property
    def passed(self) -> bool:
        return self.threshold is not None and self.approaches_one


def perturbation_expansion_check(p, q, eps_list=(1e-2, 1e-3, 1e-4, 1e-5)) -> PerturbationReport:
    """Check that R(eps) - 4 ~ 2 eps^q as eps -> 0, so the unit vector is not a real maximizer.

    ``threshold`` is the largest tested eps below which every tested eps gives R > 4.
    """
    p, q = check_exponent(p), check_exponent(q)
    if not (q < p and 1 <= q < 2):
        raise ValueError(f"expansion needs 1 <= q < 2 and q < p, got p={p}, q={q}")
    eps = sorted((float(e) for e in eps_list), reverse=True)
    if any(not 0 < e < 0.3 for e in eps):
        raise ValueError("eps values must lie in (0, 0.3)")
    excess = [perturbation_excess(e, p, q) for e in eps]
    normalized = [x / (2 * e**q) for x, e in zip(excess, eps)]
    threshold = None
    for e, x in zip(reversed(eps), reversed(excess)):
        if x <= 0:
            break
        threshold = e
    dist = [abs(r - 1) for r in normalized]
    approaches = all(b <= a for a, b in zip(dist, dist[1:]))
    return PerturbationReport(p, q, eps, excess, normalized, threshold, approaches)


# ------------------------------------------------------------------ concavity


@dataclass
class ConcavityReport:
    real_value: float
    complex_value: float
    w: np.ndarray
    norms_match: bool

    @property
    def passed(self) -> bool:
        return self.complex_value > self.real_value and self.norms_match


def concavity_witness(v) -> np.ndarray:
    """(i x, y, z) from the moduli of v sorted as x >= y >= z."""
    x, y, z = np.sort(np.abs(np.asarray(v, dtype=float)))[::-1]
    return np.array([1j * x, y, z])


def concavity_gap_check(v, q) -> ConcavityReport:
    """||A w||_q^q > ||A v||_q^q for w = (i x, y, z) while ||w||_p = ||v||_p for every p."""
    v = np.asarray(v, dtype=float)
    q = check_exponent(q)
    if v.size != 3:
        raise ValueError("v must be a triple")
    x, y, z = v
    if not (x >= y >= z >= 0 and y > 0):
        raise ValueError("need x >= y >= z >= 0 and y > 0")
    if not q < 2:
        raise ValueError("concavity argument needs q < 2")
    A = matrix_A6x3()
    w = np.array([1j * x, y, z])
    real_val = float(np.sum(np.abs(A @ v) ** q))
    cplx_val = float(np.sum(np.abs(A @ w) ** q))
    match = all(
        math.isclose(np.sum(np.abs(w) ** p), np.sum(np.abs(v) ** p), rel_tol=1e-14) for p in (1, 1.5, 2, 3, 7)
    ) and np.abs(w).max() == np.abs(v).max()
    return ConcavityReport(real_val, cplx_val, w, bool(match))


# -------------------------------------------------------------------- fixtures


@dataclass
class GapFixture:
    matrix_id: str
    matrix: list
    p: float
    q: float
    real_norm: float
    complex_norm: float
    complex_lower_bound: float
    resolution: float
    real_witness: list
    complex_witness_re: list
    complex_witness_im: list
    provenance: dict = field(default_factory=dict)

    @property
    def gap(self) -> float:
        return self.complex_norm - self.real_norm

    @property
    def certified_gap(self) -> float:
        """Lower bound on the complex norm minus the real value plus its resolution."""
        return self.complex_lower_bound - self.real_norm - self.resolution

    @property
    def valid(self) -> bool:
        return self.complex_lower_bound - self.real_norm > 10 * self.resolution

    def to_dict(self) -> dict:
        d = asdict(self)
        d["p"] = "inf" if self.p == INF else self.p
        d["q"] = "inf" if self.q == INF else self.q
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GapFixture":
        d = dict(d)
        d["p"], d["q"] = check_exponent(d["p"]), check_exponent(d["q"])
        return cls(**d)

    @property
    def name(self) -> str:
        return fixture_name(self.matrix_id, self.p, self.q)


class FixtureRejected(RuntimeError):
    pass


def fixture_name(matrix_id: str, p, q) -> str:
    def fmt(r):
        return "inf" if r == INF else f"{r:.6g}"

    return f"{matrix_id}_p{fmt(p)}_q{fmt(q)}"


def build_gap_fixture(matrix_id: str, p, q, oracle_density: int = 1500,
                      cfg: SearchConfig | None = None) -> GapFixture:
    """Certify ||A||^C > ||A||^R for one of the stored matrices.

    A2x2 uses the grid oracle for both fields.  A6x3 bounds the real norm by the
    oracle (plus its resolution) and the complex norm from below by the
    concavity witness built from the best real vector.  A3x6 has no oracle;
    the complex lower bound is a search witness and the resolution is the
    disagreement of two independently seeded searches.
    """
    cfg = cfg or SearchConfig()
    p, q = check_exponent(p), check_exponent(q)
    if matrix_id not in MATRICES:
        raise KeyError(f"unknown matrix {matrix_id!r}")
    A = MATRICES[matrix_id]()
    spec = OperatorSpec(A, p, q)
    if matrix_id == "A2x2":
        if (p, q) != (INF, 1.0):
            raise ValueError("A2x2 fixture is defined for (p, q) = (inf, 1)")
        real = opnorm_oracle(spec, Field.REAL, oracle_density)
        cplx = opnorm_oracle(spec, Field.COMPLEX, max(oracle_density // 5, 10))
        real_norm, resolution = real.value, max(real.resolution, cplx.resolution)
        cw = cplx.certificate.witness
        lower = cplx.value
        rw = real.certificate.witness.re
        prov = {"method": "oracle", "density_real": oracle_density, "density_complex": cplx.density}
        complex_norm = cplx.value
    else:
        if not p > q:
            raise ValueError("strict gaps need p > q")
        real_s = opnorm_search(spec, Field.REAL, cfg)
        cplx_s = opnorm_search(spec, Field.COMPLEX, cfg)
        if matrix_id == "A6x3":
            orc = opnorm_oracle(spec, Field.REAL, oracle_density)
            coarse = opnorm_oracle(spec, Field.REAL, oracle_density // 2)
            real_norm = max(real_s.value, orc.value)
            resolution = max(orc.resolution, abs(orc.value - coarse.value))
            rw = real_s.witness.re
            w = concavity_witness(rw)
            lower = spec.ratio(w)
            cw = CVector.from_complex(w / weighted_pnorm(w, p))
            prov = {"method": "oracle+concavity", "density": oracle_density, "coarse_density": oracle_density // 2,
                    "oracle_value": orc.value, "search_seed": cfg.rng_seed, "restarts": cfg.restarts}
        else:
            alt = SearchConfig(**{**asdict(cfg), "rng_seed": cfg.rng_seed + 10_000})
            real_b = opnorm_search(spec, Field.REAL, alt)
            cplx_b = opnorm_search(spec, Field.COMPLEX, alt)
            real_norm = max(real_s.value, real_b.value)
            resolution = max(abs(real_s.value - real_b.value), abs(cplx_s.value - cplx_b.value),
                             cfg.value_tolerance * real_norm)
            rw = real_s.witness.re
            cw = cplx_s.witness
            lower = cplx_s.value
            prov = {"method": "search", "seeds": [cfg.rng_seed, alt.rng_seed], "restarts": cfg.restarts}
        complex_norm = max(cplx_s.value, lower)

    fx = GapFixture(
        matrix_id=matrix_id,
        matrix=A.tolist(),
        p=p,
        q=q,
        real_norm=float(real_norm),
        complex_norm=float(complex_norm),
        complex_lower_bound=float(lower),
        resolution=float(resolution),
        real_witness=np.asarray(rw, dtype=float).tolist(),
        complex_witness_re=cw.re.tolist(),
        complex_witness_im=cw.im.tolist(),
        provenance=prov,
    )
    if not fx.valid:
        raise FixtureRejected(
            f"{fx.name}: lower-bound gap {fx.complex_lower_bound - fx.real_norm:.3e} "
            f"is not above 10x resolution {fx.resolution:.3e}"
        )
    return fx


CHECK_RTOL = 1e-9


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    return Path(env) if env else Path(__file__).parent / "fixtures"


def save_fixture(fx: GapFixture, directory: Path | None = None) -> Path:
    directory = Path(directory or fixture_dir())
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{fx.name}.json"
    path.write_text(json.dumps(fx.to_dict(), indent=2, sort_keys=True) + "\n")
    return path


def load_fixtures(directory: Path | None = None) -> dict[str, GapFixture]:
    directory = Path(directory or fixture_dir())
    out = {}
    for path in sorted(directory.glob("*.json")):
        fx = GapFixture.from_dict(json.loads(path.read_text()))
        out[fx.name] = fx
    return out


def _fixture_args(fx: GapFixture) -> dict:
    prov = fx.provenance
    kw = {}
    if "density" in prov:
        kw["oracle_density"] = prov["density"]
    elif "density_real" in prov:
        kw["oracle_density"] = prov["density_real"]
    seed = prov.get("search_seed", (prov.get("seeds") or [None])[0])
    if seed is not None:
        kw["cfg"] = SearchConfig(rng_seed=seed, restarts=prov.get("restarts", 64))
    return kw


def regenerate_fixtures(directory: Path | None = None, oracle_density: int = 1500) -> list[Path]:
    paths = []
    for mid, pairs in DEFAULT_PAIRS.items():
        for p, q in pairs:
            paths.append(save_fixture(build_gap_fixture(mid, p, q, oracle_density), directory))
    return paths


def check_fixtures(directory: Path | None = None) -> list[str]:
    """Recompute every stored fixture; return a list of mismatch descriptions (empty when clean)."""
    stored = load_fixtures(directory)
    if not stored:
        raise FileNotFoundError(f"no fixtures found in {directory or fixture_dir()}")
    problems = []
    for name, fx in stored.items():
        if not fx.valid:
            problems.append(f"{name}: stored gap is not above 10x resolution")
        new = build_gap_fixture(fx.matrix_id, fx.p, fx.q, **_fixture_args(fx))
        for key in ("real_norm", "complex_norm", "complex_lower_bound"):
            a, b = getattr(fx, key), getattr(new, key)
            if not math.isclose(a, b, rel_tol=CHECK_RTOL, abs_tol=CHECK_RTOL):
                problems.append(f"{name}: {key} stored {a!r} recomputed {b!r}")
        if fx.matrix != new.matrix:
            problems.append(f"{name}: matrix differs")
    return problems
