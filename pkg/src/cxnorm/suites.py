"""Verification suites run by ``cxnorm verify``.

Each suite returns a list of flat case records.  All randomness derives from
one seed, and nothing time-dependent goes into a record, so reruns produce
identical reports.
"""

from __future__ import annotations

import numpy as np

from .bounds import RATIO_SLACK, cx_estimate, cx_lp, cx_sample_max, equality_witness, pathological_norm, ratio_check
from .counterexamples import (check_fixtures, concavity_gap_check, fixture_dir, load_fixtures, matrix_A6x3,
                              perturbation_expansion_check)
from .engine import OperatorSpec, SearchConfig, opnorm
from .equality import verify_inner_product, verify_main_theorem, verify_modulus_bound, verify_nonnegative
from .extension import (ExtensionNorm, NuFunctional, extension_error, verify_norm_axioms,
                        verify_opnorm_preservation)
from .lp import INF, AbsoluteNorm, Field

SUITES = ("bounds", "equality", "counterexamples", "extension")
DEFAULT_EXPONENTS = (1.0, 1.5, 2.0, 3.0, INF)


def exp_tag(p):
    if p is None:
        return None
    return "inf" if p == INF else float(p)


def record(case_id, kind, p=None, q=None, real=None, complex=None, gap=None, bound=None, passed=True, **detail):
    return {
        "case_id": case_id,
        "kind": kind,
        "p": exp_tag(p),
        "q": exp_tag(q),
        "real": None if real is None else float(real),
        "complex": None if complex is None else float(complex),
        "gap": None if gap is None else float(gap),
        "bound": None if bound is None else float(bound),
        "status": "pass" if passed else "fail",
        "detail": detail,
    }


def _shape(rng, dims):
    return int(rng.integers(1, dims + 1)), int(rng.integers(1, dims + 1))


def _ordered_pair(rng, exponents):
    p, q = sorted(rng.choice(len(exponents), 2))
    return exponents[p], exponents[q]


def run_bounds(cases, dims, exponents, seed, cfg, r=5.0):
    rng = np.random.default_rng(seed)
    out = []
    for k, p in enumerate(exponents):
        n = max(2, dims)
        est, x = cx_sample_max(p, n, 10_000, seed + k)
        wit = ratio_check(equality_witness(p, n), p).ratio
        bound = cx_lp(p)
        ok = est <= bound + RATIO_SLACK and abs(wit - bound) <= 1e-12
        out.append(record(f"bounds-cx-{k:02d}", "cx_constant", p=p, complex=est, gap=bound - est, bound=bound,
                          passed=ok, n=n, witness_ratio=wit, witness_re=x.real.tolist(),
                          witness_im=x.imag.tolist()))
    est, wit = cx_estimate(lambda x: pathological_norm(x, r), 2, 1000, seed)
    out.append(record("bounds-pathological", "pathological", complex=est, bound=r, gap=est - r,
                      passed=est >= r - 1e-12, r=float(r), witness_re=wit.real.tolist(), witness_im=wit.imag.tolist()))
    for k in range(cases):
        m, n = _shape(rng, dims)
        A = rng.standard_normal((m, n))
        p, q = (exponents[i] for i in rng.integers(0, len(exponents), 2))
        spec = OperatorSpec(A, p, q)
        re = opnorm(spec, Field.REAL, cfg).value
        cx = opnorm(spec, Field.COMPLEX, cfg).value
        bound = cx_lp(p) * re
        ok = re * (1 - 1e-9) <= cx <= bound * (1 + 1e-9)
        out.append(record(f"bounds-op-{k:04d}", "ratio_bound", p, q, re, cx, (cx - re) / re, bound, ok,
                          shape=[m, n]))
    return out


def run_equality(cases, dims, exponents, seed, cfg):
    rng = np.random.default_rng(seed)
    kinds = ("main", "main", "nonnegative", "modulus", "inner_product")
    out = []
    for k in range(cases):
        kind = kinds[k % len(kinds)]
        m, n = _shape(rng, dims)
        cid = f"equality-{k:04d}"
        if kind == "main":
            A = rng.standard_normal((m, n))
            p, q = _ordered_pair(rng, exponents)
            rep = verify_main_theorem(A, p, q, cfg)
            out.append(record(cid, kind, p, q, rep.real.value, rep.complex.value, rep.gap, rep.rtol, rep.passed,
                              shape=[m, n], checks=rep.to_record()["checks"]))
        elif kind == "nonnegative":
            A = np.abs(rng.standard_normal((m, n)))
            p, q = (exponents[i] for i in rng.integers(0, len(exponents), 2))
            rep = verify_nonnegative(A, AbsoluteNorm.holder(p), AbsoluteNorm.holder(q), cfg, seed=seed + k,
                                     rtol=1e-4)
            out.append(record(cid, kind, p, q, rep.real.value, rep.complex.value, rep.gap, rep.rtol, rep.passed,
                              shape=[m, n], checks=rep.to_record()["checks"]))
        elif kind == "modulus":
            A = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
            p, q = (exponents[i] for i in rng.integers(0, len(exponents), 2))
            rep = verify_modulus_bound(A, AbsoluteNorm.holder(p), AbsoluteNorm.holder(q), cfg)
            out.append(record(cid, kind, p, q, rep.modulus_norm, rep.complex_norm,
                              rep.complex_norm - rep.modulus_norm, rep.modulus_norm + rep.tol, rep.passed,
                              shape=[m, n]))
        else:
            A = rng.standard_normal((m, n))
            Bx, By = rng.standard_normal((n, n)), rng.standard_normal((m, m))
            Gx, Gy = Bx @ Bx.T + n * np.eye(n), By @ By.T + m * np.eye(m)
            rep = verify_inner_product(A, Gx, Gy, cfg)
            out.append(record(cid, kind, 2.0, 2.0, rep.real.value, rep.complex.value, rep.gap, rep.rtol,
                              rep.passed, shape=[m, n], checks=rep.to_record()["checks"],
                              closed_form=rep.extra["closed_form"]))
    return out


def run_counterexamples(cases, dims, exponents, seed, cfg, directory=None):
    out = []
    fixtures = load_fixtures(directory)
    if not fixtures:
        raise FileNotFoundError(f"no fixtures found in {directory or fixture_dir()}")
    problems = check_fixtures(directory)
    for name, fx in sorted(fixtures.items()):
        mine = [s for s in problems if s.startswith(name + ":")]
        out.append(record(f"counterexamples-fixture-{name}", "gap_fixture", fx.p, fx.q, fx.real_norm,
                          fx.complex_lower_bound, fx.complex_lower_bound - fx.real_norm, 10 * fx.resolution,
                          fx.valid and not mine, matrix_id=fx.matrix_id, resolution=fx.resolution,
                          complex_search=fx.complex_norm, mismatches=mine))
        if fx.matrix_id == "A6x3" and fx.q < 2:
            v = np.sort(np.abs(fx.real_witness))[::-1]
            rep = concavity_gap_check(v, fx.q)
            out.append(record(f"counterexamples-concavity-{name}", "concavity", fx.p, fx.q, rep.real_value,
                              rep.complex_value, rep.complex_value - rep.real_value, None, rep.passed,
                              norms_match=rep.norms_match))
    for p, q in ((3.0, 1.5), (4.0, 1.5)):
        rep = perturbation_expansion_check(p, q)
        out.append(record(f"counterexamples-perturbation-p{p:g}-q{q:g}", "perturbation", p, q,
                          passed=rep.passed, eps=rep.eps, excess=rep.excess, normalized=rep.normalized,
                          threshold=rep.threshold))
    return out


def _smooth_exponents(exponents):
    sm = [p for p in exponents if 1 < p < INF]
    return sm or [1.5, 2.0, 3.0]


def run_extension(cases, dims, exponents, seed, cfg):
    rng = np.random.default_rng(seed)
    out = []
    nus = (NuFunctional("lp_circle", 2.0), NuFunctional("lp_circle", 4.0), NuFunctional("sup_circle"))
    for k, nu in enumerate(nus):
        n = max(2, dims)
        ext = ExtensionNorm(AbsoluteNorm.holder(3.0), nu)
        err = extension_error(ext, n, 500, seed + k)
        out.append(record(f"extension-property-{k}", "extension_property", real=None, gap=err, bound=1e-8,
                          passed=err <= 1e-8, nu=nu.to_dict()))
        ax = verify_norm_axioms(ext, n, 200, seed + k)
        out.append(record(f"extension-axioms-{k}", "norm_axioms", gap=ax.max_homogeneity_error, passed=ax.passed,
                          nu=nu.to_dict(), violations=ax.violations))
    smooth = _smooth_exponents(exponents)
    nu2 = NuFunctional("lp_circle", 2.0)
    head = verify_opnorm_preservation(matrix_A6x3(), ExtensionNorm(AbsoluteNorm.holder(3), nu2),
                                      ExtensionNorm(AbsoluteNorm.holder(1.5), nu2), cfg)
    plain = opnorm(OperatorSpec(matrix_A6x3(), 3, 1.5), Field.COMPLEX, cfg).value
    out.append(record("extension-preserve-0000", "opnorm_preservation", 3.0, 1.5, head.real.value,
                      head.complex.value, head.gap, 1e-4, head.passed, matrix="A6x3", nu=nu2.to_dict(),
                      chain=head.chain_ok, plain_complex=plain))
    for k in range(1, cases):
        m, n = _shape(rng, dims)
        A = rng.standard_normal((m, n))
        p, q = (smooth[i] for i in rng.integers(0, len(smooth), 2))
        nu = nus[int(rng.integers(0, 2))]
        rep = verify_opnorm_preservation(A, ExtensionNorm(AbsoluteNorm.holder(p), nu),
                                         ExtensionNorm(AbsoluteNorm.holder(q), nu), cfg)
        out.append(record(f"extension-preserve-{k:04d}", "opnorm_preservation", p, q, rep.real.value,
                          rep.complex.value, rep.gap, 1e-4, rep.passed, shape=[m, n], nu=nu.to_dict(),
                          chain=rep.chain_ok))
    return out


RUNNERS = {"bounds": run_bounds, "equality": run_equality, "counterexamples": run_counterexamples,
           "extension": run_extension}


def run_suite(name, cases=20, dims=6, exponents=DEFAULT_EXPONENTS, seed=42, cfg: SearchConfig | None = None,
              r=5.0):
    """Run one suite (or ``all``) and return its records sorted by case_id."""
    if name != "all" and name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
    if cases < 1 or dims < 1:
        raise ValueError("cases and dims must be positive")
    cfg = cfg or SearchConfig(rng_seed=seed)
    exponents = tuple(sorted(exponents))
    out = []
    for s in (SUITES if name == "all" else (name,)):
        kw = {"r": r} if s == "bounds" else {}
        recs = RUNNERS[s](cases, dims, exponents, seed, cfg, **kw)
        for rec in recs:
            rec["suite"] = s
        out.extend(recs)
    return sorted(out, key=lambda rec: rec["case_id"])
