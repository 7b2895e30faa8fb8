"""Acceptance criteria 1-10, one test each, at the stated tolerances and time limits."""

import math
import time

import numpy as np

from cxnorm.bounds import RATIO_SLACK, cx_lp, cx_sample_max, equality_witness, ratio_check
from cxnorm.cli import main
from cxnorm.counterexamples import (CHECK_RTOL, build_gap_fixture, load_fixtures, matrix_A2x2, matrix_A6x3,
                                    perturbation_ratio)
from cxnorm.engine import OperatorSpec, SearchConfig, opnorm
from cxnorm.equality import (DEFAULT_GRID, integral_inequality_check, rotation_norms, verify_main_theorem,
                             verify_modulus_bound, verify_nonnegative)
from cxnorm.extension import (ExtensionNorm, NuFunctional, extension_error, verify_norm_axioms,
                              verify_opnorm_preservation)
from cxnorm.lp import INF, AbsoluteNorm, DiscreteMeasure, Field, dual_exponent, weighted_pnorm


def test_criterion_01_intro_example(criterion):
    t = time.perf_counter()
    spec = OperatorSpec(matrix_A2x2(), INF, 1)
    real, cplx = opnorm(spec, Field.REAL).value, opnorm(spec, Field.COMPLEX).value
    dt = time.perf_counter() - t
    ok = (abs(real - 2) <= 1e-6 and abs(cplx - 2 * math.sqrt(2)) <= 1e-6
          and abs(cplx / real - math.sqrt(2)) <= 1e-6 and dt < 1)
    assert criterion(1, ok, f"real={real:.12f} complex={cplx:.12f} ratio={cplx / real:.12f} time={dt:.2f}s")


def test_criterion_02_cx_constants(criterion):
    t = time.perf_counter()
    worst, wit_err = -np.inf, 0.0
    for p in (1, 1.5, 2, 3, 4, 10, INF):
        for k, n in enumerate((1, 2, 4, 8, 16)):
            est, _ = cx_sample_max(p, n, 2000, seed=100 * k + 7)
            worst = max(worst, est - cx_lp(p))
        for n in (2, 3, 16):
            wit_err = max(wit_err, abs(ratio_check(equality_witness(p, n), p).ratio - cx_lp(p)))
    dt = time.perf_counter() - t
    ok = worst <= RATIO_SLACK and wit_err <= 1e-12 and dt < 10
    assert criterion(2, ok, f"max(ratio - bound)={worst:.3e} over 10000 vectors/p, witness error={wit_err:.1e}, "
                            f"time={dt:.2f}s")


def test_criterion_03_main_theorem(criterion):
    t = time.perf_counter()
    rng = np.random.default_rng(2024)
    exps = (1.0, 1.5, 2.0, 3.0, INF)
    cfg = SearchConfig(restarts=64)
    worst, failed_checks = 0.0, 0
    for _ in range(100):
        m, n = rng.integers(1, 7, 2)
        i, j = sorted(rng.integers(0, 5, 2))
        rep = verify_main_theorem(rng.standard_normal((m, n)), exps[i], exps[j], cfg)
        worst = max(worst, rep.gap)
        failed_checks += not all(rep.checks.values())
    dt = time.perf_counter() - t
    ok = worst <= 1e-4 and failed_checks == 0 and dt < 300
    assert criterion(3, ok, f"100 cases, worst relative gap={worst:.2e}, rotation-check failures={failed_checks}, "
                            f"time={dt:.1f}s")


def test_criterion_04_sharpness(criterion):
    t = time.perf_counter()
    stored = load_fixtures()
    lines, ok = [], True
    for p, q in ((3.0, 1.5), (4.0, 1.5)):
        fx = stored[f"A6x3_p{p:g}_q{q:g}"]
        fresh = build_gap_fixture("A6x3", p, q, fx.provenance["density"])
        margin = fx.complex_lower_bound - fx.real_norm
        ok &= margin > 0 and margin >= 10 * fx.resolution and fresh.valid
        ok &= math.isclose(fresh.complex_lower_bound, fx.complex_lower_bound, rel_tol=CHECK_RTOL)
        ok &= math.isclose(fresh.real_norm, fx.real_norm, rel_tol=CHECK_RTOL)
        dual = stored[f"A3x6_p{dual_exponent(q):g}_q{round(dual_exponent(p), 5):g}"]
        tol = fx.resolution + dual.resolution
        ok &= abs(fx.gap - dual.gap) <= tol and abs(fx.real_norm - dual.real_norm) <= tol
        lines.append(f"({p:g},{q:g}) gap>={margin:.4f} vs 10*res={10 * fx.resolution:.4f}, "
                     f"dual gap diff={abs(fx.gap - dual.gap):.1e}")
    dt = time.perf_counter() - t
    ok &= dt < 120
    assert criterion(4, ok, "; ".join(lines) + f", time={dt:.1f}s")


def test_criterion_05_perturbation(criterion):
    t = time.perf_counter()
    r3 = (perturbation_ratio(1e-3, 3, 1.5) - 4) / (2 * 1e-3**1.5)
    r5 = (perturbation_ratio(1e-5, 3, 1.5) - 4) / (2 * 1e-5**1.5)
    dt = time.perf_counter() - t
    ok = 0.8 <= r3 <= 1.2 and 0.98 <= r5 <= 1.02 and dt < 1
    assert criterion(5, ok, f"eps=1e-3: {r3:.6f}, eps=1e-5: {r5:.6f}, time={dt:.3f}s")


def test_criterion_06_integral_identity(criterion):
    rng = np.random.default_rng(6)
    worst_pi = 0.0
    for _ in range(100):
        x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        val = DEFAULT_GRID.integrate(rotation_norms(x, 2) ** 2)
        worst_pi = max(worst_pi, abs(val - np.pi * weighted_pnorm(x, 2) ** 2) / (np.pi * weighted_pnorm(x, 2) ** 2))
    eq_ok, strict = True, {}
    for p, q in ((1, 1), (1.5, 1.5), (2, 2), (3, 3), (1, 2), (1.5, 3), (2, 4), (1, 1.5), (3, 4)):
        strict[(p, q)] = False
        for _ in range(20):
            x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            c = integral_inequality_check(x / weighted_pnorm(x, p), p, q)
            eq_ok &= c.holds and (p < q or c.tight)
            strict[(p, q)] |= p < q and c.lhs < c.rhs - c.allowance
    strict_ok = all(v for (p, q), v in strict.items() if p < q)
    ok = worst_pi <= 1e-8 and eq_ok and strict_ok
    assert criterion(6, ok, f"pi identity worst rel err={worst_pi:.1e}, inequality/equality ok={eq_ok}, "
                            f"strict gap seen for every p<q={strict_ok}")


def test_criterion_07_nonnegative(criterion):
    t = time.perf_counter()
    rng = np.random.default_rng(7)
    exps = (1.0, 1.5, 2.0, 3.0, INF)
    worst, modulus_ok, p_gt_q = 0.0, True, 0
    for k in range(50):
        m, n = rng.integers(1, 6, 2)
        A = np.abs(rng.standard_normal((m, n))) * (rng.random((m, n)) < 0.8)
        p, q = exps[rng.integers(0, 5)], exps[rng.integers(0, 5)]
        if k % 5 == 0:
            alpha = AbsoluteNorm.weighted_holder(p, DiscreteMeasure(rng.uniform(0.2, 3, n)))
            beta = AbsoluteNorm.weighted_max(rng.uniform(0.2, 3, m))
        else:
            alpha, beta = AbsoluteNorm.holder(p), AbsoluteNorm.holder(q)
        p_gt_q += alpha.p > beta.p
        rep = verify_nonnegative(A, alpha, beta, samples=100, seed=k, rtol=1e-4)
        worst = max(worst, rep.gap)
        modulus_ok &= rep.checks["modulus"]
    dt = time.perf_counter() - t
    ok = worst <= 1e-4 and modulus_ok and p_gt_q > 0 and dt < 120
    assert criterion(7, ok, f"50 matrices ({p_gt_q} with p>q), worst gap={worst:.1e}, |Af|<=A|f| ok={modulus_ok}, "
                            f"time={dt:.1f}s")


def test_criterion_08_modulus_bound(criterion):
    rng = np.random.default_rng(8)
    exps = (1.0, 1.5, 2.0, 3.0, INF)
    worst = -np.inf
    for _ in range(100):
        m, n = rng.integers(1, 6, 2)
        A = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        p, q = exps[rng.integers(0, 5)], exps[rng.integers(0, 5)]
        rep = verify_modulus_bound(A, AbsoluteNorm.holder(p), AbsoluteNorm.holder(q))
        worst = max(worst, rep.complex_norm - rep.modulus_norm)
    ok = worst <= 1e-8
    assert criterion(8, ok, f"100 complex matrices, max(||A||^C - |||A|||^R)={worst:.3e}")


def test_criterion_09_extension_norms(criterion):
    t = time.perf_counter()
    l2, l4 = NuFunctional("lp_circle", 2.0), NuFunctional("lp_circle", 4.0)
    ext_err = max(extension_error(ExtensionNorm(AbsoluteNorm.holder(p), nu), 4, 500, seed=1)
                  for p in (1, 1.5, 3, INF) for nu in (l2, l4, NuFunctional("sup_circle")))
    axioms = verify_norm_axioms(ExtensionNorm(AbsoluteNorm.holder(3), l4), 4, 200, seed=2)
    rng = np.random.default_rng(9)
    gaps = []
    head = verify_opnorm_preservation(matrix_A6x3(), ExtensionNorm(AbsoluteNorm.holder(3), l2),
                                      ExtensionNorm(AbsoluteNorm.holder(1.5), l2))
    gaps.append(head.gap)
    chain_ok = head.chain_ok
    smooth = (1.5, 2.0, 3.0, 4.0)
    for k in range(19):
        m, n = rng.integers(1, 6, 2)
        p, q = smooth[rng.integers(0, 4)], smooth[rng.integers(0, 4)]
        nu = (l2, l4)[k % 2]
        rep = verify_opnorm_preservation(rng.standard_normal((m, n)), ExtensionNorm(AbsoluteNorm.holder(p), nu),
                                         ExtensionNorm(AbsoluteNorm.holder(q), nu))
        gaps.append(rep.gap)
        chain_ok &= rep.chain_ok
    dt = time.perf_counter() - t
    ok = ext_err <= 1e-8 and axioms.violations == 0 and max(gaps) <= 1e-4 and chain_ok and dt < 180
    assert criterion(9, ok, f"extension err={ext_err:.1e}, axiom violations={axioms.violations}/200, "
                            f"preservation worst gap={max(gaps):.1e} over 20 (headline {head.gap:.1e}), "
                            f"time={dt:.1f}s")


def test_criterion_10_determinism(criterion, tmp_path, capsys):
    args = ["verify", "all", "--cases", "4", "--dims", "4", "--seed", "42"]
    codes = [main(args + ["--out", str(tmp_path / d)]) for d in ("a", "b")]
    capsys.readouterr()
    names = ("summary.csv", "cases.jsonl", "ratio_report.csv")
    same = all((tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes() for f in names)
    ok = same and codes == [0, 0]
    assert criterion(10, ok, f"two runs of `verify all --seed 42`: exit codes {codes}, "
                             f"report files byte-identical={same}")
