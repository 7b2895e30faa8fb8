import itertools
import json
import math
import shutil

import numpy as np
import pytest

from cxnorm.counterexamples import (FIXTURE_ENV, FixtureRejected, GapFixture, build_gap_fixture, check_fixtures,
                                    concavity_gap_check, concavity_witness, fixture_dir, load_fixtures,
                                    matrix_A3x6, matrix_A6x3, perturbation_excess, perturbation_expansion_check,
                                    perturbation_ratio, regenerate_fixtures, transpose_column_permutation)
from cxnorm.engine import OperatorSpec, opnorm_search
from cxnorm.lp import INF, Field, dual_exponent


def test_matrix_A6x3():
    A = matrix_A6x3()
    assert A.shape == (6, 3)
    assert list(A[1]) == [1, -1, 0]
    assert list(np.abs(A).sum(axis=0)) == [4, 4, 4]
    assert list(A @ [1, 0, 0]) == [1, 1, 0, 0, 1, 1]
    assert np.sum(np.abs(A @ [1, 0, 0]) ** 1.5) == 4


def test_matrix_A3x6():
    B = matrix_A3x6()
    assert list(B[0]) == [1, 1, 1, 1, 0, 0]
    assert set(np.unique(B)) <= {-1.0, 0.0, 1.0}
    perm = transpose_column_permutation()
    assert np.array_equal(matrix_A6x3().T[:, list(perm)], B)


def test_perturbation_examples():
    assert perturbation_ratio(0.0, 3, 1.5) == 4.0
    assert perturbation_excess(0.01, 3, 1.5) == pytest.approx(0.002, rel=0.2)
    rep = perturbation_expansion_check(3, 1.5, (1e-2, 1e-3, 1e-4))
    assert rep.approaches_one and rep.passed
    assert all(x > 0 for x in rep.excess)
    with pytest.raises(ValueError):
        perturbation_expansion_check(1.5, 3)
    with pytest.raises(ValueError):
        perturbation_expansion_check(3, 2.5)
    with pytest.raises(ValueError):
        perturbation_expansion_check(3, 1.5, (0.5,))


def test_perturbation_matches_direct_evaluation():
    # direct evaluation is fine at moderate eps where there is no cancellation
    A = matrix_A6x3()
    for eps in (0.2, 0.05):
        v = np.array([1, eps, 0])
        direct = np.sum(np.abs(A @ v) ** 1.5) / np.sum(np.abs(v) ** 3) ** (1.5 / 3)
        assert perturbation_ratio(eps, 3, 1.5) == pytest.approx(direct, rel=1e-13)


@pytest.mark.parametrize("v,q", [((1, 1, 0), 1.5), ((1, 1, 1), 1.0), ((1, 0.5, 0.5), 1.9)])
def test_concavity_examples(v, q):
    rep = concavity_gap_check(v, q)
    assert rep.passed and rep.complex_value > rep.real_value


def test_concavity_errors():
    with pytest.raises(ValueError):
        concavity_gap_check((0.5, 1, 0), 1.5)
    with pytest.raises(ValueError):
        concavity_gap_check((1, 1, 0), 2.5)
    assert np.allclose(concavity_witness([0.2, 1.0, 0.5]), [1j, 0.5, 0.2])


@pytest.mark.parametrize("p,q", [(3, 1.5), (4, 1.5)])
def test_symmetry_and_unit_vector(p, q):
    A = matrix_A6x3()
    s = OperatorSpec(A, p, q)
    cert = opnorm_search(s, Field.REAL)
    x = cert.witness.re
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            assert s.ratio(np.array(signs) * x[list(perm)]) == pytest.approx(cert.value, rel=1e-13)
    assert cert.value > 4 ** (1 / q)
    assert np.sum(np.abs(x) > 1e-6) >= 2


def test_shipped_fixtures():
    fx = load_fixtures()
    assert set(fx) == {"A2x2_pinf_q1", "A6x3_p3_q1.5", "A6x3_p4_q1.5", "A3x6_p3_q1.5", "A3x6_p3_q1.33333"}
    for f in fx.values():
        assert f.valid and f.gap > 0
        assert f.complex_norm > f.real_norm + 10 * f.resolution
    a = fx["A2x2_pinf_q1"]
    assert a.real_norm == pytest.approx(2.0, abs=1e-9)
    assert a.complex_norm == pytest.approx(2 * math.sqrt(2), abs=a.resolution)


def test_fixture_duality():
    fx = load_fixtures()
    for a, b in (("A6x3_p3_q1.5", "A3x6_p3_q1.5"), ("A6x3_p4_q1.5", "A3x6_p3_q1.33333")):
        f, g = fx[a], fx[b]
        assert g.p == pytest.approx(dual_exponent(f.q)) and g.q == pytest.approx(dual_exponent(f.p))
        tol = f.resolution + g.resolution
        assert abs(f.real_norm - g.real_norm) <= tol
        assert abs(f.gap - g.gap) <= tol


def test_fixture_check_clean():
    assert check_fixtures() == []


def test_fixture_tamper(tmp_path):
    for path in fixture_dir().glob("*.json"):
        shutil.copy(path, tmp_path)
    target = tmp_path / "A6x3_p3_q1.5.json"
    d = json.loads(target.read_text())
    d["real_norm"] += 1e-2
    target.write_text(json.dumps(d))
    problems = check_fixtures(tmp_path)
    assert len(problems) == 1 and problems[0].startswith("A6x3_p3_q1.5: real_norm")


def test_fixture_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        check_fixtures(tmp_path)


def test_regenerate_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv(FIXTURE_ENV, str(tmp_path))
    assert fixture_dir() == tmp_path
    paths = regenerate_fixtures()
    assert len(paths) == 5 and all(p.parent == tmp_path for p in paths)
    assert check_fixtures() == []
    f = load_fixtures()["A6x3_p3_q1.5"]
    assert GapFixture.from_dict(json.loads(json.dumps(f.to_dict()))) == f


def test_build_A3x6_q_above_two():
    fx = build_gap_fixture("A3x6", 4, 2.5)
    assert fx.valid and fx.gap > 0.04


def test_build_rejections():
    with pytest.raises(ValueError):
        build_gap_fixture("A6x3", 1.5, 3)
    with pytest.raises(ValueError):
        build_gap_fixture("A2x2", 3, 1.5)
    with pytest.raises(KeyError):
        build_gap_fixture("B", 3, 1.5)
    # (4, 2.5) for A6x3 has no gap at all
    with pytest.raises(FixtureRejected):
        build_gap_fixture("A6x3", 4, 2.5, oracle_density=300)
