import json
import math

import numpy as np
import pytest

from cxnorm.counterexamples import matrix_A6x3
from cxnorm.engine import OperatorSpec, opnorm
from cxnorm.extension import (ExtensionNorm, GramNorm, NuFunctional, extension_error, extension_norm_eval,
                              extension_opnorm, nu_eval, verify_norm_axioms, verify_opnorm_preservation)
from cxnorm.lp import INF, AbsoluteNorm, DiscreteMeasure, Field

L2 = NuFunctional("lp_circle", 2.0)
L4 = NuFunctional("lp_circle", 4.0)
SUP = NuFunctional("sup_circle")
H = AbsoluteNorm.holder


def crand(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_nu_examples():
    for nu in (L2, L4, SUP, NuFunctional("lp_circle", 1.0), NuFunctional("lp_circle", INF)):
        assert abs(nu_eval(nu, np.abs(np.cos(nu.nodes))) - 1.0) <= 1e-10
    assert nu_eval(SUP, np.ones(SUP.M)) == pytest.approx(1.0)
    assert nu_eval(L2, np.ones(L2.M)) == pytest.approx(math.sqrt(2), rel=1e-12)
    with pytest.raises(ValueError):
        nu_eval(L2, -np.ones(L2.M))
    with pytest.raises(ValueError):
        nu_eval(L2, np.ones(10))
    with pytest.raises(ValueError):
        NuFunctional("median")
    with pytest.raises(ValueError):
        NuFunctional("lp_circle", 0.5)


@pytest.mark.parametrize("nu", [L2, L4, SUP, NuFunctional("lp_circle", 1.5, M=512)])
def test_nu_monotone_and_shift_invariant(nu):
    rng = np.random.default_rng(0)
    for _ in range(50):
        f = rng.random(nu.M)
        g = f + rng.random(nu.M) * (rng.random(nu.M) < 0.3)
        assert nu_eval(nu, f) <= nu_eval(nu, g)
        k = int(rng.integers(0, nu.M))
        assert nu_eval(nu, np.roll(f, k)) == nu_eval(nu, f)


def test_extension_examples():
    rng = np.random.default_rng(1)
    ext = ExtensionNorm(H(3), L4)
    x = rng.standard_normal(4)
    assert extension_norm_eval(ext, x) == pytest.approx(H(3)(x), rel=1e-12)
    z = crand(rng, 4)
    for lam in (1j, np.exp(0.3j), -1, np.exp(2.0j)):
        assert extension_norm_eval(ext, lam * z) == pytest.approx(extension_norm_eval(ext, z), rel=1e-6)
    e2 = ExtensionNorm(H(2), L2)
    for _ in range(20):
        z = crand(rng, 5)
        canon = math.sqrt(np.linalg.norm(z.real) ** 2 + np.linalg.norm(z.imag) ** 2)
        assert extension_norm_eval(e2, z) == pytest.approx(canon, rel=1e-12)


@pytest.mark.parametrize("base", [H(3), H(1), H(INF), AbsoluteNorm.weighted_holder(1.5, DiscreteMeasure([1, 2, 3, 4])),
                                  GramNorm(np.diag([1.0, 2.0, 3.0, 4.0]) + 0.5)])
@pytest.mark.parametrize("nu", [L2, L4, SUP])
def test_extension_property(base, nu):
    assert extension_error(ExtensionNorm(base, nu), 4, 500, seed=3) <= 1e-8


def test_axiom_examples():
    rng = np.random.default_rng(2)
    ext = ExtensionNorm(H(3), L4)
    x = crand(rng, 3)
    assert ext(2 * x) == pytest.approx(2 * ext(x), rel=1e-14)
    assert ext(1j * x) == pytest.approx(ext(x), rel=1e-12)
    rep = verify_norm_axioms(ext, 4, samples=200, seed=0)
    assert rep.passed and rep.violations == 0
    with pytest.raises(ValueError):
        verify_norm_axioms(ext, 4, samples=0)


@pytest.mark.parametrize("ext", [ExtensionNorm(H(1.5), SUP), ExtensionNorm(H(INF), L2),
                                 ExtensionNorm(GramNorm(np.eye(3) * 2), L4)])
def test_axioms_other_norms(ext):
    assert verify_norm_axioms(ext, 3, samples=200, seed=1).passed


def test_re_part_bound():
    rng = np.random.default_rng(4)
    for ext in (ExtensionNorm(H(3), L4), ExtensionNorm(H(1), SUP), ExtensionNorm(H(2), L2)):
        X = crand(rng, 200, 4)
        assert np.all(ext(X.real) <= ext(X) * (1 + 1e-12))


def test_gram_norm():
    G = np.array([[2.0, 0.5], [0.5, 1.0]])
    g = GramNorm(G)
    x = np.array([1.0, -2.0])
    assert g(x) == pytest.approx(math.sqrt(x @ G @ x))
    with pytest.raises(ValueError):
        GramNorm(-G)


def test_json_config():
    cfg = '{"base": {"kind": "holder", "p": 3}, "nu": {"kind": "lp_circle", "s": 4, "M": 1024}}'
    ext = ExtensionNorm.from_json(cfg)
    assert ext.nu == NuFunctional("lp_circle", 4.0, 1024)
    again = ExtensionNorm.from_dict(json.loads(json.dumps(ext.to_dict())))
    x = np.array([1 + 1j, -0.5j, 2.0])
    assert again(x) == ext(x)
    g = ExtensionNorm.from_dict({"base": {"kind": "gram", "G": [[2, 0], [0, 1]]}, "nu": {"kind": "sup_circle"}})
    assert g(np.array([1.0, 0.0])) == pytest.approx(math.sqrt(2))


def test_preservation_inner_product():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((3, 4))
    e = ExtensionNorm(H(2), L2)
    rep = verify_opnorm_preservation(A, e, e)
    smax = np.linalg.svd(A, compute_uv=False)[0]
    assert rep.passed
    assert rep.real.value == pytest.approx(smax, rel=1e-6) and rep.complex.value == pytest.approx(smax, rel=1e-6)


def test_preservation_identity():
    e = ExtensionNorm(H(3), L4)
    rep = verify_opnorm_preservation(np.eye(3), e, e)
    assert rep.real.value == pytest.approx(1.0, rel=1e-8) and rep.complex.value == pytest.approx(1.0, rel=1e-8)


def test_preservation_headline():
    A = matrix_A6x3()
    rep = verify_opnorm_preservation(A, ExtensionNorm(H(3), L2), ExtensionNorm(H(1.5), L2))
    assert rep.passed and rep.chain_ok and rep.gap <= 1e-4
    # the plain complex (3, 1.5) norm is strictly larger than the real one
    plain = opnorm(OperatorSpec(A, 3, 1.5), Field.COMPLEX).value
    assert plain > rep.real.value + 0.1


def test_preservation_unseeded_complex_search():
    # without the real seed the complex search must land on the real value as well
    A = matrix_A6x3()
    src, tgt = ExtensionNorm(H(3), L2), ExtensionNorm(H(1.5), L2)
    c = extension_opnorm(A, src, tgt, Field.COMPLEX)
    r = opnorm(OperatorSpec(A, 3, 1.5), Field.REAL).value
    assert c.value == pytest.approx(r, rel=1e-6)


def test_preservation_gram_and_nonsmooth():
    rng = np.random.default_rng(6)
    A = rng.standard_normal((2, 3))
    B = rng.standard_normal((3, 3))
    src = ExtensionNorm(GramNorm(B @ B.T + np.eye(3)), L4)
    tgt = ExtensionNorm(GramNorm(np.diag([1.0, 3.0])), L4)
    assert verify_opnorm_preservation(A, src, tgt, starts=6).passed
    nu = NuFunctional("sup_circle", M=256)
    rep = verify_opnorm_preservation(A, ExtensionNorm(H(1), nu), ExtensionNorm(H(INF), nu), starts=4)
    assert rep.passed


def test_preservation_mismatched_nu():
    with pytest.raises(ValueError):
        verify_opnorm_preservation(np.eye(2), ExtensionNorm(H(2), L2), ExtensionNorm(H(2), L4))
