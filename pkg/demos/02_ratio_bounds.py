"""The constant c_X for l_p and how it bounds the complex/real ratio."""

import numpy as np

from cxnorm import Field, OperatorSpec, opnorm
from cxnorm.bounds import cx_estimate, cx_lp, cx_sample_max, equality_witness, pathological_norm, ratio_check

print(" p      c_X     sampled max   witness ratio")
for p in (1, 1.5, 2, 3, 4, 10, np.inf):
    est, _ = cx_sample_max(p, 6, 10_000, seed=1)
    wit = ratio_check(equality_witness(p, 4), p).ratio
    print(f"{p:>4}  {cx_lp(p):.6f}  {est:.6f}      {wit:.6f}")

# the constant is not bounded over all norms: r|x1 + i x2| + |x2| gives at least 2r + 1
for r in (1.0, 5.0, 50.0):
    est, x = cx_estimate(lambda z: pathological_norm(z, r), 2, 1000, seed=0)
    print(f"pathological r={r:>4}: c_X >= {est:.3f} at x = {x}")

# random operators stay inside [||A||^R, c_X ||A||^R]
rng = np.random.default_rng(3)
for _ in range(5):
    A = rng.standard_normal((3, 3))
    p, q = 4.0, 1.5
    s = OperatorSpec(A, p, q)
    re, cx = opnorm(s, Field.REAL).value, opnorm(s, Field.COMPLEX).value
    print(f"real {re:.6f}  complex {cx:.6f}  bound {cx_lp(p) * re:.6f}")
