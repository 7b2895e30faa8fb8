"""The 2x2 matrix whose complex (inf, 1) norm beats its real one by sqrt(2)."""

import numpy as np

from cxnorm import Field, OperatorSpec, opnorm
from cxnorm.counterexamples import matrix_A2x2

A = matrix_A2x2()
spec = OperatorSpec(A, np.inf, 1)
real = opnorm(spec, Field.REAL)
cplx = opnorm(spec, Field.COMPLEX)

print("A =\n", A)
print(f"real    ||A|| = {real.value:.12f}  via {real.method}, witness {real.witness.to_complex()}")
print(f"complex ||A|| = {cplx.value:.12f}  via {cplx.method}, witness {np.round(cplx.witness.to_complex(), 6)}")
print(f"ratio = {cplx.value / real.value:.12f}  (sqrt 2 = {np.sqrt(2):.12f})")

# p <= q on a random real matrix: the two fields agree
rng = np.random.default_rng(0)
B = rng.standard_normal((4, 3))
for p, q in [(1.5, 3.0), (2.0, 2.0), (1.0, np.inf)]:
    s = OperatorSpec(B, p, q)
    print(f"({p}, {q}): real {opnorm(s, Field.REAL).value:.10f}  complex {opnorm(s, Field.COMPLEX).value:.10f}")
