"""Cases where complexification does not change the norm, checked numerically."""

import numpy as np

from cxnorm import AbsoluteNorm, Field, OperatorSpec, opnorm
from cxnorm.equality import (integral_inequality_check, rotate_to_real, verify_inner_product, verify_main_theorem,
                             verify_modulus_bound, verify_nonnegative)

rng = np.random.default_rng(11)

# p <= q
A = rng.standard_normal((4, 5))
rep = verify_main_theorem(A, 1.5, 3.0)
print(f"p<=q      real {rep.real.value:.10f} complex {rep.complex.value:.10f} gap {rep.gap:.1e} checks {rep.checks}")

# the rotation step: a complex maximizer becomes a real vector that is at least as good
spec = OperatorSpec(A, 1.5, 3.0)
x = opnorm(spec, Field.COMPLEX).witness.to_complex()
w = rotate_to_real(A, x, spec)
print(f"rotation  phi {w.phi:.4f}  complex ratio {w.complex_ratio:.10f}  real ratio {w.real_ratio:.10f}")

# the averaging inequality behind it
x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
x /= np.sum(np.abs(x) ** 1.5) ** (1 / 1.5)
c = integral_inequality_check(x, 1.5, 3.0)
print(f"integral  lhs {c.lhs:.6f} <= rhs {c.rhs:.6f}  holds {c.holds}")

# nonnegative matrices, any exponents (here p > q)
N = np.abs(rng.standard_normal((3, 4)))
rep = verify_nonnegative(N, AbsoluteNorm.holder(4), AbsoluteNorm.holder(1.5))
print(f"A >= 0    real {rep.real.value:.10f} complex {rep.complex.value:.10f} gap {rep.gap:.1e}")

# complex matrices are dominated by their entrywise modulus
C = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
m = verify_modulus_bound(C, AbsoluteNorm.holder(3), AbsoluteNorm.holder(1.5))
print(f"modulus   ||C||^C {m.complex_norm:.6f} <= |||C|||^R {m.modulus_norm:.6f}")

# Hilbert spaces with arbitrary inner products
B = rng.standard_normal((3, 3))
G = B @ B.T + 3 * np.eye(3)
rep = verify_inner_product(A[:3, :3], G, np.eye(3))
print(f"gram      real {rep.real.value:.10f} complex {rep.complex.value:.10f}")
