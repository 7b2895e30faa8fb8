"""p > q with q < 2: the 6x3 matrix where the complex norm is strictly larger."""

import numpy as np

from cxnorm.counterexamples import concavity_gap_check, load_fixtures, perturbation_ratio

for name, fx in sorted(load_fixtures().items()):
    print(f"{name:<22} real {fx.real_norm:.6f}  complex >= {fx.complex_lower_bound:.6f}  "
          f"resolution {fx.resolution:.1e}  valid {fx.valid}")

# near the unit vector the real ratio grows like 4 + 2 eps^q, so e_1 is not a maximizer
for eps in (1e-2, 1e-3, 1e-4, 1e-5):
    r = perturbation_ratio(eps, 3, 1.5)
    print(f"eps {eps:.0e}: (R - 4) / (2 eps^q) = {(r - 4) / (2 * eps**1.5):.6f}")

fx = load_fixtures()["A6x3_p3_q1.5"]
rep = concavity_gap_check(np.sort(np.abs(fx.real_witness))[::-1], 1.5)
print(f"concavity witness: real {rep.real_value:.6f} < complex {rep.complex_value:.6f}")
