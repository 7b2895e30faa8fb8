"""Complex norms built from a real norm and a functional on the circle."""

import numpy as np

from cxnorm import AbsoluteNorm
from cxnorm.counterexamples import matrix_A6x3
from cxnorm.extension import (ExtensionNorm, NuFunctional, extension_error, verify_norm_axioms,
                              verify_opnorm_preservation)

base = AbsoluteNorm.holder(3)
for nu in (NuFunctional("lp_circle", 2.0), NuFunctional("lp_circle", 4.0), NuFunctional("sup_circle")):
    ext = ExtensionNorm(base, nu)
    x = np.array([1.0, 2.0 + 1j, -1j])
    ax = verify_norm_axioms(ext, 3, 200, seed=0)
    label = f"L_{nu.s:g}" if nu.kind == "lp_circle" else "sup"
    print(f"{label:<5}: ||x|| = {ext(x):.6f}  |real error| {extension_error(ext, 3, 500):.1e}  "
          f"axiom violations {ax.violations}")

# these norms keep real and complex operator norms equal, even where l_p does not
nu = NuFunctional("lp_circle", 2.0)
rep = verify_opnorm_preservation(matrix_A6x3(), ExtensionNorm(AbsoluteNorm.holder(3), nu),
                                 ExtensionNorm(AbsoluteNorm.holder(1.5), nu))
print(f"A6x3 (3, 1.5): real {rep.real.value:.10f} complex {rep.complex.value:.10f} gap {rep.gap:.1e}")
