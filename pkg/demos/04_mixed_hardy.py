"""Submodules of H^2 (x) Q_{z^2} on a degree-truncated Hardy space.

Run with ``python demos/04_mixed_hardy.py``.
"""
from jordanblocks import (BlaschkeProduct, TruncatedHardy, build_mixed_space,
                          build_model_space, decompose_mixed, factorizations,
                          mixed_submodule)

z2 = BlaschkeProduct.monomial(2)
hardy = TruncatedHardy(num_vars=1, degree_cap=8)
msp = build_mixed_space(hardy, [build_model_space(z2)])
print(f"Hardy part keeps {hardy.length} coefficients "
      f"({hardy.pad} beyond the degree cap)")

# %% Whatever the generator, the Jordan-block factor is Q_{z^2} or zQ_z
for phi in [BlaschkeProduct.monomial(1), BlaschkeProduct(1, [0.5, -1 / 3])]:
    for f in factorizations(z2)[:2]:
        d = decompose_mixed(msp, mixed_submodule(msp, phi, [f]))
        print(f"generator {d.generator.per_var[0].label():30s}"
              f"factor {d.parts[0][1].label()}  "
              f"worst residual {max(d.residuals.values()):.0e}")
