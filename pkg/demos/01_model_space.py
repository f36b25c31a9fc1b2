"""The model space of a finite Blaschke product and its compressed shift.

Run with ``python demos/01_model_space.py``.
"""
import numpy as np

from jordanblocks import (BlaschkeProduct, backward_shift_theta,
                          build_model_space, compressed_shift,
                          defect_identities, minimal_tail,
                          parseval_frame_residual, star_cyclicity_check)

# %% A Blaschke product with a repeated zero
theta = BlaschkeProduct(1.0, [0.5, 0.5, -0.3 + 0.2j])
ms = build_model_space(theta)
print("dimension:", ms.dim, " quadrature points:", ms.n_points)

# %% The compressed shift in the orthonormal rational basis.
# It is lower triangular, with the zeros of theta on the diagonal.
s = compressed_shift(ms).matrix
np.set_printoptions(precision=3, suppress=True)
print(s)

# %% Both defects of S are rank one
r1, r2 = defect_identities(ms)
print(f"defect residuals: {r1:.1e} {r2:.1e}")
w = backward_shift_theta(ms, 1)
print("||T_z^* theta||^2 =", round(w.norm() ** 2, 12),
      " 1 - |theta(0)|^2 =", round(1 - abs(theta(0.0)) ** 2, 12))

# %% Backward shifts of theta form a Parseval frame; the first one is cyclic
tail = minimal_tail(ms)
print(f"Parseval residual with {tail} terms: "
      f"{parseval_frame_residual(ms, tail):.1e}")
print("T_z^* theta cyclic for S^*:", star_cyclicity_check(ms))
