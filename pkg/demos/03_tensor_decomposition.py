"""Doubly commuting submodules of a product of blocks split as tensor products.

Run with ``python demos/03_tensor_decomposition.py``.
"""
import numpy as np

from jordanblocks import (BlaschkeProduct, NotDoublyCommuting, Subspace,
                          build_model_space, build_product,
                          decompose_doubly_commuting, factorizations,
                          is_doubly_commuting, is_submodule, tensor_submodule)

z2 = BlaschkeProduct.monomial(2)
jb = build_product([build_model_space(z2), build_model_space(z2)])
fs = factorizations(z2)

# %% zQ_z (x) Q_{z^2} comes back factor by factor
m = tensor_submodule(jb, [fs[1], fs[0]])
d = decompose_doubly_commuting(jb, m)
print("factors:", [f.label() for f in d.factorizations])

# %% span{z(x)1 + 1(x)z, z(x)z} is invariant but its compressions do not
# doubly commute, so it has no tensor decomposition
u = np.array([0, 1, 1, 0]) / np.sqrt(2)
v = np.array([0, 0, 0, 1.0])
m = Subspace.span(np.column_stack([u, v]), 4)
print("invariance residual:", is_submodule(jb, m).residual)
print("commutator residual:", is_doubly_commuting(jb, m).residual)
try:
    decompose_doubly_commuting(jb, m)
except NotDoublyCommuting as exc:
    print("rejected:", exc)
