"""Fingerprints versus an explicit search for intertwining unitaries.

Run with ``python demos/05_unitary_equivalence.py``.
"""
import itertools

from jordanblocks import (BlaschkeProduct, build_model_space, build_product,
                          decompose_doubly_commuting, factorizations,
                          fingerprint, intertwiner_oracle, tensor_submodule)

z2 = BlaschkeProduct.monomial(2)
jb = build_product([build_model_space(z2), build_model_space(z2)])

subs = []
for facts in itertools.product(factorizations(z2), repeat=2):
    m = tensor_submodule(jb, facts)
    subs.append((m, decompose_doubly_commuting(jb, m) if m.dim else None))

# %% Equal fingerprints exactly when a unitary intertwines the compressions
agree = 0
pairs = list(itertools.combinations_with_replacement(subs, 2))
for (m1, d1), (m2, d2) in pairs:
    agree += intertwiner_oracle(jb, m1, m2) == (fingerprint(d1) == fingerprint(d2))
print(f"agreement on {agree} of {len(pairs)} pairs")
for m, d in subs:
    print(f"dim {m.dim}: {fingerprint(d).describe()}")
