"""Every invariant subspace of a one-variable block is eta * Q_phi.

Run with ``python demos/02_submodule_lattice.py``.
"""
from jordanblocks import (BlaschkeProduct, build_model_space, build_submodule,
                          classify_submodule, distance, factorizations,
                          orthocomplement_factor, orthogonality_impossibility)

theta = BlaschkeProduct(1.0, [0.5, 0.5, -0.3])
ms = build_model_space(theta)

# %% One submodule per factorization theta = eta * phi
subs = {}
for f in factorizations(theta):
    w = build_submodule(ms, f)
    subs[f.label()] = w
    if w.dim:
        back = classify_submodule(ms, w)
        comp, q_eta = orthocomplement_factor(ms, w)
        print(f"{f.label():28s} dim {w.dim}  classified as "
              f"{back.label():28s} complement vs Q_eta "
              f"{distance(comp, q_eta):.0e}")
    else:
        print(f"{f.label():28s} dim 0")

# %% Two nonzero submodules always overlap
nonzero = [w for w in subs.values() if w.dim]
worst = min(orthogonality_impossibility(ms, a, b)
            for i, a in enumerate(nonzero) for b in nonzero[i + 1:])
print(f"smallest largest-cosine between nonzero submodules: {worst:.3f}")
