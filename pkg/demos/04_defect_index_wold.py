"""Defect spaces, Fredholm index, and the shift multiplicity, two ways."""

import numpy as np

from odolab import defect, fredholm_index, wold_multiplicity
from odolab.analysis import defect_with_stability
from odolab.gallery import build_entry

depth = 5

print("%-24s %7s %6s %12s" % ("entry", "defect", "index", "mult (two routes)"))
for name, params in (
    ("shift", {"k": 1}),
    ("shift", {"k": 2}),
    ("shift", {"k": 2, "d": 2}),
    ("diagonal", {"d": 3}),
    ("projection", {"d": 3, "rank": 2}),
    ("vacuum", {"d": 2}),
):
    sym = build_entry(name, **params).symbol
    basis, stable, _ = defect_with_stability(sym, depth)
    idx = fredholm_index(sym, depth)
    mult = wold_multiplicity(sym, depth)
    label = "%s%s" % (name, params)
    print("%-24s %7d %6d %6d == %d" % (label[:24], basis.dim, idx, mult[0], mult[1]))

# the defect vectors of the plain shift live at low chain degrees
sym = build_entry("shift", k=2).symbol
basis = defect(sym, depth)
print("\ndefect basis of the double shift, as chain-degree coefficients:")
chain_len = basis.defect_basis.shape[0] // basis.d
for j in range(basis.dim):
    vec = basis.defect_basis[:, j].reshape(chain_len, basis.d)
    degrees = [p for p in range(chain_len) if np.linalg.norm(vec[p]) > 1e-12]
    print("  vector %d touches chain degrees %s" % (j, degrees))

# the index is stable in depth once the defect has filled out
print("\nindex across depths for the double shift:")
for dd in range(2, 7):
    print("  depth %d: index %s" % (dd, fredholm_index(sym, dd)))
