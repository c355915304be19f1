"""Norms against the boundary sup, resolvent floors, and the failure of
hyponormality for an expansive symbol."""

import numpy as np

from odolab import coburn_bound, hyponormality_probe, is_inner_exact, norm_report
from odolab.gallery import build_entry

# 1 + z: boundary sup is exactly 2, truncations approach it from below
sym = build_entry("hypo_counterexample").symbol
print("truncated operator norm vs boundary sup for 1 + z:")
for depth in (1, 2, 4, 8, 12):
    rep = norm_report(sym, depth)
    print(
        "  depth %2d: sigma_max %.6f   bracket [%.6f, %.6f]"
        % (depth, rep.sigma_max, rep.bracket_lower, rep.bracket_upper)
    )

# the same symbol is expansive (columns have norm sqrt 2) yet fails the
# hyponormality necessary condition with an explicit witness
probe = hyponormality_probe(sym, 4)
print("\nexpansive: sigma_min of the symbol block = %.6f" % probe.sigma_min_l)
print("adjoint beats forward at word %s, gap %.6f" % (probe.witness_word, probe.witness_gap))

# resolvent floors: for an isometric map, (W - lambda) cannot shrink a
# vector below 1 - |lambda|
print("\nresolvent floors for the plain shift:")
for pt in coburn_bound(build_entry("shift").symbol, 5):
    print(
        "  lambda %18s: sigma_min %.6f >= floor %.6f"
        % (np.round(pt.lam, 3), pt.sigma_min, pt.floor)
    )

# a truncated disk automorphism is nearly inner; the deviation tracks the
# geometric tail of the dropped coefficients
entry = build_entry("moebius")
res = is_inner_exact(entry.symbol.theta())
print("\ntruncated disk automorphism at the golden point:")
print("  coefficients kept: %d" % (len(entry.symbol.support_words())))
print("  isometry deviation %.3e vs tail bound %.3e" % (res.deviation, entry.tail_bound))
