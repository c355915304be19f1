"""The two-by-two block structure and the analytic Toeplitz symbol."""

import numpy as np

from odolab import Symbol, SubspaceSelector, block, build_wl, toeplitz_truncation
from odolab.operator import hardy_block_matrix

M, M_PERP, N, N_PERP = (
    SubspaceSelector.M,
    SubspaceSelector.M_PERP,
    SubspaceSelector.N,
    SubspaceSelector.N_PERP,
)

# domain splits at words starting with a letter > 1, codomain at words
# ending with a letter < n; the map is lower block triangular across them
sym = Symbol(2, 1, {((), 1, 1): 0.6, ((1,), 1, 1): 0.8})
depth = 4
w = build_wl(sym, depth)

w11 = block(w, M, N)
w12 = block(w, M, N_PERP)
w21 = block(w, M_PERP, N)
w22 = block(w, M_PERP, N_PERP)

print("block sizes: W11 %s  W12 %s  W21 %s  W22 %s" % (w11.shape, w12.shape, w21.shape, w22.shape))
print("upper right block is zero: nnz(W21) =", w21.nnz)

# W11 permutes plain words to their successors, one entry of modulus 1 per column
dense11 = w11.toarray()
gram = dense11.conj().T @ dense11
print("W11 unitary on its window: max |W11*W11 - I| = %.2e" % np.max(np.abs(gram - np.eye(gram.shape[0]))))

# the chain-to-chain corner, read in power coordinates, is block Toeplitz
transported = hardy_block_matrix(w22)
cut = transported[: (depth + 1) * sym.d, :]
t = toeplitz_truncation(sym.theta(), depth + 1)
print("chain corner vs Toeplitz truncation of the symbol: gap %.2e" % np.max(np.abs(cut - t)))

print("\nToeplitz truncation, degrees 0..%d:" % depth)
with np.printoptions(precision=2, suppress=True):
    print(t.real)

# mass that escapes the chain sector sits in W12 with constant column norm
sym2 = Symbol(2, 1, {((2,), 1, 1): 0.8, ((), 1, 1): 0.3})
w2 = build_wl(sym2, depth)
w12 = block(w2, M, N_PERP)
norms = np.sqrt(np.sum(np.abs(w12.toarray()) ** 2, axis=0))
print("\ninterior symbol: mass leaving the chain sector per chain column:")
print(" ", np.round(norms, 6))
