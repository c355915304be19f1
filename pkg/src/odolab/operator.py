"""Assembly of the odometer map, its adjoint, and the derived blocks.

Two deliberately independent routes exist: build_wl assembles the forward
action (carry on the interior, symbol columns at the vacuum and on the
all-n chains), build_wl_adjoint assembles the closed-form adjoint
(inverse carry plus a leading-ones sum through L*).  Their agreement
under conjugate transposition is a test target, so neither may call the
other.

The forward map is built with a codomain deep enough (domain depth plus
symbol depth) that no image coefficient is lost to truncation.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from . import fock
from .errors import OffChainSupport
from .symbol import MatrixPolynomial, Symbol


class SubspaceSelector(Enum):
    """The four distinguished coordinate subspaces.

    M holds the words with a letter above 1 (carry images), its complement
    is the 1-chain sector; N holds the words with a letter below n (carry
    sources), its complement is the all-n chain sector.
    """

    M = "m"
    M_PERP = "m_perp"
    N = "n"
    N_PERP = "n_perp"

    def admits(self, word, n: int) -> bool:
        if self is SubspaceSelector.M:
            return fock.word_in_m0(word)
        if self is SubspaceSelector.M_PERP:
            return fock.is_ones_chain(word)
        if self is SubspaceSelector.N:
            return fock.word_in_n0(word, n)
        return fock.is_ns_chain(word, n)


class SubBasis:
    """View of a BasisIndex restricted to a selector's words."""

    def __init__(self, parent: fock.BasisIndex, selector: SubspaceSelector):
        self.parent = parent
        self.selector = selector
        self.pairs = []
        self.parent_indices = []
        for w in parent.words:
            if selector.admits(w, parent.n):
                for s in range(1, parent.d + 1):
                    self.pairs.append((w, s))
                    self.parent_indices.append(parent.index(w, s))
        self._local = {pair: i for i, pair in enumerate(self.pairs)}
        self.size = len(self.pairs)
        self.n = parent.n
        self.d = parent.d
        self.depth = parent.depth

    def index(self, word, slot: int) -> int:
        return self._local[(tuple(word), slot)]

    def pair(self, i: int):
        return self.pairs[i]

    def contains_word(self, word) -> bool:
        w = tuple(word)
        return self.parent.contains_word(w) and self.selector.admits(w, self.parent.n)

    def __repr__(self):
        return "SubBasis(%s of %r, size=%d)" % (self.selector.value, self.parent, self.size)


def subbasis(basis: fock.BasisIndex, selector: SubspaceSelector) -> SubBasis:
    return SubBasis(basis, selector)


class FockOperator:
    """Sparse matrix between two indexed bases, entries kept exactly."""

    def __init__(self, domain, codomain, data=None):
        self.domain = domain
        self.codomain = codomain
        self.data = {} if data is None else data

    @property
    def shape(self):
        return (self.codomain.size, self.domain.size)

    @property
    def nnz(self) -> int:
        return len(self.data)

    def add(self, row: int, col: int, value: complex) -> None:
        if value == 0:
            return
        key = (row, col)
        new = self.data.get(key, 0.0 + 0.0j) + value
        if new == 0:
            self.data.pop(key, None)
        else:
            self.data[key] = new

    def entry(self, row: int, col: int) -> complex:
        return self.data.get((row, col), 0.0 + 0.0j)

    def toarray(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        for (i, j), v in self.data.items():
            out[i, j] = v
        return out

    def to_csr(self):
        from scipy.sparse import csr_matrix

        if not self.data:
            return csr_matrix(self.shape, dtype=complex)
        rows, cols, vals = zip(*((i, j, v) for (i, j), v in self.data.items()))
        return csr_matrix((vals, (rows, cols)), shape=self.shape)

    def conjugate_transpose(self) -> "FockOperator":
        flipped = {(j, i): np.conj(v) for (i, j), v in self.data.items()}
        return FockOperator(self.codomain, self.domain, flipped)

    def restrict_rows(self, row_count: int) -> "FockOperator":
        """Keep rows below row_count; valid because deeper bases extend
        shallower ones by index."""
        kept = {(i, j): v for (i, j), v in self.data.items() if i < row_count}
        return FockOperator(self.domain, _SizedIndex(row_count), kept)

    def max_abs_diff(self, other: "FockOperator") -> float:
        if self.shape != other.shape:
            raise ValueError("shape mismatch %r vs %r" % (self.shape, other.shape))
        worst = 0.0
        for key in self.data.keys() | other.data.keys():
            worst = max(worst, abs(self.data.get(key, 0.0) - other.data.get(key, 0.0)))
        return worst

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        if self.domain.size != other.codomain.size:
            raise ValueError("inner dimensions do not match")
        by_col = {}
        for (i, k), v in self.data.items():
            by_col.setdefault(k, []).append((i, v))
        out = FockOperator(other.domain, self.codomain)
        for (k, j), w in other.data.items():
            for i, v in by_col.get(k, ()):
                out.add(i, j, v * w)
        return out

    def column_norms(self) -> np.ndarray:
        acc = np.zeros(self.domain.size)
        for (_, j), v in self.data.items():
            acc[j] += abs(v) ** 2
        return np.sqrt(acc)

    def sigma_max(self, dense_limit: int = 1_500_000) -> float:
        """Largest singular value; dense below dense_limit cells, else a
        deterministic ARPACK run on the sparse matrix."""
        rows, cols = self.shape
        if rows == 0 or cols == 0 or not self.data:
            return 0.0
        if rows * cols <= dense_limit:
            return float(np.linalg.svd(self.toarray(), compute_uv=False)[0])
        from scipy.sparse.linalg import svds

        v0 = np.ones(min(rows, cols)) / np.sqrt(min(rows, cols))
        s = svds(self.to_csr(), k=1, v0=v0, maxiter=5000, return_singular_vectors=False)
        return float(s[0])

    def __repr__(self):
        return "FockOperator(shape=%r, nnz=%d)" % (self.shape, self.nnz)


class _SizedIndex:
    """Bare index space used when only a size is meaningful."""

    def __init__(self, size: int):
        self.size = size


def build_wl(sym: Symbol, depth: int, codomain_depth: int | None = None, cap: int | None = None) -> FockOperator:
    """Forward odometer action on the depth-truncated basis.

    Columns follow the case split of the action: the vacuum column is L
    itself, interior words carry to their successor, and the all-n chains
    restart as a 1-chain prefix in front of L.  With the default codomain
    depth (domain depth + symbol depth) every image fits, so the matrix
    is the exact restriction of the infinite map.
    """
    if codomain_depth is None:
        codomain_depth = depth + sym.K
    if codomain_depth < depth + sym.K:
        raise ValueError("codomain depth %d loses image mass" % codomain_depth)
    domain = fock.enumerate_basis(sym.n, depth, sym.d, cap=cap)
    codomain = fock.enumerate_basis(sym.n, codomain_depth, sym.d, cap=cap)
    cols = sym.columns_by_source()
    w = FockOperator(domain, codomain)
    for mu in domain.words:
        if mu == fock.VACUUM:
            for q in range(1, sym.d + 1):
                col = domain.index(mu, q)
                for word, s, value in cols[q]:
                    w.add(codomain.index(word, s), col, value)
        elif fock.word_in_n0(mu, sym.n):
            succ = fock.successor(mu, sym.n)
            for q in range(1, sym.d + 1):
                w.add(codomain.index(succ, q), domain.index(mu, q), 1.0)
        else:
            # all-n chain of length m >= 1 restarts: image is e_1^m tensor L h_q
            prefix = (1,) * len(mu)
            for q in range(1, sym.d + 1):
                col = domain.index(mu, q)
                for word, s, value in cols[q]:
                    w.add(codomain.index(prefix + word, s), col, value)
    return w


def build_wl_adjoint(sym: Symbol, depth: int, cap: int | None = None) -> FockOperator:
    """Adjoint of the odometer action from its closed form, square at depth.

    Column for (gamma, l): the inverse carry sends gamma to its
    predecessor when some letter exceeds 1, and the leading-ones prefix
    contributes one all-n chain term e_n^p tensor L*(gamma with p ones
    dropped) for each 0 <= p <= (number of leading ones).

    Assembled without reference to build_wl; the conjugate-transpose
    identity between the two is a verification target, not an input.
    """
    basis = fock.enumerate_basis(sym.n, depth, sym.d, cap=cap)
    # regroup entries for L*(e_word tensor h_s) lookups
    by_word_slot = {}
    for (word, s, q), value in sym.entries.items():
        by_word_slot.setdefault((word, s), []).append((q, np.conj(value)))
    w = FockOperator(basis, basis)
    n = sym.n
    for gamma in basis.words:
        lo = fock.leading_ones(gamma)
        for l in range(1, sym.d + 1):
            col = basis.index(gamma, l)
            if fock.word_in_m0(gamma):
                w.add(basis.index(fock.predecessor(gamma, n), l), col, 1.0)
            for p in range(lo.p + 1):
                dropped = lo.drop(p)
                chain = (n,) * p
                for q, cval in by_word_slot.get((dropped, l), ()):
                    w.add(basis.index(chain, q), col, cval)
    return w


def block(w: FockOperator, row_sel: SubspaceSelector, col_sel: SubspaceSelector) -> FockOperator:
    """Compression of w to selected row and column sectors."""
    rows = SubBasis(w.codomain, row_sel)
    cols = SubBasis(w.domain, col_sel)
    row_map = {pi: i for i, pi in enumerate(rows.parent_indices)}
    col_map = {pj: j for j, pj in enumerate(cols.parent_indices)}
    out = FockOperator(cols, rows)
    for (i, j), v in w.data.items():
        ri = row_map.get(i)
        cj = col_map.get(j)
        if ri is not None and cj is not None:
            out.data[(ri, cj)] = v
    return out


def hardy_transport(v, basis, chain: str = "ones", atol: float = 0.0) -> np.ndarray:
    """Unload a chain-supported coefficient vector into power coefficients.

    The 1-chain and the all-n chain each carry a copy of the vector-valued
    Hardy space: degree p coefficient = the slots of the length-p chain
    word.  Returns an array of shape (depth + 1, d).  Any mass off the
    chain (beyond atol) is an error, the transport is not defined there.
    """
    if chain not in ("ones", "ns"):
        raise ValueError("chain must be 'ones' or 'ns'")
    v = np.asarray(v, dtype=complex).ravel()
    if v.size != basis.size:
        raise ValueError("vector length %d != basis size %d" % (v.size, basis.size))
    d = basis.d
    out = np.zeros((basis.depth + 1, d), dtype=complex)
    letter = 1 if chain == "ones" else basis.n
    for i in range(basis.size):
        word, s = basis.pair(i)
        if v[i] == 0:
            continue
        if all(a == letter for a in word):
            out[len(word), s - 1] = v[i]
        elif abs(v[i]) > atol:
            raise OffChainSupport(
                "component %g on word %r is off the %s chain" % (abs(v[i]), word, chain)
            )
    return out


def hardy_block_matrix(wblock: FockOperator) -> np.ndarray:
    """Dense power-basis matrix of a chain-to-chain block.

    Rows must be a 1-chain sub-basis and columns an all-n chain sub-basis
    (for n = 1 the two chains coincide).  Entry layout is degree-major
    with the slot innermost on both sides.
    """
    rows = wblock.codomain
    cols = wblock.domain
    d = rows.d
    out = np.zeros(((rows.depth + 1) * d, (cols.depth + 1) * d), dtype=complex)
    for (i, j), v in wblock.data.items():
        rword, s = rows.pair(i)
        cword, q = cols.pair(j)
        out[len(rword) * d + s - 1, len(cword) * d + q - 1] = v
    return out


def toeplitz_truncation(theta: MatrixPolynomial, size: int) -> np.ndarray:
    """Lower-triangular block Toeplitz matrix of the analytic symbol.

    Block (i, j) is coefficient i - j for 0 <= i - j <= degree, zero
    elsewhere; shape (size*d, size*d) over degrees 0..size-1.
    """
    if size < 1:
        raise ValueError("size must be positive")
    d = theta.dim
    out = np.zeros((size * d, size * d), dtype=complex)
    for r in range(min(theta.degree, size - 1) + 1):
        c = theta.coefficient(r)
        for i in range(r, size):
            j = i - r
            out[i * d : (i + 1) * d, j * d : (j + 1) * d] = c
    return out


def inclusion(w: FockOperator) -> FockOperator:
    """Canonical inclusion of the domain basis into the codomain basis."""
    data = {(i, i): 1.0 + 0.0j for i in range(w.domain.size)}
    return FockOperator(w.domain, w.codomain, data)


def square_compression(w: FockOperator) -> np.ndarray:
    """Dense square matrix: rows cut back to the domain's index range."""
    n = w.domain.size
    out = np.zeros((n, n), dtype=complex)
    for (i, j), v in w.data.items():
        if i < n:
            out[i, j] = v
    return out


def dump_lines(w: FockOperator, sym: Symbol) -> list:
    """Text dump: header '# n d D Dcod', then 'row col re im' per entry."""
    dcod = getattr(w.codomain, "depth", w.domain.depth)
    lines = ["# %d %d %d %d" % (sym.n, sym.d, w.domain.depth, dcod)]
    for (i, j) in sorted(w.data):
        v = w.data[(i, j)]
        lines.append("%d %d %.17g %.17g" % (i, j, v.real, v.imag))
    return lines
