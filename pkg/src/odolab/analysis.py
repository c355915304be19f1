"""Structural verdicts for an odometer map, computed from its symbol.

Everything here reduces to finite linear algebra over the truncated
basis, with the truncation chosen so the reductions are exact where the
theory says they can be:

* the defect space sits inside the 1-chain sector, and for a depth-D
  ambient the stacked annihilation conditions are complete, so the
  computed space is exactly (true defect) intersect (depth <= D);
* the interior carry block is a permutation, so isometry/unitarity
  reduce to support conditions on the symbol plus the algebraic inner
  test on its analytic side;
* rectangular builds (codomain depth = domain depth + symbol depth)
  never lose image mass, which keeps Coburn floors and norm bounds
  honest lower-side truncations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fock
from .errors import IdenticallySingular, NotIsometric, RangeNotContained
from .numerics import DEFAULT_TOL, Tolerance, least_squares, numerical_rank, operator_norm, orthocomplement_basis
from .operator import (
    FockOperator,
    build_wl,
    build_wl_adjoint,
    inclusion,
    square_compression,
    toeplitz_truncation,
)
from .symbol import (
    DEFAULT_BOUNDARY_GRID,
    Symbol,
    is_inner_exact,
    is_invertible_hinf,
    sup_norm,
)

DEFAULT_COBURN_POINTS = (0.0, 0.3, 0.5 * np.exp(1j * np.pi / 4), 0.9j)


def isometry_deviation(sym: Symbol, tol: Tolerance = DEFAULT_TOL) -> float:
    """Distance from the isometry criterion: interior support mass plus
    the inner defect of the analytic symbol, as a single worst entry."""
    inner = is_inner_exact(sym.theta(), tol)
    return max(sym.m_mass(), inner.deviation)


def _require_isometric(sym: Symbol, tol: Tolerance) -> None:
    dev = isometry_deviation(sym, tol)
    if dev > tol.eps_exact:
        raise NotIsometric("symbol misses the isometry criterion by %.3e" % dev)


# ---------------------------------------------------------------------------
# defect space


@dataclass
class DefectBasis:
    """Defect data inside the 1-chain sector at one truncation depth.

    Columns of el_basis span the orthocomplement of the shifted range
    (shifts p >= 1); columns of defect_basis also quotient out the range
    itself (shifts p >= 0), which is the adjoint kernel in general.
    stacked_kernel_dim recomputes the same dimension from the kernel of
    the stacked annihilation map, an independent numerical route.
    el_minus_range_dim is the literal orthogonal difference, which only
    has to match defect_dim when the map is isometric.
    """

    depth: int
    d: int
    el_basis: np.ndarray
    defect_basis: np.ndarray
    stacked_kernel_dim: int
    el_minus_range_dim: int
    stacked_matrix: np.ndarray = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return self.defect_basis.shape[1]

    @property
    def el_dim(self) -> int:
        return self.el_basis.shape[1]


def _shifted_chain_column(sym: Symbol, p: int, q: int, depth: int) -> np.ndarray:
    # 1-chain part of the p-shifted column of L, truncated at depth
    d = sym.d
    v = np.zeros((depth + 1) * d, dtype=complex)
    for r in range(0, depth - p + 1):
        word = (1,) * r
        for s in range(1, d + 1):
            c = sym.entry(word, s, q)
            if c != 0:
                v[(p + r) * d + (s - 1)] = c
    return v


def defect(sym: Symbol, depth: int, tol: Tolerance = DEFAULT_TOL) -> DefectBasis:
    """Two-route defect computation inside the depth-truncated 1-chain sector.

    Route one: orthocomplement of the shifted columns.  Route two: kernel
    of the stacked map f -> (L* applied to every backward shift of f).
    Both are exact reductions of the infinite-space conditions at this
    depth; they are compared by the caller or by wold_multiplicity.
    """
    d = sym.d
    ambient = (depth + 1) * d
    shifts_pos = [
        _shifted_chain_column(sym, p, q, depth)
        for p in range(1, depth + 1)
        for q in range(1, d + 1)
    ]
    range_cols = [_shifted_chain_column(sym, 0, q, depth) for q in range(1, d + 1)]
    el_basis = orthocomplement_basis(shifts_pos, ambient, tol)
    defect_basis = orthocomplement_basis(shifts_pos + range_cols, ambient, tol)

    # stacked annihilation map: row block p holds L* after p backward shifts
    stacked = np.zeros(((depth + 1) * d, ambient), dtype=complex)
    for p in range(depth + 1):
        for m in range(p, depth + 1):
            for s in range(1, d + 1):
                for q in range(1, d + 1):
                    c = sym.entry((1,) * (m - p), s, q)
                    if c != 0:
                        stacked[p * d + (q - 1), m * d + (s - 1)] = np.conj(c)
    stacked_kernel_dim = ambient - numerical_rank(stacked, tol)

    # literal E_L minus closure(L E): project the range onto E_L first
    if el_basis.shape[1] and range_cols:
        proj = el_basis.conj().T @ np.column_stack(range_cols)
        el_minus_range = el_basis.shape[1] - numerical_rank(proj, tol)
    else:
        el_minus_range = el_basis.shape[1]

    return DefectBasis(
        depth=depth,
        d=d,
        el_basis=el_basis,
        defect_basis=defect_basis,
        stacked_kernel_dim=stacked_kernel_dim,
        el_minus_range_dim=el_minus_range,
        stacked_matrix=stacked,
    )


def defect_with_stability(sym: Symbol, depth: int, tol: Tolerance = DEFAULT_TOL):
    """Defect at the requested depth plus the one-step stability flag."""
    if depth < 1:
        raise ValueError("stability heuristic needs depth >= 1")
    here = defect(sym, depth, tol)
    below = defect(sym, depth - 1, tol)
    return here, here.dim == below.dim, below.dim


def fredholm_index(sym: Symbol, depth: int, tol: Tolerance = DEFAULT_TOL):
    """Index of the isometric odometer map, or None when the defect has
    not stabilized at this depth (the map is then not certified Fredholm).
    """
    _require_isometric(sym, tol)
    here, stable, _ = defect_with_stability(sym, depth, tol)
    if not stable:
        return None
    return -here.dim


def wold_multiplicity(sym: Symbol, depth: int, tol: Tolerance = DEFAULT_TOL):
    """(shift multiplicity of the map, shift multiplicity of its analytic
    symbol), each from its own side of the unitary equivalence.

    The symbol side counts low-degree kernel vectors of the transposed
    Toeplitz truncation; the degree cut depth - K leaves a buffer of K
    degrees so the count is an exact reduction, not a heuristic.
    """
    _require_isometric(sym, tol)
    if depth < sym.K:
        raise ValueError("depth %d below symbol depth %d" % (depth, sym.K))
    here, stable, below = defect_with_stability(sym, depth, tol)
    if not stable:
        from .errors import DefectUnstable

        raise DefectUnstable(
            "defect dimension moved %d -> %d between depths" % (below, here.dim)
        )
    mult_wl = here.dim

    t = toeplitz_truncation(sym.theta(), depth + 1)
    keep_cols = (depth - sym.K + 1) * sym.d
    a = t.conj().T[:, :keep_cols]
    mult_mtheta = keep_cols - numerical_rank(a, tol)
    return mult_wl, mult_mtheta


# ---------------------------------------------------------------------------
# norms


@dataclass
class NormReport:
    depth: int
    sigma_max: float
    bracket_lower: float
    bracket_upper: float
    formula_value: float | None
    applicable: bool
    sigma_l: float

    def to_dict(self):
        return {
            "depth": self.depth,
            "sigma_max": self.sigma_max,
            "bracket_lower": self.bracket_lower,
            "bracket_upper": self.bracket_upper,
            "formula_value": self.formula_value,
            "applicable": self.applicable,
            "sigma_l": self.sigma_l,
        }


def norm_report(
    sym: Symbol,
    depth: int,
    grid: int = DEFAULT_BOUNDARY_GRID,
    tol: Tolerance = DEFAULT_TOL,
) -> NormReport:
    """Truncated operator norm next to the closed-form value.

    The closed form max(1, boundary sup of the symbol) applies when the
    symbol has no interior support; otherwise formula_value is None and
    only the truncated sigma_max and the symbol bracket are reported.
    """
    w = build_wl(sym, depth)
    sigma = w.sigma_max()
    lo, hi = sup_norm(sym.theta(), grid)
    applicable = sym.m_mass() <= tol.eps_exact
    formula = max(1.0, hi) if applicable else None
    sigma_l = operator_norm(sym.matrix())
    return NormReport(
        depth=depth,
        sigma_max=sigma,
        bracket_lower=lo,
        bracket_upper=hi,
        formula_value=formula,
        applicable=applicable,
        sigma_l=sigma_l,
    )


# ---------------------------------------------------------------------------
# Douglas factorization


@dataclass
class DouglasResult:
    factor: np.ndarray
    residual: float
    wl_gap: float
    theta_gap: float | None

    def to_dict(self):
        return {
            "factor_re": self.factor.real.tolist(),
            "factor_im": self.factor.imag.tolist(),
            "residual": self.residual,
            "wl_gap": self.wl_gap,
            "theta_gap": self.theta_gap,
        }


def _gamma_operator(c: np.ndarray, basis: fock.BasisIndex) -> FockOperator:
    # identity on the interior, C on every all-n chain level
    d = basis.d
    g = FockOperator(basis, basis)
    for word in basis.words:
        if fock.is_ns_chain(word, basis.n):
            for q in range(1, d + 1):
                col = basis.index(word, q)
                for s in range(1, d + 1):
                    g.add(basis.index(word, s), col, c[s - 1, q - 1])
        else:
            for q in range(1, d + 1):
                g.add(basis.index(word, q), basis.index(word, q), 1.0)
    return g


def douglas_factor(
    l1: Symbol,
    l2: Symbol,
    depth: int,
    tol: Tolerance = DEFAULT_TOL,
    grid: int = 128,
) -> DouglasResult:
    """Solve L1 = L2 C and verify the induced factorization of the maps.

    Raises RangeNotContained when the least-squares residual exceeds
    eps_rank, the range condition is the whole content of the
    factorization.  When it holds, W_{L1} = W_{L2} Gamma_C entrywise,
    with Gamma_C acting as C level by level on the all-n chain and as
    the identity elsewhere; that product identity is verified on the
    truncation, along with the symbol-side identity Theta_1 = Theta_2 C
    on a boundary grid when both symbols live on the 1-chain sector.
    """
    if l1.n != l2.n or l1.d != l2.d:
        raise ValueError("symbols must share alphabet and slot count")
    k = max(l1.K, l2.K)
    basis = fock.enumerate_basis(l1.n, k, l1.d)
    b = l2.as_matrix(basis)
    a = l1.as_matrix(basis)
    c, residual = least_squares(b, a)
    if residual > tol.eps_rank:
        raise RangeNotContained(
            "range condition fails, residual %.3e > %.1e" % (residual, tol.eps_rank),
            residual=residual,
        )
    w1 = build_wl(l1, depth, codomain_depth=depth + k)
    w2 = build_wl(l2, depth, codomain_depth=depth + k)
    gamma = _gamma_operator(c, w1.domain)
    wl_gap = w1.max_abs_diff(w2 @ gamma)

    theta_gap = None
    if l1.m_mass() <= tol.eps_exact and l2.m_mass() <= tol.eps_exact:
        t1, t2 = l1.theta(), l2.theta()
        worst = 0.0
        for j in range(grid):
            z = np.exp(2j * np.pi * j / grid)
            worst = max(worst, float(np.max(np.abs(t1(z) - t2(z) @ c))))
        theta_gap = worst
    return DouglasResult(factor=c, residual=residual, wl_gap=wl_gap, theta_gap=theta_gap)


# ---------------------------------------------------------------------------
# Coburn floor and hyponormality


@dataclass
class CoburnPoint:
    lam: complex
    sigma_min: float
    floor: float


def coburn_bound(
    sym: Symbol,
    depth: int,
    lambdas=DEFAULT_COBURN_POINTS,
    tol: Tolerance = DEFAULT_TOL,
) -> list:
    """Smallest singular value of (W - lambda I) against the floor 1 - |lambda|.

    Only meaningful for isometric symbols, where the rectangular build is
    the exact restriction of the infinite map and the floor holds for
    every |lambda| < 1: an isometry cannot pull a unit vector closer to
    lambda times itself than the triangle inequality allows.
    """
    _require_isometric(sym, tol)
    w = build_wl(sym, depth)
    dense = w.toarray()
    inc = inclusion(w).toarray()
    out = []
    for lam in lambdas:
        lam = complex(lam)
        s = np.linalg.svd(dense - lam * inc, compute_uv=False)
        out.append(CoburnPoint(lam=lam, sigma_min=float(s[-1]), floor=1.0 - abs(lam)))
    return out


@dataclass
class HypoProbe:
    necessary_condition: bool
    sigma_min_l: float
    witness_word: tuple | None
    witness_slot: int | None
    witness_gap: float

    def to_dict(self):
        return {
            "necessary_condition": self.necessary_condition,
            "sigma_min_l": self.sigma_min_l,
            "witness_word": list(self.witness_word) if self.witness_word is not None else None,
            "witness_slot": self.witness_slot,
            "witness_gap": self.witness_gap,
        }


def hyponormality_probe(sym: Symbol, depth: int, tol: Tolerance = DEFAULT_TOL) -> HypoProbe:
    """Necessary expansivity condition plus a basis-vector witness search.

    Hyponormality forces ||L eta|| >= ||eta|| once n >= 2, so
    sigma_min(L) < 1 already refutes it.  The witness search maximizes
    ||W* x||^2 - ||W x||^2 over canonical basis vectors x; both norms are
    exact at this truncation (images of depth-m vectors stay within
    depth m plus symbol depth, adjoint images within depth m).
    """
    if sym.n < 2:
        raise ValueError("the expansivity obstruction needs n >= 2")
    mat = sym.matrix()
    s = np.linalg.svd(mat, compute_uv=False)
    sigma_min_l = float(s[-1]) if s.size else 0.0
    necessary = sigma_min_l >= 1.0 - tol.eps_exact

    w = build_wl(sym, depth)
    star = build_wl_adjoint(sym, depth)
    fwd = w.column_norms()
    back = star.column_norms()
    gaps = back**2 - fwd**2
    j = int(np.argmax(gaps))
    word, slot = w.domain.pair(j)
    return HypoProbe(
        necessary_condition=necessary,
        sigma_min_l=sigma_min_l,
        witness_word=word,
        witness_slot=slot,
        witness_gap=float(gaps[j]),
    )


def self_commutator_gap(sym: Symbol, depth: int) -> float:
    """Largest eigenvalue of (W*W - WW*) on the square compression.

    Slow corroboration for the witness search; boundary truncation makes
    this a heuristic, not a certificate.
    """
    a = square_compression(build_wl(sym, depth))
    comm = a.conj().T @ a - a @ a.conj().T
    return float(np.max(np.linalg.eigvalsh(comm)))


def defect_projection_rank(sym: Symbol, depth: int, tol: Tolerance = DEFAULT_TOL) -> int:
    """Rank of I - W W* compressed to the domain window.

    For an isometric symbol with a stabilized defect this is the defect
    dimension again (the compression of the defect projection), computed
    here from the forward build alone.
    """
    w = build_wl(sym, depth)
    size = w.domain.size
    rows = np.zeros((size, w.domain.size), dtype=complex)
    for (i, j), v in w.data.items():
        if i < size:
            rows[i, j] = v
    p = np.eye(size) - rows @ rows.conj().T
    return numerical_rank(p, tol)


# ---------------------------------------------------------------------------
# aggregate classification


@dataclass
class ClassificationReport:
    n: int
    d: int
    k: int
    depth: int
    isometric: bool
    isometry_dev: float
    unitary: bool
    unitary_dev: float
    invertible: bool | None
    invertible_checked: bool
    sigma_min_square: dict | None
    defect_dim: int | None
    defect_stable: bool | None
    el_dim: int
    kernel_dim: int
    el_minus_range_dim: int
    fredholm: int | None
    mult_wl: int | None
    mult_mtheta: int | None
    norm: NormReport
    hypo_necessary: bool | None
    hypo_gap: float | None
    criteria: dict

    def to_dict(self):
        out = {
            "n": self.n,
            "d": self.d,
            "K": self.k,
            "depth": self.depth,
            "isometric": self.isometric,
            "isometry_dev": self.isometry_dev,
            "unitary": self.unitary,
            "unitary_dev": self.unitary_dev,
            "invertible": self.invertible,
            "invertible_checked": self.invertible_checked,
            "sigma_min_square": self.sigma_min_square,
            "defect_dim": self.defect_dim,
            "defect_stable": self.defect_stable,
            "el_dim": self.el_dim,
            "kernel_dim": self.kernel_dim,
            "el_minus_range_dim": self.el_minus_range_dim,
            "fredholm_index": self.fredholm,
            "mult_wl": self.mult_wl,
            "mult_mtheta": self.mult_mtheta,
            "norm": self.norm.to_dict(),
            "hypo_necessary": self.hypo_necessary,
            "hypo_gap": self.hypo_gap,
            "criteria": self.criteria,
        }
        return out


def classify(
    sym: Symbol,
    depth: int,
    tol: Tolerance = DEFAULT_TOL,
    grid: int = DEFAULT_BOUNDARY_GRID,
    invertibility: bool = True,
) -> ClassificationReport:
    """Full structural report at one truncation depth.

    Certificate refusals from the invertibility test (boundary zeros of
    det) propagate; pass invertibility=False to skip that part.  Each
    verdict is tagged with the criterion it instantiates.
    """
    inner = is_inner_exact(sym.theta(), tol)
    m_mass = sym.m_mass()
    iso_dev = max(m_mass, inner.deviation)
    isometric = iso_dev <= tol.eps_exact

    off_vacuum = 0.0
    for (word, _, _), value in sym.entries.items():
        if len(word) >= 1:
            off_vacuum = max(off_vacuum, abs(value))
    l0 = sym.coefficient_operator(0)
    eye = np.eye(sym.d)
    unitary_dev = max(
        off_vacuum,
        float(np.max(np.abs(l0.conj().T @ l0 - eye))),
        float(np.max(np.abs(l0 @ l0.conj().T - eye))),
    )
    unitary = unitary_dev <= tol.eps_exact

    invertible = None
    sigma_min_square = None
    if invertibility:
        try:
            invertible = is_invertible_hinf(sym.theta(), grid)
        except IdenticallySingular:
            invertible = False
        if sym.d * fock.word_count(sym.n, depth) <= 1600:
            vals = {}
            for dd in (depth - 1, depth):
                if dd >= 0:
                    sq = square_compression(build_wl(sym, dd))
                    s = np.linalg.svd(sq, compute_uv=False)
                    vals[dd] = float(s[-1]) if s.size else 0.0
            sigma_min_square = vals

    basis_defect, stable, _ = defect_with_stability(sym, max(depth, 1), tol)
    defect_dim = basis_defect.dim if isometric else None
    fredholm = None
    mult_wl = None
    mult_mtheta = None
    if isometric and stable:
        fredholm = -basis_defect.dim
        if depth >= sym.K:
            mult_wl, mult_mtheta = wold_multiplicity(sym, depth, tol)

    norm = norm_report(sym, depth, grid, tol)

    hypo_necessary = None
    hypo_gap = None
    if sym.n >= 2:
        probe = hyponormality_probe(sym, min(depth, 4), tol)
        hypo_necessary = probe.necessary_condition
        hypo_gap = probe.witness_gap

    criteria = {
        "isometric": "interior-support-free + inner-symbol",
        "unitary": "vacuum-supported + unitary-constant-block",
        "invertible": "det-winding-zero + boundary-margin",
        "fredholm_index": "minus-defect-dimension",
        "wold": "defect-dim vs analytic-kernel-dim",
        "norm": "max(1, symbol-boundary-sup) when interior-support-free",
    }

    return ClassificationReport(
        n=sym.n,
        d=sym.d,
        k=sym.K,
        depth=depth,
        isometric=isometric,
        isometry_dev=iso_dev,
        unitary=unitary,
        unitary_dev=unitary_dev,
        invertible=invertible,
        invertible_checked=invertibility,
        sigma_min_square=sigma_min_square,
        defect_dim=defect_dim,
        defect_stable=stable,
        el_dim=basis_defect.el_dim,
        kernel_dim=basis_defect.stacked_kernel_dim,
        el_minus_range_dim=basis_defect.el_minus_range_dim,
        fredholm=fredholm,
        mult_wl=mult_wl,
        mult_mtheta=mult_mtheta,
        norm=norm,
        hypo_necessary=hypo_necessary,
        hypo_gap=hypo_gap,
        criteria=criteria,
    )
