"""Independent type A verification engine.

Everything here works with explicit matrices over exact rationals: the
regular element is an integer matrix, coordinate charts are products of
elementary unipotent factors with degree-one jet entries, and smoothness is
decided by the rank of the Jacobian of the chart's defining equations.  No
result from the rest of the package feeds the computation, which is the
point: verdicts can be cross-checked against the combinatorial routes.

A jet is a polynomial truncated above degree one; conjugating the regular
element by the generic chart element in the jet ring yields exactly the
linear parts of the defining equations, which is all the Jacobian needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError
from .hess import HessConfig, config_from_mu, is_admissible
from .roots import Coeffs, RootSystem, negate, root_key
from .weyl import Composition, WeylElement, from_one_line, one_line

DEFAULT_SIZE_BOUND = 6

SMOOTH = "smooth"
SINGULAR = "singular"

CELL_POINT_NOTE = (
    "full rank certifies a smooth point; a rank deficit certifies a singular "
    "point of the local chart model"
)


# -- degree-one jets ---------------------------------------------------------


class Jet:
    """A rational constant plus a rational linear form; products truncate."""

    __slots__ = ("const", "lin")

    def __init__(self, const: Fraction = Fraction(0), lin: Optional[Dict[int, Fraction]] = None):
        self.const = const
        self.lin = {k: c for k, c in (lin or {}).items() if c != 0}

    @staticmethod
    def of(value) -> "Jet":
        if isinstance(value, Jet):
            return value
        return Jet(Fraction(value))

    @staticmethod
    def variable(k: int) -> "Jet":
        return Jet(Fraction(0), {k: Fraction(1)})

    def __add__(self, other) -> "Jet":
        other = Jet.of(other)
        lin = dict(self.lin)
        for k, c in other.lin.items():
            c2 = lin.get(k, Fraction(0)) + c
            if c2:
                lin[k] = c2
            else:
                lin.pop(k, None)
        return Jet(self.const + other.const, lin)

    def __neg__(self) -> "Jet":
        return Jet(-self.const, {k: -c for k, c in self.lin.items()})

    def __sub__(self, other) -> "Jet":
        return self + (-Jet.of(other))

    def __mul__(self, other) -> "Jet":
        other = Jet.of(other)
        lin: Dict[int, Fraction] = {}
        if other.const:
            for k, c in self.lin.items():
                lin[k] = c * other.const
        if self.const:
            for k, c in other.lin.items():
                lin[k] = lin.get(k, Fraction(0)) + self.const * c
        return Jet(self.const * other.const, lin)

    __radd__ = __add__
    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.const == 0 and not self.lin

    def __repr__(self) -> str:
        terms = [str(self.const)] if self.const else []
        terms += [f"{c}*z{k}" for k, c in sorted(self.lin.items())]
        return " + ".join(terms) if terms else "0"


def _jet_matmul(A: List[List[Jet]], B: List[List[Jet]]) -> List[List[Jet]]:
    n = len(A)
    out = [[Jet() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            a = A[i][k]
            if a.is_zero():
                continue
            rowB = B[k]
            rowO = out[i]
            for j in range(n):
                b = rowB[j]
                if not b.is_zero():
                    rowO[j] = rowO[j] + a * b
    return out


def _jet_identity(n: int) -> List[List[Jet]]:
    return [[Jet(Fraction(int(i == j))) for j in range(n)] for i in range(n)]


# -- exact rational matrices -------------------------------------------------

Matrix = List[List[Fraction]]


def _mat(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    return [
        [sum((A[i][k] * B[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def _mat_inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise DomainError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(map(Fraction, row)) for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Column b carries 1 in row perm[b]; conjugation then relabels matrix
    units by the permutation."""
    n = len(perm)
    P = [[Fraction(0)] * n for _ in range(n)]
    for b, v in enumerate(perm):
        P[v - 1][b] = Fraction(1)
    return P


def in_hessenberg_space(M: Sequence[Sequence[Fraction]]) -> bool:
    """Membership in the span of the Borel plus the first subdiagonal."""
    n = len(M)
    return all(M[i][j] == 0 for i in range(n) for j in range(n) if i > j + 1)


# -- the regular element -----------------------------------------------------


@dataclass(frozen=True)
class RegularMatrix:
    """S + N for a composition: S is diagonal and constant exactly on the
    blocks, N has a 1 in position (i, i+1) for every alpha_i inside a block."""

    n: int
    mu: Composition
    diag: Tuple[Fraction, ...]

    @property
    def S(self) -> Matrix:
        return [
            [self.diag[i] if i == j else Fraction(0) for j in range(self.n)]
            for i in range(self.n)
        ]

    @property
    def N(self) -> Matrix:
        J = self.mu.to_J()
        M = [[Fraction(0)] * self.n for _ in range(self.n)]
        for i in J:
            M[i - 1][i] = Fraction(1)
        return M

    @property
    def X(self) -> Matrix:
        return [
            [s + n for s, n in zip(rs, rn)] for rs, rn in zip(self.S, self.N)
        ]


def regular_matrix(mu, s_values: Optional[Sequence] = None) -> RegularMatrix:
    """Default eigenvalues are the centered integers l-1, l-3, ..., 1-l, so a
    two-block composition gets the classical (1, -1) pair."""
    comp = mu if isinstance(mu, Composition) else Composition(tuple(mu))
    ell = comp.length
    if s_values is None:
        values = [Fraction(ell - 1 - 2 * p) for p in range(ell)]
    else:
        values = [Fraction(v) for v in s_values]
        if len(values) != ell or len(set(values)) != ell:
            raise DomainError("need one distinct eigenvalue per block")
    diag: List[Fraction] = []
    for p, part in enumerate(comp.parts):
        diag.extend([values[p]] * part)
    return RegularMatrix(comp.n, comp, tuple(diag))


# -- charts and Jacobians ----------------------------------------------------


def _as_element(w, cfg: HessConfig) -> WeylElement:
    if isinstance(w, WeylElement):
        return w
    return from_one_line(cfg.rs, tuple(w))


def _pair(rs: RootSystem, root: Coeffs) -> Tuple[int, int]:
    from .weyl import _pair_of_root

    return _pair_of_root(rs, root)


def _chart_roots(w: WeylElement, cfg: HessConfig) -> Tuple[List[Coeffs], List[Coeffs]]:
    """Column roots w(Phi^-) and row roots w(Phi^- minus the negative
    simples), both in the package's deterministic root order."""
    rs = cfg.rs
    cols = sorted((w.act(negate(r)) for r in rs.positive_roots), key=root_key)
    simples = {negate(rs.simple_root(i)) for i in range(1, rs.rank + 1)}
    rows = sorted(
        (w.act(negate(r)) for r in rs.positive_roots if negate(r) not in simples),
        key=root_key,
    )
    return cols, rows


@dataclass(frozen=True)
class JacobianResult:
    rows: Tuple[Coeffs, ...]
    cols: Tuple[Coeffs, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]
    rank: int
    verdict: str
    note: str = ""

    @property
    def is_smooth(self) -> bool:
        return self.verdict == SMOOTH

    def entry(self, row_root: Coeffs, col_root: Coeffs) -> Fraction:
        return self.matrix[self.rows.index(row_root)][self.cols.index(col_root)]


def _jacobian_from_conjugation(
    w: WeylElement,
    cfg: HessConfig,
    base: Matrix,
    factor_order: Optional[Sequence[int]] = None,
    note: str = "",
) -> JacobianResult:
    """Conjugate ``base`` by the generic chart element in the jet ring and
    read off the linear parts of the defining equations."""
    rs = cfg.rs
    n = rs.rank + 1
    cols, rows = _chart_roots(w, cfg)
    order = list(range(len(cols))) if factor_order is None else list(factor_order)
    if sorted(order) != list(range(len(cols))):
        raise DomainError("factor order must permute the chart variables")

    u = _jet_identity(n)
    uinv = _jet_identity(n)
    for k in order:
        i, j = _pair(rs, cols[k])
        f = _jet_identity(n)
        f[i - 1][j - 1] = Jet.variable(k)
        u = _jet_matmul(u, f)
        finv = _jet_identity(n)
        finv[i - 1][j - 1] = -Jet.variable(k)
        uinv = _jet_matmul(finv, uinv)

    base_jet = [[Jet(x) for x in row] for row in base]
    M = _jet_matmul(_jet_matmul(uinv, base_jet), u)

    matrix: List[Tuple[Fraction, ...]] = []
    for eta in rows:
        i, j = _pair(rs, eta)
        jet = M[i - 1][j - 1]
        if jet.const != 0:
            raise RuntimeError("defining equation has a nonzero constant term")
        matrix.append(tuple(jet.lin.get(k, Fraction(0)) for k in range(len(cols))))
    rk = rank(matrix)
    verdict = SMOOTH if rk == len(rows) else SINGULAR
    return JacobianResult(tuple(rows), tuple(cols), tuple(matrix), rk, verdict, note)


def jacobian_at_fixed_point(
    w,
    mu,
    s_values: Optional[Sequence] = None,
    size_bound: int = DEFAULT_SIZE_BOUND,
    factor_order: Optional[Sequence[int]] = None,
) -> JacobianResult:
    """Jacobian of the chart equations at the torus-fixed point of w.

    Rows are indexed by the non-simple negative roots moved by w, columns by
    the chart variables; the point is smooth exactly when the matrix has
    full row rank.
    """
    reg = regular_matrix(mu, s_values)
    cfg = config_from_mu(reg.mu)
    if reg.n > size_bound:
        raise DomainError(f"n={reg.n} exceeds the size bound {size_bound}")
    element = _as_element(w, cfg)
    if not is_admissible(element, cfg):
        raise DomainError("the fixed point does not lie in the variety")
    return _jacobian_from_conjugation(element, cfg, reg.X, factor_order)


def linear_terms_closed_form(
    w, mu, s_values: Optional[Sequence] = None, size_bound: int = DEFAULT_SIZE_BOUND
) -> JacobianResult:
    """The same Jacobian assembled entry by entry, with no conjugation.

    The (eta, gamma) entry is the eigenvalue difference eta(S) on the
    diagonal, minus the elementary-matrix structure constant whenever eta
    differs from gamma by a block simple root.  Kept independent of the jet
    pipeline so the two can be compared entrywise.
    """
    reg = regular_matrix(mu, s_values)
    cfg = config_from_mu(reg.mu)
    if reg.n > size_bound:
        raise DomainError(f"n={reg.n} exceeds the size bound {size_bound}")
    element = _as_element(w, cfg)
    if not is_admissible(element, cfg):
        raise DomainError("the fixed point does not lie in the variety")
    rs = cfg.rs
    cols, rows = _chart_roots(element, cfg)
    J = sorted(cfg.J)
    matrix = []
    for eta in rows:
        i, j = _pair(rs, eta)
        row = []
        for k, gamma in enumerate(cols):
            val = Fraction(0)
            if gamma == eta:
                val += reg.diag[i - 1] - reg.diag[j - 1]
            for a in J:
                alpha = rs.simple_root(a)
                if tuple(g + x for g, x in zip(gamma, alpha)) == eta:
                    val -= _structure_constant(rs, gamma, alpha, eta)
            row.append(val)
        matrix.append(tuple(row))
    rk = rank(matrix)
    verdict = SMOOTH if rk == len(rows) else SINGULAR
    return JacobianResult(tuple(rows), tuple(cols), tuple(matrix), rk, verdict)


def _structure_constant(rs: RootSystem, gamma: Coeffs, alpha: Coeffs, eta: Coeffs) -> Fraction:
    """Coefficient of the eta matrix unit in [E_gamma, E_alpha]."""
    a, b = _pair(rs, gamma)
    c, d = _pair(rs, alpha)
    i, j = _pair(rs, eta)
    out = Fraction(0)
    if b == c and (a, d) == (i, j):
        out += 1
    if d == a and (c, b) == (i, j):
        out -= 1
    return out


def admissibility_matrix_check(w, mu) -> bool:
    """Matrix form of the cell-nonemptiness test: conjugate the nilpotent
    part by the permutation and check membership in the Hessenberg space."""
    reg = regular_matrix(mu)
    cfg = config_from_mu(reg.mu)
    element = _as_element(w, cfg)
    P = permutation_matrix(one_line(element))
    conj = _matmul(_matmul(_mat_inverse(P), reg.N), P)
    return in_hessenberg_space(conj)


def jacobian_at_cell_point(
    w, mu, u1: Sequence[Sequence], s_values: Optional[Sequence] = None,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> JacobianResult:
    """Jacobian at the translated point u1.wB of w's cell.

    The chart is recentered by conjugating the regular element by u1 first;
    membership of the translated point in the variety is checked exactly
    before any jet work.
    """
    reg = regular_matrix(mu, s_values)
    cfg = config_from_mu(reg.mu)
    n = reg.n
    if n > size_bound:
        raise DomainError(f"n={n} exceeds the size bound {size_bound}")
    element = _as_element(w, cfg)
    U = _mat(u1)
    if len(U) != n or any(len(row) != n for row in U):
        raise DomainError("u1 has the wrong shape")
    for i in range(n):
        if U[i][i] != 1 or any(U[i][j] != 0 for j in range(i)):
            raise DomainError("u1 must be unipotent upper triangular")
    P = permutation_matrix(one_line(element))
    g = _matmul(U, P)
    moved = _matmul(_matmul(_mat_inverse(g), reg.X), g)
    if not in_hessenberg_space(moved):
        raise DomainError("the translated point does not lie in the variety")
    recentered = _matmul(_matmul(_mat_inverse(U), reg.X), U)
    return _jacobian_from_conjugation(
        element, cfg, recentered, note=CELL_POINT_NOTE
    )
