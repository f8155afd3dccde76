"""U5 images of X**i and xi*X**i, their expansion in powers of X, and the
matrices (a_ij), (b_ij), (t_ij).

The reference first five rows of ``a`` and ``b`` list each entry as
``m * 5**e``; :data:`REFERENCE_A` / :data:`REFERENCE_B` hold those codes and
:func:`appendix_rows` decodes them.  :func:`compute_base_rows` recomputes the
same rows from q-expansions, and :func:`extend_row` continues a matrix with
the 15-term recurrence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DecompositionResidual, MissingPriorRows, NonIntegralNewtonStep, PrecisionExceeded
from .etaq import X, XI, expand
from .series import LaurentSeries, U5

Row = Dict[int, int]

#: Upper bound on base-series terms any single expansion may use.
PRECISION_BUDGET = 200_000

#: Default precision for decompositions (comfortably above 10*maxJ + 50 for rows <= 7).
DEFAULT_PREC = 400


@dataclass(frozen=True)
class WCoded:
    """A matrix entry printed as ``sign * m * 5**e``."""

    e: int
    m: int
    sign: int = 1

    def decode(self) -> int:
        return self.sign * self.m * 5 ** self.e


# (sign, e, m) per entry; an all-zero triple is a literal 0.
REFERENCE_A: Tuple[Tuple[Tuple[int, int, int], ...], ...] = (
    ((1, 0, 11), (-1, 1, 12), (1, 2, 7), (-1, 3, 2), (1, 3, 1)),
    ((-1, 0, 24), (1, 2, 27), (-1, 2, 268), (1, 2, 1492), (-1, 4, 212), (1, 4, 507), (-1, 5, 164),
     (1, 6, 34), (-1, 7, 4), (1, 7, 1)),
    ((1, 0, 21), (-1, 1, 402), (1, 1, 9973), (-1, 3, 4926), (1, 3, 37953), (-1, 4, 40482), (1, 6, 6318),
     (-1, 6, 18564), (1, 6, 41548), (-1, 8, 2826), (1, 8, 3588), (-1, 9, 656), (1, 10, 81), (-1, 11, 6),
     (1, 11, 1)),
    ((-1, 0, 8), (1, 0, 2984), (-1, 2, 6568), (1, 2, 155979), (-1, 3, 433696), (1, 4, 812908),
     (-1, 5, 1110256), (1, 5, 5790676), (-1, 7, 950272), (1, 7, 3122868), (-1, 8, 1660784),
     (1, 11, 28687), (-1, 10, 250848), (1, 10, 352244), (-1, 12, 15632), (1, 12, 13354), (-1, 13, 1688),
     (1, 14, 148), (-1, 15, 8), (1, 15, 1)),
    ((1, 0, 1), (-1, 2, 106), (1, 2, 12651), (-1, 3, 108424), (1, 4, 502703), (-1, 5, 1507426),
     (1, 5, 16113147), (-1, 7, 5213554), (1, 7, 33184623), (-1, 9, 6827206), (1, 10, 5779831),
     (-1, 11, 4077512), (1, 10, 60408822), (-1, 12, 6040498), (1, 12, 12754148), (-1, 13, 4540118),
     (1, 15, 271053), (-1, 15, 336256), (1, 15, 342131), (-1, 17, 11204), (1, 17, 7181), (-1, 18, 692),
     (1, 19, 47), (-1, 20, 2), (1, 19, 1)),
)

REFERENCE_B: Tuple[Tuple[Tuple[int, int, int], ...], ...] = (
    ((-1, 1, 4), (1, 1, 61), (-1, 2, 59), (1, 3, 31), (-1, 4, 9), (1, 5, 1)),
    ((1, 0, 24), (-1, 1, 292), (1, 2, 952), (-1, 3, 1531), (1, 4, 1517), (-1, 6, 202), (1, 5, 2331),
     (-1, 6, 744), (1, 7, 156), (-1, 8, 19), (1, 9, 1)),
    ((-1, 0, 9), (1, 1, 541), (-1, 2, 4383), (1, 4, 3064), (-1, 4, 31268), (1, 5, 42767),
     (-1, 5, 210711), (1, 6, 155754), (-1, 7, 88226), (1, 8, 38579), (-1, 9, 12961), (1, 9, 16426),
     (-1, 10, 3029), (1, 11, 381), (-1, 12, 29), (1, 13, 1)),
    ((1, 0, 1), (-1, 1, 537), (1, 2, 10199), (-1, 3, 68823), (1, 4, 250893), (-1, 5, 590573),
     (1, 5, 4938949), (-1, 6, 6215846), (1, 7, 6103534), (-1, 8, 4786201), (1, 8, 15204111),
     (-1, 10, 1577357), (1, 10, 3347006), (-1, 11, 1158111), (1, 12, 323711), (-1, 13, 71907),
     (1, 13, 61846), (-1, 14, 7914), (1, 15, 706), (-1, 16, 39), (1, 17, 1)),
    ((0, 0, 0), (1, 1, 328), (-1, 2, 14692), (1, 3, 182424), (-1, 5, 222312), (1, 5, 4163392),
     (-1, 6, 10783296), (1, 7, 20724763), (-1, 8, 30940669), (1, 7, 925372586), (-1, 9, 181304786),
     (1, 11, 29532188), (-1, 11, 101019396), (1, 11, 292172327), (-1, 12, 143376799),
     (1, 12, 298569727), (-1, 13, 105276189), (1, 14, 31253433), (-1, 15, 7741211), (1, 16, 1578438),
     (-1, 17, 259898), (1, 17, 168091), (-1, 18, 16399), (1, 19, 1131), (-1, 20, 49), (1, 21, 1)),
)

# Taps of the row recurrence: m(i, j) = sum RECURRENCE[lag][s-1] * m(i-lag, j-s).
RECURRENCE: Dict[int, Tuple[int, ...]] = {
    1: (55, -300, 875, -1250, 625),
    2: (-60, 175, -250, 125),
    3: (35, -50, 25),
    4: (-10, 5),
    5: (1,),
}


class CoeffMatrix:
    """Row-finite integer matrix with 1-based rows, each a sparse ``{j: value}``.

    Rows are only ever appended; ``extended`` returns a new matrix.
    """

    def __init__(self, kind: str, rows: Sequence[Row] = ()):
        self.kind = kind
        self._rows: List[Row] = [{j: v for j, v in r.items() if v} for r in rows]

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    def row(self, i: int) -> Row:
        if not 1 <= i <= len(self._rows):
            raise MissingPriorRows(f"row {i} of {self.kind} is not materialized (have {len(self._rows)})")
        return self._rows[i - 1]

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.row(i).get(j, 0)

    def support(self, i: int) -> Tuple[int, int]:
        r = self.row(i)
        return (min(r), max(r)) if r else (0, 0)

    def rows(self) -> List[Row]:
        return [dict(r) for r in self._rows]

    def __eq__(self, other):
        if not isinstance(other, CoeffMatrix):
            return NotImplemented
        return self._rows == other._rows

    def head(self, n: int) -> "CoeffMatrix":
        return CoeffMatrix(self.kind, self._rows[:n])

    def extended(self, i_max: int) -> "CoeffMatrix":
        """Materialize rows up to ``i_max`` using the recurrence."""
        m = CoeffMatrix(self.kind, self._rows)
        if i_max > m.n_rows and m.n_rows < 5:
            raise MissingPriorRows(f"the recurrence needs rows 1-5 of {self.kind} (have {m.n_rows})")
        while m.n_rows < i_max:
            m._rows.append(extend_row(m, m.n_rows + 1))
        return m

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "rows": [{"i": i, "entries": {str(j): str(v) for j, v in sorted(r.items())}}
                     for i, r in enumerate(self._rows, 1)],
        }

    @classmethod
    def from_json(cls, data) -> "CoeffMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        rows = sorted(data["rows"], key=lambda r: r["i"])
        if [r["i"] for r in rows] != list(range(1, len(rows) + 1)):
            raise ValueError("matrix rows must be numbered 1..n without gaps")
        return cls(data["kind"], [{int(j): int(v) for j, v in r["entries"].items()} for r in rows])

    def __repr__(self):
        return f"CoeffMatrix({self.kind!r}, {self.n_rows} rows)"


# ----------------------------------------------------------------------------
# U5 images
# ----------------------------------------------------------------------------


def base_precision(prec: int) -> int:
    """Base-series length needed for a U5 image exact below ``q**prec``."""
    n = 5 * prec + 25
    if n > PRECISION_BUDGET:
        raise PrecisionExceeded(f"U5 to precision {prec} needs {n} base terms (budget {PRECISION_BUDGET})")
    return n


@lru_cache(maxsize=64)
def x_power(i: int, prec: int) -> LaurentSeries:
    """X**i exact below ``q**prec`` (memoised by chaining)."""
    if i == 0:
        return LaurentSeries.one(prec)
    if i == 1:
        return expand(X, prec)
    half = x_power(i // 2, prec)
    sq = half * half
    return sq * expand(X, prec) if i & 1 else sq


def u_of_x_power(i: int, prec: int) -> LaurentSeries:
    """U5(X**i) exact below ``q**prec``."""
    if i < 1:
        raise ValueError("i must be positive")
    n = base_precision(prec)
    return U5(x_power(i, n)).truncate(prec)


def u_of_xi_x_power(i: int, prec: int) -> LaurentSeries:
    """U5(xi * X**i) exact below ``q**prec``."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    n = base_precision(prec)
    return U5(expand(XI, n) * x_power(i, n)).truncate(prec)


# ----------------------------------------------------------------------------
# decomposition in powers of X
# ----------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _y_powers(prec: int, k_max: int) -> Tuple[LaurentSeries, ...]:
    y = expand(X, prec) - 1
    out = [LaurentSeries.one(prec)]
    for _ in range(k_max):
        out.append(out[-1] * y)
    return tuple(out)


def _y_to_x(cy: Sequence[int]) -> Row:
    # sum_k c_k (X - 1)^k  ->  sum_j d_j X^j
    d = {}
    for j in range(len(cy)):
        s = sum(cy[k] * comb(k, j) * (-1) ** (k - j) for k in range(j, len(cy)))
        if s:
            d[j] = s
    return d


def _greedy_y(F: LaurentSeries, prec: int, k_limit: int, stop_early: bool) -> Tuple[List[int], LaurentSeries]:
    if F.min_exp < 0:
        raise ValueError("series to decompose must not have negative exponents")
    if prec > F.prec:
        raise PrecisionExceeded(f"decomposition window {prec} exceeds series precision {F.prec}")
    ys = _y_powers(prec, k_limit)
    residual = F.truncate(prec)
    cy: List[int] = []
    for k in range(k_limit + 1):
        if stop_early and residual.is_zero():
            break
        r = residual.coefficient_at(k)
        c, rem = divmod(r, 4 ** k)
        if rem:
            raise DecompositionResidual(f"coefficient of q^{k} is {r}, not a multiple of 4^{k}")
        cy.append(c)
        if c:
            residual = residual - ys[k] * c
    return cy, residual


def x_basis_decompose(F: LaurentSeries, max_j: int, prec: Optional[int] = None) -> Row:
    """Coefficients ``c_j`` with ``F = sum_{j=1}^{max_j} c_j X**j`` on ``[0, prec)``.

    Elimination runs in ``Y = X - 1``, whose q-expansion starts ``4q``, and the
    result is converted back to the X basis.  Raises
    :class:`DecompositionResidual` if anything is left over or a constant
    term would be required.
    """
    if max_j < 1:
        raise ValueError("max_j must be at least 1")
    if prec is None:
        prec = F.prec
    if prec <= max_j + 1:
        raise ValueError(f"prec {prec} too small to pin down {max_j} coefficients")
    cy, residual = _greedy_y(F, prec, max_j, stop_early=False)
    if not residual.is_zero():
        raise DecompositionResidual(
            f"residual nonzero at q^{residual.min_exp} after eliminating X^1..X^{max_j}")
    row = _y_to_x(cy)
    if row.get(0, 0):
        raise DecompositionResidual(f"decomposition needs a constant term {row[0]}")
    return row


def find_decomposition(F: LaurentSeries, prec: Optional[int] = None, j_limit: Optional[int] = None) -> Row:
    """Like :func:`x_basis_decompose`, but grows the degree until nothing is left over."""
    if prec is None:
        prec = F.prec
    if j_limit is None:
        j_limit = (prec - 2) // 2
    cy, residual = _greedy_y(F, prec, j_limit, stop_early=True)
    if not residual.is_zero():
        raise DecompositionResidual(f"no decomposition of degree <= {j_limit} on [0, {prec})")
    row = _y_to_x(cy)
    if row.get(0, 0):
        raise DecompositionResidual(f"decomposition needs a constant term {row[0]}")
    return row


# ----------------------------------------------------------------------------
# the matrices
# ----------------------------------------------------------------------------


def appendix_rows() -> Tuple[CoeffMatrix, CoeffMatrix]:
    """Rows 1-5 of ``a`` and ``b`` decoded from their ``m * 5**e`` reference form."""

    def decode(rows):
        return [{j: WCoded(e, m, s).decode() for j, (s, e, m) in enumerate(r, 1) if s} for r in rows]

    return CoeffMatrix("A", decode(REFERENCE_A)), CoeffMatrix("B", decode(REFERENCE_B))


def compute_base_rows(prec: int = DEFAULT_PREC) -> Tuple[CoeffMatrix, CoeffMatrix]:
    """Rows 1-5 of ``a`` and ``b`` recomputed from the q-expansions."""
    a_rows = [find_decomposition(u_of_x_power(i, prec)) for i in range(1, 6)]
    b_rows = [find_decomposition(u_of_xi_x_power(i, prec)) for i in range(1, 6)]
    return CoeffMatrix("A", a_rows), CoeffMatrix("B", b_rows)


def extend_row(M: CoeffMatrix, i: int) -> Row:
    """Row ``i >= 6`` of ``M`` from rows ``i-5 .. i-1`` via the recurrence."""
    if i < 6:
        raise ValueError("the recurrence applies from row 6 on")
    out: Row = {}
    for lag, taps in RECURRENCE.items():
        prev = M.row(i - lag)
        for j, v in prev.items():
            for s, c in enumerate(taps, 1):
                out[j + s] = out.get(j + s, 0) + c * v
    return {j: v for j, v in sorted(out.items()) if v}


def t_matrix(A: CoeffMatrix, B: CoeffMatrix, i_max: int) -> CoeffMatrix:
    """Rows 1..i_max of ``t_ij = sum_k a_ik b_kj``."""
    rows = []
    for i in range(1, i_max + 1):
        acc: Row = {}
        for k, a in A.row(i).items():
            for j, b in B.row(k).items():
                acc[j] = acc.get(j, 0) + a * b
        rows.append({j: v for j, v in sorted(acc.items()) if v})
    return CoeffMatrix("T", rows)


def newton_sigmas(prec: int = DEFAULT_PREC) -> List[Row]:
    """Elementary symmetric functions sigma_1..sigma_5 as polynomials in X.

    Power sums are ``p_i = 5 U5(X**i)``; Newton's identities give
    ``k sigma_k = sum_{r<k} (-1)**(r-1) sigma_{k-r} p_r + (-1)**(k-1) p_k``.
    """
    p = [None] + [u_of_x_power(i, prec) * 5 for i in range(1, 6)]
    sigma: List[LaurentSeries] = [LaurentSeries.one(prec)]
    for k in range(1, 6):
        acc = p[k] * (-1) ** (k - 1)
        for r in range(1, k):
            acc = acc + sigma[k - r] * p[r] * (-1) ** (r - 1)
        quotient = []
        for c in acc.coeffs:
            q, rem = divmod(c, k)
            if rem:
                raise NonIntegralNewtonStep(f"sigma_{k}: coefficient {c} is not divisible by {k}")
            quotient.append(q)
        sigma.append(LaurentSeries(quotient, acc.min_exp, acc.prec))
    return [find_decomposition(s) for s in sigma[1:]]


def recurrence_from_sigmas(sigmas: Sequence[Row]) -> Dict[int, Tuple[int, ...]]:
    """Recurrence taps implied by sigma polynomials: lag t uses (-1)**(t+1) sigma_t."""
    out = {}
    for t, row in enumerate(sigmas, 1):
        top = max(row)
        out[t] = tuple((-1) ** (t + 1) * row.get(s, 0) for s in range(1, top + 1))
    return out
