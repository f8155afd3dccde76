"""The tower D_1 = U5(xi), D_{2k} = U5(D_{2k-1}), D_{2k+1} = U5(xi D_{2k}) and
its coordinates d_alpha in the basis X, X**2, ...

Two independent routes are provided: :func:`d_series_direct` builds D_alpha
from q-expansions alone, while :func:`d_sequence` runs the matrix recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .errors import PrecisionBudgetExceeded
from .etaq import XI, EtaQuotientSpec, expand
from .partitions import g_series
from .report import VerificationReport, timed
from .series import LaurentSeries, U5
from .ubasis import CoeffMatrix, appendix_rows, t_matrix, x_power

#: Largest base expansion d_series_direct may request.
PRECISION_BUDGET = 400_000
MAX_ALPHA = 5


@dataclass(frozen=True)
class DSequence:
    alpha: int
    entries: Dict[int, int] = field(default_factory=dict)

    def __getitem__(self, j: int) -> int:
        return self.entries.get(j, 0)

    @property
    def support(self) -> Tuple[int, int]:
        return (min(self.entries), max(self.entries)) if self.entries else (0, 0)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "entries": {str(j): str(v) for j, v in sorted(self.entries.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "DSequence":
        return cls(int(data["alpha"]), {int(j): int(v) for j, v in data["entries"].items()})


D1 = DSequence(1, {1: 5})


def _apply(d: Dict[int, int], M: CoeffMatrix) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for k, dk in d.items():
        for j, m in M.row(k).items():
            out[j] = out.get(j, 0) + m * dk
    return {j: v for j, v in sorted(out.items()) if v}


def d_next(d: DSequence, A: CoeffMatrix, B: CoeffMatrix) -> DSequence:
    """d_{alpha+1}(j) = sum_k M(k, j) d_alpha(k), M = A for even alpha+1 and B for odd."""
    M = A if (d.alpha + 1) % 2 == 0 else B
    return DSequence(d.alpha + 1, _apply(d.entries, M))


def d_via_t(d_prev: DSequence, T: CoeffMatrix) -> DSequence:
    """Two steps at once: d_{alpha+2}(j) = sum_i t(i, j) d_alpha(i), alpha odd."""
    if d_prev.alpha % 2 == 0:
        raise ValueError("the t-matrix step starts from an odd index")
    return DSequence(d_prev.alpha + 2, _apply(d_prev.entries, T))


def matrices_for(alpha: int, A: Optional[CoeffMatrix] = None, B: Optional[CoeffMatrix] = None):
    """A and B extended far enough to run the recurrence up to d_alpha."""
    if A is None or B is None:
        A0, B0 = appendix_rows()
        A = A if A is not None else A0
        B = B if B is not None else B0
    need_a, need_b = 0, 0
    top = 1
    for step in range(2, alpha + 1):
        if step % 2 == 0:
            need_a = max(need_a, top)
            top = 5 * top
        else:
            need_b = max(need_b, top)
            top = 5 * top + 1
    return A.extended(max(need_a, A.n_rows)), B.extended(max(need_b, B.n_rows))


def d_sequence(alpha: int, A: Optional[CoeffMatrix] = None, B: Optional[CoeffMatrix] = None) -> DSequence:
    """d_alpha by repeated :func:`d_next` starting from d_1 = (5, 0, 0, ...)."""
    if alpha < 1:
        raise ValueError("alpha must be positive")
    A, B = matrices_for(alpha, A, B)
    d = D1
    while d.alpha < alpha:
        d = d_next(d, A, B)
    return d


def d_sequence_via_t(alpha: int, A: Optional[CoeffMatrix] = None, B: Optional[CoeffMatrix] = None) -> DSequence:
    """Odd-index d_alpha through the t-matrix."""
    if alpha % 2 == 0:
        raise ValueError("the t-matrix route only yields odd indices")
    A, B = matrices_for(alpha, A, B)
    d = D1
    while d.alpha < alpha:
        top = max(d.entries)
        T = t_matrix(A, B, top)
        d = d_via_t(d, T)
    return d


def required_base(alpha: int, prec: int) -> int:
    """Base precision of xi needed to get D_alpha exact below q**prec."""
    p = prec
    for step in range(alpha, 0, -1):
        # U5 needs 5p inputs; a xi factor costs 4 more exponents
        p = 5 * p + (4 if step % 2 == 1 else 0)
    return p


def _check_budget(alpha: int, prec: int) -> int:
    if not 1 <= alpha <= MAX_ALPHA:
        raise PrecisionBudgetExceeded(f"alpha={alpha} is outside 1..{MAX_ALPHA}")
    base = required_base(alpha, prec)
    if base > PRECISION_BUDGET:
        raise PrecisionBudgetExceeded(f"D_{alpha} to q^{prec} needs {base} base terms (budget {PRECISION_BUDGET})")
    return base


def d_series_direct(alpha: int, prec: int) -> LaurentSeries:
    """D_alpha from q-series alone (U5 and multiplication by xi)."""
    p = _check_budget(alpha, prec)
    D = U5(expand(XI, p))
    for step in range(2, alpha + 1):
        if step % 2 == 0:
            D = U5(D)
        else:
            D = U5(expand(XI, D.prec) * D)
    return D.truncate(prec)


def x_combination(d: DSequence, prec: int) -> LaurentSeries:
    """sum_j d(j) X**j below q**prec."""
    total = LaurentSeries.zero(prec)
    for j, c in d.entries.items():
        total = total + x_power(j, prec) * c
    return total


def verify_thd(alpha: int, prec: int, d: Optional[DSequence] = None) -> VerificationReport:
    """D_alpha (series route) equals sum_j d_alpha(j) X**j (matrix route)."""
    report = VerificationReport("D_alpha = sum d_alpha(j) X^j", {"alpha": alpha, "prec": prec})
    _check_budget(alpha, prec)
    with timed(report):
        if d is None:
            d = d_sequence(alpha)
        lhs = d_series_direct(alpha, prec)
        rhs = x_combination(d, prec)
        diff = lhs - rhs
        report.checked = prec
        for e, c in diff.terms():
            report.fail(e, c)
    return report


def _exact_sixth(alpha: int) -> int:
    q, r = divmod(5 ** (2 * alpha) - 1, 6)
    assert r == 0, "(5^(2a) - 1)/6 must be an integer"
    return q


G_OVER_5 = EtaQuotientSpec(((5, -2), (10, 3)))
G_SPEC = EtaQuotientSpec(((1, -2), (2, 3)))


def verify_thgd(alpha: int, prec: int, parts: str = "both") -> VerificationReport:
    """Subsequences of g against E-quotient multiples of D_{2a-1}, D_{2a}.

    odd:  sum_n g(5^(2a-1) n + c) q^n = E(q^10)^3 / E(q^5)^2 * D_{2a-1}
    even: sum_n g(5^(2a)   n + c) q^n = E(q^2)^3  / E(q)^2   * D_{2a}
    with c = (5^(2a) - 1)/6.
    """
    if parts not in ("both", "odd", "even"):
        raise ValueError("parts must be 'both', 'odd' or 'even'")
    _check_budget(2 * alpha if parts != "odd" else 2 * alpha - 1, prec)
    report = VerificationReport("g-subsequences vs D_alpha", {"alpha": alpha, "prec": prec, "parts": parts})
    with timed(report):
        c = _exact_sixth(alpha)
        checks = []
        if parts in ("both", "odd"):
            checks.append(("odd", 5 ** (2 * alpha - 1), 2 * alpha - 1, G_OVER_5))
        if parts in ("both", "even"):
            checks.append(("even", 5 ** (2 * alpha), 2 * alpha, G_SPEC))
        top = max(stride * (prec - 1) + c for _, stride, _, _ in checks)
        g = g_series(top)
        for label, stride, k, spec in checks:
            lhs = LaurentSeries([g[stride * n + c] for n in range(prec)], 0, prec)
            rhs = expand(spec, prec) * d_series_direct(k, prec)
            diff = lhs - rhs
            report.checked += prec
            report.details[f"{label}_constant"] = lhs.coefficient_at(0)
            for e, v in diff.terms():
                report.fail((label, e), v)
    return report
