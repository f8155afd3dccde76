"""5-adic orders and the floor bounds on a, b, t and d."""

from __future__ import annotations

import math
from typing import Iterable, Optional

from .dseq import DSequence
from .report import VerificationReport, timed
from .ubasis import CoeffMatrix

INF = math.inf


def val5(n: int) -> float:
    """Exponent of the largest power of 5 dividing ``n``; ``inf`` for 0."""
    n = abs(int(n))
    if n == 0:
        return INF
    v = 0
    # strip 5**16 at a time first; entries reach hundreds of digits
    while n % 152587890625 == 0:
        n //= 152587890625
        v += 16
    while n % 5 == 0:
        n //= 5
        v += 1
    return v


def bound_a(i: int, j: int) -> int:
    return (5 * j - i - 1) // 6


def bound_b(i: int, j: int) -> int:
    return (5 * j - i + 2) // 6


def bound_t(i: int, j: int, ks: Iterable[int]) -> Optional[int]:
    vals = [bound_a(i, k) + bound_b(k, j) for k in ks]
    return min(vals) if vals else None


def bound_d(alpha: int, j: int) -> int:
    return alpha + (5 * j - 5) // 6


def _check_matrix(report: VerificationReport, M: CoeffMatrix, i_max: int, j_max: int, bound) -> None:
    tight = []
    for i in range(1, i_max + 1):
        slack_min = None
        for j in range(1, j_max + 1):
            b = bound(i, j)
            if b is None:
                continue
            v = val5(M[i, j])
            report.checked += 1
            if v < b:
                report.fail((i, j), {"val": v, "bound": b})
            elif v != INF:
                slack = int(v - b)
                if slack_min is None or slack < slack_min[0]:
                    slack_min = (slack, j)
        if slack_min is not None:
            tight.append([i, slack_min[1], slack_min[0]])
    report.details["min_slack_per_row"] = tight


def check_bound_a(A: CoeffMatrix, i_max: int, j_max: int) -> VerificationReport:
    report = VerificationReport("val5 a(i,j) >= floor((5j-i-1)/6)", {"imax": i_max, "jmax": j_max})
    with timed(report):
        _check_matrix(report, A, i_max, j_max, bound_a)
    return report


def check_bound_b(B: CoeffMatrix, i_max: int, j_max: int) -> VerificationReport:
    report = VerificationReport("val5 b(i,j) >= floor((5j-i+2)/6)", {"imax": i_max, "jmax": j_max})
    with timed(report):
        _check_matrix(report, B, i_max, j_max, bound_b)
    return report


def check_bound_t(T: CoeffMatrix, A: CoeffMatrix, i_max: int, j_max: int) -> VerificationReport:
    """val5 t(i,j) >= min over k in supp a(i, .) of the a- and b-bounds."""
    report = VerificationReport("val5 t(i,j) >= min_k bound", {"imax": i_max, "jmax": j_max})
    with timed(report):
        supports = {i: sorted(A.row(i)) for i in range(1, i_max + 1)}
        _check_matrix(report, T, i_max, j_max, lambda i, j: bound_t(i, j, supports[i]))
    return report


def check_bound_d(ds: Iterable[DSequence], j_max: Optional[int] = None) -> VerificationReport:
    """val5 d_{2a-1}(j) >= a + floor((5j-5)/6) for the supplied odd-index sequences."""
    ds = list(ds)
    report = VerificationReport("val5 d_{2a-1}(j) >= a + floor((5j-5)/6)",
                                {"alphas": [d.alpha for d in ds], "jmax": j_max})
    with timed(report):
        for d in ds:
            if d.alpha % 2 == 0:
                raise ValueError("the d-bound concerns odd indices only")
            a = (d.alpha + 1) // 2
            top = j_max if j_max is not None else (max(d.entries) if d.entries else 0)
            slack_min = None
            for j in range(1, top + 1):
                b = bound_d(a, j)
                v = val5(d[j])
                report.checked += 1
                if v < b:
                    report.fail((d.alpha, j), {"val": v, "bound": b})
                elif v != INF and (slack_min is None or v - b < slack_min[0]):
                    slack_min = (int(v - b), j)
            report.details[f"d{d.alpha}_min_slack"] = slack_min
    return report
