"""Congruence sweeps for s(n) and g(n) modulo powers of 5, and the theta
identities behind the mod-125 and mod-625 families.

Sweeps read tables reduced mod ``5**(e + GUARD_DIGITS)`` and test for
divisibility by ``5**e``; a handful of indices per claim are re-checked
against exact tables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import PrecisionBudgetExceeded
from .etaq import X, expand, phi_neg, triple_product_m
from .partitions import CountTable, g_series, s_series
from .report import VerificationReport, timed

GUARD_DIGITS = 2
SPOT_CHECKS = 10
# exact tables are only built this far for spot checks
EXACT_LIMIT = {"S": 30_000, "G": 80_000}
TABLE_BUDGET = {"S": 400_000, "G": 2_000_000}


@dataclass(frozen=True)
class CongruenceClaim:
    """``target(stride * n + offset) = 0 (mod 5**modulus_exp)`` for 0 <= n <= n_max."""

    target: str
    modulus_exp: int
    stride: int
    offset: int
    n_max: int

    def __post_init__(self):
        if self.target not in ("S", "G"):
            raise ValueError("target must be 'S' or 'G'")
        if self.modulus_exp < 1 or self.stride < 1 or self.offset < 0 or self.n_max < 0:
            raise ValueError(f"malformed claim {self}")

    @property
    def label(self) -> str:
        return f"{self.target.lower()}({self.stride}n+{self.offset}) = 0 mod 5^{self.modulus_exp}"

    @property
    def top(self) -> int:
        return self.stride * self.n_max + self.offset

    def indices(self) -> range:
        return range(self.offset, self.top + 1, self.stride)


class Tables:
    """Counting tables computed once and shared read-only between claims.

    A cached table mod ``M`` (or exact) serves any request mod ``m`` dividing ``M``.
    """

    def __init__(self):
        self._cache: Dict[Tuple[str, Optional[int]], CountTable] = {}

    def get(self, kind: str, up_to: int, modulus: Optional[int]) -> CountTable:
        if up_to > TABLE_BUDGET[kind]:
            raise PrecisionBudgetExceeded(f"{kind} table to {up_to} exceeds budget {TABLE_BUDGET[kind]}")
        for (k, m), table in self._cache.items():
            if k == kind and table.up_to >= up_to and (m is None or (modulus is not None and m % modulus == 0)):
                return table
        build = s_series if kind == "S" else g_series
        table = build(up_to, modulus)
        self._cache[(kind, modulus)] = table
        return table

    def prepare(self, claims: Iterable[CongruenceClaim], modulus: Optional[int] = None) -> None:
        """Build one table per target large enough for every claim."""
        claims = list(claims)
        for kind in ("S", "G"):
            mine = [c for c in claims if c.target == kind]
            if mine:
                m = modulus or 5 ** (max(c.modulus_exp for c in mine) + GUARD_DIGITS)
                self.get(kind, max(c.top for c in mine), m)


_default_tables = Tables()


def verify_claim(claim: CongruenceClaim, tables: Optional[Tables] = None, spot_checks: int = SPOT_CHECKS,
                 seed: int = 0) -> VerificationReport:
    tables = tables or _default_tables
    modulus = 5 ** claim.modulus_exp
    work = 5 ** (claim.modulus_exp + GUARD_DIGITS)
    report = VerificationReport(claim.label, {
        "target": claim.target, "mod": f"5^{claim.modulus_exp}", "stride": claim.stride,
        "offset": claim.offset, "nmax": claim.n_max,
    })
    with timed(report):
        table = tables.get(claim.target, claim.top, work)
        for n, idx in enumerate(claim.indices()):
            report.checked += 1
            v = table[idx] % work
            if v % modulus:
                report.fail(n, v)
        # exactness audit on a few indices
        limit = EXACT_LIMIT[claim.target]
        pool = [n for n, idx in enumerate(claim.indices()) if idx <= limit]
        picked = sorted(random.Random(seed).sample(pool, min(spot_checks, len(pool))))
        if picked:
            exact = tables.get(claim.target, max(claim.offset + claim.stride * n for n in picked), None)
            for n in picked:
                idx = claim.stride * n + claim.offset
                if exact[idx] % work != table[idx] % work or exact[idx] % modulus:
                    report.fail(("exact", n), exact[idx])
        report.details["spot_checked"] = picked
    return report


def main_theorem_reduction(alpha: int, n_max: int, tables: Optional[Tables] = None) -> VerificationReport:
    """s(2*5^(2a-1) m + 5^(2a-1)) = 0 (mod 5^a), split by m mod 3.

    m = 3n and m = 3n+1 land on indices = 2, 0 (mod 3) where s vanishes
    exactly; m = 3n+2 gives s(6*5^(2a-1) n + 5^(2a)) = g(5^(2a-1) n + (5^(2a)-1)/6).
    """
    tables = tables or _default_tables
    p = 5 ** (2 * alpha - 1)
    modulus = 5 ** alpha
    c, r = divmod(5 ** (2 * alpha) - 1, 6)
    assert r == 0
    report = VerificationReport(f"main theorem reduction alpha={alpha}", {"alpha": alpha, "nmax": n_max})
    with timed(report):
        top = 2 * p * (3 * n_max + 2) + p
        s = tables.get("S", top, None)
        g = tables.get("G", p * n_max + c, None)
        for n in range(n_max + 1):
            for branch in (0, 1):
                idx = 2 * p * (3 * n + branch) + p
                report.checked += 1
                if idx % 3 == 1 or s[idx] != 0:
                    report.fail((f"3n+{branch}", n), s[idx])
            idx = 2 * p * (3 * n + 2) + p
            gi = p * n + c
            report.checked += 1
            if idx != 6 * gi + 1 or s[idx] != g[gi] or s[idx] % modulus:
                report.fail(("3n+2", n), [s[idx], g[gi]])
    return report


def _unscaled(prec: int, t: int) -> int:
    # smallest p with (q -> q^t) of a prec-p series still exact below q^prec
    return -(-(prec + t - 1) // t)


def verify_phi_lemmas(prec: int) -> VerificationReport:
    """5-dissection of phi(-q) and 4q M1(-q) M2(-q) = phi(-q^5)^2 - phi(-q)^2."""
    if prec < 10:
        raise ValueError("prec must be at least 10")
    report = VerificationReport("phi(-q) dissection and M1*M2 identity", {"prec": prec})
    with timed(report):
        phi = phi_neg(prec)
        m_prec = _unscaled(prec + 3, 5)
        m1 = triple_product_m(1, m_prec)
        m2 = triple_product_m(2, m_prec)
        rhs = phi_neg(_unscaled(prec, 25)).scale(25) - (m1.scale(5) * 2).shift(1) + (m2.scale(5) * 2).shift(4)
        for e, v in (phi - rhs).terms():
            report.fail(("dissection", e), v)
        lhs2 = (triple_product_m(1, prec) * triple_product_m(2, prec) * 4).shift(1)
        phi5 = phi_neg(_unscaled(prec, 5)).scale(5)
        rhs2 = phi5 * phi5 - phi * phi
        for e, v in (lhs2 - rhs2).terms():
            report.fail(("m1m2", e), v)
        report.checked = min((phi - rhs).prec, (lhs2 - rhs2).prec)
        report.details["windows"] = [(phi - rhs).prec, (lhs2 - rhs2).prec]
    return report


def verify_x_phi_mod5(prec: int) -> VerificationReport:
    """X = phi(-q)^8 (mod 5) coefficientwise."""
    report = VerificationReport("X = phi(-q)^8 mod 5", {"prec": prec})
    with timed(report):
        diff = (expand(X, prec) - phi_neg(prec) ** 8).reduce_mod(5)
        report.checked = diff.prec
        for e, v in diff.terms():
            report.fail(e, v)
    return report


def verify_phi_gaps(prec: int) -> VerificationReport:
    """phi(-q) has no terms at exponents = 2, 3 (mod 5)."""
    report = VerificationReport("phi(-q) vanishes at exponents 2,3 mod 5", {"prec": prec})
    with timed(report):
        phi = phi_neg(prec)
        for r in (2, 3):
            part = phi.extract_progression(r, 5)
            report.checked += part.prec
            for n, v in part.terms():
                report.fail(5 * n + r, v)
    return report


def _family(name: str, claims: List[CongruenceClaim], tables: Optional[Tables]) -> VerificationReport:
    tables = tables or _default_tables
    tables.prepare(claims)
    report = VerificationReport(name, {"claims": [c.label for c in claims]})
    with timed(report):
        for c in claims:
            sub = verify_claim(c, tables)
            report.checked += sub.checked
            report.details[c.label] = sub.status
            for idx, v in sub.witnesses:
                report.fail((c.label, idx), v)
    return report


def family_125(n_max: int) -> List[CongruenceClaim]:
    return [
        CongruenceClaim("G", 3, 625, 229, n_max),
        CongruenceClaim("G", 3, 625, 604, n_max),
        CongruenceClaim("S", 3, 1250, 125, n_max),
        CongruenceClaim("S", 3, 1250, 1125, n_max),
    ]


def family_625(n_max: int) -> List[CongruenceClaim]:
    return [
        CongruenceClaim("G", 4, 15625, 8854, n_max),
        CongruenceClaim("G", 4, 15625, 11979, n_max),
        CongruenceClaim("S", 4, 31250, 9375, n_max),
        CongruenceClaim("S", 4, 31250, 21875, n_max),
    ]


def verify_125_family(n_max: int, tables: Optional[Tables] = None) -> VerificationReport:
    return _family("mod-125 family", family_125(n_max), tables)


def verify_625_family(n_max: int, tables: Optional[Tables] = None) -> VerificationReport:
    return _family("mod-625 family", family_625(n_max), tables)


def check_route_consistency(claim: CongruenceClaim, tables: Optional[Tables] = None) -> VerificationReport:
    """For s-claims, indices = 1 (mod 6) must read the same from s- and g-tables."""
    tables = tables or _default_tables
    work = 5 ** (claim.modulus_exp + GUARD_DIGITS)
    report = VerificationReport(f"s/g route consistency for {claim.label}", {"claim": claim.label})
    with timed(report):
        if claim.target != "S":
            raise ValueError("route consistency applies to s-claims")
        s = tables.get("S", claim.top, work)
        g = tables.get("G", (claim.top - 1) // 6, work)
        for idx in claim.indices():
            if idx % 6 == 1:
                report.checked += 1
                if s[idx] % work != g[(idx - 1) // 6] % work:
                    report.fail(idx, [s[idx] % work, g[(idx - 1) // 6] % work])
    return report
