"""
Counting 1-shell TSPPs modulo powers of 5
=========================================

s(n) counts one kind of totally symmetric plane partition; g(n) is its
subsequence s(6n+1).  Long sweeps run on tables reduced mod 5**(k+2).
"""

from tspp5.congr import CongruenceClaim, Tables, main_theorem_reduction, verify_claim
from tspp5.partitions import check_fg, check_mod3_vanishing, g_series, s_series
from tspp5.report import summary_table

s = s_series(40)
print("s(0..40) =", s.values)
print("g(0..6)  =", g_series(6).values)

# s vanishes off n = 1 (mod 3), and s(6n+1) = g(n)
big = s_series(3000)
print(check_mod3_vanishing(3000, big).status, check_fg(3000, s_table=big).status)

# one shared table per target serves every claim below
tables = Tables()
claims = [
    CongruenceClaim("S", 1, 10, 5, 500),
    CongruenceClaim("S", 2, 250, 125, 100),
    CongruenceClaim("G", 3, 625, 229, 20),
    CongruenceClaim("G", 3, 3125, 2604, 10),
]
tables.prepare(claims)
reports = [verify_claim(c, tables) for c in claims]
reports.append(main_theorem_reduction(1, 200, tables))
print(summary_table(reports))

# a false claim comes back with the offending indices
bad = verify_claim(CongruenceClaim("S", 1, 10, 1, 5), tables)
print(bad.status, bad.witnesses)
