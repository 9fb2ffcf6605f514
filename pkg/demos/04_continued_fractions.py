"""
Three more routes to the same series
====================================

The bounded-height ascent series as a continued fraction, as a ratio of
determinant polynomials, and (unbounded) as a radical closed form.  All
agree with the network computation coefficient for coefficient.
"""
from gjcluster import contfrac as cf
from gjcluster import paths as P

N = 12
for m in range(1, 6):
    net = P.gf_statistic("asc", m, N)
    frac = cf.cf_eval(cf.stat_cf("asc", m, N))
    ratio = cf.bounded_ratio("asc", m, N)
    print(f"m={m}: continued fraction {frac == net}, ratio {ratio == net}")

closed = cf.closed_form("asc", N)
print("closed form equals height-7 network:", closed == P.gf_statistic("asc", 7, N))
print("[x^9] =", closed.coeff(9))

for name in ("one-ascent", "one-plateau", "two-plateaus"):
    print(name, [cf.corollary_check(name, n) for n in range(3, 10)])

# the one-peak binomial sum does not match the table; shown for the record
print("one-peak", [cf.corollary_check("one-peak", n) for n in range(2, 8)])
