"""Invariant suites behind ``gjcluster verify``.

Every suite returns a ``SuiteResult``; a failure records the first
counterexample and the suite keeps counting the rest.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import contfrac as cf
from . import paths as P
from .cluster import (
    Alphabet,
    MarkedWord,
    PatternSet,
    enumerate_clusters,
    find_occurrences,
    gj_free_monoid,
    is_cluster,
    length_homomorphism,
    marked_word_gf_brute,
)
from .network import (
    MonoidNetwork,
    avoidance_probability,
    gamma_star,
    gj_network,
    gj_network_weighted,
    validate_network,
)
from .series import TPoly, XSeries

ROUTE_STATS = ("asc", "plt0", "plt1", "plt2", "plt", "pv")


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None
    info: list = field(default_factory=list)

    @property
    def ok(self):
        return self.failed == 0

    def check(self, cond, what):
        if cond:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = what() if callable(what) else what
        return cond

    def expect_equal(self, got, expected, label):
        return self.check(got == expected, lambda: f"{label}: expected {expected!r}, got {got!r}")

    def series_equal(self, got, expected, label):
        """Compare coefficientwise so the report names the first bad ``n``."""
        for n in range(expected.N + 1):
            if got.coeff(n) != expected.coeff(n):
                return self.check(
                    False, f"{label}, n={n}: expected {expected.coeff(n)}, got {got.coeff(n)}"
                )
        return self.check(True, label)


# -- algebra ---------------------------------------------------------------

def suite_algebra(N=12):
    r = SuiteResult("algebra")
    x = XSeries.x(N, 1)
    t = TPoly.var(1, 1)
    samples = [
        1 - x - (x * x).scale(4),
        1 + (x * x).scale(t) - x**3,
        1 - x.scale(Fraction(1, 3)) + (x**4).scale(t * t - 2),
    ]
    for f in samples:
        r.series_equal(f * f.invert(), XSeries.one(N, 1), f"f * f^-1 for {f!r}")
        r.series_equal(f.sqrt() * f.sqrt(), f, f"sqrt(f)^2 for {f!r}")
        r.series_equal((f * x * x).div_exact(x * x), f.truncate(N - 2), f"exact division for {f!r}")
        r.series_equal(f.shift_t(1).shift_t(-1), f, f"t-shift round trip for {f!r}")
    for f, g in product(samples, repeat=2):
        r.series_equal(f * g, g * f, "commutativity")
        r.series_equal((f + g) * f, f * f + g * f, "distributivity")
    return r


# -- cluster engine ----------------------------------------------------------

def _definition_clusters(patterns, max_len, letters):
    """Clusters found by marking every occurrence subset of every word."""
    found = set()
    pats = patterns.words
    for n in range(2, max_len + 1):
        for word in product(letters, repeat=n):
            # some mark must cover the first letter and some mark the last
            if not any(word[: len(b)] == b for b in pats) or not any(word[n - len(b) :] == b for b in pats if len(b) <= n):
                continue
            occ = [(s, u) for u, beta in enumerate(patterns.words) for s in find_occurrences(word, beta)]
            occ.sort(key=lambda m: (m[0], m[0] + len(patterns[m[1]])))
            # a subset covers and straddles less than the full set does
            if not occ or not is_cluster(MarkedWord(word, tuple(occ), patterns)):
                continue
            for mask in range(1, 1 << len(occ)):
                marks = tuple(occ[b] for b in range(len(occ)) if mask >> b & 1)
                mw = MarkedWord(word, marks, patterns)
                if is_cluster(mw):
                    found.add((mw.word, mw.marks))
    return found


def _canonical_pattern_sets(letters, total):
    """Pattern sets up to relabelling of the letters, sum of lengths <= total."""
    words = [w for n in range(2, total + 1) for w in product(letters, repeat=n)]
    seen = set()
    perms = []
    for p in product(range(len(letters)), repeat=len(letters)):
        if len(set(p)) == len(letters):
            perms.append({letters[i]: letters[p[i]] for i in range(len(letters))})

    def canon(ws):
        return min(tuple(sorted(tuple(m[a] for a in w) for w in ws)) for m in perms)

    def grow(chosen, start, used):
        if chosen:
            c = canon(chosen)
            if c not in seen:
                seen.add(c)
                yield c
        for i in range(start, len(words)):
            if used + len(words[i]) > total:
                break  # words are in length order
            yield from grow(chosen + [words[i]], i + 1, used + len(words[i]))

    yield from grow([], 0, 0)


def cluster_ground_truth(letters="abc", total=8, max_len=6):
    """Definition filter vs. chain enumeration over every small pattern set."""
    r = SuiteResult("cluster ground truth")
    letters = tuple(letters)
    for ws in _canonical_pattern_sets(letters, total):
        pats = PatternSet(list(ws))
        used = sorted({a for w in ws for a in w})
        fast = {(c.word, c.marks) for c in enumerate_clusters(pats, max_len)}
        slow = _definition_clusters(pats, max_len, used)
        r.check(fast == slow, lambda: f"patterns {[''.join(w) for w in ws]}: {len(fast)} vs {len(slow)} clusters")
    return r


def suite_cluster(N=8):
    r = SuiteResult("cluster")
    cases = [
        ("ab", ["aba", "abab"]),
        ("abc", ["acb", "bc"]),
        ("ab", ["aa", "aaa"]),
        ("ab", ["ab", "ba"]),
        ("abc", ["abc", "bca", "cab"]),
    ]
    for alpha, pats in cases:
        B = PatternSet(pats)
        hom = length_homomorphism(alpha, N, B.k)
        lhs = gj_free_monoid(Alphabet(alpha), B, hom).shift_t(1)
        rhs = marked_word_gf_brute(Alphabet(alpha), B, hom)
        r.series_equal(lhs, rhs, f"F(1+t) identity for {pats}")
        avoid = gj_free_monoid(Alphabet(alpha), B, length_homomorphism(alpha, N, B.k)).evaluate_t([0] * B.k)
        brute = [
            sum(1 for w in product(alpha, repeat=n) if not any(find_occurrences(w, b) for b in B.words))
            for n in range(N + 1)
        ]
        r.expect_equal(avoid.integers(), brute, f"avoidance counts for {pats}")
    return r


# -- networks -----------------------------------------------------------------

def two_vertex_example():
    """Loop ``b`` at 1, ``a, c`` from 1 to 2 and ``b, c`` from 2 to 1."""
    return MonoidNetwork(2, {(0, 0): {"b"}, (0, 1): {"a", "c"}, (1, 0): {"b", "c"}}, labels=[1, 2])


def coin_flip():
    return MonoidNetwork(
        1, {(0, 0): {"a", "b"}}, {("a", (0, 0)): Fraction(1, 2), ("b", (0, 0)): Fraction(1, 2)}, labels=[1]
    )


def suite_network(N=12):
    r = SuiteResult("network")
    net = two_vertex_example()
    r.check(validate_network(net, 8) is None, "two-vertex example should validate")
    hom = length_homomorphism("abc", N, 2)
    B = PatternSet([("acb", 1), ("bc", 2)])
    F = gj_network(net, B, hom)[0, 1]
    x = XSeries.x(N, 2)
    t1, t2 = TPoly.var(1, 2), TPoly.var(2, 2)
    s = (1 - t1) * (1 - t2)
    num = 2 * x - (x * x).scale(1 - t2) + (x**4).scale(s)
    den = 1 - x - (x * x).scale(3 + t2) + (x**3).scale(2 - t1 - t2) - (x**5).scale(s)
    r.series_equal(F * den, num, "worked example, general t")
    r.series_equal(F.evaluate_t([1, 1]), gamma_star(net, length_homomorphism("abc", N))[0, 1], "t=1 is gamma_star")
    for n in range(1, 7):
        for m in (1, 2, 3):
            r.check(
                validate_network(P.build_network(P.PathModel("motzkin", m)), n) is None,
                f"Motzkin network m={m} fails validation at length {n}",
            )
    cf_net = coin_flip()
    ab = PatternSet(["ab"])
    r.expect_equal(avoidance_probability(cf_net, ab, 2, 0, 0), Fraction(3, 4), "coin flip avoids ab at n=2")
    W = gj_network_weighted(cf_net, ab, length_homomorphism("ab", N, 1))[0, 0].evaluate_t([1])
    r.expect_equal(W.rationals(), [1] * (N + 1), "coin flip probabilities at t=1")
    return r


# -- path suites -------------------------------------------------------------

def _restricted_cases():
    return [
        ("asc-end E", lambda N, m: P.gf_asc_height_restricted(P.EVEN, N, m), lambda p: all(e % 2 == 0 for _, e in P.ascent_runs(p))),
        ("asc-end O", lambda N, m: P.gf_asc_height_restricted(P.ODD, N, m), lambda p: all(e % 2 == 1 for _, e in P.ascent_runs(p))),
        ("asc-end {1,3}", lambda N, m: P.gf_asc_height_restricted({1, 3}, N, m), lambda p: all(e in (1, 3) for _, e in P.ascent_runs(p))),
        ("asc-start {0}", lambda N, m: P.gf_asc_start_restricted({0}, N, m), lambda p: all(s == 0 for s, _ in P.ascent_runs(p))),
        ("asc-start E0", lambda N, m: P.gf_asc_start_restricted(P.EVEN0, N, m), lambda p: all(s % 2 == 0 for s, _ in P.ascent_runs(p))),
        ("asc-start {1}", lambda N, m: P.gf_asc_start_restricted({1}, N, m), lambda p: all(s == 1 for s, _ in P.ascent_runs(p))),
    ] + [
        (
            f"pv {pn}-{vn}",
            (lambda N, m, ps=ps, vs=vs: P.gf_pv_height_restricted(ps, vs, N, m)),
            (lambda p, ps=ps, vs=vs: all(h in ps for h in P.occurrence_heights(p, "UD"))
             and all(h in vs for h in P.occurrence_heights(p, "DU"))),
        )
        for (pn, ps), (vn, vs) in product(
            [("O", P.ODD), ("E0", P.EVEN0), ("N", P.NAT)], [("O", P.ODD), ("E0", P.EVEN0), ("P", P.POS)]
        )
    ]


def suite_oracle(N=12, bounds=(1, 2, 3, None)):
    r = SuiteResult("oracle")
    for stat in ("asc", "peak", "val", "plt0", "plt1", "plt2", "plt", "pv"):
        for m in bounds:
            got = P.gf_statistic(stat, m, N)
            want = P.oracle_distribution(stat, N, m)
            r.series_equal(got, want, f"{stat}, bound {m or 'none'}")
    for label, gf, accept in _restricted_cases():
        for m in bounds:
            got = gf(N, m).integers()
            want = P.oracle_counts(N, accept, None if m is None else m)
            r.expect_equal(got, want, f"{label}, bound {m or 'none'}")
    return r


def suite_stabilization(N=12):
    r = SuiteResult("stabilization")
    motz = P.motzkin_numbers(N + 1)
    for stat in ("asc", "peak", "plt1", "plt", "pv"):
        k = P.statistic(stat).arity
        r.expect_equal(P.gf_statistic(stat, None, N).evaluate_t([1] * k).integers(), motz, f"{stat} at t=1")
        for m in range(1, 5):
            a, b = P.gf_statistic(stat, m, N), P.gf_statistic(stat, m + 1, N)
            for n in range(min(N, 2 * m + 1) + 1):
                r.check(a.coeff(n) == b.coeff(n), f"{stat}: bounds {m} and {m + 1} differ at n={n}")
    return r


def suite_routes(N=12, ms=range(1, 6), closed_m=7):
    r = SuiteResult("routes")
    for stat in ROUTE_STATS:
        for m in ms:
            net = P.gf_statistic(stat, m, N)
            r.series_equal(cf.cf_eval(cf.stat_cf(stat, m, N)), net, f"{stat}, m={m}: continued fraction")
            r.series_equal(cf.bounded_ratio(stat, m, N), net, f"{stat}, m={m}: recurrence ratio")
            if stat == "plt":
                r.series_equal(cf.plateau_closed_entry(m, N), net, f"plt, m={m}: closed-entry network")
        r.series_equal(cf.closed_form(stat, N), P.gf_statistic(stat, closed_m, N), f"{stat}: closed form")
    for m in ms:
        for name, A in (("E", P.EVEN), ("O", P.ODD)):
            r.series_equal(
                cf.cf_eval(cf.asc_restricted_cf(A, m, N)), P.gf_asc_height_restricted(A, N, m), f"asc-{name}, m={m}"
            )
        for name, (ps, vs) in PV_PARITY.items():
            r.series_equal(
                cf.cf_eval(cf.pv_restricted_cf(ps, vs, m, N)), P.gf_pv_height_restricted(ps, vs, N, m), f"{name}, m={m}"
            )
    for name, A in (("asc-E", P.EVEN), ("asc-O", P.ODD)):
        r.series_equal(cf.closed_form(name, N), P.gf_asc_height_restricted(A, N), f"{name}: closed form")
    for name, (ps, vs) in PV_PARITY.items():
        r.series_equal(cf.closed_form(name, N), P.gf_pv_height_restricted(ps, vs, N), f"{name}: closed form")
    return r


PV_PARITY = {
    "pv-O-E0": (P.ODD, P.EVEN0),
    "pv-E0-O": (P.EVEN0, P.ODD),
    "pv-O-O": (P.ODD, P.ODD),
    "pv-E0-E0": (P.EVEN0, P.EVEN0),
}


def suite_corollaries(N=14):
    r = SuiteResult("corollaries")
    series = {}
    for name, (_, stat, _, length, n_min) in cf.COROLLARIES.items():
        top = 6 if name == "max-ascents" else N
        for n in range(max(1, n_min), top + 1):
            L = length(n)
            key = (stat, L)
            if key not in series:
                series[key] = cf.closed_form(stat, L)
            want, got = cf.corollary_check(name, n, series[key])
            if name == "one-peak":
                r.info.append(f"one-peak n={n}: binomial sum {want}, coefficient {got}")
            else:
                r.expect_equal(got, want, f"{name}, n={n}")
    return r


def suite_lattice(N=12):
    r = SuiteResult("lattice")
    sch = P.gamma_paths("schroeder", N)
    r.expect_equal(sch.integers(), P.oracle_counts(N, kind="schroeder"), "Schroeder counts")
    dyck = P.gamma_paths("dyck", N)
    r.expect_equal(dyck.integers(), P.oracle_counts(N, kind="dyck"), "Dyck counts")
    r.expect_equal(P.gamma_paths("motzkin", N).integers(), P.motzkin_numbers(N + 1), "Motzkin counts")
    return r


SUITES = {
    "algebra": suite_algebra,
    "cluster": suite_cluster,
    "network": suite_network,
    "routes": suite_routes,
    "oracle": suite_oracle,
    "stabilization": suite_stabilization,
    "corollaries": suite_corollaries,
    "lattice": suite_lattice,
}


def run_suites(names=None, N=None):
    out = []
    for name in names or SUITES:
        fn = SUITES[name]
        out.append(fn() if N is None else fn(N))
    return out
