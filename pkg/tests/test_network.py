import io
import json
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gjcluster.cluster import PatternSet, find_occurrences, length_homomorphism
from gjcluster.network import (
    ConfigurationError,
    MonoidNetwork,
    NotLocallyNilpotent,
    SeriesMatrix,
    WalkBudgetExceeded,
    avoidance_probability,
    gamma_star,
    gj_network,
    gj_network_entry,
    gj_network_weighted,
    invert_I_minus,
    load_network,
    network_cluster_matrix,
    step_matrix,
    validate_network,
)
from gjcluster.paths import PathModel, build_network, path_homomorphism
from gjcluster.series import TPoly, XSeries
from gjcluster.verify import coin_flip, two_vertex_example

N = 10


def diamond():
    return MonoidNetwork(4, {(0, 1): {"a"}, (1, 3): {"a"}, (0, 2): {"a"}, (2, 3): {"a"}}, labels=[1, 2, 3, 4])


def test_validate_examples():
    assert validate_network(two_vertex_example(), 8) is None
    bad = validate_network(diamond(), 4)
    assert bad.word == ("a", "a") and (bad.start, bad.end) == (0, 3)
    assert bad.walk1 != bad.walk2
    for m in (1, 2, 3):
        assert validate_network(build_network(PathModel("motzkin", m)), 8) is None


def test_validate_budget():
    with pytest.raises(WalkBudgetExceeded):
        validate_network(build_network(PathModel("motzkin", 3)), 12, budget=100)
    with pytest.raises(ValueError):
        validate_network(diamond(), 0)


def test_step_matrices():
    x = XSeries.x(N)
    z = XSeries.zero(N)
    S = step_matrix(two_vertex_example(), length_homomorphism("abc", N))
    assert S == SeriesMatrix([[x, 2 * x], [2 * x, z]])
    m1 = build_network(PathModel("motzkin", 1))
    assert step_matrix(m1, path_homomorphism(PathModel("motzkin", 1), N)) == SeriesMatrix([[x, x], [x, x]])
    sch = PathModel("schroeder", 1)
    assert step_matrix(build_network(sch), path_homomorphism(sch, N)) == SeriesMatrix([[x * x, x], [x, x * x]])


def test_invert_examples():
    z = XSeries.zero(N)
    zero = SeriesMatrix([[z, z], [z, z]])
    assert invert_I_minus(zero) == SeriesMatrix.identity(2, N, 0)
    R = gamma_star(two_vertex_example(), length_homomorphism("abc", N))
    x = XSeries.x(N)
    assert R[0, 1] * (1 - x - 4 * x * x) == 2 * x
    with pytest.raises(NotLocallyNilpotent):
        invert_I_minus(SeriesMatrix([[XSeries.one(N)]]))


def test_inverse_postcondition():
    net = build_network(PathModel("motzkin", 3))
    S = step_matrix(net, path_homomorphism(PathModel("motzkin", 3), N))
    R = invert_I_minus(S)
    assert (SeriesMatrix.identity(4, N, 0) - S) @ R == SeriesMatrix.identity(4, N, 0)


def test_bounded_motzkin_counts_by_enumeration():
    for m in (1, 2, 3):
        R = gamma_star(build_network(PathModel("motzkin", m)), path_homomorphism(PathModel("motzkin", m), N))
        for n in range(N + 1):
            count = 0
            for w in product("UDF", repeat=n):
                h, ok = 0, True
                for s in w:
                    h += {"U": 1, "D": -1, "F": 0}[s]
                    ok = ok and 0 <= h <= m
                count += ok and h == 0
            assert R[0, 0].coeff(n) == count


def test_cluster_matrix_ascents():
    m = 3
    model = PathModel("motzkin", m)
    net = build_network(model)
    L = network_cluster_matrix(net, PatternSet([("UD", 1), ("UF", 1)]), path_homomorphism(model, N, 1))
    x2t = (XSeries.x(N, 1) ** 2).scale(TPoly.var(1, 1))
    for i in range(m + 1):
        for j in range(m + 1):
            want = x2t if i < m and j in (i, i + 1) else XSeries.zero(N, 1)
            assert L[i, j] == want


def test_cluster_matrix_peaks_valleys_closed_entries():
    m = 4
    model = PathModel("motzkin", m)
    L = network_cluster_matrix(build_network(model), PatternSet(["UD", "DU"]), path_homomorphism(model, N, 2))
    x = XSeries.x(N, 2)
    t1, t2 = TPoly.var(1, 2), TPoly.var(2, 2)
    geo = (1 - (x * x).scale(t1 * t2)).invert()
    c1 = (x * x).scale(t1) * geo
    c2 = (x * x).scale(t2) * geo
    c3 = (x**3).scale(t1 * t2) * geo
    # a middle vertex sees all four shapes: UD.. and DU.. loops, UDU up, DUD down
    assert L[2, 2] == c1 + c2
    assert L[2, 3] == c3
    assert L[2, 1] == c3
    assert L[0, 0] == c1
    assert L[m, m] == c2


def test_worked_example_rational_functions():
    net = two_vertex_example()
    B = PatternSet([("acb", 1), ("bc", 2)])
    F = gj_network(net, B, length_homomorphism("abc", N, 2))
    x = XSeries.x(N, 2)
    t1, t2 = TPoly.var(1, 2), TPoly.var(2, 2)
    s = (1 - t1) * (1 - t2)
    num = 2 * x - (x * x).scale(1 - t2) + (x**4).scale(s)
    den = 1 - x - (x * x).scale(3 + t2) + (x**3).scale(2 - t1 - t2) - (x**5).scale(s)
    assert F[0, 1] * den == num
    xx = XSeries.x(N)
    F0 = F[0, 1].evaluate_t([0, 0])
    assert F0 * (1 - xx - 3 * xx * xx + 2 * xx**3 - xx**5) == 2 * xx - xx * xx + xx**4
    assert F.evaluate_t([1, 1]) == gamma_star(net, length_homomorphism("abc", N))


def test_avoidance_counts_by_enumeration():
    net = two_vertex_example()
    B = PatternSet([("acb", 1), ("bc", 1)])
    F = gj_network(net, B, length_homomorphism("abc", 8, 1)).evaluate_t([0])
    for i, j in product(range(2), repeat=2):
        for n in range(9):
            want = 0
            for w in product("abc", repeat=n):
                if any(find_occurrences(w, b) for b in B.words):
                    continue
                want += sum(1 for v in net.walks(i, w) if v[-1] == j)
            assert F[i, j].coeff(n) == want


def test_weighted_all_ones_is_unweighted():
    net = two_vertex_example()
    ones = {(a, arc): 1 for arc, letters in net.arcs.items() for a in letters}
    wnet = MonoidNetwork(2, net.arcs, ones, labels=[1, 2])
    B = PatternSet([("acb", 1), ("bc", 2)])
    hom = length_homomorphism("abc", N, 2)
    assert gj_network_weighted(wnet, B, hom) == gj_network(net, B, hom)


def test_missing_weight():
    with pytest.raises(ConfigurationError):
        MonoidNetwork(1, {(0, 0): {"a", "b"}}, {("a", (0, 0)): Fraction(1, 2)}).check_weights()


def test_coin_flip():
    net = coin_flip()
    B = PatternSet(["ab"])
    assert avoidance_probability(net, B, 2, 0, 0) == Fraction(3, 4)
    assert avoidance_probability(net, B, 0, 0, 0) == 1
    F = gj_network_weighted(net, B, length_homomorphism("ab", 8, 1))
    assert F[0, 0].evaluate_t([1]).rationals() == [1] * 9


def test_avoidance_edge_cases():
    net = MonoidNetwork(
        2,
        {(0, 1): {"a"}, (1, 0): {"b"}},
        {("a", (0, 1)): 1, ("b", (1, 0)): 1},
    )
    B = PatternSet(["aa"])
    assert avoidance_probability(net, B, 0, 0, 1) == 0
    assert avoidance_probability(net, B, 0, 1, 1) == 1
    bad = MonoidNetwork(1, {(0, 0): {"a"}}, {("a", (0, 0)): Fraction(1, 2)})
    with pytest.raises(ConfigurationError):
        avoidance_probability(bad, B, 2, 0, 0)


def test_load_network_round_trip(tmp_path):
    doc = {
        "vertices": 2,
        "arcs": [
            {"from": 1, "to": 1, "letters": ["b"]},
            {"from": 1, "to": 2, "letters": ["a", "c"]},
            {"from": 2, "to": 1, "letters": ["b", "c"]},
        ],
        "patterns": [{"word": ["a", "c", "b"], "var": 1}, {"word": ["b", "c"], "var": 2}],
    }
    p = tmp_path / "net.json"
    p.write_text(json.dumps(doc))
    for src in (doc, str(p), io.StringIO(json.dumps(doc))):
        net, B = load_network(src)
        assert net.arcs == two_vertex_example().arcs
        assert B.words == (tuple("acb"), tuple("bc")) and B.vars == (1, 2)


def test_load_network_errors():
    with pytest.raises(ConfigurationError, match="arcs"):
        load_network({"vertices": 1})
    with pytest.raises(ConfigurationError, match="endpoint"):
        load_network({"vertices": 1, "arcs": [{"from": 1, "to": 2, "letters": ["a"]}]})


def test_empty_pattern_set_gives_gamma_star():
    net = two_vertex_example()
    hom = length_homomorphism("abc", N)
    assert gj_network(net, PatternSet([], k=0), hom) == gamma_star(net, hom)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.text(alphabet="abc", min_size=2, max_size=3), min_size=1, max_size=2, unique=True))
def test_t_equals_one_specialization(ws):
    net = two_vertex_example()
    B = PatternSet(ws)
    F = gj_network(net, B, length_homomorphism("abc", 7, B.k))
    assert F.evaluate_t([1] * B.k) == gamma_star(net, length_homomorphism("abc", 7))


def test_entry_matches_full_inverse():
    model = PathModel("motzkin", 3)
    B = PatternSet([("UD", 1), ("DU", 2)])
    hom = path_homomorphism(model, N, 2)
    net = build_network(model)
    full = gj_network(net, B, hom)
    for j in range(4):
        assert gj_network_entry(net, B, hom, 1, j) == full[1, j]
