"""Lattice-path networks, path statistics, and their generating functions.

Paths are strings over ``U``, ``F``, ``D``.  The network for height bound
``m`` has vertices ``0..m`` (vertex = current height); the ascent-start
variant adds a source vertex ``0'`` at index ``m + 1`` whose only arc is a
``U`` step to height 1.  "Unbounded" always means bound ``ceil(N / 2)``,
which is exact through ``x^N``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cluster import EnumerationTooLarge, PatternSet
from .network import MonoidNetwork, gamma_star, gj_network_entry
from .series import TPoly, XSeries

__all__ = [
    "PathModel",
    "Statistic",
    "HeightSet",
    "NAT",
    "POS",
    "EVEN",
    "ODD",
    "EVEN0",
    "statistic",
    "resolve_bound",
    "build_network",
    "path_homomorphism",
    "enumerate_paths",
    "heights",
    "ascent_runs",
    "occurrence_heights",
    "count_stat",
    "stat_patterns",
    "gf_statistic",
    "gf_asc_height_restricted",
    "gf_pv_height_restricted",
    "gf_asc_start_restricted",
    "oracle_distribution",
    "oracle_counts",
    "motzkin_numbers",
]

KINDS = ("dyck", "motzkin", "schroeder")


@dataclass(frozen=True)
class PathModel:
    kind: str = "motzkin"
    bound: int | None = None
    variant: str = "standard"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown path kind {self.kind!r}")
        if self.bound is not None and self.bound < 1:
            raise ValueError("height bound must be >= 1")
        if self.variant not in ("standard", "ascent_start"):
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def letters(self):
        return "UD" if self.kind == "dyck" else "UDF"


@dataclass(frozen=True)
class Statistic:
    """``asc``, ``plt_k`` (with ``k``), ``plt``, ``peak``, ``val`` or ``pv``."""

    name: str
    k: int | None = None

    def __str__(self):
        return f"plt{self.k}" if self.name == "plt_k" else self.name

    @property
    def arity(self):
        return 2 if self.name == "pv" else 1


def statistic(spec):
    """Parse ``'asc'``, ``'plt'``, ``'plt2'``, ``'peak'``, ``'val'``, ``'pv'``."""
    if isinstance(spec, Statistic):
        return spec
    s = spec.strip().lower().replace("_", "")
    if s in ("asc", "plt", "peak", "val", "pv"):
        return Statistic(s)
    if s.startswith("plt") and s[3:].isdigit():
        return Statistic("plt_k", int(s[3:]))
    raise ValueError(f"unknown statistic {spec!r}")


class HeightSet:
    """A (possibly infinite) set of heights given by a membership rule."""

    def __init__(self, name, rule):
        self.name = name
        self.rule = rule

    def __contains__(self, h):
        return self.rule(h)

    def materialize(self, m):
        return frozenset(h for h in range(m + 1) if h in self)

    def __repr__(self):
        return f"HeightSet({self.name})"


NAT = HeightSet("N", lambda h: h >= 0)
POS = HeightSet("P", lambda h: h >= 1)
EVEN = HeightSet("E", lambda h: h >= 1 and h % 2 == 0)
ODD = HeightSet("O", lambda h: h >= 1 and h % 2 == 1)
EVEN0 = HeightSet("E>=0", lambda h: h >= 0 and h % 2 == 0)
NAMED_SETS = {"N": NAT, "P": POS, "E": EVEN, "O": ODD, "E0": EVEN0}


def resolve_bound(bound, order):
    return bound if bound is not None else max(1, -(-order // 2))


def build_network(model, order=None):
    """The lattice-path monoid network for ``model``.

    An unbounded model needs ``order`` to pick the bound.
    """
    m = model.bound
    if m is None:
        if order is None:
            raise ValueError("unbounded model needs a truncation order")
        m = resolve_bound(None, order)
    arcs = {}
    for h in range(m + 1):
        if model.kind != "dyck":
            arcs[(h, h)] = {"F"}
        if h < m:
            arcs[(h, h + 1)] = {"U"}
            arcs[(h + 1, h)] = {"D"}
    labels = list(range(m + 1))
    n = m + 1
    if model.variant == "ascent_start":
        arcs[(m + 1, 1)] = {"U"}
        labels.append("0'")
        n += 1
    return MonoidNetwork(n, arcs, labels=labels)


def path_homomorphism(model, order, k=0):
    x = XSeries.x(order, k)
    hom = {"U": x, "D": x}
    if model.kind == "motzkin":
        hom["F"] = x
    elif model.kind == "schroeder":
        hom["F"] = x * x
    return hom


# -- the enumeration oracle ---------------------------------------------

def enumerate_paths(n, bound=None, kind="motzkin", budget=15):
    """Every path of (weighted) length ``n``; Schroeder flats weigh 2."""
    if kind not in KINDS:
        raise ValueError(f"unknown path kind {kind!r}")
    if n > budget:
        raise EnumerationTooLarge(f"length {n} exceeds oracle budget {budget}")
    cap = n if bound is None else bound
    flat = {"dyck": None, "motzkin": 1, "schroeder": 2}[kind]
    out = []

    def walk(prefix, h, remaining):
        if remaining == 0:
            if h == 0:
                out.append("".join(prefix))
            return
        if h > remaining:
            return
        if h < cap:
            prefix.append("U")
            walk(prefix, h + 1, remaining - 1)
            prefix.pop()
        if flat is not None and flat <= remaining:
            prefix.append("F")
            walk(prefix, h, remaining - flat)
            prefix.pop()
        if h > 0:
            prefix.append("D")
            walk(prefix, h - 1, remaining - 1)
            prefix.pop()

    walk([], 0, n)
    return out


def heights(path):
    """Height before each step, plus the final height."""
    h, out = 0, [0]
    for s in path:
        h += {"U": 1, "D": -1, "F": 0}[s]
        out.append(h)
    return out


def ascent_runs(path):
    """Maximal runs of ``U`` as (start height, end height) pairs."""
    hs = heights(path)
    runs, i = [], 0
    while i < len(path):
        if path[i] == "U":
            j = i
            while j < len(path) and path[j] == "U":
                j += 1
            runs.append((hs[i], hs[j]))
            i = j
        else:
            i += 1
    return runs


def occurrence_heights(path, sub):
    """Height at the first letter of each occurrence of ``sub``."""
    hs = heights(path)
    L = len(sub)
    return [hs[i] for i in range(len(path) - L + 1) if path[i : i + L] == sub]


def _plateaus(path):
    hs = heights(path)
    found = []
    for i, s in enumerate(path):
        if s != "U":
            continue
        j = i + 1
        while j < len(path) and path[j] == "F":
            j += 1
        if j < len(path) and path[j] == "D":
            found.append((j - i - 1, hs[i]))
    return found


def count_stat(path, stat):
    """Statistic value(s) of one path, as a tuple (two entries for ``pv``)."""
    stat = statistic(stat)
    if stat.name == "asc":
        return (len(ascent_runs(path)),)
    if stat.name == "plt_k":
        return (sum(1 for k, _ in _plateaus(path) if k == stat.k),)
    if stat.name == "plt":
        return (len(_plateaus(path)),)
    if stat.name == "peak":
        return (len(occurrence_heights(path, "UD")),)
    if stat.name == "val":
        return (len(occurrence_heights(path, "DU")),)
    return (len(occurrence_heights(path, "UD")), len(occurrence_heights(path, "DU")))


def oracle_distribution(stat, order, bound=None, kind="motzkin"):
    """Joint statistic distribution by enumeration, as a series in x and t."""
    stat = statistic(stat)
    k = stat.arity
    coeffs = []
    for n in range(order + 1):
        tally = {}
        for p in enumerate_paths(n, bound, kind, budget=max(order, 15)):
            e = count_stat(p, stat)
            tally[e] = tally.get(e, 0) + 1
        coeffs.append(TPoly(tally, k))
    return XSeries(coeffs, order, k)


def oracle_counts(order, accept=None, bound=None, kind="motzkin"):
    """Number of paths of each length satisfying ``accept(path)``."""
    return [
        sum(1 for p in enumerate_paths(n, bound, kind, budget=max(order, 15)) if accept is None or accept(p))
        for n in range(order + 1)
    ]


def motzkin_numbers(count):
    out = [1, 1]
    for n in range(2, count):
        out.append(((2 * n + 1) * out[-1] + (3 * n - 3) * out[-2]) // (n + 2))
    return out[:count]


# -- generating functions via the network cluster method -----------------

def stat_patterns(stat, order):
    stat = statistic(stat)
    if stat.name == "asc":
        return PatternSet([("UD", 1), ("UF", 1)])
    if stat.name == "plt_k":
        return PatternSet([("U" + "F" * stat.k + "D", 1)])
    if stat.name == "plt":
        return PatternSet([("U" + "F" * j + "D", 1) for j in range(max(0, order - 2) + 1)])
    if stat.name == "peak":
        return PatternSet([("UD", 1)])
    if stat.name == "val":
        return PatternSet([("DU", 1)])
    return PatternSet([("UD", 1), ("DU", 2)])


def gf_statistic(stat, bound=None, order=12, kind="motzkin"):
    """Paths from height 0 to 0 by length and statistic (entry (0, 0))."""
    stat = statistic(stat)
    model = PathModel(kind, resolve_bound(bound, order))
    net = build_network(model)
    hom = path_homomorphism(model, order, stat.arity)
    return gj_network_entry(net, stat_patterns(stat, order), hom, 0, 0)


def gf_asc_height_restricted(allowed, order=12, bound=None):
    """Paths whose every ascent ends at a height in ``allowed``."""
    m = resolve_bound(bound, order)
    model = PathModel("motzkin", m)
    net = build_network(model)
    mask = {i - 1 for i in range(1, m + 1) if i in allowed}
    F = gj_network_entry(net, stat_patterns("asc", order), path_homomorphism(model, order, 1), 0, 0, row_mask=mask)
    return F.evaluate_t([0])


def gf_pv_height_restricted(peaks, valleys, order=12, bound=None):
    """Paths with every peak at a height in ``peaks`` and every valley in ``valleys``."""
    m = resolve_bound(bound, order)
    model = PathModel("motzkin", m)
    net = build_network(model)
    B = PatternSet([("UD", 1), ("DU", 1)])

    def markable(u, h):
        return h not in (peaks if u == 0 else valleys)

    F = gj_network_entry(net, B, path_homomorphism(model, order, 1), 0, 0, mark_filter=markable)
    return F.evaluate_t([0])


def gf_asc_start_restricted(allowed, order=12, bound=None):
    """Paths whose every ascent starts at a height in ``allowed``.

    Ascents after a ``D`` or ``F`` are caught as ``DU`` / ``FU`` occurrences.
    A path opening with ``U`` is read from the extra source vertex, which
    leaves that first ascent unmarked; it is kept only when 0 is allowed.
    """
    m = resolve_bound(bound, order)
    B = PatternSet([("DU", 1), ("FU", 1)])

    def markable(u, h):
        if h == "0'":
            return False
        start = h - 1 if u == 0 else h
        return start not in allowed

    std = PathModel("motzkin", m)
    var = PathModel("motzkin", m, "ascent_start")
    hom = path_homomorphism(std, order, 1)
    net_s, net_v = build_network(std), build_network(var)
    f00 = gj_network_entry(
        net_s, B, hom, 0, 0, mark_filter=lambda u, i: markable(u, net_s.labels[i])
    ).evaluate_t([0])
    fp0 = gj_network_entry(
        net_v, B, hom, net_v.index("0'"), 0, mark_filter=lambda u, i: markable(u, net_v.labels[i])
    ).evaluate_t([0])
    out = f00 - fp0
    if 0 in allowed:
        out = out + fp0
    return out


def gamma_paths(kind, order, bound=None):
    """Path counts by (weighted) length from the transfer-matrix inverse."""
    model = PathModel(kind, resolve_bound(bound, order))
    return gamma_star(build_network(model), path_homomorphism(model, order))[0, 0]


