"""Monoid networks and the cluster method over walks.

A network is a digraph whose arcs carry letter sets, such that a word and a
pair of endpoints determine at most one walk.  Matrices here are indexed by
vertex position (0-based); ``MonoidNetwork.labels`` keeps display names.
"""
from __future__ import annotations

import json
from collections import namedtuple
from fractions import Fraction

from .cluster import PatternSet, enumerate_clusters, _check_hom, _mark_weight, word_image
from .series import TPoly, XSeries, rational

__all__ = [
    "MonoidNetwork",
    "SeriesMatrix",
    "Counterexample",
    "WalkBudgetExceeded",
    "NotLocallyNilpotent",
    "ConfigurationError",
    "validate_network",
    "step_matrix",
    "invert_I_minus",
    "gamma_star",
    "network_cluster_matrix",
    "gj_network",
    "gj_network_entry",
    "gj_network_weighted",
    "avoidance_probability",
    "load_network",
]


class WalkBudgetExceeded(RuntimeError):
    def __init__(self, depth, budget):
        super().__init__(f"walk budget {budget} exceeded; fully checked up to length {depth}")
        self.depth = depth


class NotLocallyNilpotent(ArithmeticError):
    pass


class ConfigurationError(ValueError):
    pass


Counterexample = namedtuple("Counterexample", "word start end walk1 walk2")


class MonoidNetwork:
    """Digraph on ``n`` vertices with letter sets on arcs and optional weights.

    ``arcs`` maps ``(i, j)`` vertex indices to an iterable of letters.
    ``weights`` maps ``(letter, (i, j))`` to an exact rational.
    """

    def __init__(self, n, arcs, weights=None, labels=None):
        self.n = n
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        if len(self.labels) != n:
            raise ConfigurationError("one label per vertex required")
        self.arcs = {}
        for (i, j), letters in arcs.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ConfigurationError(f"arc ({i}, {j}) outside 0..{n - 1}")
            letters = frozenset(letters)
            if not letters:
                raise ConfigurationError(f"arc ({i}, {j}) has an empty letter set")
            self.arcs[(i, j)] = letters
        self.weights = None
        if weights is not None:
            self.weights = {}
            for (a, e), w in weights.items():
                if a not in self.arcs.get(tuple(e), ()):
                    raise ConfigurationError(f"weight on ({a!r}, {e}) which is not in P")
                self.weights[(a, tuple(e))] = rational(w)
        self.out = [[] for _ in range(n)]
        for (i, j), letters in sorted(self.arcs.items()):
            for a in sorted(letters, key=str):
                self.out[i].append((a, j))
        self.letters = frozenset().union(*self.arcs.values()) if self.arcs else frozenset()

    def index(self, label):
        return self.labels.index(label)

    def walks(self, start, word):
        """All walks from ``start`` spelling ``word``, as vertex sequences."""
        paths = [(start,)]
        for a in word:
            nxt = []
            for p in paths:
                for b, j in self.out[p[-1]]:
                    if b == a:
                        nxt.append(p + (j,))
            paths = nxt
            if not paths:
                break
        return paths

    def walk_weight(self, vertices, word):
        w = 1
        for a, i, j in zip(word, vertices, vertices[1:]):
            w = w * self.weights[(a, (i, j))]
        return w

    def is_weighted(self):
        return self.weights is not None

    def check_weights(self):
        if self.weights is None:
            raise ConfigurationError("network carries no weights")
        for (i, j), letters in self.arcs.items():
            for a in letters:
                if (a, (i, j)) not in self.weights:
                    raise ConfigurationError(f"missing weight for ({a!r}, ({i}, {j}))")

    def __repr__(self):
        return f"MonoidNetwork(n={self.n}, arcs={len(self.arcs)})"


class SeriesMatrix:
    """Square matrix of ``XSeries`` sharing truncation order and t-arity."""

    __slots__ = ("rows", "size", "order", "k")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        self.size = len(rows)
        if any(len(r) != self.size for r in rows):
            raise ValueError("matrix must be square")
        first = rows[0][0]
        self.order, self.k = first.order, first.k
        for r in rows:
            for e in r:
                if e.order != self.order or e.k != self.k:
                    raise ValueError("entries differ in truncation order or arity")
        self.rows = rows

    @classmethod
    def zeros(cls, n, order, k):
        z = XSeries.zero(order, k)
        return cls([[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, n, order, k):
        z, o = XSeries.zero(order, k), XSeries.one(order, k)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        return SeriesMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        return SeriesMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __matmul__(self, other):
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = XSeries.zero(self.order, self.k)
                for l in range(n):
                    a, b = self.rows[i][l], other.rows[l][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SeriesMatrix(out)

    def map(self, fn):
        return SeriesMatrix([[fn(e) for e in r] for r in self.rows])

    def evaluate_t(self, values):
        return self.map(lambda e: e.evaluate_t(values))

    def __eq__(self, other):
        return isinstance(other, SeriesMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"SeriesMatrix(size={self.size}, N={self.order}, k={self.k})"


def validate_network(net, check_len=8, budget=2_000_000):
    """Search walks up to ``check_len`` for two that share word and endpoints.

    Returns a ``Counterexample`` or ``None`` when none exists up to that length.
    """
    if check_len < 1:
        raise ValueError("check_len must be >= 1")
    seen = {}
    frontier = [((i,), ()) for i in range(net.n)]
    count = 0
    for depth in range(1, check_len + 1):
        nxt = []
        for verts, word in frontier:
            for a, j in net.out[verts[-1]]:
                v2, w2 = verts + (j,), word + (a,)
                count += 1
                if count > budget:
                    raise WalkBudgetExceeded(depth - 1, budget)
                key = (w2, v2[0], j)
                other = seen.get(key)
                if other is not None and other != v2:
                    return Counterexample(w2, v2[0], j, other, v2)
                seen[key] = v2
                nxt.append((v2, w2))
        frontier = nxt
    return None


def step_matrix(net, hom, weighted=False):
    """Sum of the one-letter matrices: entry (i, j) is the image of ``P_ij``."""
    order, k = _params(hom)
    _check_hom(hom, net.letters)
    if weighted:
        net.check_weights()
    z = XSeries.zero(order, k)
    rows = [[z] * net.n for _ in range(net.n)]
    for (i, j), letters in net.arcs.items():
        acc = z
        for a in sorted(letters, key=str):
            img = hom[a]
            if weighted:
                img = img.scale(net.weights[(a, (i, j))])
            acc = acc + img
        rows[i][j] = acc
    return SeriesMatrix(rows)


def _params(hom):
    img = next(iter(hom.values()))
    return img.order, img.k


def _coefficient_slices(msum):
    n, N = msum.size, msum.order
    for i in range(n):
        for j in range(n):
            c0 = msum.rows[i][j].coeffs[0]
            if c0.terms:
                raise NotLocallyNilpotent(f"entry ({i}, {j}) has constant term {c0}")
    # slices[d][i] -> list of (j, coefficient dict of x^d in entry (i, j))
    return [
        [
            [(j, msum.rows[i][j].coeffs[d].terms) for j in range(n) if msum.rows[i][j].coeffs[d].terms]
            for i in range(n)
        ]
        for d in range(N + 1)
    ]


def _solve_column(slices, n, N, k, col):
    # r_m = [m == 0] e_col + sum_{d>=1} M_d r_{m-d}
    r = [[{} for _ in range(n)]]
    r[0][col] = {(0,) * k: 1}
    for m in range(1, N + 1):
        vec = [{} for _ in range(n)]
        for d in range(1, m + 1):
            prev = r[m - d]
            for i, row in enumerate(slices[d]):
                acc = vec[i]
                for j, a in row:
                    b = prev[j]
                    if not b:
                        continue
                    for ea, ca in a.items():
                        for eb, cb in b.items():
                            e = tuple(x + y for x, y in zip(ea, eb))
                            acc[e] = acc.get(e, 0) + ca * cb
        r.append([{e: c for e, c in v.items() if c} for v in vec])
    return [
        XSeries._raw(
            [TPoly._raw({e: rational(c) for e, c in r[m][i].items()}, k) for m in range(N + 1)],
            N,
            k,
        )
        for i in range(n)
    ]


def invert_I_minus(msum, columns=None):
    """``(I - msum)^(-1)`` modulo ``x^(N+1)``; entries of ``msum`` need x-order >= 1.

    With ``columns`` only those columns are solved; the rest are left zero.
    """
    n, N, k = msum.size, msum.order, msum.k
    slices = _coefficient_slices(msum)
    cols = range(n) if columns is None else columns
    z = XSeries.zero(N, k)
    rows = [[z] * n for _ in range(n)]
    for c in cols:
        vec = _solve_column(slices, n, N, k, c)
        for i in range(n):
            rows[i][c] = vec[i]
    return SeriesMatrix(rows)


def gamma_star(net, hom, weighted=False):
    """Entry (i, j): words readable along i -> j walks, by length."""
    return invert_I_minus(step_matrix(net, hom, weighted))


def network_cluster_matrix(
    net, patterns, hom, order=None, row_mask=None, mark_filter=None, shift=0, weighted=False
):
    """Cluster matrix: each cluster lifted to every walk that spells it.

    ``row_mask`` zeroes whole rows (clusters starting at those vertices).
    ``mark_filter(u, vertex)`` decides whether an occurrence of pattern ``u``
    starting at ``vertex`` may be marked; clusters using a forbidden mark are
    dropped.  ``shift=-1`` yields the matrix at ``t - 1``.
    """
    hom_order, k = _params(hom)
    N = hom_order if order is None else order
    if len(patterns) and patterns.k != k:
        raise ValueError(f"pattern set uses {patterns.k} variables, series carry {k}")
    if weighted:
        net.check_weights()
    masked = set(row_mask or ())
    z = XSeries.zero(hom_order, k)
    rows = [[z] * net.n for _ in range(net.n)]
    weight_cache = {}
    for c in enumerate_clusters(patterns, N):
        img = word_image(c.word, hom, hom_order, k)
        if img.is_zero():
            continue
        counts = c.mark_counts()
        if counts not in weight_cache:
            weight_cache[counts] = _mark_weight(counts, k, shift)
        tw = weight_cache[counts]
        for i in range(net.n):
            if i in masked:
                continue
            for verts in net.walks(i, c.word):
                if mark_filter is not None and not all(
                    mark_filter(u, verts[s - 1]) for s, u in c.marks
                ):
                    continue
                w = tw
                if weighted:
                    w = w * net.walk_weight(verts, c.word)
                rows[i][verts[-1]] = rows[i][verts[-1]] + img.scale(w)
    m = SeriesMatrix(rows)
    return m if N == hom_order else m.map(lambda e: e.truncate(N))


def _system(net, patterns, hom, row_mask, mark_filter, weighted):
    steps = step_matrix(net, hom, weighted)
    clusters = network_cluster_matrix(
        net, patterns, hom, row_mask=row_mask, mark_filter=mark_filter, shift=-1, weighted=weighted
    )
    return steps + clusters


def gj_network(net, patterns, hom, order=None, row_mask=None, mark_filter=None):
    """Entry (i, j): i -> j words by length and pattern occurrences."""
    R = invert_I_minus(_system(net, patterns, hom, row_mask, mark_filter, False))
    return R if order is None else R.map(lambda e: e.truncate(order))


def gj_network_entry(net, patterns, hom, i, j, row_mask=None, mark_filter=None, weighted=False):
    """Single entry of the cluster-method inverse (solves one column only)."""
    R = invert_I_minus(
        _system(net, patterns, hom, row_mask, mark_filter, weighted), columns=[j]
    )
    return R[i, j]


def gj_network_weighted(net, patterns, hom, order=None):
    """As ``gj_network`` with every walk weighted by the product of its arc weights."""
    if not net.is_weighted():
        raise ConfigurationError("network carries no weights")
    R = invert_I_minus(_system(net, patterns, hom, None, None, True))
    return R if order is None else R.map(lambda e: e.truncate(order))


def check_stochastic(net):
    net.check_weights()
    for i in range(net.n):
        total = sum((w for (a, (s, _)), w in net.weights.items() if s == i), Fraction(0))
        if total != 1:
            raise ConfigurationError(f"weights leaving vertex {net.labels[i]} sum to {total}, not 1")


def avoidance_probability(net, patterns, n, i, j):
    """Probability that a random length-``n`` word on an i -> j walk avoids every pattern."""
    check_stochastic(net)
    k = patterns.k
    hom = {a: XSeries.x(n, k) for a in net.letters}
    entry = gj_network_entry(net, patterns, hom, i, j, weighted=True)
    return entry.coeff(n, [0] * k)


def load_network(source):
    """Parse the JSON network document (path, file object or dict).

    Vertices are labelled ``1..vertices``; returns ``(network, patterns)``.
    """
    if isinstance(source, dict):
        doc = source
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        with open(source) as fh:
            doc = json.load(fh)
    try:
        V = int(doc["vertices"])
        arcs = {}
        for n_arc, arc in enumerate(doc["arcs"]):
            i, j = int(arc["from"]) - 1, int(arc["to"]) - 1
            if not (0 <= i < V and 0 <= j < V):
                raise ConfigurationError(f"arcs[{n_arc}]: endpoint outside 1..{V}")
            arcs.setdefault((i, j), set()).update(arc["letters"])
        weights = None
        if "weights" in doc:
            weights = {}
            for n_w, w in enumerate(doc["weights"]):
                i, j = int(w["from"]) - 1, int(w["to"]) - 1
                den = int(w.get("den", 1))
                if den <= 0:
                    raise ConfigurationError(f"weights[{n_w}]: denominator must be positive")
                weights[(w["letter"], (i, j))] = Fraction(int(w["num"]), den)
        pats = [(tuple(p["word"]), int(p.get("var", 1))) for p in doc.get("patterns", [])]
    except KeyError as exc:
        raise ConfigurationError(f"missing field {exc.args[0]!r}") from None
    net = MonoidNetwork(V, arcs, weights, labels=range(1, V + 1))
    patterns = PatternSet(pats) if pats else PatternSet([], k=0)
    return net, patterns
