"""Marked words, clusters, and the cluster method on a free monoid.

Words are tuples of hashable letters; a plain string is read one character
per letter.  Mark positions are 1-based, matching the usual convention of
counting subword occurrences from the first letter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .series import TPoly, XSeries

__all__ = [
    "Alphabet",
    "PatternSet",
    "MarkedWord",
    "NonAdmissibleHomomorphism",
    "EnumerationTooLarge",
    "as_word",
    "find_occurrences",
    "is_cluster",
    "enumerate_clusters",
    "length_homomorphism",
    "word_image",
    "cluster_gf",
    "gj_free_monoid",
    "marked_word_gf_brute",
]


class NonAdmissibleHomomorphism(ValueError):
    """A letter image has a nonzero constant term, so sums over words diverge."""


class EnumerationTooLarge(RuntimeError):
    pass


def as_word(w):
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


@dataclass(frozen=True)
class Alphabet:
    letters: tuple

    def __init__(self, letters):
        letters = as_word(letters)
        if not letters:
            raise ValueError("alphabet must be non-empty")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in {letters}")
        object.__setattr__(self, "letters", letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __contains__(self, a):
        return a in self.letters

    def index(self, a):
        return self.letters.index(a)


class PatternSet:
    """Ordered patterns ``beta_1, beta_2, ...`` each tagged with a variable index.

    ``patterns`` may hold bare words (each gets its own variable) or
    ``(word, var)`` pairs with 1-based ``var``.  Non-reduced sets are fine.
    """

    def __init__(self, patterns, k=None):
        words, vars_ = [], []
        for i, p in enumerate(patterns):
            if (
                isinstance(p, (tuple, list))
                and len(p) == 2
                and isinstance(p[0], (str, tuple, list))
                and isinstance(p[1], int)
            ):
                w, v = as_word(p[0]), p[1]
            else:
                w, v = as_word(p), i + 1
            if len(w) < 2:
                raise ValueError(f"pattern {''.join(map(str, w))!r} has length < 2")
            words.append(w)
            vars_.append(v)
        if len(set(words)) != len(words):
            raise ValueError("patterns must be pairwise distinct")
        if k is None:
            k = max(vars_, default=0)
        for v in vars_:
            if not 1 <= v <= k:
                raise ValueError(f"variable index {v} outside 1..{k}")
        self.words = tuple(words)
        self.vars = tuple(vars_)
        self.k = k

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(zip(self.words, self.vars))

    def __getitem__(self, u):
        return self.words[u]

    def __repr__(self):
        body = ", ".join(f"{''.join(map(str, w))}:t{v}" for w, v in self)
        return f"PatternSet({body})"


@dataclass(frozen=True, order=True)
class MarkedWord:
    """A word with marks ``(start, u)``: pattern ``u`` (0-based index) at ``start``.

    Marks are kept sorted by (start, end).
    """

    word: tuple
    marks: tuple
    patterns: PatternSet = field(compare=False, repr=False, default=None)

    @classmethod
    def build(cls, word, marks, patterns):
        word = as_word(word)
        seen = set()
        for s, u in marks:
            beta = patterns[u]
            if word[s - 1 : s - 1 + len(beta)] != beta or s < 1:
                raise ValueError(f"mark ({s}, {''.join(map(str, beta))}) is not an occurrence")
            if (s, u) in seen:
                raise ValueError("duplicate mark")
            seen.add((s, u))
        ordered = tuple(sorted(seen, key=lambda m: (m[0], m[0] + len(patterns[m[1]]))))
        return cls(word, ordered, patterns)

    def mark_counts(self):
        """Number of marks per marking variable, as an exponent vector."""
        counts = [0] * self.patterns.k
        for _, u in self.marks:
            counts[self.patterns.vars[u] - 1] += 1
        return tuple(counts)

    def intervals(self):
        return [(s, s + len(self.patterns[u]) - 1) for s, u in self.marks]

    def __str__(self):
        w = "".join(map(str, self.word))
        ms = ", ".join(f"({s},{''.join(map(str, self.patterns[u]))})" for s, u in self.marks)
        return f"{w} {{{ms}}}"


def find_occurrences(word, pattern):
    """1-based start positions of ``pattern`` inside ``word``."""
    word, pattern = as_word(word), as_word(pattern)
    if not pattern:
        raise ValueError("empty pattern")
    L = len(pattern)
    return [i + 1 for i in range(len(word) - L + 1) if word[i : i + L] == pattern]


def is_cluster(mw):
    """Definition check: marks non-empty, and every cut of the word is straddled."""
    n = len(mw.word)
    if not mw.marks or n == 0:
        return False
    ivs = mw.intervals()
    covered = set()
    for s, e in ivs:
        covered.update(range(s, e + 1))
    if covered != set(range(1, n + 1)):
        return False
    return all(any(s <= p and p + 1 <= e for s, e in ivs) for p in range(1, n))


def enumerate_clusters(patterns, max_len):
    """All clusters on words of length at most ``max_len``.

    Marks are added in (start, end) order; each new mark starts no later than
    the current covered end and agrees with the letters already placed.
    """
    pats = patterns.words
    out = []

    def extend(word, marks, last, end):
        out.append(MarkedWord(word, marks, patterns))
        for s in range(last[0], end + 1):
            for u, beta in enumerate(pats):
                e = s + len(beta) - 1
                if (s, e) <= last or e > max_len:
                    continue
                if e <= end:
                    if word[s - 1 : e] != beta:
                        continue
                    extend(word, marks + ((s, u),), (s, e), end)
                else:
                    if word[s - 1 :] != beta[: end - s + 1]:
                        continue
                    extend(word + beta[end - s + 1 :], marks + ((s, u),), (s, e), e)

    for u, beta in enumerate(pats):
        if len(beta) <= max_len:
            extend(beta, ((1, u),), (1, len(beta)), len(beta))
    out.sort(key=lambda c: (len(c.word), c.word, c.marks))
    return out


def length_homomorphism(letters, order, k=0):
    """Send every letter to ``x``."""
    x = XSeries.x(order, k)
    return {a: x for a in letters}


def word_image(word, hom, order, k):
    out = XSeries.one(order, k)
    for a in word:
        out = out * hom[a]
    return out


def _check_hom(hom, letters):
    for a in letters:
        img = hom[a]
        v = img.valuation()
        if v is not None and v < 1:
            raise NonAdmissibleHomomorphism(f"image of letter {a!r} has a constant term")


def _series_params(hom):
    img = next(iter(hom.values()))
    return img.order, img.k


def _mark_weight(counts, k, shift):
    """prod_v (t_v + shift)^counts[v] as a TPoly."""
    out = TPoly.constant(1, k)
    for v, c in enumerate(counts):
        if c:
            out = out * (TPoly.var(v + 1, k) + shift) ** c
    return out


def cluster_gf(patterns, hom, order=None, shift=0):
    """Cluster generating function ``L``; ``shift=-1`` gives ``L(t - 1)``."""
    hom_order, k = _series_params(hom)
    if order is None:
        order = hom_order
    letters = {a for w in patterns.words for a in w}
    _check_hom(hom, letters)
    if len(patterns) and patterns.k != k:
        raise ValueError(f"pattern set uses {patterns.k} variables, series carry {k}")
    total = XSeries.zero(hom_order, k)
    for c in enumerate_clusters(patterns, order):
        img = word_image(c.word, hom, hom_order, k)
        if img.is_zero():
            continue
        total = total + img.scale(_mark_weight(c.mark_counts(), k, shift))
    return total.truncate(order) if order < hom_order else total


def gj_free_monoid(alphabet, patterns, hom, order=None):
    """Words over ``alphabet`` by length and pattern occurrences (cluster method)."""
    hom_order, k = _series_params(hom)
    _check_hom(hom, alphabet)
    base = XSeries.one(hom_order, k)
    for a in alphabet:
        base = base - hom[a]
    F = (base - cluster_gf(patterns, hom, shift=-1)).invert()
    return F if order is None else F.truncate(order)


def marked_word_gf_brute(alphabet, patterns, hom, order=None, budget=200_000):
    """Sum over all marked words of length <= N, by direct enumeration.

    Equals ``gj_free_monoid`` after the substitution ``t -> t + 1``.
    """
    hom_order, k = _series_params(hom)
    N = hom_order if order is None else order
    letters = tuple(alphabet)
    size = sum(len(letters) ** n for n in range(N + 1))
    if size > budget:
        raise EnumerationTooLarge(f"{size} words exceed budget {budget}")
    total = XSeries.zero(hom_order, k)
    for n in range(N + 1):
        for word in product(letters, repeat=n):
            occ = [
                patterns.vars[u] - 1
                for u, beta in enumerate(patterns.words)
                for _ in find_occurrences(word, beta)
            ]
            if len(occ) > 20:
                raise EnumerationTooLarge(f"{len(occ)} occurrences on one word")
            weights = {}
            for mask in range(1 << len(occ)):
                exps = [0] * k
                for b, v in enumerate(occ):
                    if mask >> b & 1:
                        exps[v] += 1
                exps = tuple(exps)
                weights[exps] = weights.get(exps, 0) + 1
            img = word_image(word, hom, hom_order, k)
            total = total + img.scale(TPoly(weights, k))
    return total.truncate(N) if N < hom_order else total
