"""
Probability of avoiding a pattern
=================================

A fair coin writes a and b.  With arc weights 1/2 the weighted cluster
method gives exact probabilities that n flips avoid the word ab.
"""
from fractions import Fraction
from importlib.resources import files

from gjcluster import load_network
from gjcluster.network import avoidance_probability

net, B = load_network(files("gjcluster") / "samples" / "coin_flip.json")
for n in range(9):
    p = avoidance_probability(net, B, n, 0, 0)
    # only the words b^i a^j avoid ab, and there are n + 1 of them
    assert p == Fraction(n + 1, 2**n)
    print(f"n={n}: {p}")
