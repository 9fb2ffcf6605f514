"""
Words read along walks of a network
===================================

A two-vertex network: loop b at 1, a and c from 1 to 2, b and c back.
Every word has at most one walk between given endpoints, so the
transfer matrix counts words, and the cluster matrix corrects it for
pattern occurrences.
"""
from importlib.resources import files

from gjcluster import PatternSet, gamma_star, gj_network, load_network
from gjcluster.cluster import length_homomorphism
from gjcluster.network import validate_network
from gjcluster.series import XSeries

N = 10
net, B = load_network(files("gjcluster") / "samples" / "two_vertex.json")
print("patterns:", B)
print("unique decoding up to length 8:", validate_network(net, 8) is None)

G = gamma_star(net, length_homomorphism("abc", N))
print("1 -> 2 words:", G[0, 1].integers())
x = XSeries.x(N)
print("times 1 - x - 4x^2:", (G[0, 1] * (1 - x - 4 * x * x)).integers())

F = gj_network(net, B, length_homomorphism("abc", N, 2))
print("1 -> 2 avoiding both:", F[0, 1].evaluate_t([0, 0]).integers())
print("by occurrences, length 5:", F[0, 1].coeff(5))
