"""
Counting words by forbidden subwords
====================================

Words over {a, b, c} counted by length and by occurrences of acb (t1)
and bc (t2).  The only clusters are acb, bc and acbc, which is all the
cluster method needs.
"""
from gjcluster import Alphabet, PatternSet, cluster_gf, enumerate_clusters, gj_free_monoid
from gjcluster.cluster import length_homomorphism, marked_word_gf_brute

N = 8
B = PatternSet(["acb", "bc"])

for c in enumerate_clusters(B, N):
    print("cluster:", c)

hom = length_homomorphism("abc", N, k=2)
print("L =", cluster_gf(B, hom))

F = gj_free_monoid(Alphabet("abc"), B, hom)
for n in range(5):
    print(f"[x^{n}]", F.coeff(n))

# t = 0 keeps only the words avoiding both patterns
print("avoiders:", F.evaluate_t([0, 0]).integers())

# check against literal marked-word enumeration: F(1 + t) counts marked words
assert F.shift_t(1) == marked_word_gf_brute(Alphabet("abc"), B, hom)
print("marked-word identity holds through x^%d" % N)
