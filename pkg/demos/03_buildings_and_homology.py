"""
Buildings and their exact homology
==================================

The flag complex of proper nonzero subspaces, the complex of two-part
splittings, the common basis complex, and the relative higher buildings,
with reduced integral homology computed by sparse Smith normal form.

Run:  python3 demos/03_buildings_and_homology.py
"""

from commonbasis import (
    ZZ,
    chains,
    collection,
    common_basis_complex,
    higher_tits,
    homology,
    is_simplex_over_Z,
    join,
    span,
    split_tits,
    tits,
)

# Flag complexes: the rank-n complex is a wedge of (n-2)-spheres with
# p^(n(n-1)/2) of them (exact integer computation, torsion checked).
for n, p in [(2, 2), (3, 2), (4, 2), (3, 3)]:
    t = tits(n, p)
    print(f"flags of F_{p}^{n}: f-vector {t.f_vector()},  H = {homology(chains(t))}")

# Splitting complexes: vertices are ordered two-part splittings; the
# simplices in each dimension count ordered splittings with more parts.
st = split_tits(3, 2)
print("\nsplittings of F_2^3:", st.f_vector(), " H =", homology(chains(st)))

# The common basis complex: simplices are compatible families.  Its
# reduced homology is concentrated in the top interesting degree.
for n, p in [(2, 2), (2, 3), (3, 2)]:
    cb = common_basis_complex(n, p)
    print(f"common basis complex n={n}, p={p}: {cb.f_vector()}  H = {homology(chains(cb))}")

# Over a field, two flags always share a basis, so the two-factor building
# is the whole join; the first failure of joint compatibility appears with
# three factors.
n, p = 3, 2
two = higher_tits(2, 0, n, p)
print("\ntwo-factor building equals the join:",
      two.num_simplices() == join(tits(n, p), tits(n, p)).num_simplices())
three = higher_tits(3, 0, n, p)
print("three factors are a proper subcomplex:",
      three.num_simplices(), "of", (tits(n, p).num_simplices() + 1) ** 3 - 1)

# Over the integers the two-factor identity already fails: the diagonal
# pair is a join simplex but not a building simplex.  The integer complex
# has infinitely many vertices, so only membership queries are offered.
pair = collection([span(ZZ, 2, [(1, 1)]), span(ZZ, 2, [(1, -1)])])
print("\ninteger witness pair is a building simplex:", is_simplex_over_Z(pair))

# Homology of the split and non-split towers agrees once a plain flag
# factor is present.
left = homology(chains(higher_tits(1, 1, 3, 2)))
right = homology(chains(higher_tits(2, 0, 3, 2)))
print("\nforget-the-complement is a homology equivalence:", left == right, "->", left)
