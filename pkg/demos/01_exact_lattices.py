"""
Exact lattices and splitness
============================

Submodules of Z^n and F_p^n live in canonical form (Hermite normal form
over the integers, reduced row echelon form over a prime field), so
structural equality decides equality of submodules and every computation
is exact.

Run:  python3 demos/01_exact_lattices.py
"""

from commonbasis import (
    GF,
    NotSplit,
    ZZ,
    Matrix,
    extend_to_ambient_basis,
    intersect,
    is_split,
    snf,
    span,
    span_sum,
)

# The rows (2,4) and (1,2) generate the same lattice as (1,2) alone.
u = span(ZZ, 2, [(2, 4), (1, 2)])
print("canonical basis of <(2,4),(1,2)>:", u.basis)

# Elementary divisors via exact Smith normal form.
print("divisors of [[2,0],[0,3]]:", snf(Matrix.from_rows(ZZ, [[2, 0], [0, 3]])))
print("divisors of [[2,0],[0,2]]:", snf(Matrix.from_rows(ZZ, [[2, 0], [0, 2]])))

# A submodule of Z^n is a summand exactly when its quotient is
# torsion-free; the diagonal line is, a doubled axis is not.
diag = span(ZZ, 2, [(1, 1)])
doubled = span(ZZ, 2, [(2, 0)])
print("\n<(1,1)> split:", is_split(diag), "   <(2,0)> split:", is_split(doubled))

# A split submodule extends to a basis of the ambient lattice.  The
# completion is verified unimodular; non-summands are refused loudly.
print("basis of Z^2 through <(1,1)>:", extend_to_ambient_basis(diag).entries)
try:
    extend_to_ambient_basis(doubled)
except NotSplit as err:
    print("completion refused:", err)

# The two diagonal lines of Z^2 are each split, but their sum has index 2:
# summands are closed under intersection, not under sum.
anti = span(ZZ, 2, [(1, -1)])
total = span_sum(diag, anti)
print("\n<(1,1)> + <(1,-1)> =", total.basis, " split:", is_split(total))
print("<(1,1)> & <(1,-1)> =", intersect(diag, anti).basis, "(zero)")

# Over a prime field everything splits.
plane = span(GF(3), 3, [(1, 2, 0), (0, 0, 1)])
print("\nevery subspace of F_3^3 is a summand:", is_split(plane))
