"""Exact linear algebra over the integers and prime fields.

Everything in this module is exact: integers are arbitrary precision and
residues mod p are stored as reduced representatives in ``0..p-1``.  No
floating point is used anywhere in the package.

The central object is :class:`Submodule`, a submodule of ``R^n`` (``R`` the
integers or a prime field) stored in a canonical form:

* over a prime field, the reduced row echelon form of any generating set;
* over the integers, the row-style Hermite normal form with positive pivots
  and the entries above each pivot reduced into ``[0, pivot)``.

Canonical forms are unique, so structural equality of :class:`Submodule`
decides equality of submodules, and the flattened basis matrix gives a
deterministic total order used for reproducible vertex orderings downstream.
Over the integers the stored rows generate the submodule exactly, not merely
a finite-index sublattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class ExactLinError(Exception):
    """Base error for this module."""


class AmbientMismatch(ExactLinError):
    """Operands live in different ambient modules or over different rings."""


class NotSplit(ExactLinError):
    """A submodule of Z^n that is not a direct summand was passed where a
    summand is required."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """The integers (``p == 0``) or the prime field ``F_p`` (``p`` prime).

    Prime powers are rejected: residue rings that are not prime fields are
    outside the scope of this package.
    """

    p: int

    def __post_init__(self) -> None:
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"modulus must be 0 (integers) or prime, got {self.p}")

    @property
    def is_field(self) -> bool:
        return self.p != 0

    def reduce(self, x: int) -> int:
        return x % self.p if self.p else x

    def __str__(self) -> str:
        return "Z" if self.p == 0 else f"F{self.p}"


ZZ = Ring(0)


@lru_cache(maxsize=None)
def GF(p: int) -> Ring:
    ring = Ring(p)
    if not ring.is_field:
        raise ValueError("GF expects a prime")
    return ring


def ring_from_token(token: str) -> Ring:
    if token == "Z":
        return ZZ
    if token.startswith("F"):
        return GF(int(token[1:]))
    raise ValueError(f"unknown ring token {token!r}")


@dataclass(frozen=True)
class Matrix:
    """An immutable exact matrix: a tuple of row tuples over a ring."""

    ring: Ring
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(ring: Ring, rows: Iterable[Sequence[int]], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(ring.reduce(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
            cols = width
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return Matrix(ring, len(data), cols, data)

    @staticmethod
    def identity(ring: Ring, n: int) -> "Matrix":
        return Matrix.from_rows(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def row_list(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def stack(self, other: "Matrix") -> "Matrix":
        if other.ring != self.ring or other.cols != self.cols:
            raise AmbientMismatch("cannot stack")
        return Matrix(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def transpose(self) -> "Matrix":
        data = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return Matrix(self.ring, self.cols, self.rows, data)

    def mul(self, other: "Matrix") -> "Matrix":
        if other.ring != self.ring or self.cols != other.rows:
            raise AmbientMismatch("cannot multiply")
        red = self.ring.reduce
        data = []
        for i in range(self.rows):
            row = self.entries[i]
            data.append(
                tuple(
                    red(sum(row[k] * other.entries[k][j] for k in range(self.cols)))
                    for j in range(other.cols)
                )
            )
        return Matrix(self.ring, self.rows, other.cols, tuple(data))


# ---------------------------------------------------------------------------
# Row reduction primitives.  These work on plain lists of lists of ints and
# are shared by the public operations below.
# ---------------------------------------------------------------------------


def _rref_mod_p(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p.  Returns (nonzero rows, pivot columns)."""
    mat = [[x % p for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def _hnf(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Row-style Hermite normal form: echelon shape, positive pivots, the
    entries above each pivot reduced into [0, pivot).  Returns the nonzero
    rows together with the pivot columns."""
    mat = [list(row) for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        live = [i for i in range(r, len(mat)) if mat[i][c]]
        if not live:
            continue
        # Chase the gcd into row r.
        while True:
            live = [i for i in range(r, len(mat)) if mat[i][c]]
            if len(live) == 1:
                i = live[0]
                mat[r], mat[i] = mat[i], mat[r]
                break
            i = min(live, key=lambda k: abs(mat[k][c]))
            mat[r], mat[i] = mat[i], mat[r]
            for i in range(r + 1, len(mat)):
                if mat[i][c]:
                    q = mat[i][c] // mat[r][c]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def _hnf_with_transform(
    rows: list[list[int]], ncols: int
) -> tuple[list[list[int]], list[list[int]], int]:
    """HNF together with a unimodular T such that T @ M has the HNF in its
    first ``rank`` rows and zero rows below.  Returns (full transformed
    matrix, T, rank)."""
    m = len(rows)
    mat = [list(row) for row in rows]
    t = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        live = [i for i in range(r, m) if mat[i][c]]
        if not live:
            continue
        while True:
            live = [i for i in range(r, m) if mat[i][c]]
            if len(live) == 1:
                i = live[0]
                mat[r], mat[i] = mat[i], mat[r]
                t[r], t[i] = t[i], t[r]
                break
            i = min(live, key=lambda k: abs(mat[k][c]))
            mat[r], mat[i] = mat[i], mat[r]
            t[r], t[i] = t[i], t[r]
            for i in range(r + 1, m):
                if mat[i][c]:
                    q = mat[i][c] // mat[r][c]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    t[i] = [a - q * b for a, b in zip(t[i], t[r])]
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
            t[r] = [-x for x in t[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                t[i] = [a - q * b for a, b in zip(t[i], t[r])]
        r += 1
    return mat, t, r


def _snf_dense(
    rows: list[list[int]], ncols: int, want_colbasis: bool = False
) -> tuple[list[int], list[list[int]] | None]:
    """Classical Smith normal form by elimination with minimal-absolute-value
    pivots.  Returns the nonzero elementary divisors ``d_1 | d_2 | ...``.

    With ``want_colbasis`` the second return value is a unimodular ``ncols x
    ncols`` matrix whose first ``rank`` rows span the row space of the input
    (used for basis completion: the remaining rows complete any basis of a
    split row space to a basis of the ambient module).
    """
    a = [list(r) for r in rows]
    m = len(a)
    # w tracks the inverse of the accumulated column transform: row ops on w
    # mirror column ops on a so that rowspace(input) = rowspace(D @ w).
    w = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)] if want_colbasis else None
    divisors: list[int] = []
    t = 0
    while True:
        best = None
        for i in range(t, m):
            for j in range(t, ncols):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            if w is not None:
                w[t], w[bj] = w[bj], w[t]
        while True:
            # Clear column t.
            progress = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        progress = True
            if progress:
                continue
            # Clear row t (column ops, mirrored on w).
            progress = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                        if w is not None:
                            w[t] = [x + q * y for x, y in zip(w[t], w[j])]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        if w is not None:
                            w[t], w[j] = w[j], w[t]
                        progress = True
            if not progress:
                break
        if a[t][t] < 0:
            a[t][t] = -a[t][t]
            if w is not None:
                w[t] = [-x for x in w[t]]
        d = a[t][t]
        # Enforce divisibility of the remaining block by the pivot.
        culprit = None
        if d != 1:
            for i in range(t + 1, m):
                for j in range(t + 1, ncols):
                    if a[i][j] % d:
                        culprit = i
                        break
                if culprit is not None:
                    break
        if culprit is not None:
            a[t] = [x + y for x, y in zip(a[t], a[culprit])]
            continue
        divisors.append(d)
        t += 1
    return divisors, w


# ---------------------------------------------------------------------------
# Submodules.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Submodule:
    """A submodule of ``R^n`` in canonical form.

    ``basis`` holds the canonical basis rows (RREF over a prime field, row
    HNF over the integers); the number of rows is the rank.  Instances are
    immutable, hashable and totally ordered by the flattened basis matrix,
    which makes downstream vertex orders reproducible.
    """

    ring: Ring
    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_ambient(self) -> bool:
        return self.rank == self.ambient

    def sort_key(self) -> tuple[int, ...]:
        return tuple(x for row in self.basis for x in row)

    def basis_matrix(self) -> Matrix:
        return Matrix(self.ring, self.rank, self.ambient, self.basis)

    # -- set-style operators ------------------------------------------------

    def __add__(self, other: "Submodule") -> "Submodule":
        return span_sum(self, other)

    def __and__(self, other: "Submodule") -> "Submodule":
        return intersect(self, other)

    def __le__(self, other: "Submodule") -> bool:
        return contains(other, self)

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(str(x) for x in row) for row in self.basis)
        return f"<{self.ring} sub of rank {self.rank} in {self.ring}^{self.ambient}: [{rows}]>"


def _check_same_ambient(u: Submodule, w: Submodule) -> None:
    if u.ring != w.ring or u.ambient != w.ambient:
        raise AmbientMismatch(f"{u!r} vs {w!r}")


def canonicalize(generators: Matrix) -> Submodule:
    """The submodule generated by the rows of ``generators``, in canonical
    form.  Idempotent: canonicalizing the basis of the result returns the
    same object."""
    if generators.ring.is_field:
        rows, _ = _rref_mod_p(generators.row_list(), generators.cols, generators.ring.p)
    else:
        rows, _ = _hnf(generators.row_list(), generators.cols)
    return Submodule(generators.ring, generators.cols, tuple(tuple(r) for r in rows))


def span(ring: Ring, ambient: int, rows: Iterable[Sequence[int]]) -> Submodule:
    """Convenience wrapper: the canonical submodule spanned by ``rows``."""
    return canonicalize(Matrix.from_rows(ring, list(rows), ambient))


def zero_module(ring: Ring, ambient: int) -> Submodule:
    return Submodule(ring, ambient, ())


def ambient_module(ring: Ring, ambient: int) -> Submodule:
    return canonicalize(Matrix.identity(ring, ambient))


def snf(m: Matrix) -> tuple[int, ...]:
    """Elementary divisors ``d_1 | d_2 | ... | d_r`` of an integer matrix,
    ``r`` its rank."""
    if m.ring.is_field:
        raise ExactLinError("elementary divisors are an integer-matrix notion")
    divisors, _ = _snf_dense(m.row_list(), m.cols)
    return tuple(divisors)


def is_split(u: Submodule) -> bool:
    """Whether ``u`` is a direct summand of the ambient module.  Always true
    over a field; over the integers, true iff all elementary divisors of the
    basis matrix are 1 (equivalently, the quotient is torsion-free)."""
    if u.ring.is_field:
        return True
    divisors, _ = _snf_dense([list(r) for r in u.basis], u.ambient)
    return all(d == 1 for d in divisors)


def span_sum(u: Submodule, w: Submodule) -> Submodule:
    """The submodule generated by ``u`` and ``w`` together.  Over the
    integers the sum of split submodules need not be split."""
    _check_same_ambient(u, w)
    return canonicalize(u.basis_matrix().stack(w.basis_matrix()))


def sum_of(modules: Iterable[Submodule], ring: Ring, ambient: int) -> Submodule:
    """Sum of an iterable of submodules (zero module for an empty iterable)."""
    rows: list[Sequence[int]] = []
    for m in modules:
        if m.ring != ring or m.ambient != ambient:
            raise AmbientMismatch("sum over mismatched modules")
        rows.extend(m.basis)
    return span(ring, ambient, rows)


def left_kernel(m: Matrix) -> Matrix:
    """A basis (as rows) of ``{x : x @ m == 0}``.  Over the integers the
    kernel of an integer matrix is automatically saturated."""
    if m.ring.is_field:
        return Matrix.from_rows(m.ring, _kernel_aug_mod_p(m, m.ring.p), m.rows)
    full, t, rank = _hnf_with_transform(m.row_list(), m.cols)
    return Matrix.from_rows(m.ring, t[rank:], m.rows)


def _kernel_aug_mod_p(m: Matrix, p: int) -> list[list[int]]:
    nrows = m.rows
    aug = [list(m.entries[i]) + [1 if j == i else 0 for j in range(nrows)] for i in range(nrows)]
    # Eliminate on the first m.cols columns only.
    r = 0
    for c in range(m.cols):
        pr = next((i for i in range(r, nrows) if aug[i][c] % p), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        r += 1
    return [row[m.cols:] for row in aug[r:]]


def intersect(u: Submodule, w: Submodule) -> Submodule:
    """Set-theoretic intersection, exact over both rings.  Computed from the
    kernel of the stacked-basis map, then pushed forward through ``u``."""
    _check_same_ambient(u, w)
    if u.is_zero or w.is_zero:
        return zero_module(u.ring, u.ambient)
    stacked = u.basis_matrix().stack(w.basis_matrix())
    ker = left_kernel(stacked)
    rows = []
    for krow in ker.entries:
        vec = [0] * u.ambient
        for coeff, brow in zip(krow[: u.rank], u.basis):
            if coeff:
                for j, x in enumerate(brow):
                    vec[j] += coeff * x
        rows.append(vec)
    return span(u.ring, u.ambient, rows)


def member(u: Submodule, vector: Sequence[int]) -> bool:
    """Exact membership of a vector in ``u``."""
    v = [u.ring.reduce(x) for x in vector]
    if u.ring.is_field:
        p = u.ring.p
        for row in u.basis:
            c = next(j for j, x in enumerate(row) if x)
            if v[c]:
                f = v[c]
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return not any(v)
    for row in u.basis:
        c = next(j for j, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def contains(u: Submodule, w: Submodule) -> bool:
    """Whether ``w`` is contained in ``u`` as a set, decided by exact
    membership of the basis rows of ``w``."""
    _check_same_ambient(u, w)
    return all(member(u, row) for row in w.basis)


def coordinates_in(u: Submodule, vector: Sequence[int]) -> list[int] | None:
    """Coefficients expressing ``vector`` in the canonical basis of ``u``,
    or None if the vector is not a member."""
    v = [u.ring.reduce(x) for x in vector]
    coeffs = []
    if u.ring.is_field:
        p = u.ring.p
        for row in u.basis:
            c = next(j for j, x in enumerate(row) if x)
            f = v[c]
            coeffs.append(f)
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return coeffs if not any(v) else None
    for row in u.basis:
        c = next(j for j, x in enumerate(row) if x)
        if v[c] % row[c]:
            return None
        q = v[c] // row[c]
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return coeffs if not any(v) else None


def extend_to_ambient_basis(u: Submodule) -> Matrix:
    """A basis of the ambient module whose first ``rank(u)`` rows span ``u``.

    Over a field the completion uses the first standard vectors off the pivot
    columns of the RREF.  Over the integers the completion is read off a
    Smith decomposition of the basis matrix and is verified to be unimodular;
    raises :class:`NotSplit` when ``u`` is not a summand.
    """
    n = u.ambient
    if u.ring.is_field:
        pivots = [next(j for j, x in enumerate(row) if x) for row in u.basis]
        rows = [list(r) for r in u.basis]
        for j in range(n):
            if j not in pivots:
                rows.append([1 if c == j else 0 for c in range(n)])
        return Matrix.from_rows(u.ring, rows, n)
    divisors, w = _snf_dense([list(r) for r in u.basis], n, want_colbasis=True)
    if any(d != 1 for d in divisors):
        raise NotSplit(f"{u!r} is not a summand")
    assert w is not None
    rank = len(divisors)
    # The first `rank` rows of w are a basis of u; swapping in the stored
    # canonical basis keeps the matrix unimodular (the two bases differ by a
    # unimodular change of coordinates).
    result = Matrix.from_rows(u.ring, [list(r) for r in u.basis] + w[rank:], n)
    if not is_unimodular(result):
        raise ExactLinError("basis completion failed verification")
    return result


def is_unimodular(m: Matrix) -> bool:
    """Whether a square matrix is invertible over its ring."""
    if m.rows != m.cols:
        return False
    if m.ring.is_field:
        red, _ = _rref_mod_p(m.row_list(), m.cols, m.ring.p)
        return len(red) == m.cols
    full, _, r = _hnf_with_transform(m.row_list(), m.cols)
    if r != m.cols:
        return False
    return all(full[i][i] == 1 for i in range(m.cols)) and all(
        full[i][j] == 0 for i in range(m.cols) for j in range(m.cols) if i != j
    )


def quotient_torsion_divisors(u: Submodule) -> tuple[int, ...]:
    """Elementary divisors > 1 of the quotient ``Z^n / u`` read from the
    Smith form of the presentation given by the basis rows."""
    if u.ring.is_field:
        return ()
    divisors, _ = _snf_dense([list(r) for r in u.basis], u.ambient)
    return tuple(d for d in divisors if d != 1)


# ---------------------------------------------------------------------------
# Enumeration over prime fields.
# ---------------------------------------------------------------------------


def all_subspaces(n: int, p: int, min_rank: int = 0, max_rank: int | None = None) -> list[Submodule]:
    """All subspaces of ``F_p^n`` with rank in ``[min_rank, max_rank]``,
    enumerated through their canonical RREF matrices, in deterministic order."""
    ring = GF(p)
    if max_rank is None:
        max_rank = n
    out: list[Submodule] = []
    if min_rank <= 0:
        out.append(zero_module(ring, n))
    for r in range(max(1, min_rank), max_rank + 1):
        out.extend(_subspaces_of_rank(n, p, r))
    out.sort(key=lambda s: (s.rank, s.sort_key()))
    return out


def _subspaces_of_rank(n: int, p: int, r: int) -> list[Submodule]:
    from itertools import combinations, product

    ring = GF(p)
    result = []
    for pivots in combinations(range(n), r):
        free_positions = []
        for i in range(r):
            for j in range(n):
                if j > pivots[i] and j not in pivots:
                    free_positions.append((i, j))
                # Columns that are pivots of later rows must be 0; pivot
                # column of own row is 1; columns before the pivot are 0.
        for values in product(range(p), repeat=len(free_positions)):
            rows = [[0] * n for _ in range(r)]
            for i in range(r):
                rows[i][pivots[i]] = 1
            for (i, j), v in zip(free_positions, values):
                rows[i][j] = v
            result.append(Submodule(ring, n, tuple(tuple(row) for row in rows)))
    return result


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def complements_in(w: Submodule, a: Submodule, candidates: Sequence[Submodule] | None = None) -> list[Submodule]:
    """All subspaces ``c`` with ``a (+) c == w`` (direct sum), drawn from
    ``candidates`` or from all subspaces of the ambient space."""
    _check_same_ambient(w, a)
    if not w.ring.is_field:
        raise ExactLinError("complement enumeration is field-only")
    if candidates is None:
        candidates = all_subspaces(w.ambient, w.ring.p)
    want = w.rank - a.rank
    out = []
    for c in candidates:
        if c.rank == want and contains(w, c) and (a & c).is_zero:
            out.append(c)
    return out


# ---------------------------------------------------------------------------
# Serialization: line-oriented text form, bit-exact round trip.
# ---------------------------------------------------------------------------


def dump_submodule(u: Submodule) -> str:
    """Block form: header ``ring n rank`` then one basis row per line."""
    lines = [f"{u.ring} {u.ambient} {u.rank}"]
    lines.extend(" ".join(str(x) for x in row) for row in u.basis)
    return "\n".join(lines)


def load_submodule(text: str) -> Submodule:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    ring_tok, n_tok, rank_tok = lines[0].split()
    ring, n, rank = ring_from_token(ring_tok), int(n_tok), int(rank_tok)
    rows = [[int(x) for x in ln.split()] for ln in lines[1 : 1 + rank]]
    if len(rows) != rank:
        raise ValueError("row count does not match header")
    sub = span(ring, n, rows)
    if sub.basis != tuple(tuple(r) for r in rows):
        raise ValueError("stored rows are not in canonical form")
    return sub


def dump_matrix(m: Matrix) -> str:
    lines = [f"{m.ring} {m.cols} {m.rows}"]
    lines.extend(" ".join(str(x) for x in row) for row in m.entries)
    return "\n".join(lines)


def load_matrix(text: str) -> Matrix:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    ring_tok, n_tok, rows_tok = lines[0].split()
    ring, n, nrows = ring_from_token(ring_tok), int(n_tok), int(rows_tok)
    rows = [[int(x) for x in ln.split()] for ln in lines[1 : 1 + nrows]]
    return Matrix.from_rows(ring, rows, n)
