"""Based simplicial-set models of the higher buildings.

`d_model(a, b, n, p)` materializes the finitely many nondegenerate,
non-basepoint simplices of the diagonal of the based multisimplicial set
with `a` lattice factors and `b` splitting factors over `F_p^n`:

* a lattice factor in degree `p` is a weakly increasing flag
  ``0 = V_0 <= ... <= V_p = F_p^n``;
* a splitting factor is a tuple of `p` middle parts (zeros allowed) whose
  internal direct sum is `F_p^n`, the two pinned outer parts being zero;
* all constituent submodules jointly have a common basis;
* nondegeneracy is *joint*: at every step some factor moves (a flag grows
  strictly, or a splitting part is nonzero).

Faces act factorwise (delete a flag entry, merge adjacent splitting parts);
a face that breaks a pinning lands on the basepoint.  Normalized chains over
these simplices compute the reduced homology of the model; the comparison
with the suspended higher buildings is :func:`check_suspension`.

The monoid structure is materialized at chain level by
:func:`mu_chain`: the Eilenberg-Zilber shuffle map followed by the
factorwise internal-direct-sum multiplication, with the two factors embedded
as complementary coordinate blocks.  :func:`check_bar_model` exhibits the
simplex-level bijection between the two-sided bar construction on a model
and the model with one more splitting factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .cbp import Collection, has_cbp_ie
from .complexes import higher_tits
from .exactlin import (
    GF,
    Ring,
    Submodule,
    all_subspaces,
    ambient_module,
    span,
    zero_module,
)
from .homology import ChainComplex, HomologyProfile, chains, homology


class ModelError(Exception):
    pass


DEFAULT_MODEL_CAP = 2_000_000


# ---------------------------------------------------------------------------
# Factor simplices.
# ---------------------------------------------------------------------------


def _face_flag(flag: tuple[Submodule, ...], i: int) -> tuple[Submodule, ...] | None:
    new = flag[:i] + flag[i + 1:]
    if not new[0].is_zero or not new[-1].is_ambient:
        return None
    return new


def _face_parts(parts: tuple[Submodule, ...], i: int) -> tuple[Submodule, ...] | None:
    p = len(parts)
    if i == 0:
        return parts[1:] if parts[0].is_zero else None
    if i == p:
        return parts[:-1] if parts[p - 1].is_zero else None
    merged = parts[i - 1] + parts[i]
    return parts[: i - 1] + (merged,) + parts[i + 1:]


def _degen_flag(flag: tuple[Submodule, ...], j: int) -> tuple[Submodule, ...]:
    return flag[: j + 1] + (flag[j],) + flag[j + 1:]


def _degen_parts(parts: tuple[Submodule, ...], j: int, zero: Submodule) -> tuple[Submodule, ...]:
    return parts[:j] + (zero,) + parts[j:]


def _activity_flag(flag: tuple[Submodule, ...]) -> int:
    mask = 0
    for i in range(len(flag) - 1):
        if flag[i] != flag[i + 1]:
            mask |= 1 << i
    return mask


def _activity_parts(parts: tuple[Submodule, ...]) -> int:
    mask = 0
    for i, part in enumerate(parts):
        if not part.is_zero:
            mask |= 1 << i
    return mask


ModelSimplex = tuple  # tuple over factors; each factor a tuple of Submodule


@dataclass(frozen=True, eq=False)
class SemiSimplicialModel:
    """Degreewise-finite collection of the nondegenerate non-basepoint
    diagonal simplices, with face maps and normalized chains."""

    a: int
    b: int
    n: int
    ring: Ring
    simplices: dict  # degree -> tuple[ModelSimplex, ...] in deterministic order

    def __post_init__(self):
        object.__setattr__(
            self,
            "index",
            {
                deg: {s: i for i, s in enumerate(simps)}
                for deg, simps in self.simplices.items()
            },
        )
        object.__setattr__(self, "_chains", None)

    @property
    def factors(self) -> int:
        return self.a + self.b

    def degree_of(self, simplex: ModelSimplex) -> int:
        return len(simplex[0]) - 1 if self.a else len(simplex[self.a])

    def activity(self, simplex: ModelSimplex) -> int:
        mask = 0
        for f in range(self.a):
            mask |= _activity_flag(simplex[f])
        for f in range(self.a, self.factors):
            mask |= _activity_parts(simplex[f])
        return mask

    def face(self, simplex: ModelSimplex, i: int) -> ModelSimplex | None:
        """The i-th face, or None for the basepoint."""
        out = []
        for f in range(self.a):
            nf = _face_flag(simplex[f], i)
            if nf is None:
                return None
            out.append(nf)
        for f in range(self.a, self.factors):
            np_ = _face_parts(simplex[f], i)
            if np_ is None:
                return None
            out.append(np_)
        return tuple(out)

    def is_nondegenerate(self, simplex: ModelSimplex, degree: int) -> bool:
        return self.activity(simplex) == (1 << degree) - 1 if degree else True

    def chain_complex(self) -> ChainComplex:
        if self._chains is None:
            sizes = {d: len(s) for d, s in self.simplices.items()}
            boundaries: dict[int, dict[tuple[int, int], int]] = {}
            for d, simps in self.simplices.items():
                if d == 0:
                    continue
                lower = self.index.get(d - 1, {})
                entries: dict[tuple[int, int], int] = {}
                for j, s in enumerate(simps):
                    for i in range(d + 1):
                        face = self.face(s, i)
                        if face is None:
                            continue
                        if not self.is_nondegenerate(face, d - 1):
                            continue
                        r = lower[face]  # must exist: faces stay in the model
                        key = (r, j)
                        entries[key] = entries.get(key, 0) + (-1) ** i
                entries = {k: v for k, v in entries.items() if v}
                if entries:
                    boundaries[d] = entries
            object.__setattr__(self, "_chains", ChainComplex(sizes, boundaries))
        return self._chains

    def homology(self) -> HomologyProfile:
        return homology(self.chain_complex())

    def members_of(self, simplex: ModelSimplex) -> tuple[Submodule, ...]:
        return _constituents(simplex, self.a, self.factors)


def _constituents(simplex: ModelSimplex, a: int, factors: int) -> tuple[Submodule, ...]:
    mems: dict[Submodule, None] = {}
    for f in range(a):
        for v in simplex[f]:
            if not v.is_zero and not v.is_ambient:
                mems[v] = None
    for f in range(a, factors):
        for part in simplex[f]:
            if not part.is_zero and not part.is_ambient:
                mems[part] = None
    return tuple(mems)


# ---------------------------------------------------------------------------
# Enumeration: cores (strict data) spread over step positions.
# ---------------------------------------------------------------------------


_L_CORE_CACHE: dict[tuple[int, int], list[tuple[Submodule, ...]]] = {}
_SL_CORE_CACHE: dict[tuple[int, int], list[tuple[Submodule, ...]]] = {}


def _l_cores(n: int, p: int) -> list[tuple[Submodule, ...]]:
    """Strict chains of proper nonzero subspaces (the intermediate values of
    a pinned flag); the empty chain is the direct jump."""
    if (n, p) not in _L_CORE_CACHE:
        subs = all_subspaces(n, p, 1, n - 1) if n >= 1 else []
        order = {s: i for i, s in enumerate(subs)}
        chains_out: list[tuple[Submodule, ...]] = [()]
        stack: list[tuple[Submodule, ...]] = [(s,) for s in subs]
        while stack:
            chain = stack.pop()
            chains_out.append(chain)
            top = chain[-1]
            for s in subs:
                if s.rank > top.rank and top <= s:
                    stack.append(chain + (s,))
        chains_out.sort(key=lambda ch: (len(ch), tuple(s.sort_key() for s in ch)))
        _L_CORE_CACHE[(n, p)] = chains_out
    return _L_CORE_CACHE[(n, p)]


def ordered_decompositions(n: int, p: int, length: int, within: Submodule | None = None) -> list[tuple[Submodule, ...]]:
    """Ordered tuples of `length` nonzero subspaces whose internal direct sum
    is `within` (the full space by default)."""
    ring = GF(p)
    target = within if within is not None else ambient_module(ring, n)
    if target.rank == 0:
        return [()] if length == 0 else []
    if length == 0:
        return []
    subs = [s for s in all_subspaces(n, p, 1) if s <= target]
    out: list[tuple[Submodule, ...]] = []

    def rec(remaining: Submodule, parts_left: int, acc: tuple[Submodule, ...]):
        if parts_left == 1:
            out.append(acc + (remaining,))
            return
        for s in subs:
            if s.rank <= remaining.rank - (parts_left - 1) and s <= remaining:
                rest_rank = remaining.rank - s.rank
                for comp in subs:
                    if comp.rank == rest_rank and comp <= remaining and (s & comp).is_zero:
                        rec(comp, parts_left - 1, acc + (s,))

    rec(target, length, ())
    return out


def _sl_cores(n: int, p: int) -> list[tuple[Submodule, ...]]:
    if (n, p) not in _SL_CORE_CACHE:
        cores: list[tuple[Submodule, ...]] = []
        for s in range(1, n + 1):
            cores.extend(ordered_decompositions(n, p, s))
        cores.sort(key=lambda ch: (len(ch), tuple(s.sort_key() for s in ch)))
        _SL_CORE_CACHE[(n, p)] = cores
    return _SL_CORE_CACHE[(n, p)]


def _spread_flag(core: tuple[Submodule, ...], positions: tuple[int, ...], degree: int,
                 zero: Submodule, full: Submodule) -> tuple[Submodule, ...]:
    values = (zero,) + core + (full,)
    flag = [zero]
    level = 0
    pos_set = set(positions)
    for i in range(degree):
        if i in pos_set:
            level += 1
        flag.append(values[level])
    return tuple(flag)


def _spread_parts(core: tuple[Submodule, ...], positions: tuple[int, ...], degree: int,
                  zero: Submodule) -> tuple[Submodule, ...]:
    parts = [zero] * degree
    for level, i in enumerate(sorted(positions)):
        parts[i] = core[level]
    return tuple(parts)


def _coverings(sizes: Sequence[int], degree: int):
    """Tuples of position sets S_f of the given sizes covering range(degree)."""
    all_positions = tuple(range(degree))
    full_mask = (1 << degree) - 1

    def rec(f: int, covered: int):
        if f == len(sizes):
            if covered == full_mask:
                yield ()
            return
        tail_capacity = sum(sizes[f + 1:])
        for subset in combinations(all_positions, sizes[f]):
            mask = 0
            for i in subset:
                mask |= 1 << i
            uncovered_after = (full_mask & ~(covered | mask)).bit_count()
            if uncovered_after > tail_capacity:
                continue
            for rest in rec(f + 1, covered | mask):
                yield (subset,) + rest

    yield from rec(0, 0)


def d_model(a: int, b: int, n: int, p: int, max_simplices: int = DEFAULT_MODEL_CAP) -> SemiSimplicialModel:
    """Build the full nondegenerate-simplex model with `a` flag factors and
    `b` splitting factors over F_p^n.  The rank-0 model is the unit: one
    simplex in degree 0."""
    if a < 0 or b < 0 or a + b < 1:
        raise ModelError("need at least one factor")
    ring = GF(p)
    if n == 0:
        z = zero_module(ring, 0)
        simplex = tuple([(z,)] * a + [()] * b)
        return SemiSimplicialModel(a, b, n, ring, {0: (tuple(simplex),)})
    zero = zero_module(ring, n)
    full = ambient_module(ring, n)
    l_cores = _l_cores(n, p)
    sl_cores = _sl_cores(n, p)
    factor_cores = [l_cores] * a + [sl_cores] * b

    by_degree: dict[int, list[ModelSimplex]] = {}
    count = 0
    for combo in product(*factor_cores):
        sizes = [len(core) + 1 for core in combo[:a]] + [len(core) for core in combo[a:]]
        members: dict[Submodule, None] = {}
        for f in range(a):
            for v in combo[f]:
                members[v] = None
        for f in range(a, a + b):
            for v in combo[f]:
                if not v.is_ambient:
                    members[v] = None
        if members and not has_cbp_ie(Collection(ring, n, tuple(members), trusted=True)):
            continue
        for degree in range(max(sizes), sum(sizes) + 1):
            for position_sets in _coverings(sizes, degree):
                factors = []
                for f in range(a):
                    factors.append(_spread_flag(combo[f], position_sets[f], degree, zero, full))
                for f in range(a, a + b):
                    factors.append(_spread_parts(combo[f], position_sets[f], degree, zero))
                by_degree.setdefault(degree, []).append(tuple(factors))
                count += 1
                if count > max_simplices:
                    raise ModelError(f"model exceeds {max_simplices} simplices")
    simplices = {
        d: tuple(sorted(lst, key=_simplex_key)) for d, lst in sorted(by_degree.items())
    }
    return SemiSimplicialModel(a, b, n, ring, simplices)


def _simplex_key(simplex: ModelSimplex):
    return tuple(tuple(s.sort_key() for s in factor) for factor in simplex)


def dump_model(model: SemiSimplicialModel) -> str:
    """Per degree, one line per nondegenerate simplex listing the canonical
    basis rows of its constituent submodules."""
    lines = [f"#model a={model.a} b={model.b} n={model.n} ring={model.ring}"]
    for d in sorted(model.simplices):
        lines.append(f"#degree {d} count {len(model.simplices[d])}")
        for s in model.simplices[d]:
            factor_strs = []
            for factor in s:
                entry_strs = []
                for sub in factor:
                    flat = ",".join(str(x) for row in sub.basis for x in row)
                    entry_strs.append(f"[{flat}]" if flat else "[]")
                factor_strs.append(" ".join(entry_strs))
            lines.append(" | ".join(factor_strs))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Suspension comparison.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuspensionReport:
    a: int
    b: int
    n: int
    p: int
    ok: bool
    building_profile: HomologyProfile
    model_profile: HomologyProfile


def check_suspension(a: int, b: int, n: int, p: int) -> SuspensionReport:
    """Compare the reduced homology of the higher building with the model's
    homology shifted down by a+b+1 in every degree."""
    if n < 1:
        raise ModelError("suspension comparison needs positive rank")
    building = homology(chains(higher_tits(a, b, n, p)))
    model_prof = d_model(a, b, n, p).homology()
    ok = model_prof == building.shifted(a + b + 1)
    return SuspensionReport(a, b, n, p, ok, building, model_prof)


# ---------------------------------------------------------------------------
# Tensor complexes and the shuffle product.
# ---------------------------------------------------------------------------


def tensor_chain_complex(cx: ChainComplex, cy: ChainComplex) -> tuple[ChainComplex, dict]:
    """Tensor product complex with basis pairs ordered by (left degree, left
    index, right index); returns the complex and the pair index maps."""
    pairs: dict[int, list[tuple[int, int, int]]] = {}
    for i in cx.degrees():
        for j in cy.degrees():
            pairs.setdefault(i + j, []).extend(
                (i, xi, yj) for xi in range(cx.size(i)) for yj in range(cy.size(j))
            )
    for d in pairs:
        pairs[d].sort()
    index = {d: {t: k for k, t in enumerate(lst)} for d, lst in pairs.items()}
    sizes = {d: len(lst) for d, lst in pairs.items()}
    boundaries: dict[int, dict[tuple[int, int], int]] = {}
    for d, lst in pairs.items():
        entries: dict[tuple[int, int], int] = {}
        lower = index.get(d - 1, {})
        for col, (i, xi, yj) in enumerate(lst):
            bx = cx.boundaries.get(i, {})
            for (r, c), v in bx.items():
                if c == xi:
                    entries_key = (lower[(i - 1, r, yj)], col)
                    entries[entries_key] = entries.get(entries_key, 0) + v
            by = cy.boundaries.get(d - i, {})
            sign = (-1) ** i
            for (r, c), v in by.items():
                if c == yj:
                    entries_key = (lower[(i, xi, r)], col)
                    entries[entries_key] = entries.get(entries_key, 0) + sign * v
        entries = {k: v for k, v in entries.items() if v}
        if entries:
            boundaries[d] = entries
    return ChainComplex(sizes, boundaries), index


def _shuffles(p: int, q: int):
    """(alpha, beta, sign) with alpha the left factor's step positions."""
    for alpha in combinations(range(p + q), p):
        beta = tuple(i for i in range(p + q) if i not in alpha)
        inversions = sum(1 for a in alpha for b in beta if a > b)
        yield alpha, beta, (-1) ** inversions


def _apply_degens(simplex: ModelSimplex, positions: Iterable[int], a: int, factors: int,
                  zero: Submodule) -> ModelSimplex:
    out = list(simplex)
    for j in sorted(positions):
        for f in range(a):
            out[f] = _degen_flag(out[f], j)
        for f in range(a, factors):
            out[f] = _degen_parts(out[f], j, zero)
    return tuple(out)


def embed_block(sub: Submodule, offset: int, total: int) -> Submodule:
    """Image of a subspace of F_p^k inside F_p^total with its coordinates
    placed at [offset, offset + k)."""
    rows = [
        (0,) * offset + tuple(row) + (0,) * (total - offset - sub.ambient)
        for row in sub.basis
    ]
    return span(sub.ring, total, rows)


def _combine(x: ModelSimplex, y: ModelSimplex, a: int, factors: int, m: int, n: int) -> ModelSimplex:
    out = []
    for f in range(factors):
        xs, ys = x[f], y[f]
        assert len(xs) == len(ys)
        combined = tuple(
            _block_sum(xe, ye, m, n) for xe, ye in zip(xs, ys)
        )
        out.append(combined)
    return tuple(out)


def _block_sum(left: Submodule, right: Submodule, m: int, n: int) -> Submodule:
    rows = [tuple(row) + (0,) * n for row in left.basis]
    rows += [(0,) * m + tuple(row) for row in right.basis]
    return span(left.ring, m + n, rows)


@dataclass(frozen=True, eq=False)
class BasedChainMap:
    """A degreewise integer matrix between chain complexes; commutation with
    the boundaries is asserted at construction."""

    domain: ChainComplex
    codomain: ChainComplex
    matrices: dict  # degree -> {(codomain row, domain col): value}

    def __post_init__(self):
        for d, mat in self.matrices.items():
            # codomain boundary . map == map . domain boundary
            lhs = _compose(self.codomain.boundaries.get(d, {}), mat)
            rhs = _compose(self.matrices.get(d - 1, {}), self.domain.boundaries.get(d, {}))
            if lhs != rhs:
                raise ModelError(f"chain map does not commute with boundaries in degree {d}")

    def apply(self, degree: int, vector: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        mat = self.matrices.get(degree, {})
        for (r, c), v in mat.items():
            x = vector.get(c, 0)
            if x:
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}


def _compose(a: dict[tuple[int, int], int], b: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    by_row: dict[int, list[tuple[int, int]]] = {}
    for (r, c), v in a.items():
        by_row.setdefault(c, []).append((r, v))
    out: dict[tuple[int, int], int] = {}
    for (k, j), v in b.items():
        for r, w in by_row.get(k, ()):
            key = (r, j)
            out[key] = out.get(key, 0) + v * w
    return {k: v for k, v in out.items() if v}


def mu_chain(a: int, b: int, m: int, n: int, p: int,
             models: dict | None = None) -> tuple[BasedChainMap, dict, SemiSimplicialModel]:
    """The chain-level product: Eilenberg-Zilber shuffles followed by the
    factorwise internal direct sum, the left factor embedded in the first
    `m` coordinates and the right factor in the last `n`.

    Returns the chain map from the tensor complex of the two models to the
    rank-(m+n) model's complex, the tensor pair index, and the target model.
    """
    models = models if models is not None else {}

    def get_model(k: int) -> SemiSimplicialModel:
        if k not in models:
            models[k] = d_model(a, b, k, p)
        return models[k]

    mx, my, mz = get_model(m), get_model(n), get_model(m + n)
    cx, cy, cz = mx.chain_complex(), my.chain_complex(), mz.chain_complex()
    tensor, pair_index = tensor_chain_complex(cx, cy)
    zero_m = zero_module(GF(p), m)
    zero_n = zero_module(GF(p), n)
    factors = a + b

    matrices: dict[int, dict[tuple[int, int], int]] = {}
    for d, idx in pair_index.items():
        entries: dict[tuple[int, int], int] = {}
        target_index = mz.index.get(d, {})
        for (i, xi, yj), col in idx.items():
            x = mx.simplices[i][xi]
            y = my.simplices[d - i][yj]
            for alpha, beta, sign in _shuffles(i, d - i):
                xs = _apply_degens(x, beta, a, factors, zero_m)
                ys = _apply_degens(y, alpha, a, factors, zero_n)
                combined = _combine(xs, ys, a, factors, m, n)
                row = target_index.get(combined)
                if row is None:
                    raise ModelError("shuffle product left the target model")
                key = (row, col)
                entries[key] = entries.get(key, 0) + sign
        entries = {k: v for k, v in entries.items() if v}
        if entries:
            matrices[d] = entries
    return BasedChainMap(tensor, cz, matrices), pair_index, mz


def apply_gl_to_simplex(simplex: ModelSimplex, g_rows: Sequence[Sequence[int]],
                        ring: Ring, n: int) -> ModelSimplex:
    """Relabel every constituent subspace along the row action v -> v @ g."""
    out = []
    for factor in simplex:
        out.append(tuple(_transform_sub(sub, g_rows, ring, n) for sub in factor))
    return tuple(out)


def _transform_sub(sub: Submodule, g_rows, ring: Ring, n: int) -> Submodule:
    rows = []
    for row in sub.basis:
        vec = [0] * n
        for coeff, grow in zip(row, g_rows):
            if coeff:
                for j, x in enumerate(grow):
                    vec[j] += coeff * x
        rows.append(vec)
    return span(ring, n, rows)


# ---------------------------------------------------------------------------
# The bar-model bijection.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BarModelReport:
    a: int
    b: int
    n: int
    p: int
    cutoff: int
    ok: bool
    counts: dict  # (internal degree, bar degree) -> (lhs count, rhs count)
    faces_checked: int


def check_bar_model(a: int, b: int, n: int, p: int, cutoff: int = 3) -> BarModelReport:
    """Enumerate the nondegenerate bisimplices of the two-sided bar
    construction on the diagonal model in bidegrees up to the cutoff and
    exhibit the bijection with the model having one extra splitting factor
    (the bar direction becomes the new splitting slot).  Counts must agree
    exactly and faces in both directions must correspond."""
    ring = GF(p)
    factors = a + b
    zero = zero_module(ring, n)

    base = d_model(a, b, n, p)
    block_models: dict[tuple[Submodule, ...], dict] = {}

    def slot_elements(part: Submodule, degree: int):
        """All (possibly degenerate) non-basepoint degree-`degree` elements
        of the diagonal model over the subspace `part`, via cores spread
        over active position sets, transported from the standard model."""
        key = part.basis
        if key not in block_models:
            std = d_model(a, b, part.rank, p)
            transported: dict[int, list[ModelSimplex]] = {}
            for r, simps in std.simplices.items():
                transported[r] = [
                    apply_gl_to_simplex(s, part.basis, ring, n) for s in simps
                ]
            block_models[key] = transported
        transported = block_models[key]
        out = []
        for r, simps in transported.items():
            if r > degree:
                continue
            for core in simps:
                for positions in combinations(range(degree), r):
                    out.append((_spread_model_simplex(core, positions, degree, a, factors, zero), positions))
        return out

    def bar_elements(p_int: int, q: int):
        """LHS: decomposition + per-slot elements, jointly nondegenerate."""
        out = []
        for dec in ordered_decompositions(n, p, q):
            slots = [slot_elements(part, p_int) for part in dec]
            full_mask = (1 << p_int) - 1
            for choice in product(*slots):
                mask = 0
                for elt, positions in choice:
                    for i in positions:
                        mask |= 1 << i
                if mask == full_mask:
                    out.append((dec, tuple(e for e, _ in choice)))
        return out

    def combine_bar(dec, elts) -> ModelSimplex:
        factors_out = []
        for f in range(factors):
            cols = [e[f] for e in elts]
            length = len(cols[0])
            combined = []
            for r in range(length):
                rows: list[tuple[int, ...]] = []
                for colsimp in cols:
                    rows.extend(colsimp[r].basis)
                combined.append(span(ring, n, rows))
            factors_out.append(tuple(combined))
        return tuple(factors_out)

    def rhs_elements(p_int: int, q: int):
        out = []
        decs = ordered_decompositions(n, p, q)
        for w in base.simplices.get(p_int, ()):
            mems = base.members_of(w)
            for dec in decs:
                all_mems = tuple(dict.fromkeys(mems + tuple(d for d in dec if not d.is_ambient)))
                if not all_mems or has_cbp_ie(Collection(ring, n, all_mems, trusted=True)):
                    out.append((w, dec))
        return out

    counts = {}
    ok = True
    faces_checked = 0
    lhs_tables: dict[tuple[int, int], dict] = {}
    for p_int in range(1, cutoff + 1):
        for q in range(1, cutoff + 1):
            lhs = bar_elements(p_int, q)
            rhs = rhs_elements(p_int, q)
            mapped = {}
            for dec, elts in lhs:
                image = (combine_bar(dec, elts), dec)
                if image in mapped:
                    ok = False
                mapped[image] = (dec, elts)
            counts[(p_int, q)] = (len(lhs), len(rhs))
            if len(lhs) != len(rhs) or set(mapped) != set(rhs):
                ok = False
            lhs_tables[(p_int, q)] = mapped

    # Face correspondence: inner bar faces merge adjacent decomposition
    # parts and multiply the carried elements; on the other side they merge
    # the parts of the extra splitting slot.  Internal faces act
    # simultaneously on the original factors on both sides.
    for (p_int, q), mapped in lhs_tables.items():
        for (image, dec_img), (dec, elts) in mapped.items():
            for j in range(1, q):
                lhs_face = _bar_face(dec, elts, j, ring, n, factors)
                rhs_face = dec_img[: j - 1] + (dec_img[j - 1] + dec_img[j],) + dec_img[j + 1:]
                if lhs_face != (image, rhs_face):
                    ok = False
                faces_checked += 1
            if p_int >= 1:
                for i in range(p_int + 1):
                    lf = _internal_face(elts, dec, i, a, factors)
                    rf = base.face(image, i)
                    image_of_lf = None if lf is None else combine_bar(dec, lf)
                    if image_of_lf != rf:
                        ok = False
                    faces_checked += 1
    return BarModelReport(a, b, n, p, cutoff, ok, counts, faces_checked)


def _spread_model_simplex(core: ModelSimplex, positions: tuple[int, ...], degree: int,
                          a: int, factors: int, zero: Submodule) -> ModelSimplex:
    """Spread a nondegenerate simplex across `degree` steps, active exactly
    at `positions` (the unique degeneracy with that activity set)."""
    missing = [i for i in range(degree) if i not in positions]
    return _apply_degens(core, missing, a, factors, zero)


def _bar_face(dec, elts, j: int, ring: Ring, n: int, factors: int):
    """Inner bar face: merge decomposition parts j-1, j (0-based tuple) and
    multiply the corresponding elements by the factorwise internal sum."""
    merged_part = dec[j - 1] + dec[j]
    new_dec = dec[: j - 1] + (merged_part,) + dec[j + 1:]
    x, y = elts[j - 1], elts[j]
    combined = []
    for f in range(factors):
        combined.append(tuple(span(ring, n, list(xe.basis) + list(ye.basis)) for xe, ye in zip(x[f], y[f])))
    new_elts = elts[: j - 1] + (tuple(combined),) + elts[j + 1:]
    # Recombine the whole tuple to the image side.
    factors_out = []
    for f in range(factors):
        cols = [e[f] for e in new_elts]
        length = len(cols[0])
        merged = []
        for r in range(length):
            rows: list[tuple[int, ...]] = []
            for colsimp in cols:
                rows.extend(colsimp[r].basis)
            merged.append(span(ring, n, rows))
        factors_out.append(tuple(merged))
    return (tuple(factors_out), new_dec)


def _internal_face(elts, dec, i: int, a: int, factors: int):
    """Simultaneous internal face across the bar slots.  Flag pinning is
    relative to each slot's block, not the full ambient space."""
    out = []
    for e, part in zip(elts, dec):
        fs = []
        for f in range(a):
            new = e[f][:i] + e[f][i + 1:]
            if not new[0].is_zero or new[-1] != part:
                return None
            fs.append(new)
        for f in range(a, factors):
            np_ = _face_parts(e[f], i)
            if np_ is None:
                return None
            fs.append(np_)
        out.append(tuple(fs))
    return tuple(out)
