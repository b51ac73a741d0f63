"""Finite truncations of simplicial sets with normalized GF(2) cochains.

A model stores only nondegenerate simplices.  Face maps land in "targets": a
pair (word, cell) where word is a degeneracy word in canonical form (strictly
decreasing operator indices) applied to a nondegenerate cell.  The word, read
as a set, is exactly the set of repeat positions of the underlying surjection,
which is what makes products and quotients finite and the cup-i formulas
evaluable.

Cochains are normalized: a degeneracy-decorated target evaluates to 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from collections import Counter

import numpy as np

from .errors import (
    ModelMismatchError,
    TrivialCoverError,
    TruncationError,
    ValidationError,
)
from .gf2 import F2Matrix, solve_affine

Target = tuple  # (word: tuple[int, ...], cell: int)


def insert_degeneracy(word: tuple, a: int) -> tuple:
    """Canonical word of s_a applied to a simplex whose word is given.

    Operationally: letters >= a shift up by one and a is inserted in the
    unique position keeping the word strictly decreasing.
    """
    res = []
    for idx, w in enumerate(word):
        if a > w:
            return tuple(res) + (a,) + word[idx:]
        res.append(w + 1)
    return tuple(res) + (a,)


def compose_words(outer, inner: tuple, cell: int) -> Target:
    """Apply an iterable of degeneracy letters (outermost first) to a target."""
    word = inner
    for a in reversed(tuple(outer)):
        word = insert_degeneracy(word, a)
    return (word, cell)


class SimplicialModel:
    """Nondegenerate cells per degree plus decorated face maps.

    faces[n][c][i] is the i-th face of the n-cell c, a (word, cell) target of
    dimension n-1.  faces[0] is an empty placeholder.
    """

    def __init__(self, max_degree: int, cells, faces, name: str = "model"):
        self.max_degree = int(max_degree)
        self.cells = tuple(int(c) for c in cells)
        self.faces = faces
        self.name = name
        self._cache: dict = {}
        if len(self.cells) != self.max_degree + 1:
            raise ValidationError(
                f"{name}: cells list length {len(self.cells)} vs max_degree {max_degree}"
            )

    def __repr__(self) -> str:
        return f"SimplicialModel({self.name}, cells={self.cells})"

    def n_cells(self, n: int) -> int:
        return self.cells[n] if 0 <= n <= self.max_degree else 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.cells))

    # -- face calculus -------------------------------------------------------

    def face(self, n: int, target: Target, i: int) -> Target:
        """d_i of a dimension-n target, pushing d through the degeneracy word."""
        word, cell = target
        out = []
        k = i
        for pos, w in enumerate(word):
            if k == w or k == w + 1:
                return compose_words(out, word[pos + 1 :], cell)
            if k < w:
                out.append(w - 1)
            else:
                out.append(w)
                k -= 1
        b = n - len(word)
        fw, fc = self.faces[b][cell][k]
        return compose_words(out, fw, fc)

    def subface(self, n: int, cell: int, keep) -> Target:
        """Restrict an n-cell to the vertex subset keep (sorted ascending)."""
        keep_set = set(keep)
        target: Target = ((), cell)
        dim = n
        for v in range(n, -1, -1):
            if v not in keep_set:
                target = self.face(dim, target, v)
                dim -= 1
        return target

    def targets(self, n: int):
        """All dimension-n targets (word, cell) in a deterministic order."""
        out = []
        for m in range(min(n, self.max_degree) + 1):
            k = n - m
            for combo in combinations(range(n), k):
                word = tuple(sorted(combo, reverse=True))
                for cell in range(self.cells[m]):
                    out.append((word, cell))
        return out

    # -- validation ----------------------------------------------------------

    def _check_target(self, target, dim: int) -> str | None:
        word, cell = target
        if any(word[k] <= word[k + 1] for k in range(len(word) - 1)):
            return f"degeneracy word {word} is not strictly decreasing"
        if word and (word[0] > dim - 1 or word[-1] < 0):
            return f"degeneracy word {word} out of range for dimension {dim}"
        core = dim - len(word)
        if core < 0 or core > self.max_degree or not 0 <= cell < self.cells[core]:
            return f"target {target} has no core cell in degree {core}"
        return None

    def validate(self, deep: bool = True) -> list[str]:
        """Structural checks, plus the simplicial identities when deep."""
        bad = []
        for n in range(1, self.max_degree + 1):
            if len(self.faces[n]) != self.cells[n]:
                bad.append(f"degree {n}: face table size mismatch")
                continue
            for c in range(self.cells[n]):
                row = self.faces[n][c]
                if len(row) != n + 1:
                    bad.append(f"degree {n} cell {c}: expected {n + 1} faces")
                    continue
                for i, t in enumerate(row):
                    msg = self._check_target(t, n - 1)
                    if msg:
                        bad.append(f"degree {n} cell {c} face {i}: {msg}")
        if bad or not deep:
            return bad
        for n in range(2, self.max_degree + 1):
            for c in range(self.cells[n]):
                for j in range(1, n + 1):
                    dj = self.faces[n][c][j]
                    for i in range(j):
                        lhs = self.face(n - 1, dj, i)
                        rhs = self.face(n - 1, self.faces[n][c][i], j - 1)
                        if lhs != rhs:
                            bad.append(
                                f"degree {n} cell {c}: d_{i} d_{j} != d_{j-1} d_{i}"
                                f" ({lhs} vs {rhs})"
                            )
        return bad

    def require_valid(self, deep: bool = True) -> None:
        bad = self.validate(deep=deep)
        if bad:
            raise ValidationError(
                f"{self.name}: {len(bad)} violations; first: {bad[0]}"
            )

    # -- chain level ---------------------------------------------------------

    def coboundary_matrix(self, k: int) -> F2Matrix:
        """delta: C^k -> C^{k+1} over GF(2); rows are (k+1)-cells."""
        if k < 0 or k + 1 > self.max_degree:
            raise TruncationError(
                f"{self.name}: coboundary degree {k} needs cells in degree {k + 1}"
            )
        key = ("cob", k)
        if key not in self._cache:
            m = F2Matrix.zeros(self.cells[k + 1], self.cells[k])
            for c in range(self.cells[k + 1]):
                for word, fc in self.faces[k + 1][c]:
                    if not word:
                        m.set(c, fc, m.get(c, fc) ^ 1)
            self._cache[key] = m
        return self._cache[key]

    def boundary_int(self, k: int) -> list[list[int]]:
        """Integral boundary C_k -> C_{k-1} with signs; rows are (k-1)-cells."""
        if k < 1 or k > self.max_degree:
            raise TruncationError(f"{self.name}: boundary degree {k} out of range")
        rows = [[0] * self.cells[k] for _ in range(self.cells[k - 1])]
        for c in range(self.cells[k]):
            for i, (word, fc) in enumerate(self.faces[k][c]):
                if not word:
                    rows[fc][c] += (-1) ** i
        return rows

    def cup_table(self, p: int, q: int, i: int):
        """Index triples (out, u, v) with odd multiplicity for the cup-i sum."""
        key = ("cup", p, q, i)
        if key not in self._cache:
            self._cache[key] = _build_cup_table(self, p, q, i)
        return self._cache[key]


def _build_cup_table(model: SimplicialModel, p: int, q: int, i: int):
    n = p + q - i
    if n > model.max_degree or p < 0 or q < 0 or i < 0:
        raise TruncationError(
            f"{model.name}: cup_{i} of degrees ({p},{q}) needs degree {n}"
        )
    counts: Counter = Counter()
    for c in range(model.cells[n]):
        for cuts in combinations_with_replacement(range(n + 1), i + 1):
            even: set = set()
            odd: set = set()
            prev = 0
            for k, a in enumerate(cuts + (n,)):
                (even if k % 2 == 0 else odd).update(range(prev, a + 1))
                prev = a
            if len(even) != p + 1 or len(odd) != q + 1:
                continue
            wu, cu = model.subface(n, c, sorted(even))
            if wu:
                continue
            wv, cv = model.subface(n, c, sorted(odd))
            if wv:
                continue
            counts[(c, cu, cv)] += 1
    keep = sorted(t for t, m in counts.items() if m % 2)
    out = np.array([t[0] for t in keep], dtype=np.int64)
    uu = np.array([t[1] for t in keep], dtype=np.int64)
    vv = np.array([t[2] for t in keep], dtype=np.int64)
    return out, uu, vv


@dataclass(frozen=True)
class Cochain:
    """A normalized GF(2) cochain: one bit per nondegenerate cell."""

    model: SimplicialModel
    degree: int
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.uint8) & 1
        if vals.shape != (self.model.n_cells(self.degree),):
            raise ModelMismatchError(
                f"cochain length {vals.shape} vs {self.model.n_cells(self.degree)}"
                f" cells in degree {self.degree}"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, model, degree: int) -> "Cochain":
        return cls(model, degree, np.zeros(model.n_cells(degree), dtype=np.uint8))

    @classmethod
    def from_support(cls, model, degree: int, support) -> "Cochain":
        vals = np.zeros(model.n_cells(degree), dtype=np.uint8)
        for s in support:
            vals[s] ^= 1
        return cls(model, degree, vals)

    def support(self) -> tuple:
        return tuple(int(i) for i in np.nonzero(self.values)[0])

    def is_zero(self) -> bool:
        return not self.values.any()

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.model is not other.model or self.degree != other.degree:
            raise ModelMismatchError("cochain addition across models or degrees")
        return Cochain(self.model, self.degree, self.values ^ other.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.model is other.model
            and self.degree == other.degree
            and bool(np.array_equal(self.values, other.values))
        )

    def eval_target(self, target: Target) -> int:
        word, cell = target
        return 0 if word else int(self.values[cell])


def coboundary(u: Cochain) -> Cochain:
    m = u.model.coboundary_matrix(u.degree)
    return Cochain(u.model, u.degree + 1, m.mul_vec(u.values))


def is_closed(u: Cochain) -> bool:
    if u.degree + 1 > u.model.max_degree:
        return u.model.n_cells(u.degree + 1) == 0 or coboundary(u).is_zero()
    return coboundary(u).is_zero()


def cup_i(u: Cochain, v: Cochain, i: int) -> Cochain:
    """Steenrod cup-i product by interval cuts; cup_0 is Alexander-Whitney."""
    if u.model is not v.model:
        raise ModelMismatchError("cup of cochains on different models")
    model = u.model
    n = u.degree + v.degree - i
    out_idx, u_idx, v_idx = model.cup_table(u.degree, v.degree, i)
    acc = np.zeros(model.n_cells(n), dtype=np.uint8)
    if out_idx.size:
        np.bitwise_xor.at(acc, out_idx, u.values[u_idx] & v.values[v_idx])
    return Cochain(model, n, acc)


def cup(u: Cochain, v: Cochain) -> Cochain:
    return cup_i(u, v, 0)


def sq(u: Cochain, k: int) -> Cochain:
    """Steenrod square Sq^k on a closed cochain, as u cup_{p-k} u.

    Returns the zero cochain when k exceeds the degree (unstable axiom).
    """
    if k < 0:
        raise ValidationError(f"sq: negative k={k}")
    if not is_closed(u):
        raise ValidationError("sq requires a closed cochain")
    if k > u.degree:
        return Cochain.zero(u.model, u.degree + k)
    return cup_i(u, u, u.degree - k)


class SimplicialMap:
    """A map of models: each source cell goes to a decorated target cell."""

    def __init__(self, source: SimplicialModel, target: SimplicialModel, assignment, name="map"):
        self.source = source
        self.target = target
        self.assignment = assignment
        self.name = name

    def __repr__(self):
        return f"SimplicialMap({self.name}: {self.source.name} -> {self.target.name})"

    def apply(self, n: int, t: Target) -> Target:
        word, cell = t
        iw, ic = self.assignment[n - len(word)][cell]
        return compose_words(word, iw, ic)

    def validate(self) -> list[str]:
        bad = []
        top = self.source.max_degree
        for n in range(top + 1):
            if len(self.assignment[n]) != self.source.cells[n]:
                bad.append(f"degree {n}: assignment size mismatch")
                return bad
            for c in range(self.source.cells[n]):
                msg = self.target._check_target(self.assignment[n][c], n)
                if msg:
                    bad.append(f"degree {n} cell {c}: {msg}")
        if bad:
            return bad
        for n in range(1, top + 1):
            for c in range(self.source.cells[n]):
                img = self.assignment[n][c]
                for i in range(n + 1):
                    lhs = self.target.face(n, img, i)
                    rhs = self.apply(n - 1, self.source.faces[n][c][i])
                    if lhs != rhs:
                        bad.append(
                            f"degree {n} cell {c}: face {i} does not commute"
                        )
        return bad

    def require_valid(self) -> None:
        bad = self.validate()
        if bad:
            raise ValidationError(f"map {self.name}: {bad[0]}")

    def pullback(self, u: Cochain) -> Cochain:
        if u.model is not self.target:
            raise ModelMismatchError("pullback: cochain not on the map's target")
        vals = np.zeros(self.source.n_cells(u.degree), dtype=np.uint8)
        for c, (word, cell) in enumerate(self.assignment[u.degree]):
            if not word:
                vals[c] = u.values[cell]
        return Cochain(self.source, u.degree, vals)

    def pullback_matrix(self, k: int) -> F2Matrix:
        m = F2Matrix.zeros(self.source.n_cells(k), self.target.n_cells(k))
        for c, (word, cell) in enumerate(self.assignment[k]):
            if not word:
                m.set(c, cell, 1)
        return m

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        """self after inner (inner.source -> self.target)."""
        if inner.target is not self.source:
            raise ModelMismatchError("composition: inner target is not outer source")
        top = inner.source.max_degree
        assignment = [
            [self.apply(n, inner.assignment[n][c]) for c in range(inner.source.cells[n])]
            for n in range(top + 1)
        ]
        return SimplicialMap(
            inner.source, self.target, assignment, f"{self.name}*{inner.name}"
        )

    @classmethod
    def identity(cls, model: SimplicialModel) -> "SimplicialMap":
        assignment = [
            [((), c) for c in range(model.cells[n])] for n in range(model.max_degree + 1)
        ]
        return cls(model, model, assignment, "id")


class Involution:
    """A free simplicial automorphism of order two, stored as cell permutations."""

    def __init__(self, model: SimplicialModel, perms, name="involution"):
        self.model = model
        self.perms = [np.asarray(p, dtype=np.int64) for p in perms]
        self.name = name

    def act_cell(self, n: int, c: int) -> int:
        return int(self.perms[n][c])

    def act_target(self, dim: int, t: Target) -> Target:
        return _target_with_dim(t, dim, self.perms)

    def as_map(self) -> SimplicialMap:
        assignment = [
            [((), int(self.perms[n][c])) for c in range(self.model.cells[n])]
            for n in range(self.model.max_degree + 1)
        ]
        return SimplicialMap(self.model, self.model, assignment, self.name)

    def pullback(self, u: Cochain) -> Cochain:
        if u.model is not self.model:
            raise ModelMismatchError("involution pullback on the wrong model")
        return Cochain(u.model, u.degree, u.values[self.perms[u.degree]])

    def validate(self) -> list[str]:
        bad = []
        for n, perm in enumerate(self.perms):
            if perm.shape != (self.model.cells[n],):
                bad.append(f"degree {n}: permutation size mismatch")
                continue
            if not np.array_equal(np.sort(perm), np.arange(self.model.cells[n])):
                bad.append(f"degree {n}: not a permutation")
                continue
            if not np.array_equal(perm[perm], np.arange(self.model.cells[n])):
                bad.append(f"degree {n}: does not square to the identity")
            if np.any(perm == np.arange(self.model.cells[n])):
                bad.append(f"degree {n}: fixed cell found")
        if bad:
            return bad
        return self.as_map().validate()

    def require_valid(self) -> None:
        bad = self.validate()
        if bad:
            raise ValidationError(f"involution {self.name}: {bad[0]}")


def _target_with_dim(t: Target, dim: int, perms) -> Target:
    word, cell = t
    return (word, int(perms[dim - len(word)][cell]))


# -- products ----------------------------------------------------------------


@dataclass
class ProductModel:
    model: SimplicialModel
    left: SimplicialMap
    right: SimplicialMap
    coords: list  # per degree, list of (target_a, target_b)
    index: list  # per degree, dict (target_a, target_b) -> cell


def product(a: SimplicialModel, b: SimplicialModel, up_to: int, name=None) -> ProductModel:
    """Categorical product truncated at up_to.

    Nondegenerate n-cells are pairs of decorated targets with disjoint
    degeneracy words (the shuffle description of Eilenberg-Zilber).
    """
    if up_to > a.max_degree + b.max_degree:
        raise ValidationError("product truncation exceeds summed degrees")
    name = name or f"{a.name}x{b.name}"
    coords = []
    index = []
    cells = []
    for n in range(up_to + 1):
        level = []
        for ta in a.targets(n):
            wa = set(ta[0])
            for tb in b.targets(n):
                if wa.isdisjoint(tb[0]):
                    level.append((ta, tb))
        coords.append(level)
        index.append({pair: k for k, pair in enumerate(level)})
        cells.append(len(level))

    faces = [[]]
    for n in range(1, up_to + 1):
        rows = []
        for ta, tb in coords[n]:
            row = []
            for i in range(n + 1):
                fa = a.face(n, ta, i)
                fb = b.face(n, tb, i)
                common = sorted(set(fa[0]) & set(fb[0]), reverse=True)
                d = n - 1
                for cpos in common:
                    fa = a.face(d, fa, cpos)
                    fb = b.face(d, fb, cpos)
                    d -= 1
                row.append((tuple(common), index[d][(fa, fb)]))
            rows.append(row)
        faces.append(rows)

    model = SimplicialModel(up_to, cells, faces, name=name)
    top = up_to
    left = SimplicialMap(
        model, a, [[pair[0] for pair in coords[n]] for n in range(top + 1)], "left"
    )
    right = SimplicialMap(
        model, b, [[pair[1] for pair in coords[n]] for n in range(top + 1)], "right"
    )
    return ProductModel(model, left, right, coords, index)


def product_involution(
    prod: ProductModel,
    inv_a: Involution | None,
    inv_b: Involution | None,
    name="product involution",
) -> Involution:
    """The involution acting factorwise on a product (None = identity factor)."""
    perms = []
    for n, level in enumerate(prod.coords):
        perm = np.empty(len(level), dtype=np.int64)
        for k, (ta, tb) in enumerate(level):
            ia = _target_with_dim(ta, n, inv_a.perms) if inv_a else ta
            ib = _target_with_dim(tb, n, inv_b.perms) if inv_b else tb
            perm[k] = prod.index[n][(ia, ib)]
        perms.append(perm)
    return Involution(prod.model, perms, name)


def swap_factors(prod: ProductModel, name="swap") -> Involution:
    """Swap of the two coordinates of a self-product X x X."""
    perms = []
    for n, level in enumerate(prod.coords):
        perm = np.empty(len(level), dtype=np.int64)
        for k, (ta, tb) in enumerate(level):
            perm[k] = prod.index[n][(tb, ta)]
        perms.append(perm)
    return Involution(prod.model, perms, name)


# -- double covers -----------------------------------------------------------


@dataclass
class CoverPair:
    """A model, its free involution, and the quotient with projection data."""

    cover: SimplicialModel
    base: SimplicialModel
    projection: SimplicialMap
    involution: Involution
    w1: Cochain  # degree-1 characteristic cocycle on the base
    sheet: list  # per degree, 0/1 per cover cell
    rep_cells: list  # per degree, cover index of each base cell's chosen lift
    base_index: list  # per degree, base index per cover cell

    def descend_invariant(self, u: Cochain) -> Cochain:
        """Push an involution-invariant cochain down to the base."""
        if u.model is not self.cover:
            raise ModelMismatchError("descend: cochain not on the cover")
        if not np.array_equal(u.values[self.involution.perms[u.degree]], u.values):
            raise ValidationError("descend: cochain is not involution-invariant")
        return Cochain(self.base, u.degree, u.values[self.rep_cells[u.degree]])


def quotient_free_involution(
    cover: SimplicialModel, inv: Involution, allow_trivial: bool = False, name=None
) -> CoverPair:
    """Quotient by a free involution; the base carries the characteristic w1."""
    inv.require_valid()
    name = name or f"{cover.name}/T"
    sheet = []
    rep_cells = []
    base_index = []
    cells = []
    for n in range(cover.max_degree + 1):
        perm = inv.perms[n]
        idx = np.arange(cover.cells[n])
        is_rep = idx < perm
        reps = idx[is_rep]
        bidx = np.empty(cover.cells[n], dtype=np.int64)
        bidx[reps] = np.arange(reps.size)
        bidx[perm[reps]] = np.arange(reps.size)
        sheet.append((~is_rep).astype(np.uint8))
        rep_cells.append(reps)
        base_index.append(bidx)
        cells.append(int(reps.size))

    faces = [[]]
    for n in range(1, cover.max_degree + 1):
        rows = []
        for rep in rep_cells[n]:
            row = []
            for word, fc in cover.faces[n][rep]:
                row.append((word, int(base_index[n - 1 - len(word)][fc])))
            rows.append(row)
        faces.append(rows)
    base = SimplicialModel(cover.max_degree, cells, faces, name=name)

    projection = SimplicialMap(
        cover,
        base,
        [
            [((), int(base_index[n][c])) for c in range(cover.cells[n])]
            for n in range(cover.max_degree + 1)
        ],
        "projection",
    )

    w1_vals = np.zeros(cells[1], dtype=np.uint8)
    s0 = sheet[0]
    for b, rep in enumerate(rep_cells[1]):
        (w0, c0) = cover.faces[1][rep][0]
        (w1_, c1) = cover.faces[1][rep][1]
        w1_vals[b] = s0[c0] ^ s0[c1]
    w1 = Cochain(base, 1, w1_vals)

    if not allow_trivial:
        if solve_affine(base.coboundary_matrix(0), w1.values) is not None:
            raise TrivialCoverError(
                f"{name}: characteristic cocycle is null-cohomologous"
                " (the double cover is trivial)"
            )
    return CoverPair(cover, base, projection, inv, w1, sheet, rep_cells, base_index)


def cover_from_cocycle(
    base: SimplicialModel, w: Cochain, allow_trivial: bool = False, name=None
) -> CoverPair:
    """Build the double cover classified by a degree-1 cocycle."""
    if w.model is not base or w.degree != 1:
        raise ModelMismatchError("cover_from_cocycle needs a degree-1 cochain on base")
    if not coboundary(w).is_zero():
        raise ValidationError("cover_from_cocycle: the cochain is not a cocycle")
    if not allow_trivial:
        if solve_affine(base.coboundary_matrix(0), w.values) is not None:
            raise TrivialCoverError("cocycle is null-cohomologous; cover is trivial")
    name = name or f"{base.name}^w"

    cells = [2 * c for c in base.cells]
    faces = [[]]
    for n in range(1, base.max_degree + 1):
        rows = []
        for c in range(base.cells[n]):
            front = base.subface(n, c, (0, 1))
            tw = w.eval_target(front)
            for eps in (0, 1):
                row = []
                for i, (word, fc) in enumerate(base.faces[n][c]):
                    e2 = eps ^ tw if i == 0 else eps
                    row.append((word, 2 * fc + e2))
                rows.append(row)
        faces.append(rows)
    cover = SimplicialModel(base.max_degree, cells, faces, name=name)

    perms = [
        np.array([2 * (c // 2) + 1 - (c % 2) for c in range(cells[n])], dtype=np.int64)
        for n in range(base.max_degree + 1)
    ]
    inv = Involution(cover, perms, "deck")

    projection = SimplicialMap(
        cover,
        base,
        [[((), c // 2) for c in range(cells[n])] for n in range(base.max_degree + 1)],
        "projection",
    )
    sheet = [
        np.array([c % 2 for c in range(cells[n])], dtype=np.uint8)
        for n in range(base.max_degree + 1)
    ]
    rep_cells = [
        np.array([2 * b for b in range(base.cells[n])], dtype=np.int64)
        for n in range(base.max_degree + 1)
    ]
    base_index = [
        np.array([c // 2 for c in range(cells[n])], dtype=np.int64)
        for n in range(base.max_degree + 1)
    ]
    return CoverPair(cover, base, projection, inv, w, sheet, rep_cells, base_index)


def relabel_model(model: SimplicialModel, rng: np.random.Generator):
    """Apply random per-degree cell permutations; returns (model, perms).

    perms[n][old_index] = new_index.  Used to check that pipeline outputs are
    invariant under the arbitrary cell numbering.
    """
    perms = [rng.permutation(model.cells[n]) for n in range(model.max_degree + 1)]
    inverse = [np.argsort(p) for p in perms]
    cells = list(model.cells)
    faces = [[]]
    for n in range(1, model.max_degree + 1):
        rows: list = [None] * model.cells[n]
        for c in range(model.cells[n]):
            row = []
            for word, fc in model.faces[n][c]:
                row.append((word, int(perms[n - 1 - len(word)][fc])))
            rows[int(perms[n][c])] = row
        faces.append(rows)
    out = SimplicialModel(model.max_degree, cells, faces, name=f"{model.name}~")
    return out, perms
