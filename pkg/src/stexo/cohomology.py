"""Cohomology bases over GF(2), induced maps, and integral homology.

Truncation honesty: a degree-k cohomology basis is only certified when the
model stores (k+1)-cells, since closedness of k-cochains is otherwise
unverifiable.  Callers that accept uncertified answers must opt in, and the
result carries a truncated flag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ModelMismatchError, TruncationError, ValidationError
from .gf2 import CosetReducer, F2Matrix, kernel_basis, rank
from .simplicial import Cochain, CoverPair, SimplicialMap, SimplicialModel, coboundary
from .snf import (
    AbelianGroupInvariants,
    HomologyResult,
    homology_from_boundaries,
    smith_normal_form,
)


@dataclass
class CohomologyBasis:
    """A chosen basis of H^k(model; GF(2)) with a coordinate oracle."""

    model: SimplicialModel
    degree: int
    reps: list
    reducer: CosetReducer
    truncated: bool

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, u: Cochain) -> np.ndarray:
        if u.model is not self.model or u.degree != self.degree:
            raise ModelMismatchError("coords: cochain does not match the basis")
        if not self.truncated and not coboundary(u).is_zero():
            raise ValidationError("coords: cochain is not closed")
        return self.reducer.coords(u.values)

    def is_coboundary(self, u: Cochain) -> bool:
        return not self.coords(u).any()

    def class_from_coords(self, coords) -> Cochain:
        acc = Cochain.zero(self.model, self.degree)
        for i, bit in enumerate(np.asarray(coords, dtype=np.uint8) & 1):
            if bit:
                acc = acc + self.reps[i]
        return acc

    def same_class(self, u: Cochain, v: Cochain) -> bool:
        return bool(np.array_equal(self.coords(u), self.coords(v)))


def cohomology_basis(
    model: SimplicialModel, degree: int, allow_truncated: bool = False
) -> CohomologyBasis:
    if degree < 0 or degree > model.max_degree:
        raise TruncationError(
            f"{model.name}: no cochains stored in degree {degree}"
        )
    certified = degree + 1 <= model.max_degree
    if not certified and not allow_truncated:
        raise TruncationError(
            f"{model.name}: degree {degree} cohomology needs cells in degree"
            f" {degree + 1} to certify closedness"
        )
    key = ("hbasis", degree, certified)
    if key in model._cache:
        return model._cache[key]

    n = model.n_cells(degree)
    if certified:
        closed = kernel_basis(model.coboundary_matrix(degree)).to_dense()
    else:
        closed = np.eye(n, dtype=np.uint8)
    reducer = CosetReducer(n)
    if degree > 0:
        delta = model.coboundary_matrix(degree - 1).transpose().to_dense()
        for row in delta:
            if row.any():
                reducer.add_base(row)
    reps = []
    for row in closed:
        if reducer.add_extension(row):
            reps.append(Cochain(model, degree, row))
    basis = CohomologyBasis(model, degree, reps, reducer, not certified)
    model._cache[key] = basis
    return basis


def mod2_betti(model: SimplicialModel, degree: int) -> int:
    return cohomology_basis(model, degree).dim


def induced_matrix(f: SimplicialMap, degree: int, allow_truncated: bool = False):
    """Matrix of f^* on degree-k cohomology, columns over the target basis.

    Returns (matrix, source_basis, target_basis); matrix columns are the
    source coordinates of the pullbacks of the target representatives.
    """
    src = cohomology_basis(f.source, degree, allow_truncated)
    tgt = cohomology_basis(f.target, degree, allow_truncated)
    m = F2Matrix.zeros(src.dim, tgt.dim)
    for j, rep in enumerate(tgt.reps):
        c = src.coords(f.pullback(rep))
        for i, bit in enumerate(c):
            if bit:
                m.set(i, j, 1)
    return m, src, tgt


def integral_homology(model: SimplicialModel, p: int, check: bool = True) -> HomologyResult:
    """H_p with integer coefficients, certified within the truncation."""
    if p < 0 or p > model.max_degree:
        raise TruncationError(f"{model.name}: no chains stored in degree {p}")
    n = model.cells[p]
    bout = model.boundary_int(p) if p >= 1 else []
    if p + 1 <= model.max_degree:
        bin_ = model.boundary_int(p + 1)
        return homology_from_boundaries(bout, bin_, n, check=check)
    # no higher chains stored: certified only when nothing can be divided out,
    # which needs the boundary to have full column rank
    if p >= 1 and model.cells[p - 1] < n:
        raise TruncationError(
            f"{model.name}: H_{p} needs degree-{p + 1} chains to divide out boundaries"
        )
    res = homology_from_boundaries(bout, [[0] * 0 for _ in range(n)], n, check=False)
    if res.invariants.free_rank == 0:
        return res
    raise TruncationError(
        f"{model.name}: H_{p} needs degree-{p + 1} chains to divide out boundaries"
    )


def twisted_boundary_int(pair: CoverPair, k: int) -> list:
    """Boundary on base chains with integer coefficients twisted by w1.

    Representative lifts are fixed by the cover pair; a face whose lift lands
    on the other sheet picks up a sign.
    """
    base = pair.base
    if k < 1 or k > base.max_degree:
        raise TruncationError(f"{base.name}: twisted boundary degree {k} out of range")
    rows = [[0] * base.cells[k] for _ in range(base.cells[k - 1])]
    sheet = pair.sheet[k - 1]
    bidx = pair.base_index[k - 1]
    for b, rep in enumerate(pair.rep_cells[k]):
        for i, (word, fc) in enumerate(pair.cover.faces[k][rep]):
            if word:
                continue
            sign = (-1) ** i * (1 - 2 * int(sheet[fc]))
            rows[int(bidx[fc])][b] += sign
    return rows


def twisted_homology(
    pair: CoverPair, p: int, coeff: str = "Z-", check: bool = True
) -> AbelianGroupInvariants:
    """H_p of the base with coefficients Z- (w1-twisted), Z, or F2."""
    base = pair.base
    if coeff == "F2":
        d = base.cells[p]
        if p >= 1:
            d -= rank(base.coboundary_matrix(p - 1))
        if p + 1 <= base.max_degree:
            d -= rank(base.coboundary_matrix(p))
        elif base.cells[p]:
            raise TruncationError(
                f"{base.name}: mod-2 H_{p} needs degree-{p + 1} cells"
            )
        return AbelianGroupInvariants(0, (2,) * d)
    if coeff == "Z":
        return integral_homology(base, p, check=check).invariants
    if coeff != "Z-":
        raise ValidationError(f"unknown coefficient system {coeff!r}")
    if p > base.max_degree:
        raise TruncationError(f"{base.name}: no chains stored in degree {p}")
    n = base.cells[p]
    bout = twisted_boundary_int(pair, p) if p >= 1 else []
    if p + 1 <= base.max_degree:
        bin_ = twisted_boundary_int(pair, p + 1)
        return homology_from_boundaries(bout, bin_, n, check=check).invariants
    res = homology_from_boundaries(bout, [[0] * 0 for _ in range(n)], n, check=False)
    if res.invariants.free_rank == 0:
        return res.invariants
    raise TruncationError(
        f"{base.name}: twisted H_{p} needs degree-{p + 1} chains"
    )
