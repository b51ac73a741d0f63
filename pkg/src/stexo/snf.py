"""Exact integer linear algebra: Smith normal form and homology of a chain pair.

Everything runs over Python ints, so there is no overflow to worry about; the
matrices that show up here are small compared to the mod 2 side (integral
homology is only consulted for low-degree group homology and for the odd
torsion cross-checks).

A matrix is a list of row lists.  smith_normal_form returns the invariant
factors together with the full transform data U, V (and their inverses) such
that U * A * V = D.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInvariantError, ModelMismatchError


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> list[list[int]]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise ModelMismatchError("integer matrix shape mismatch in product")
    if not a or not b:
        return zeros(len(a), len(b[0]) if b else 0)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_eq(a: list[list[int]], b: list[list[int]]) -> bool:
    return a == b


@dataclass
class SNFResult:
    """U A V = D with all four transforms unimodular.

    diag lists the nonzero invariant factors d_1 | d_2 | ... only.
    """

    diag: list[int]
    U: list[list[int]]
    U_inv: list[list[int]]
    V: list[list[int]]
    V_inv: list[list[int]]


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, src, dst, k):
    """row[dst] += k * row[src]"""
    rs, rd = m[src], m[dst]
    for c in range(len(rd)):
        rd[c] += k * rs[c]


def _add_col(m, src, dst, k):
    for row in m:
        row[dst] += k * row[src]


def _negate_row(m, i):
    m[i] = [-x for x in m[i]]


def _negate_col(m, j):
    for row in m:
        row[j] = -row[j]


def smith_normal_form(a: list[list[int]]) -> SNFResult:
    """Smith normal form by repeated pivoting on the smallest nonzero entry.

    Row operations applied to A are mirrored on U and inverted on U_inv
    (likewise columns on V / V_inv), so U A_orig V = D holds exactly and
    U U_inv = I, V V_inv = I.
    """
    m = [list(row) for row in a]
    nr = len(m)
    nc = len(m[0]) if m else 0
    U, Ui = identity(nr), identity(nr)
    V, Vi = identity(nc), identity(nc)

    def row_op(src, dst, k):
        _add_row(m, src, dst, k)
        _add_row(U, src, dst, k)
        # (dst += k src) inverts to (dst -= k src); on the inverse we track
        # the transpose action on columns.
        _add_col(Ui, dst, src, -k)

    def col_op(src, dst, k):
        _add_col(m, src, dst, k)
        _add_col(V, src, dst, k)
        _add_row(Vi, dst, src, -k)

    def row_swap(i, j):
        _swap_rows(m, i, j)
        _swap_rows(U, i, j)
        _swap_cols(Ui, i, j)

    def col_swap(i, j):
        _swap_cols(m, i, j)
        _swap_cols(V, i, j)
        _swap_rows(Vi, i, j)

    def row_negate(i):
        _negate_row(m, i)
        _negate_row(U, i)
        _negate_col(Ui, i)

    t = 0
    limit = min(nr, nc)
    while t < limit:
        # locate the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nr):
            row = m[i]
            for j in range(t, nc):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if abs(v) == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if m[t][t] < 0:
            row_negate(t)

        dirty = False
        for i in range(t + 1, nr):
            if m[i][t]:
                q = m[i][t] // m[t][t]
                row_op(t, i, -q)
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, nc):
            if m[t][j]:
                q = m[t][j] // m[t][t]
                col_op(t, j, -q)
                if m[t][j]:
                    dirty = True
        if dirty:
            continue

        # divisibility sweep: pivot must divide everything below-right
        offender = None
        for i in range(t + 1, nr):
            row = m[i]
            for j in range(t + 1, nc):
                if row[j] % m[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(offender, t, 1)
            continue
        t += 1

    diag = [m[i][i] for i in range(limit) if m[i][i]]
    for k in range(len(diag) - 1):
        if diag[k + 1] % diag[k]:
            raise InternalInvariantError("invariant factors fail divisibility")
    return SNFResult(diag, U, Ui, V, Vi)


@dataclass
class AbelianGroupInvariants:
    """Isomorphism type of a finitely generated abelian group."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def mod2_rank(self) -> int:
        return self.free_rank + sum(1 for t in self.torsion if t % 2 == 0)


@dataclass
class HomologyResult:
    invariants: AbelianGroupInvariants
    # columns of kernel_basis span ker(boundary_out); generator_coords maps
    # homology generators (torsion first, then free) to kernel coordinates.
    kernel_basis: list[list[int]] = field(repr=False, default_factory=list)
    generator_coords: list[list[int]] = field(repr=False, default_factory=list)

    def generator_chains(self) -> list[list[int]]:
        """Cycle representatives as chains, one list per generator."""
        if not self.kernel_basis or not self.generator_coords:
            return []
        n = len(self.kernel_basis)
        out = []
        for coords in self.generator_coords:
            chain = [0] * n
            for kcol, c in enumerate(coords):
                if c:
                    for r in range(n):
                        chain[r] += c * self.kernel_basis[r][kcol]
            out.append(chain)
        return out


def homology_from_boundaries(
    boundary_out: list[list[int]],
    boundary_in: list[list[int]],
    n_chains: int,
    check: bool = True,
) -> HomologyResult:
    """Homology ker(boundary_out) / im(boundary_in) with explicit generators.

    boundary_out maps degree-p chains down, boundary_in maps degree-(p+1)
    chains onto the image being divided out.  Shapes: boundary_out is
    (cells_{p-1} x n_chains), boundary_in is (n_chains x cells_{p+1});
    either may be empty (no rows / no columns).
    """
    n_p = n_chains
    if boundary_out and len(boundary_out[0]) != n_p:
        raise ModelMismatchError("boundary_out width disagrees with n_chains")
    if boundary_in and len(boundary_in) != n_p:
        raise ModelMismatchError("boundary_in height disagrees with n_chains")

    if check and boundary_out and boundary_in and boundary_in[0]:
        rows_out = len(boundary_out)
        cols_in = len(boundary_in[0])
        if rows_out * n_p * cols_in <= 5_000_000:
            prod = mat_mul(boundary_out, boundary_in)
            if any(any(row) for row in prod):
                raise InternalInvariantError("boundary composite is nonzero")

    # kernel of boundary_out via column operations: columns of V past the rank
    if boundary_out:
        s_out = smith_normal_form(boundary_out)
        r = len(s_out.diag)
        kernel_cols = [[s_out.V[i][j] for j in range(r, n_p)] for i in range(n_p)]
        k = n_p - r
    else:
        kernel_cols = identity(n_p)
        k = n_p

    if k == 0:
        return HomologyResult(AbelianGroupInvariants(0), [], [])

    # Express im(boundary_in) in kernel coordinates: solve K X = boundary_in.
    # The SNF kernel basis is saturated, so every cycle has exact integer
    # coordinates; any division failure here means boundary_in is not a cycle.
    if boundary_in and boundary_in[0]:
        s_k = smith_normal_form(kernel_cols)
        if len(s_k.diag) != k:
            raise InternalInvariantError("kernel basis lost rank")
        # K = U_inv D V_inv  =>  X = V (D^+ (U B))  when divisibility holds
        ub = mat_mul(s_k.U, boundary_in)
        n_in = len(boundary_in[0])
        x_top = zeros(k, n_in)
        for i in range(k):
            d = s_k.diag[i]
            for j in range(n_in):
                q, rem = divmod(ub[i][j], d)
                if rem:
                    raise InternalInvariantError(
                        "image chain does not lie in the cycle lattice"
                    )
                x_top[i][j] = q
        for i in range(k, len(ub)):
            if any(ub[i]):
                raise InternalInvariantError(
                    "image chain does not lie in the cycle lattice"
                )
        presentation = mat_mul(s_k.V, x_top)
    else:
        presentation = zeros(k, 0)

    # quotient Z^k / im(presentation)
    if presentation and presentation[0]:
        s_p = smith_normal_form(presentation)
        diag = s_p.diag
        torsion = tuple(d for d in diag if d > 1)
        free = k - len(diag)
        # generators: U_inv columns give the basis of Z^k adapted to the
        # quotient; torsion generators are those with d > 1, free ones after.
        order = [i for i, d in enumerate(diag) if d > 1] + list(range(len(diag), k))
        gen_coords = [[s_p.U_inv[r][i] for r in range(k)] for i in order]
    else:
        torsion = ()
        free = k
        gen_coords = [[1 if r == i else 0 for r in range(k)] for i in range(k)]

    return HomologyResult(
        AbelianGroupInvariants(free, torsion), kernel_cols, gen_coords
    )
