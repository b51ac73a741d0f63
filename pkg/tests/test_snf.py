import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stexo.errors import InternalInvariantError
from stexo.snf import (
    AbelianGroupInvariants,
    homology_from_boundaries,
    identity,
    mat_mul,
    smith_normal_form,
)


def check_snf(a):
    res = smith_normal_form(a)
    nr, nc = len(a), len(a[0]) if a else 0
    # U A V = D
    d = mat_mul(mat_mul(res.U, a), res.V)
    for i in range(nr):
        for j in range(nc):
            want = res.diag[i] if (i == j and i < len(res.diag)) else 0
            assert d[i][j] == want
    # transforms are mutually inverse, hence unimodular
    assert mat_mul(res.U, res.U_inv) == identity(nr)
    assert mat_mul(res.V, res.V_inv) == identity(nc)
    for k in range(len(res.diag) - 1):
        assert res.diag[k + 1] % res.diag[k] == 0
        assert res.diag[k] > 0
    return res


def test_snf_classic_divisibility():
    # diag(2, 3) is not in normal form; invariants are 1, 6
    res = check_snf([[2, 0], [0, 3]])
    assert res.diag == [1, 6]


def test_snf_known_small_cases():
    assert check_snf([[1]]).diag == [1]
    assert check_snf([[0]]).diag == []
    # det = 0, gcd = 1: single invariant factor
    assert check_snf([[4, 6], [6, 9]]).diag == [1]
    assert check_snf([[2, 4], [4, 8]]).diag == [2]
    assert check_snf([[-2]]).diag == [2]


def test_snf_empty_shapes():
    assert check_snf([]).diag == []
    assert check_snf([[]]).diag == []
    assert check_snf([[0, 0, 0]]).diag == []


@given(
    st.integers(1, 6),
    st.integers(1, 6),
    st.integers(0, 2**32 - 1),
)
@settings(max_examples=80, deadline=None)
def test_snf_random_matrices(rows, cols, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(-9, 10, size=(rows, cols)).tolist()
    res = check_snf(a)
    # product of invariants matches gcd of k x k minors for k = 1
    flat = [abs(x) for row in a for x in row if x]
    if flat:
        g = 0
        for x in flat:
            g = np.gcd(g, x)
        assert res.diag[0] == g
    else:
        assert res.diag == []


def test_abelian_invariants_str_and_ranks():
    g = AbelianGroupInvariants(2, (2, 4))
    assert str(g) == "Z + Z + Z/2 + Z/4"
    assert g.mod2_rank() == 4
    assert str(AbelianGroupInvariants(0)) == "0"
    assert AbelianGroupInvariants(0).is_zero
    assert AbelianGroupInvariants(1, (3,)).mod2_rank() == 1


def test_homology_circle_like():
    # one 0-cell, one 1-cell, boundary zero: H_0 = Z, H_1 = Z
    h0 = homology_from_boundaries([], [[0]], 1)
    assert h0.invariants == AbelianGroupInvariants(1)
    h1 = homology_from_boundaries([[0]], [], 1)
    assert h1.invariants == AbelianGroupInvariants(1)


def test_homology_torsion():
    # Z --2--> Z presents Z/2
    h = homology_from_boundaries([], [[2]], 1)
    assert h.invariants == AbelianGroupInvariants(0, (2,))
    gens = h.generator_chains()
    assert len(gens) == 1 and abs(gens[0][0]) == 1


def test_homology_rp2_cellular():
    # cellular chain complex of the real projective plane:
    # C2 = Z --(1+a)--> C1 = Z --0--> C0 = Z, with d2 = 2, d1 = 0
    h0 = homology_from_boundaries([], [[0]], 1)
    h1 = homology_from_boundaries([[0]], [[2]], 1)
    h2 = homology_from_boundaries([[2]], [], 1)
    assert h0.invariants == AbelianGroupInvariants(1)
    assert h1.invariants == AbelianGroupInvariants(0, (2,))
    assert h2.invariants == AbelianGroupInvariants(0)


def test_homology_generators_are_cycles_mod_image():
    d_out = [[1, -1, 0, 0], [0, 1, -1, 0]]
    # columns must lie in ker(d_out) = {(a,a,a,b)}
    d_in = [[3, 0], [3, 0], [3, 0], [0, 5]]
    h = homology_from_boundaries(d_out, d_in, 4)
    # Z/3 + Z/5 normalizes to the single invariant factor 15
    assert h.invariants == AbelianGroupInvariants(0, (15,))
    for chain in h.generator_chains():
        out = [sum(r * c for r, c in zip(row, chain)) for row in d_out]
        assert not any(out)


def test_homology_rejects_nonzero_composite():
    with pytest.raises(InternalInvariantError):
        homology_from_boundaries([[1, 0]], [[1], [0]], 2)


def test_homology_rejects_noncycle_image():
    # d_in column outside ker(d_out) with the composite check disabled
    with pytest.raises(InternalInvariantError):
        homology_from_boundaries([[1, 0]], [[1], [0]], 2, check=False)
