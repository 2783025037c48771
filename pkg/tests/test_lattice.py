from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fusionforge.errors import NotEven, NotPositiveDefinite, NotSymmetric
from fusionforge.lattice import Lattice, ldl, norm, short_vectors, smith_normal_form


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def det(A):
    # exact Laplace expansion, fine for the small sizes drawn here
    n = len(A)
    if n == 1:
        return A[0][0]
    return sum((-1) ** j * A[0][j] * det([row[:j] + row[j + 1:] for row in A[1:]]) for j in range(n))


int_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@given(int_matrices)
def test_snf_is_a_unimodular_diagonalisation(A):
    U, D, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == nonzero  # zeros come last
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_snf_known_example():
    # elementary divisors of [[2,4,4],[-6,6,12],[10,-4,-16]] are 2, 6, 12
    _, D, _ = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [D[i][i] for i in range(3)] == [2, 6, 12]


@st.composite
def even_grams(draw, max_rank=3):
    """Even Gram matrices, positive definite by strict diagonal dominance."""
    n = draw(st.integers(1, max_rank))
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            G[i][j] = G[j][i] = draw(st.integers(-2, 2))
    for i in range(n):
        off = sum(abs(G[i][j]) for j in range(n) if j != i)
        G[i][i] = 2 * draw(st.integers(off // 2 + 1, off // 2 + 2))
    return G


@given(even_grams())
def test_discriminant_order_is_the_determinant(G):
    L = Lattice.from_gram(G)
    assert L.order == det(G)
    assert math.prod(L.divisors) == det(G)
    assert len(L.elements) == L.order


@given(even_grams(), st.data())
def test_discriminant_form_is_consistent(G, data):
    L = Lattice.from_gram(G)
    a = data.draw(st.integers(0, L.order - 1))
    b = data.draw(st.integers(0, L.order - 1))
    # q(a+b) - q(a) - q(b) = b(a, b) mod 1, and the form is symmetric
    lhs = (L.quad(L.add(a, b)) - L.quad(a) - L.quad(b)) % 1
    assert lhs == L.bilinear(a, b) % 1
    assert L.bilinear(a, b) == L.bilinear(b, a)
    assert L.add(a, L.neg(a)) == 0
    assert L.quad(0) == 0


@given(even_grams(max_rank=2))
def test_representatives_have_minimal_norm(G):
    L = Lattice.from_gram(G)
    for cls, rep in enumerate(L.representatives):
        assert L.class_of(rep) == cls
        # no vector of the class is shorter: check all shifts by small lattice vectors
        for n in itertools.product(range(-1, 2), repeat=len(G)):
            x = [r + k for r, k in zip(rep, n)]
            assert norm(G, x) >= norm(G, rep)


@given(even_grams(max_rank=2), st.integers(1, 6))
def test_short_vectors_match_brute_force(G, bound):
    center = (Fraction(0),) * len(G)
    found = set(short_vectors(G, center, Fraction(bound)))
    box = range(-bound - 1, bound + 2)
    brute = {x for x in itertools.product(box, repeat=len(G)) if norm(G, x) < bound}
    assert {x for x in found if norm(G, x) < bound} == brute


def test_ldl_rejects_indefinite():
    assert ldl([[2, 3], [3, 2]]) is None
    assert ldl([[2, 1], [1, 2]]) is not None


def test_subgroup_and_annihilator():
    L = Lattice.from_gram([[12]])
    N = L.subgroup([L.index_of([4])])
    assert sorted(L.element(c)[0] for c in N) == [0, 4, 8]
    ann = L.annihilator(N)
    assert sorted(L.element(c)[0] for c in ann) == [0, 3, 6, 9]


def test_class_names():
    L = Lattice.from_gram([[2, 0], [0, 2]])
    assert L.order == 4
    assert L.class_name(0) == "(0,0)"
    assert Lattice.from_gram([[6]]).class_name(3) == "3"


@pytest.mark.parametrize(
    "gram, err",
    [
        ([[2, 1], [0, 2]], NotSymmetric),
        ([[3]], NotEven),
        ([[2, 3], [3, 2]], NotPositiveDefinite),
        ([[-2]], NotPositiveDefinite),
    ],
)
def test_bad_gram_matrices(gram, err):
    with pytest.raises(err):
        Lattice.from_gram(gram)
