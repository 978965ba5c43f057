"""Structure constants, identities, center, squares ideal, and the
canonical extension data, all exact."""

from fractions import Fraction

import numpy as np
import pytest

from leibrack.algebra import (
    LeibnizAlgebra,
    Representation,
    ValidationError,
    bracket,
    canonical_extension,
    is_lie,
    left_center,
    leibniz_defect,
    squares_ideal,
)
from leibrack.corpus import (
    abelian3,
    dim5,
    filiform5,
    free_nilpotent5,
    heisenberg,
    random_corpus,
)
from leibrack.linalg import Matrix, rank

E = lambda n, i: tuple(Fraction(int(j == i)) for j in range(n))


def corpus():
    return [dim5(), heisenberg(), abelian3(), filiform5(), free_nilpotent5()]


# -- bracket and identity ----------------------------------------------------

def test_dim5_brackets_match_the_table():
    alg = dim5()
    assert bracket(alg, E(5, 0), E(5, 1)) == E(5, 2)       # [e1,e2] = e3
    assert bracket(alg, E(5, 0), E(5, 0)) == E(5, 2)       # [e1,e1] = e3
    assert bracket(alg, E(5, 2), E(5, 0)) == (0,) * 5      # e3 is left central
    assert bracket(alg, (0,) * 5, E(5, 1)) == (0,) * 5


def test_dim5_general_bracket_formula():
    # [(x),(y)] = (0, 0, x1(y1+y2), x2(y1+y2)+x1*y3, x1*y4+x2*y3)
    alg = dim5()
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = [Fraction(int(c)) for c in rng.integers(-4, 5, size=5)]
        y = [Fraction(int(c)) for c in rng.integers(-4, 5, size=5)]
        want = (Fraction(0), Fraction(0),
                x[0] * (y[0] + y[1]),
                x[1] * (y[0] + y[1]) + x[0] * y[2],
                x[0] * y[3] + x[1] * y[2])
        assert bracket(alg, x, y) == want


def test_leibniz_defect_zero_on_valid_algebras():
    for alg in corpus():
        n = alg.dim
        assert leibniz_defect(alg, E(n, 0), E(n, min(1, n - 1)), E(n, n - 1)) == (0,) * n


def test_leibniz_defect_of_invalid_bracket():
    # [e1,e1] = e2, [e2,e1] = e1: defect at (e1,e1,e1) is
    # [e1,[e1,e1]] - [[e1,e1],e1] - [e1,[e1,e1]] = -[e2,e1] = -e1
    bad = LeibnizAlgebra.from_brackets(2, {(0, 0): {1: 1}, (1, 0): {0: 1}},
                                       check=False)
    assert leibniz_defect(bad, E(2, 0), E(2, 0), E(2, 0)) == (Fraction(-1), Fraction(0))


def test_constructor_rejects_invalid_tensor():
    with pytest.raises(ValidationError) as err:
        LeibnizAlgebra.from_brackets(2, {(0, 0): {1: 1}, (1, 0): {0: 1}})
    assert err.value.triple == (0, 0, 0)
    assert err.value.defect == (Fraction(-1), Fraction(0))


def test_is_lie():
    assert not is_lie(dim5())
    assert is_lie(abelian3())
    assert is_lie(heisenberg())


# -- left center -------------------------------------------------------------

def test_left_center_dim5():
    got = {tuple(int(c) for c in v) for v in left_center(dim5())}
    assert got == {(0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)}


def test_left_center_abelian_is_everything():
    assert len(left_center(abelian3())) == 3


def test_left_center_heisenberg():
    # independent oracle: the center vectors annihilate every basis vector
    alg = heisenberg()
    basis = left_center(alg)
    assert len(basis) == 1
    for v in basis:
        for j in range(3):
            assert bracket(alg, v, E(3, j)) == (0, 0, 0)
    assert tuple(int(c) for c in basis[0]) == (0, 0, 1)


def test_left_center_annihilates_for_corpus():
    for alg in corpus() + random_corpus(4, seed=5):
        for v in left_center(alg):
            for j in range(alg.dim):
                assert all(c == 0 for c in bracket(alg, v, E(alg.dim, j)))


# -- squares ideal -----------------------------------------------------------

def test_squares_ideal_dim5_equals_center():
    got = {tuple(int(c) for c in v) for v in squares_ideal(dim5())}
    assert got == {(0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)}


def test_squares_ideal_of_lie_algebra_is_zero():
    assert squares_ideal(heisenberg()) == []
    assert squares_ideal(filiform5()) == []


def test_squares_ideal_single_generator():
    alg = LeibnizAlgebra.from_brackets(2, {(0, 0): {1: 1}})
    got = squares_ideal(alg)
    assert len(got) == 1 and tuple(int(c) for c in got[0]) == (0, 1)


def test_squares_ideal_inside_left_center():
    for alg in corpus() + random_corpus(4, seed=6):
        center_rows = left_center(alg)
        if not center_rows:
            assert squares_ideal(alg) == []
            continue
        center_rank = rank(Matrix.from_rows(center_rows))
        for v in squares_ideal(alg):
            assert rank(Matrix.from_rows(center_rows + [v])) == center_rank


# -- canonical extension -----------------------------------------------------

def test_extension_dim5_exact_values(dim5_ext):
    ext = dim5_ext
    assert ext.g0_dim == 2 and ext.center_dim == 3
    assert ext.complement_pivots == (0, 1)
    assert is_lie(ext.g0)
    assert all(v == 0 for row in ext.g0.c for vec in row for v in vec)  # abelian
    # rho_x = [[0,0,0],[x1,0,0],[x2,x1,0]] on center coordinates (e3,e4,e5)
    assert ext.rho[0] == Matrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert ext.rho[1] == Matrix.from_rows([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    # omega(x,y) = (x1(y1+y2), x2(y1+y2), 0)
    assert ext.omega.at(0, 0) == (1, 0, 0)
    assert ext.omega.at(0, 1) == (1, 0, 0)
    assert ext.omega.at(1, 0) == (0, 1, 0)
    assert ext.omega.at(1, 1) == (0, 1, 0)


def test_extension_abelian_has_zero_quotient(abelian_ext):
    assert abelian_ext.g0_dim == 0
    assert abelian_ext.center_dim == 3
    assert abelian_ext.omega.values == ()


def test_extension_heisenberg_area_form(heis_ext):
    ext = heis_ext
    assert ext.g0_dim == 2 and ext.center_dim == 1
    # oracle: bracket the lifts directly
    alg = heisenberg()
    lifts = ext.complement_basis
    for p in range(2):
        for q in range(2):
            want = ext.center_projection.mat_vec(bracket(alg, lifts[p], lifts[q]))
            assert ext.omega.at(p, q) == want
    assert ext.omega.at(0, 1) == (1,)
    assert ext.omega.at(1, 0) == (-1,)
    assert ext.omega.at(0, 0) == (0,)
    # the action on the center of a Lie algebra is trivial
    assert all(r.is_zero() for r in ext.rho)


def test_extension_reassembles_bracket_exactly():
    for alg in corpus() + random_corpus(4, seed=7):
        ext = canonical_extension(alg)
        for i in range(alg.dim):
            for j in range(alg.dim):
                x, a = ext.split(alg.basis_vector(i))
                y, b = ext.split(alg.basis_vector(j))
                xy = bracket(ext.g0, x, y)
                zc = tuple(p + q for p, q in zip(ext.rep.left_of(x).mat_vec(b),
                                                 ext.omega.evaluate(x, y)))
                assert ext.unsplit(xy, zc) == bracket(alg, alg.basis_vector(i),
                                                      alg.basis_vector(j))


def test_extension_nonabelian_quotients():
    assert canonical_extension(filiform5()).g0_dim == 4
    assert canonical_extension(free_nilpotent5()).g0_dim == 3
    assert not is_lie(dim5()) and is_lie(canonical_extension(dim5()).g0)


# -- representations ---------------------------------------------------------

def test_representation_axioms_reject_corruption():
    ext = canonical_extension(dim5())
    bad = list(ext.rho)
    bad[0] = bad[0] + Matrix.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(ValueError):
        Representation.anti_symmetric(ext.g0, bad, carrier_dim=3)


def test_symmetric_flavor_forces_right_action():
    ext = canonical_extension(dim5())
    rep = Representation.symmetric(ext.g0, ext.rho, carrier_dim=3)
    for left, right in zip(rep.left, rep.right):
        assert (left + right).is_zero()


def test_random_corpus_is_valid_and_nontrivial():
    algs = random_corpus(10, seed=0)
    for alg in algs:
        assert alg.dim <= 5
        ext = canonical_extension(alg)
        assert 0 < ext.g0_dim < alg.dim
