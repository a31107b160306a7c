from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chronokh.complex import (
    GradedChainComplex,
    assemble,
    check_d_squared,
    corrupt,
    diagonal_support,
    euler_characteristic,
    euler_from_homology,
    homogeneous,
    homology,
    khovanov_complex,
)
from chronokh.diagram import PlanarDiagram, from_braid, parse_pd
from chronokh.oracles import classical_khovanov, jones_oracle
from chronokh.scalars import ALL_SPECIALIZATIONS, EVEN, ODD, X

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


def braid_words(max_len=6):
    return st.integers(2, 4).flatmap(
        lambda s: st.lists(st.integers(1, s - 1).flatmap(lambda g: st.sampled_from((g, -g))),
                           min_size=1, max_size=max_len))


def test_unknot_complex():
    C = assemble(PlanarDiagram((), 1))
    assert C.ranks() == {0: 2}
    H = homology(C.specialize(EVEN))
    assert H.collapsed() == {(0, 1): (1, ()), (0, -1): (1, ())}
    assert {(p, q) for (_, p, q), _, _ in H.nonzero()} == {(Fraction(1, 2),) * 2, (Fraction(-1, 2),) * 2}


def test_trefoil_ranks_and_d2():
    C = assemble(parse_pd(TREFOIL))
    assert [C.rank(i) for i in range(4)] == [4, 6, 12, 8]
    assert check_d_squared(C)
    assert homogeneous(C)


def test_corrupted_sign_breaks_d2():
    C = assemble(parse_pd(TREFOIL))
    bad = corrupt(C, 0, 0, X)
    rep = check_d_squared(bad)
    assert not rep and rep.violations


def test_empty_complex():
    C = GradedChainComplex({}, {}, {}, {}, True)
    assert check_d_squared(C)
    assert euler_characteristic(C).collapsed() == {}


def test_trefoil_even_table():
    H = homology(khovanov_complex(parse_pd(TREFOIL), EVEN))
    assert H.collapsed() == classical_khovanov(TREFOIL)
    torsion = [t for _, _, t in H.nonzero() if t]
    assert torsion == [(2,)]


def test_odd_split_coefficient():
    # a YZ coefficient specializes to -1 in ODD and +1 in EVEN
    C = assemble(parse_pd(TREFOIL))
    e, o = C.specialize(EVEN), C.specialize(ODD)
    for i in C.d:
        assert set(e.diff(i).vals.tolist()) <= {1, -1}
        assert ((e.diff(i).vals - o.diff(i).vals) % 2 == 0).all()


def test_homology_over_fields():
    C = assemble(parse_pd(TREFOIL)).specialize(EVEN)
    q = homology(C, None).betti()
    f2 = homology(C, 2).betti()
    assert sum(q.values()) == 4
    assert sum(f2.values()) == 6  # the Z/2 adds one class in two degrees


def test_needs_specialization():
    with pytest.raises(ValueError):
        homology(assemble(parse_pd(TREFOIL)))


def test_mirror_jones():
    j = jones_oracle(TREFOIL)
    m = jones_oracle(parse_pd(TREFOIL).mirror().text())
    assert m == {-e: c for e, c in j.items()}
    assert jones_oracle("loops=1") == {-1: 1, 1: 1}


@settings(max_examples=25, deadline=None)
@given(braid_words())
def test_d_squared_full_ring(word):
    C = assemble(from_braid(word))
    assert check_d_squared(C)
    assert homogeneous(C)


@settings(max_examples=25, deadline=None)
@given(braid_words())
def test_euler_is_jones(word):
    D = from_braid(word)
    C = assemble(D)
    chi = euler_characteristic(C)
    assert chi.collapsed() == jones_oracle(D.text())
    for s in (EVEN, ODD):
        assert euler_from_homology(homology(C.specialize(s))) == chi


@settings(max_examples=20, deadline=None)
@given(braid_words(5))
def test_even_matches_classical(word):
    D = from_braid(word)
    assert homology(khovanov_complex(D, EVEN)).collapsed() == classical_khovanov(D.text())


@settings(max_examples=15, deadline=None)
@given(braid_words(5))
def test_diagonal_and_mod2(word):
    C = assemble(from_braid(word))
    for s in ALL_SPECIALIZATIONS:
        assert diagonal_support(homology(C.specialize(s)))
    assert homology(C.specialize(EVEN), 2) == homology(C.specialize(ODD), 2)
