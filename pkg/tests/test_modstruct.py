import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chronokh.complex import assemble
from chronokh.corpus import load
from chronokh.diagram import InvalidBasepoint, PlanarDiagram, disjoint_union, from_braid
from chronokh.modstruct import (
    AlgebraAPrime,
    action_support,
    actions_commute,
    algebra_axioms,
    algebra_product,
    bimodule_axioms,
    build_action,
    compensated_action,
    identity_map,
    maps_equal,
    module_axioms,
    multi_basepoint_actions,
    raw_merge,
    slide_invariance_check,
    slide_map,
)
from chronokh.scalars import ALL_SPECIALIZATIONS, EVEN, ODD
from chronokh.tqft import MINUS, PLUS, identity, tensor

UNKNOT = PlanarDiagram((), 1, (1,))


def test_algebra_table():
    A = algebra_product()
    full = A.table()
    assert full[("v-", "v+")] == {"v-": "1"}
    assert full[("v+", "v-")] == {"v-": "1"}
    assert full[("v-", "v-")] == {}
    for s in (EVEN, ODD):
        assert A.table(s)[("v-", "v+")] == {"v-": 1}


@pytest.mark.parametrize("s", [None, *ALL_SPECIALIZATIONS])
def test_algebra_axioms(s):
    assert all(algebra_axioms(s).values())


def test_raw_merge_negative_controls():
    # on the unshifted circle the merge is not associative for the tensor rule
    m = raw_merge()
    left = m.compose(tensor(m, identity(1)))
    right = m.compose(tensor(identity(1), m))
    assert left != right
    assert sum(left.specialize(s) != right.specialize(s) for s in ALL_SPECIALIZATIONS) == 4
    # and with the shifted twist it is neither symmetric nor unital
    A = AlgebraAPrime(m)
    assert not A.symmetric() and not A.unital()


def test_unknot_actions():
    C = assemble(UNKNOT).specialize(EVEN)
    L = build_action(C, 1, "left")
    assert maps_equal(L[PLUS], identity_map(C), False)
    M = L[MINUS][0]
    gens = C.groups[0]
    pairs = {(gens[c][1], gens[r][1]): v for r, c, v in zip(M.rows.tolist(), M.cols.tolist(), M.vals.tolist())}
    assert pairs == {(PLUS, MINUS): 1}


def test_hopf_bimodule():
    C = assemble(load("hopf"))
    rep = bimodule_axioms(C, 1)
    assert rep.ok and rep.commute and rep.symmetric


def test_multi_basepoint_hopf():
    H = load("hopf")
    bps = [H.components[0][0], H.components[1][0]]
    for s in (EVEN, ODD):
        acts = multi_basepoint_actions(assemble(H.with_basepoints(*bps)).specialize(s))
        assert len(acts) == 2 and actions_commute(acts)
    odd = multi_basepoint_actions(assemble(H.with_basepoints(*bps)).specialize(ODD))
    assert not actions_commute(odd, twisted=False)  # the v- actions anticommute


def test_multi_basepoint_errors():
    H = load("hopf")
    C = assemble(H)
    with pytest.raises(InvalidBasepoint):
        multi_basepoint_actions(C, [H.components[0][0], H.components[0][1]])
    with pytest.raises(InvalidBasepoint):
        build_action(C, 99)


def test_union_actions_supported_on_factors():
    U = disjoint_union(load("trefoil"), UNKNOT)
    C = assemble(U)
    loop = U.loopKeys[0]
    acts = multi_basepoint_actions(C, [1, loop])
    assert [action_support(a) for a in acts] == [{0}, {1}]


def test_slide_map_matrices():
    phi = slide_map()
    assert phi.matrix(EVEN) == [[1, 0], [-2, 1]]
    assert phi.squared(EVEN) == [[1, 0], [-4, 1]]
    assert phi.is_identity(ODD) and phi.squared(ODD) == [[1, 0], [0, 1]]
    for s in ALL_SPECIALIZATIONS:
        assert abs(phi.determinant(s)) == 1
        assert phi.is_identity(s) == (s.x * s.y == -1)
    rep = phi.report(EVEN)
    assert not rep["matches_stated_conjugation"] and "discrepancy" in rep


def test_slide_kink_odd_literal():
    D = load("unknot_kink_pos")
    r = slide_invariance_check(D, 1, 2, ODD)
    assert r.literal_equal


def test_slide_hopf_even_isomorphic():
    D = load("hopf")
    a, b = D.components[0][:2]
    r = slide_invariance_check(D, a, b, EVEN)
    assert r.isomorphic and r.witness


def test_compensated_action_is_a_module():
    C = assemble(load("trefoil").with_basepoints(1)).specialize(EVEN)
    act = compensated_action(C, 1)
    assert act.chain_map()


def braid_words():
    return st.integers(2, 3).flatmap(
        lambda s: st.lists(st.integers(1, s - 1).flatmap(lambda g: st.sampled_from((g, -g))),
                           min_size=1, max_size=5))


@settings(max_examples=15, deadline=None)
@given(braid_words(), st.data())
def test_bimodule_axioms_full_ring(word, data):
    D = from_braid(word)
    bp = data.draw(st.sampled_from(sorted(D.componentMap)))
    rep = bimodule_axioms(assemble(D), bp)
    assert rep.ok


@settings(max_examples=10, deadline=None)
@given(braid_words())
def test_left_module_axioms_every_specialization(word):
    D = from_braid(word)
    C = assemble(D)
    bp = min(D.componentMap)
    for s in ALL_SPECIALIZATIONS:
        assert module_axioms(build_action(C.specialize(s), bp)).ok
