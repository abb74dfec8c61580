import pytest

from arcring.arc_ring import WeightError
from arcring.planar import Matching, catalan
from arcring.slnaction import (
    E,
    E2,
    F,
    F2,
    ID,
    K,
    RELATIONS,
    ProjectiveOrbit,
    Shift,
    Weight,
    adjunction_check,
    admissible_weights,
    apply_functor,
    c_matrix,
    check_presentation,
    functor_bimodule,
    highest_weight,
    hom_rank,
    monomial_presentation,
    parse_word,
    presentation_table,
    verify_relation,
    word_str,
)

from oracles import ssyt_weight_counts, weyl_dimension

WORKED_WORD = "F2 F4^(2) F3^(2) F5 F1 F4 F2 F3"
TARGET = Weight((1, 1, 1, 0, 2, 1))
TARGET_MATCHING = Matching.from_arcs(TARGET.s, [(1, 6), (2, 3)])


def test_weights_n2():
    assert set(w.entries for w in admissible_weights(2, 1)) == {(2, 0), (1, 1), (0, 2)}


def test_worked_weight():
    lam = Weight((0, 2, 1, 1, 1, 0, 1))
    assert lam.m == 2 and lam.s == (3, 4, 5, 7) and lam.k == 3


def test_weight_errors():
    with pytest.raises(WeightError):
        Weight((3, 1))
    with pytest.raises(WeightError):
        Weight.parse("1,x")
    with pytest.raises(WeightError):
        admissible_weights(3, 3)
    assert Weight.parse("1,1") == Weight.parse("11") == Weight((1, 1))


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 8) for k in range(1, n)])
def test_weight_dims_against_tableaux(n, k):
    counts = ssyt_weight_counts(n, k)
    total = 0
    for lam in admissible_weights(n, k):
        assert counts.get(lam.entries, 0) == catalan(lam.m)
        total += catalan(lam.m)
    assert set(counts) == {lam.entries for lam in admissible_weights(n, k)}
    assert total == weyl_dimension(n, k)


def test_highest_weight():
    assert highest_weight(5, 2).entries == (2, 2, 0, 0, 0)
    assert highest_weight(5, 2).m == 0


def test_c_matrix():
    assert [c_matrix(2, j) for j in (1, 2, 3, 4)] == [-1, 2, -1, 0]


def test_word_parsing():
    word = parse_word(WORKED_WORD)
    assert len(word) == 8
    assert word[1] == F2(4) and word[0] == F(2)
    assert word_str(word) == WORKED_WORD
    assert parse_word("E_1 K_2^-1 {3} Id")[2] == Shift(3)
    with pytest.raises(ValueError):
        parse_word("G1")


def test_case_tables():
    lam = Weight((1, 1))
    case = functor_bimodule(E(1), lam)
    assert case.target == Weight((2, 0)) and case.tangle.top == ()
    assert functor_bimodule(E(1), Weight((2, 0))).is_zero
    cup = functor_bimodule(F(1), Weight((2, 0)))
    assert cup.target == Weight((1, 1)) and cup.tangle.top == (1, 2) and cup.tangle.bottom == ()
    assert functor_bimodule(K(1), Weight((2, 0))).shift == 2
    assert functor_bimodule(E2(1), Weight((0, 2))).target == Weight((2, 0))
    assert functor_bimodule(E2(1), Weight((1, 1))).is_zero
    assert functor_bimodule(F2(1), Weight((2, 0))).target == Weight((0, 2))


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2)])
def test_case_exclusivity_and_weight_moves(n, k):
    for lam in admissible_weights(n, k):
        for i in range(1, n):
            e, f = functor_bimodule(E(i), lam), functor_bimodule(F(i), lam)
            assert e.is_zero == (lam.shifted(i, 1) is None)
            assert f.is_zero == (lam.shifted(i, -1) is None)
            for a in lam.matchings():
                start = ProjectiveOrbit.projective(lam, a)
                for mu, _, _ in start.apply(E(i)).terms:
                    assert mu == lam.shifted(i, 1)
                for mu, _, _ in start.apply(F(i)).terms:
                    assert mu == lam.shifted(i, -1)
                assert {(x, y) for x, y, _ in start.apply(K(i)).terms} == {(lam, a)}


def test_apply_examples():
    lam = Weight((1, 1, 0, 0))
    (a,) = lam.matchings()
    start = ProjectiveOrbit.projective(lam, a)
    assert apply_functor(ID, start) == start
    (empty,) = Weight((2, 0, 0, 0)).matchings()
    want = ProjectiveOrbit({(Weight((2, 0, 0, 0)), empty, 1): 1, (Weight((2, 0, 0, 0)), empty, -1): 1})
    assert apply_functor(E(1), start) == want


def test_worked_word_reaches_the_target():
    res = apply_functor(parse_word(WORKED_WORD), ProjectiveOrbit.highest(6, 3))
    assert res == ProjectiveOrbit.projective(TARGET, TARGET_MATCHING)


def test_k_e_n4():
    assert verify_relation("K-E", 4, 2).ok


def test_cartan_n4():
    for k in (1, 2, 3):
        rep = verify_relation("E-F-cartan", 4, k)
        assert rep.ok and rep.cases_checked > 0


def test_serre_vanishing_case():
    # on (.., 0, 1, 2, ..) the word E_{i+1} E_i E_i is zero, the others are not
    lam = Weight((0, 1, 2, 1))
    (a,) = lam.matchings()
    start = ProjectiveOrbit.projective(lam, a)
    assert start.apply_word((E(2), E(1), E(1))).is_zero()
    lhs = start.apply_word((E(1), E(1), E(2))) + start.apply_word((E(2), E(1), E(1)))
    mid = start.apply_word((E(1), E(2), E(1)))
    assert not mid.is_zero()
    assert lhs == mid.shift(1) + mid.shift(-1)


@pytest.mark.parametrize("rel", sorted(RELATIONS))
def test_relations_n4(rel):
    for k in (1, 2, 3):
        rep = verify_relation(rel, 4, k)
        assert rep.ok, rep.mismatches[:2]


def test_unknown_relation():
    with pytest.raises(KeyError):
        verify_relation("nope", 3, 1)


def test_hom_rank_examples():
    lam = Weight((1, 1))
    (a,) = lam.matchings()
    p = ProjectiveOrbit.projective(lam, a)
    assert hom_rank(p, p).coeffs == {2: 1, 0: 1}
    assert hom_rank(p, p.shift(2)).coeffs == {4: 1, 2: 1}
    other = ProjectiveOrbit.highest(2, 1)
    assert hom_rank(p, other).is_zero()


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 2)])
def test_adjunctions(n, k):
    for i in range(1, n):
        rep = adjunction_check(i, n, k)
        assert rep.ok, rep.mismatches[:2]
        assert rep.pairs_checked > 0


def test_presentation_examples():
    hw = highest_weight(4, 2)
    assert monomial_presentation(hw, hw.matchings()[0]) == ()
    word = monomial_presentation(TARGET, TARGET_MATCHING)
    assert check_presentation(TARGET, TARGET_MATCHING, word)
    assert word_str(word) == "F2 F1 F4 F3 F2 F5 F4^(2) F3^(2)"


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 6) for k in range(1, n)])
def test_presentations_round_trip(n, k):
    table = presentation_table(n, k)
    for lam in admissible_weights(n, k):
        for a in lam.matchings():
            assert (lam, a) in table
            assert check_presentation(lam, a, table[(lam, a)])
