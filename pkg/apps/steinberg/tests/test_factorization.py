from fractions import Fraction
from itertools import product

import numpy as np

import pytest

from apps.roots.functionals import Functional
from apps.steinberg.cones import AdmissibleSet
from apps.steinberg.factorization import (
    collect_normal_form,
    commutator,
    commutator_relation,
    default_order,
    factor_over_classes,
    factor_unipotent,
    relation_cycle,
)
from apps.steinberg.words import RootGroups, evaluate_word, is_cycle, nilpotent_exp
from core.exceptions import NegativelyProportional, NotInSpan, NotSupported, OrderIncompatible

from .utils import ALPHA, ALPHA_BETA, BETA, elementary


@pytest.fixture
def positive(sl3_system):
    return AdmissibleSet.check([Functional.of(k) for k in (ALPHA, BETA, ALPHA_BETA)], sl3_system.roots)


def _upper(s, t, r):
    return nilpotent_exp(elementary(3, 0, 1, s)) @ nilpotent_exp(elementary(3, 0, 2, t)) \
        @ nilpotent_exp(elementary(3, 1, 2, r))


def test_single_class_element_is_one_leg(sl3_groups):
    u = nilpotent_exp(elementary(3, 0, 2, 3))
    word = factor_over_classes(sl3_groups, u, [ALPHA_BETA])
    assert len(word) == 1
    assert word.legs[0].matrix == u


def test_factor_in_given_order(sl3_groups, positive):
    s, t, r = Fraction(2), Fraction(-1, 3), Fraction(5, 2)
    u = _upper(s, t, r)
    word = factor_unipotent(sl3_groups, u, positive, order=[ALPHA, ALPHA_BETA, BETA])
    assert word.keys() == [ALPHA, ALPHA_BETA, BETA]
    assert word.legs[0].matrix == nilpotent_exp(elementary(3, 0, 1, s))
    assert word.legs[1].matrix == nilpotent_exp(elementary(3, 0, 2, t))
    assert word.legs[2].matrix == nilpotent_exp(elementary(3, 1, 2, r))


def test_default_order_puts_highest_class_last():
    assert default_order([ALPHA_BETA, ALPHA, BETA])[-1] == ALPHA_BETA


def test_factorization_round_trip(sl3_groups, positive):
    values = [Fraction(-3), Fraction(1, 2), Fraction(0), Fraction(7, 3)]
    for s, t, r in product(values, repeat=3):
        u = _upper(s, t, r)
        word = factor_unipotent(sl3_groups, u, positive)
        assert evaluate_word(word) == u
        again = factor_unipotent(sl3_groups, evaluate_word(word), positive)
        assert again == word
        for leg in word.legs:
            sl3_groups.check(leg)


def _random_element(rng, groups, key):
    x = [Fraction(0)] * groups.algebra.dim
    for b in groups.class_space(key).basis:
        c = Fraction(int(rng.integers(1, 10)) * (1 if rng.integers(0, 2) else -1), int(rng.integers(1, 6)))
        x = [a + c * v for a, v in zip(x, b)]
    return groups.element(key, x)


def _check_random_round_trips(groups, keys, seed, count=100):
    rng = np.random.default_rng(seed)
    order = default_order(keys)
    for _ in range(count):
        legs = [_random_element(rng, groups, k) for k in order]
        u = evaluate_word(groups.word(legs))
        word = factor_over_classes(groups, u, keys, order)
        assert evaluate_word(word) == u
        assert [leg.matrix for leg in word.legs] == [leg.matrix for leg in legs]
        assert factor_over_classes(groups, evaluate_word(word), keys, order) == word


def test_random_round_trips_on_sl3(sl3_groups):
    _check_random_round_trips(sl3_groups, [ALPHA, BETA, ALPHA_BETA], seed=11)


def test_random_round_trips_on_sl4_example(sl4_example_system):
    groups = RootGroups(sl4_example_system)
    keys = [k for k in groups.class_keys() if k[0] > 0]
    assert sorted(keys) == [(1, -1), (1, 1), (3, 1)]
    _check_random_round_trips(groups, keys, seed=12)


def test_order_must_list_the_classes(sl3_groups, positive):
    with pytest.raises(OrderIncompatible):
        factor_unipotent(sl3_groups, _upper(1, 1, 1), positive, order=[ALPHA, BETA])


def test_element_outside_the_classes(sl3_groups, positive):
    with pytest.raises(NotInSpan):
        factor_unipotent(sl3_groups, nilpotent_exp(elementary(3, 1, 0)), positive)


def test_chevalley_commutator(sl3_groups, sl3):
    s, t = Fraction(3), Fraction(-2, 5)
    x = sl3_groups.element(ALPHA, tuple(s * c for c in sl3.basis_vector(0)))
    y = sl3_groups.element(BETA, tuple(t * c for c in sl3.basis_vector(3)))
    word = commutator_relation(sl3_groups, x, y)
    assert word.keys() == [ALPHA_BETA]
    assert word.legs[0].matrix == nilpotent_exp(elementary(3, 0, 2, s * t))


def test_commuting_classes_give_empty_word(sl3_groups, sl3):
    x = sl3_groups.element(ALPHA, sl3.basis_vector(0))
    y = sl3_groups.element(ALPHA_BETA, sl3.basis_vector(1))
    assert len(commutator_relation(sl3_groups, x, y)) == 0


def test_opposite_classes_have_no_relation(sl3_groups, sl3):
    x = sl3_groups.element(ALPHA, sl3.basis_vector(0))
    y = sl3_groups.element((-2, 1), sl3.basis_vector(2))
    with pytest.raises(NegativelyProportional):
        commutator_relation(sl3_groups, x, y)


def test_multi_leg_commutator(sl4_rank_two_groups, sl4):
    groups = sl4_rank_two_groups
    x = groups.element((1, -1), tuple(a + b for a, b in zip(sl4.basis_vector(0), sl4.basis_vector(8))))
    y = groups.element((0, 1), sl4.basis_vector(4))
    word = commutator_relation(groups, x, y)
    assert sorted(word.keys()) == [(1, 0), (1, 1)]
    assert evaluate_word(word) == commutator(x, y)


def test_relation_gives_a_cycle(sl3_groups, sl3):
    x = sl3_groups.element(ALPHA, tuple(2 * c for c in sl3.basis_vector(0)))
    y = sl3_groups.element(BETA, sl3.basis_vector(3))
    assert is_cycle(relation_cycle(sl3_groups, x, y))


def test_normal_form_of_ordered_word(sl3_groups, positive):
    word = factor_unipotent(sl3_groups, _upper(1, 2, 3), positive)
    assert collect_normal_form(sl3_groups, word, positive) == word


def test_interleaved_legs_are_merged(sl3_groups, sl3, positive):
    word = sl3_groups.word([
        sl3_groups.element(ALPHA, sl3.basis_vector(0)),
        sl3_groups.element(BETA, sl3.basis_vector(3)),
        sl3_groups.element(ALPHA, tuple(2 * c for c in sl3.basis_vector(0))),
    ])
    normal = collect_normal_form(sl3_groups, word, positive)
    assert evaluate_word(normal) == evaluate_word(word)
    assert len(set(normal.keys())) == len(normal.keys())


def test_equal_evaluations_have_equal_normal_forms(sl3_groups, sl3, positive):
    e12 = sl3_groups.element(ALPHA, sl3.basis_vector(0))
    e23 = sl3_groups.element(BETA, sl3.basis_vector(3))
    e13 = sl3_groups.element(ALPHA_BETA, sl3.basis_vector(1))
    first = sl3_groups.word([e12, e23])
    second = sl3_groups.word([e23, e12, e13])
    assert collect_normal_form(sl3_groups, first, positive) == collect_normal_form(sl3_groups, second, positive)


def test_normal_form_rejects_unsupported_legs(sl3_groups, sl3, positive):
    word = sl3_groups.word([sl3_groups.element((-2, 1), sl3.basis_vector(2))])
    with pytest.raises(NotSupported):
        collect_normal_form(sl3_groups, word, positive)
