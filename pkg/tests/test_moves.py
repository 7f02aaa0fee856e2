import random

import pytest

from conftest import geometric, series
from novikov import generate
from novikov.complex import BasedComplex, Generator, check_boundary, torsion
from novikov.covers import random_positive_series
from novikov.cyclotomic import CyclotomicNumber
from novikov.errors import MoveError, ScenarioError
from novikov.field import SplitValue
from novikov.grading import Grade
from novikov.lefschetz import CIRCLE
from novikov.moves import (INVARIANT, VIOLATED, Death, FlowState, NoOp, SelfSlide, Slide, death_flow_series,
                           move_from_dict, random_birth, random_move, run_move, verify_invariance,
                           zeta_ratio_series)
from novikov.orbits import OrbitSet
from novikov.series import NovikovSeries

t = CIRCLE.generator(0)


@pytest.fixture
def two_pairs(R):
    """∂p = (1 - t) q + q2 and ∂p2 = t q + q2; acyclic with torsion (1 - 2t)^-1."""
    gens = tuple(Generator(name, d, CIRCLE.identity) for name, d in (('p', 1), ('p2', 1), ('q', 0), ('q2', 0)))
    boundary = {'p': {'q': series('1 - t'), 'q2': series('1')}, 'p2': {'q': series('t'), 'q2': series('1')}}
    C = BasedComplex(CIRCLE, gens, boundary, R)
    return FlowState(C, OrbitSet(CIRCLE, (), None))


def test_death_turns_the_morse_circle_into_the_flow(circle_morse, circle_flow, R):
    before = circle_morse.flow_state(R)
    after, report = run_move(before, Death('p', 'q'), R)
    assert report.verdict == INVARIANT
    assert report.torsion_ok and report.zeta_ok
    assert not after.complex.generators
    assert after.same_as(circle_flow.flow_state(R))
    assert str(after.zeta()) == geometric(16)


def test_birth_undoes_death(circle_morse, R):
    before = circle_morse.flow_state(R)
    death = Death('p', 'q')
    birth = death.inverse(before)
    after = death.apply(before, R)
    back, report = run_move(after, birth, R)
    assert report.verdict == INVARIANT
    assert back.same_as(before)


def test_death_updates_the_remaining_boundary(two_pairs, R):
    after, report = run_move(two_pairs, Death('p', 'q'), R)
    assert report.verdict == INVARIANT
    assert after.complex.names == ['p2', 'q2']
    through = series('1') + death_flow_series(series('1'), series('-t'), series('t'), 0, 15)
    assert after.complex.entry('p2', 'q2').agrees(through)
    tail = ' - '.join(['t'] + [f't^{k}' for k in range(2, 16)])
    assert str(after.complex.entry('p2', 'q2')) == f'1 - {tail} + O(16)'


@pytest.mark.parametrize('mu', [0, 1])
def test_death_flow_series_sums_to_the_inverse_pivot(mu, R):
    w, v, eta = series('1 + t'), series('2'), series('-t + t^3')
    pivot = eta + (-1) ** mu
    direct = -(w * pivot.invert(R) * v)
    assert death_flow_series(w, eta, v, mu, 15).agrees(direct.truncate(R))


def test_self_slide_is_invariant(circle_morse, R):
    before = circle_morse.flow_state(R)
    after, report = run_move(before, SelfSlide('p', series('1 + t'), t), R)
    assert report.verdict == INVARIANT
    assert str(after.complex.entry('p', 'q')) == '1 - t^2'
    assert str(after.zeta()) == '1 + t + O(16)'


def test_wrong_zeta_factor_is_a_violation(circle_morse, R):
    before = circle_morse.flow_state(R)
    after, report = run_move(before, SelfSlide('p', series('1 + t'), zeta_factor=series('1 - t')), R)
    assert report.verdict == VIOLATED
    assert [str(s) for s in report.mismatches] == ['Q']
    assert not report.zeta_ok
    assert report.torsion_ok


def test_slides_and_noops_are_invariant(two_pairs, R):
    state = two_pairs
    for move in (Slide('p2', 'p', 1, t), Slide('q', 'q2', -1), NoOp('orbit-cancel')):
        state, report = run_move(state, move, R)
        assert report.verdict == INVARIANT, move
        assert check_boundary(state.complex).ok
    assert verify_invariance(two_pairs, state, precision=R).verdict == INVARIANT


@pytest.mark.parametrize('move', [
    Death('p2', 'q'),
    Death('p', 'p2'),
    Slide('p', 'p'),
    Slide('p', 'q'),
    SelfSlide('p', series('2 + t')),
    SelfSlide('p', series('1 + t^(-1)')),
    SelfSlide('p', series('1 + t^3'), t * 2),
    SelfSlide('x', series('1 + t')),
])
def test_inapplicable_moves(move, two_pairs, R):
    with pytest.raises(MoveError):
        move.apply(two_pairs, R)


def test_zeta_ratio(circle_morse, R):
    before = circle_morse.flow_state(R)
    after = Death('p', 'q').apply(before, R)
    assert str(zeta_ratio_series(before, after)) == geometric(16)


def test_random_move_scripts_keep_the_invariant():
    """Random flows; every move of every script is checked from scratch."""
    R = Grade.of(12)
    for seed in range(6):
        scenario = generate.random_complex(seed, R)
        state = scenario.flow_state(R)
        start = state
        for move in scenario.moves:
            state, report = run_move(state, move, R)
            assert report.verdict == INVARIANT, (seed, str(move))
        assert verify_invariance(start, state, precision=R).verdict == INVARIANT


def test_random_moves_apply(rng, R):
    state = generate.circle_morse(R).flow_state(R)
    for _ in range(10):
        move = random_move(state, rng)
        state = move.apply(state, R)
        assert check_boundary(state.complex).ok


def test_move_records():
    for record in ({'move': 'death', 'p': 'p', 'q': 'q', 'mu': 0},
                   {'move': 'self_slide', 'p': 'p', 'x': '1 + t', 'zeta_factor': '1 - t'},
                   {'move': 'slide', 'p': 'p', 'q': 'p2', 'sign': -1, 'h': 't'},
                   {'move': 'noop', 'cancel': 'orbit-cancel'}):
        assert move_from_dict(record, CIRCLE).to_dict() == record
    assert isinstance(move_from_dict({'move': 'flow-line-cancel'}, CIRCLE), NoOp)
    assert isinstance(move_from_dict({'move': 'self-slide', 'p': 'p', 'x': '1 + t'}, CIRCLE), SelfSlide)


@pytest.mark.parametrize('record', [
    {'move': 'teleport'},
    {'move': 'death', 'p': 'p'},
    {'move': 'slide', 'p': 'p', 'q': 'q', 'h': '1 + t'},
    {'move': 'noop', 'cancel': 'everything'},
    {'move': 'self_slide', 'p': 'p', 'x': '1 + t^^2'},
])
def test_bad_move_records(record):
    with pytest.raises(ScenarioError):
        move_from_dict(record, CIRCLE)


def unit_ratio(x, i, R):
    """``x ** ((-1) ** i)``."""
    return x if i % 2 == 0 else x.invert(R)


def nonzero_positive(group, rng):
    eta = random_positive_series(group, rng)
    while eta.is_zero:
        eta = random_positive_series(group, rng)
    return eta


@pytest.mark.parametrize('block', range(5))
def test_deaths_with_eta_change_torsion_and_zeta_by_the_pivot(block):
    """50 random deaths at R = 10 whose pivot ``(-1)^μ + η`` has ``η != 0``."""
    R = Grade.of(10)
    for seed in range(10 * block, 10 * (block + 1)):
        rng = random.Random(seed)
        state = generate.random_complex(seed, R, rank=1 + seed % 2, moves=0).flow_state(R)
        birth = random_birth(state, rng)
        state = birth.apply(state, R)
        state = SelfSlide(birth.p, NovikovSeries.one(state.group) + nonzero_positive(state.group, rng)).apply(state, R)
        C = state.complex
        i, pivot = C.degree(birth.p), C.entry(birth.p, birth.q)
        mu = 0 if pivot.constant_term().rational > 0 else 1
        eta = pivot - (-1) ** mu
        assert not eta.is_zero and eta.is_positive, seed
        after, report = run_move(state, Death(birth.p, birth.q), R)
        assert report.verdict == INVARIANT, seed
        assert report.torsion_ok and report.zeta_ok, seed
        split = torsion(C).split
        expected = torsion(after.complex) * SplitValue.unit(split, unit_ratio(pivot, i, R))
        assert not expected.mismatches(torsion(C), R), seed
        necklaces = unit_ratio(eta.scale((-1) ** mu) + 1, i, R)
        assert zeta_ratio_series(state, after, R).agrees(necklaces, R), seed


@pytest.mark.parametrize('block', range(5))
def test_self_slides_change_torsion_and_first_order_zeta(block):
    """50 random self-slides ``p -> x p`` with ``x = 1 + a_1 h + a_2 h^2 + a_3 h^3``."""
    R = Grade.of(10)
    for seed in range(10 * block, 10 * (block + 1)):
        rng = random.Random(seed)
        state = generate.random_complex(seed, R, rank=1 + seed % 2, moves=0).flow_state(R)
        C = state.complex
        h = None
        while h is None or C.group.grade(h).sign() <= 0:
            h = C.group.random_element(rng, 2)
        a = [rng.choice((-2, -1, 1, 2)), rng.randint(-2, 2), rng.randint(-2, 2)]
        x = NovikovSeries.one(C.group)
        for k, c in enumerate(a, 1):
            x = x + NovikovSeries.monomial(C.group, h * k, c)
        p = rng.choice(C.names)
        i = C.degree(p)
        after, report = run_move(state, SelfSlide(p, x, h), R)
        assert report.verdict == INVARIANT, seed
        split = torsion(C).split
        expected = torsion(C) * SplitValue.unit(split, unit_ratio(x, i, R))
        assert not torsion(after.complex).mismatches(expected, R), seed
        ratio = zeta_ratio_series(state, after, R)
        assert ratio.constant_term().is_one, seed
        assert ratio.coefficient(h) == CyclotomicNumber.of(1, (-1) ** (i + 1) * a[0]), seed
