import pytest

from conftest import series
from novikov.errors import MoveError
from novikov.grading import Grade
from novikov.lefschetz import CIRCLE
from novikov.necklace import is_lyndon, letters, lyndon_words, necklace_orbits

R = Grade.of(8)


@pytest.mark.parametrize('word, expected', [((0,), True), ((0, 1), True), ((1, 0), False), ((0, 0), False),
                                            ((0, 0, 1), True), ((0, 1, 0, 1), False), ((0, 1, 1), True)])
def test_is_lyndon(word, expected):
    assert is_lyndon(word) is expected


def test_short_lyndon_words():
    assert set(lyndon_words([Grade.of(1)] * 2, Grade.of(3))) == {(0,), (1,), (0, 1)}


def test_lyndon_word_count():
    """2, 1, 2, 3 and 6 binary Lyndon words of lengths 1 to 5."""
    assert len(list(lyndon_words([Grade.of(1)] * 2, Grade.of(6)))) == 14


def test_letters():
    assert letters(series('2*t - t^3')) == [(CIRCLE.generator(0), 1)] * 2 + [(CIRCLE.generator(0) * 3, -1)]
    with pytest.raises(MoveError):
        letters(series('1/2*t'))
    with pytest.raises(MoveError):
        letters(series('1 + t'))


@pytest.mark.parametrize('eta', ['t', '-t', '2*t', 't + t^2', '-t + 2*t^2', 't^2 - t^3'])
@pytest.mark.parametrize('mu', [0, 1])
@pytest.mark.parametrize('degree', [1, 2])
def test_necklaces_sum_to_a_logarithm(eta, mu, degree):
    """The weighted orbit sum is (-1)^i log(1 + (-1)^mu eta)."""
    x = series(eta)
    orbits = necklace_orbits(x, mu, degree, R)
    expected = x.scale((-1) ** mu).log_one_plus(R).scale((-1) ** degree)
    assert orbits.log_sum(R).agrees(expected)


def test_single_flow_line():
    orbits = necklace_orbits(series('t'), 0, 1, Grade.of(4))
    assert [(o.period, o.sign) for o in orbits] == [(1, -1), (2, 1), (3, -1)]


def test_no_flow_lines_no_orbits():
    assert len(necklace_orbits(series('0'), 0, 1, None)) == 0
    with pytest.raises(MoveError):
        necklace_orbits(series('t'), 0, 1, None)
