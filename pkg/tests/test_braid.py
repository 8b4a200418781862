import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidc import model
from braidc.braid import (
    BraidParseError,
    BraidWord,
    NonUnitaryError,
    distance,
    evaluate,
    generator_power,
    is_unitary,
    is_weave,
    normalize,
    sigma,
    text_to_word,
    word_to_text,
)
from oracles import eig_distance, full_product, random_unitary, textbook_distance

TAU = model.TAU
H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
# as printed, operator order (rightmost factor acts first)
W_H_OPERATOR = "s1^4 s2^-2 s1^2 s2^-2 s1^2 s2^2 s1^-2 s2^4 s1^2 s2^-2 s1^-2 s2^2 s1^2"
W_H_PRINTED = -1j / np.sqrt(2) * np.array([[1.0040 + 0.0056j, 0.9959 - 0.0048j],
                                            [0.9959 + 0.0048j, -1.0040 + 0.0056j]])

factor = st.tuples(st.sampled_from((1, 2)), st.integers(-25, 25))
words = st.lists(factor, max_size=12).map(lambda fs: BraidWord(tuple(fs)))


def test_sigma1():
    expected = np.diag([np.exp(-4j * np.pi / 5), np.exp(3j * np.pi / 5)])
    assert np.allclose(sigma(1), expected, atol=1e-15)


def test_sigma2_entries():
    s2 = sigma(2)
    assert s2[1, 1] == pytest.approx(-TAU, abs=1e-12)
    assert s2[0, 0] == pytest.approx(-TAU * np.exp(-1j * np.pi / 5), abs=1e-12)
    assert s2[0, 0] == pytest.approx(-0.5 + 0.3633j, abs=1e-4)
    assert abs(abs(s2[0, 1]) - np.sqrt(TAU)) < 1e-12


def test_sigma2_symmetric_unitary():
    s2 = sigma(2)
    assert abs(s2[0, 1] - s2[1, 0]) < 1e-12
    assert is_unitary(s2, 1e-12)


@pytest.mark.parametrize("bad", [0, 3, -1])
def test_sigma_rejects_bad_index(bad):
    with pytest.raises(ValueError):
        sigma(bad)


@pytest.mark.parametrize("i", [1, 2])
def test_period_ten(i):
    assert np.max(np.abs(np.linalg.matrix_power(sigma(i), 10) - np.eye(2))) < 1e-12


def test_braid_relation():
    s1, s2 = sigma(1), sigma(2)
    assert np.max(np.abs(s1 @ s2 @ s1 - s2 @ s1 @ s2)) < 1e-12


def test_evaluate_trivial_words():
    assert np.array_equal(evaluate(BraidWord()), np.eye(2))
    assert np.allclose(evaluate(BraidWord(((1, 1), (1, -1)))), np.eye(2), atol=1e-15)


def test_evaluate_applies_first_factor_first():
    w = BraidWord(((1, 2), (2, 2), (1, -2)))  # G = s1^-2 s2^2 s1^2 in operator order
    g = generator_power(1, -2) @ generator_power(2, 2) @ generator_power(1, 2)
    assert np.allclose(evaluate(w), g, atol=1e-14)


def test_paper_weave_matrix():
    w = text_to_word(W_H_OPERATOR).reversed()
    m = evaluate(w)
    # align global phase before comparing entrywise
    phase = np.vdot(m, W_H_PRINTED) / abs(np.vdot(m, W_H_PRINTED))
    assert np.max(np.abs(m * phase - W_H_PRINTED)) < 5e-3
    assert distance(m, H) == pytest.approx(0.00657, abs=5e-4)


@given(words, words)
def test_evaluate_homomorphism(w1, w2):
    assert np.allclose(evaluate(w1 + w2), evaluate(w2) @ evaluate(w1), atol=1e-12)


@given(words)
def test_evaluate_matches_single_step_product(w):
    assert np.allclose(evaluate(w), full_product(w), atol=1e-11)


@pytest.mark.parametrize("text, expected", [
    ("s1^8", "s1^-2"),
    ("s1^6", "s1^-4"),
    ("s1^-6", "s1^4"),
    ("s1^-8", "s1^2"),
    ("s1^2 s1^4", "s1^-4"),
    ("s1^2 s2^0 s1^-2", ""),
    ("s1^5", "s1^5"),
    ("s1^-5", "s1^5"),
    ("s2^10 s1^3 s2^20", "s1^3"),
    ("s1^3 s2^4 s2^-4 s1^3", "s1^-4"),
])
def test_normalize_examples(text, expected):
    assert word_to_text(normalize(text_to_word(text))) == expected


def test_normalize_preserves_operator_randomized():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        n = int(rng.integers(0, 12))
        w = BraidWord(tuple((int(g), int(e)) for g, e in zip(rng.integers(1, 3, n), rng.integers(-15, 16, n))))
        nw = normalize(w)
        assert np.max(np.abs(evaluate(nw) - evaluate(w))) < 1e-10
        assert normalize(nw) == nw
        assert all(e != 0 and -4 <= e <= 5 for _, e in nw)
        assert all(a[0] != b[0] for a, b in zip(nw.factors, nw.factors[1:]))


@pytest.mark.parametrize("text, expected", [
    ("s1^2 s2^4", True),
    ("", True),
    ("s2^-4 s1^-2 s2^2", True),
    ("s1^3", False),
    ("s1^2 s1^2", False),
    ("s1^6", False),
    ("s1^2 s2^-1", False),
])
def test_is_weave(text, expected):
    assert is_weave(text_to_word(text)) is expected


def test_distance_basic():
    assert distance(H, H) == 0.0
    for theta in np.linspace(-np.pi, np.pi, 13):
        assert distance(np.exp(1j * theta) * H, H) < 1e-12
    assert distance(np.eye(2), np.diag([1, -1])) == pytest.approx(np.sqrt(2), abs=1e-15)


def test_distance_rejects_non_unitary():
    with pytest.raises(NonUnitaryError):
        distance(np.eye(2) * 1.01, H)
    with pytest.raises(NonUnitaryError):
        distance(H, [[1, 1], [0, 1]])


def test_distance_against_both_oracles():
    rng = np.random.default_rng(11)
    for _ in range(2000):
        w, u = random_unitary(rng), random_unitary(rng)
        d = distance(w, u)
        assert d == pytest.approx(eig_distance(w, u), abs=1e-12)
        assert d == pytest.approx(textbook_distance(w, u), abs=1e-7)


def test_distance_exact_near_zero():
    # the direct formula loses half the digits here; both stable routes agree
    w = evaluate(text_to_word("s1^2 s2^-4 s1^2"))
    u = generator_power(1, 2) @ generator_power(2, -4) @ generator_power(1, 2)
    assert distance(w, u) < 1e-14
    assert eig_distance(w, u) < 1e-14


def test_text_round_trip():
    w = BraidWord(((1, 4), (2, -2)))
    assert word_to_text(w) == "s1^4 s2^-2"
    assert text_to_word("s1^4 s2^-2") == w
    assert text_to_word("  s1^+4\ts2^-2 ") == w
    assert text_to_word("s2") == BraidWord(((2, 1),))
    assert text_to_word("") == BraidWord()


@given(words)
def test_text_round_trip_property(w):
    assert text_to_word(word_to_text(w)) == w


@pytest.mark.parametrize("text, token", [("s3^2", 1), ("s1^2 x", 2), ("s1^2 s2^", 2), ("s1^2 s0^1", 2)])
def test_parse_errors(text, token):
    with pytest.raises(BraidParseError) as info:
        text_to_word(text)
    assert info.value.token_index == token - 1
    assert f"token {token}" in str(info.value)


def test_word_validation():
    with pytest.raises(ValueError):
        BraidWord(((3, 1),))
    with pytest.raises(ValueError):
        BraidWord(((1, 1.5),))
    w = text_to_word("s1^4 s2^-2")
    assert w.length == 6 and w.slots == 2
    assert w.reversed() == text_to_word("s2^-2 s1^4")
    assert np.allclose(evaluate(w + w.inverse()), np.eye(2), atol=1e-14)
