"""Three-strand braid words, their 2x2 qubit representation, and the error metric.

Words are stored in temporal order: ``factors[0]`` is the first exchange that
physically happens, so ``evaluate`` multiplies later factors on the left.
The operator expression of a word is therefore its factor list reversed.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import model

GENERATORS = (1, 2)
WEAVE_EXPONENTS = (-4, -2, 2, 4)
PERIOD = 10  # sigma_i ** 10 == I

UNITARY_ATOL = 1e-10
DISTANCE_UNITARY_ATOL = 1e-8


class NonUnitaryError(ValueError):
    pass


class BraidParseError(ValueError):
    def __init__(self, message: str, token_index: int, offset: int):
        super().__init__(f"{message} (token {token_index + 1}, column {offset + 1})")
        self.token_index = token_index
        self.offset = offset


def is_unitary(m, atol: float = UNITARY_ATOL) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2) or not np.all(np.isfinite(m)):
        return False
    return bool(np.allclose(m @ m.conj().T, np.eye(2), rtol=0.0, atol=atol))


def check_unitary(m, atol: float = UNITARY_ATOL) -> np.ndarray:
    """Return ``m`` as a complex 2x2 array, raising NonUnitaryError if U U^dagger != I."""
    arr = np.asarray(m, dtype=complex)
    if not is_unitary(arr, atol):
        raise NonUnitaryError(f"matrix is not unitary within {atol:g}:\n{arr}")
    return arr


@dataclass(frozen=True)
class BraidWord:
    """Ordered ``(generator, exponent)`` factors, first exchange first.

    Unmerged factors and zero exponents are accepted here; ``normalize``
    produces the merged form.
    """

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        clean = []
        for g, e in self.factors:
            if g not in GENERATORS:
                raise ValueError(f"generator index {g!r} out of range for three strands")
            if int(e) != e:
                raise ValueError(f"exponent {e!r} is not an integer")
            clean.append((int(g), int(e)))
        object.__setattr__(self, "factors", tuple(clean))

    @property
    def length(self) -> int:
        """Number of elementary crossings."""
        return sum(abs(e) for _, e in self.factors)

    @property
    def slots(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __add__(self, other: BraidWord) -> BraidWord:
        return BraidWord(self.factors + other.factors)

    def reversed(self) -> BraidWord:
        """Switch between temporal and operator-expression order."""
        return BraidWord(self.factors[::-1])

    def inverse(self) -> BraidWord:
        return BraidWord(tuple((g, -e) for g, e in reversed(self.factors)))

    def __str__(self) -> str:
        return word_to_text(self)


def generators_from(F: model.FSymbols = model.FIBONACCI_F,
                    R: model.RSymbols = model.FIBONACCI_R) -> tuple[np.ndarray, np.ndarray]:
    """sigma_1 = diag(R^0_11, R^1_11) and sigma_2 = F^-1 sigma_1 F with F = F^1_111."""
    s1 = np.diag([R(1, 1, 0), R(1, 1, 1)]).astype(complex)
    f = np.array(F.matrix(1, 1, 1, 1), dtype=complex)
    return s1, np.linalg.inv(f) @ s1 @ f


@functools.cache
def sigma(i: int) -> np.ndarray:
    """Elementary exchange of pair ``i`` on the qubit space {|0>, |1>}."""
    if i not in GENERATORS:
        raise ValueError(f"generator index must be 1 or 2, got {i!r}")
    out = generators_from()[i - 1]
    out.setflags(write=False)
    return out


def algebra_residuals(F: model.FSymbols = model.FIBONACCI_F,
                      R: model.RSymbols = model.FIBONACCI_R) -> dict[str, float]:
    """Max-abs residuals of the identities the generators and tables must satisfy."""
    s1, s2 = generators_from(F, R)
    f = np.array(F.matrix(1, 1, 1, 1), dtype=complex)
    eye = np.eye(2)
    return {
        "pentagon": model.verify_pentagon(F),
        "hexagon": model.verify_hexagon(F, R),
        "sigma_period": max(float(np.max(np.abs(np.linalg.matrix_power(s, 10) - eye))) for s in (s1, s2)),
        "braid_relation": float(np.max(np.abs(s1 @ s2 @ s1 - s2 @ s1 @ s2))),
        "f_involution": float(np.max(np.abs(f @ f - eye))),
        "golden": abs(model.TAU ** 2 + model.TAU - 1.0),
    }


@functools.cache
def generator_power(g: int, e: int) -> np.ndarray:
    base = sigma(g) if e >= 0 else sigma(g).conj().T
    out = np.linalg.matrix_power(base, abs(e))
    out.setflags(write=False)
    return out


def evaluate(word: BraidWord | Iterable[tuple[int, int]]) -> np.ndarray:
    """Operator of a temporal-order word: ``M_k ... M_2 M_1``."""
    out = np.eye(2, dtype=complex)
    for g, e in word:
        out = generator_power(g, e) @ out
    return out


def reduce_exponent(e: int) -> int:
    """Representative of ``e`` mod 10 in -4..5."""
    return (e + 4) % PERIOD - 4


def normalize(word: BraidWord) -> BraidWord:
    """Merge neighbouring factors on the same generator and fold exponents mod 10."""
    stack: list[list[int]] = []
    for g, e in word:
        e = reduce_exponent(e)
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            merged = reduce_exponent(stack[-1][1] + e)
            if merged:
                stack[-1][1] = merged
            else:
                stack.pop()
        else:
            stack.append([g, e])
    return BraidWord(tuple((g, e) for g, e in stack))


def is_weave(word: BraidWord) -> bool:
    """Even exponents in {-4,-2,2,4} with strictly alternating generators."""
    prev = None
    for g, e in word:
        if e not in WEAVE_EXPONENTS or g == prev:
            return False
        prev = g
    return True


def phase_distance(v00, v01, v10, v11):
    """sqrt(2 - |tr V|) for unitary V given entrywise; works on arrays.

    Uses V/sqrt(det V) = [[a, b], [-b*, a*]] and
    2 - 2|Re a| = 2 (Im(a)^2 + |b|^2) / (1 + |Re a|), which avoids the
    cancellation of the direct form near zero error.
    """
    s = np.sqrt(v00 * v11 - v01 * v10)
    a = 0.5 * (v00 / s + np.conj(v11 / s))
    b = 0.5 * (v01 / s - np.conj(v10 / s))
    re_a = np.abs(a.real)
    return np.sqrt(2.0 * (a.imag ** 2 + np.abs(b) ** 2) / (1.0 + re_a))


def distance(w, u) -> float:
    """Global-phase invariant error sqrt(2 - |tr(W U^dagger)|)."""
    w = check_unitary(w, DISTANCE_UNITARY_ATOL)
    u = check_unitary(u, DISTANCE_UNITARY_ATOL)
    v = w @ u.conj().T
    return float(phase_distance(v[0, 0], v[0, 1], v[1, 0], v[1, 1]))


_TOKEN = re.compile(r"s(\d+)(?:\^([+-]?\d+))?")


def word_to_text(word: BraidWord) -> str:
    return " ".join(f"s{g}^{e}" for g, e in word)


def text_to_word(text: str) -> BraidWord:
    """Parse ``"s1^4 s2^-2"`` (temporal order). A bare ``s1`` means ``s1^1``."""
    factors = []
    for idx, m in enumerate(re.finditer(r"\S+", text)):
        tok = _TOKEN.fullmatch(m.group())
        if tok is None:
            raise BraidParseError(f"malformed token {m.group()!r}", idx, m.start())
        g = int(tok.group(1))
        if g not in GENERATORS:
            raise BraidParseError(f"generator s{g} out of range for three anyons", idx, m.start())
        e = int(tok.group(2)) if tok.group(2) is not None else 1
        factors.append((g, e))
    return BraidWord(tuple(factors))
