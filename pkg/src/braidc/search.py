"""Weave search: exhaustive enumeration and meet-in-the-middle.

The brute-force engine walks the weave tree one slot at a time, holding every
node of a level as columns of a (4, N) complex array.  Each child is one 2x2
product with its parent's matrix, so no word is ever re-multiplied from
scratch.  Work is split over the eight single-slot prefixes; those branches
are independent and their minima are merged with a fixed tie-break.
"""
from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from .braid import (
    WEAVE_EXPONENTS,
    BraidWord,
    NonUnitaryError,
    check_unitary,
    distance,
    evaluate,
    generator_power,
    phase_distance,
)

TIE_TOL = 1e-12
DEFAULT_CELL = 0.02
DEFAULT_MAX_INDEX_ENTRIES = 20_000_000

_EXP_RANK = {e: r for r, e in enumerate(WEAVE_EXPONENTS)}


class UnknownTargetError(KeyError):
    pass


class SearchResourceError(MemoryError):
    pass


@dataclass(frozen=True)
class TargetGate:
    name: str
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = check_unitary(self.matrix)
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


_S2 = 1 / math.sqrt(2)
LIBRARY = {
    "identity": [[1, 0], [0, 1]],
    "hadamard": [[_S2, _S2], [_S2, -_S2]],
    "pauli_x": [[0, 1], [1, 0]],
    "pauli_y": [[0, -1j], [1j, 0]],
    "pauli_z": [[1, 0], [0, -1]],
    "phase_s": [[1, 0], [0, 1j]],
    "t": [[1, 0], [0, np.exp(1j * np.pi / 4)]],
}


def load_target_file(path: str | Path) -> TargetGate:
    """Read a 2x2 matrix stored as JSON ``[[[re, im], [re, im]], [[re, im], [re, im]]]``."""
    path = Path(path)
    raw = json.loads(path.read_text(encoding="utf-8"))
    try:
        m = np.array([[complex(float(re), float(im)) for re, im in row] for row in raw])
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{path}: expected a 2x2 array of [re, im] pairs") from exc
    if m.shape != (2, 2):
        raise ValueError(f"{path}: expected a 2x2 array of [re, im] pairs")
    return TargetGate(path.stem, m)


def target(name: str) -> TargetGate:
    """Look up a named gate, or load one from a JSON file path."""
    if name in LIBRARY:
        return TargetGate(name, np.array(LIBRARY[name], dtype=complex))
    if Path(name).is_file():
        return load_target_file(name)
    raise UnknownTargetError(f"unknown target {name!r}; known: {', '.join(LIBRARY)}")


@dataclass(frozen=True)
class SearchBudget:
    """Search limits: ``max_exchanges`` bounds sum |exponent|, ``max_slots`` the factor count."""

    max_exchanges: int = 30
    max_slots: int | None = None
    method: str = "brute"
    threads: int = 1

    def __post_init__(self):
        if self.max_slots is None:
            object.__setattr__(self, "max_slots", self.max_exchanges // 2)
        if self.max_exchanges < 2:
            raise ValueError("max_exchanges must be at least 2")
        if self.max_slots < 1:
            raise ValueError("max_slots must be at least 1")
        if self.method not in ("brute", "bidirectional"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.threads < 1:
            raise ValueError("threads must be positive")


@dataclass(frozen=True)
class SearchResult:
    word: BraidWord
    matrix: np.ndarray = field(repr=False)
    error: float
    nodes_visited: int
    wall_time: float  # seconds
    method: str


def tie_key(word: BraidWord) -> tuple:
    """Order among equally good weaves: fewer crossings, sigma_1 first, then exponents."""
    if not word.factors:
        return (0, 0, ())
    return (word.length, word.factors[0][0], tuple(_EXP_RANK[e] for _, e in word))


def _pick(candidates: list[tuple[float, BraidWord]]) -> tuple[float, BraidWord]:
    best = min(err for err, _ in candidates)
    close = [(tie_key(w), err, w) for err, w in candidates if err <= best + TIE_TOL]
    _, err, word = min(close, key=lambda t: t[0])
    return err, word


def _iter_weaves(max_exchanges: int, max_slots: int) -> Iterator[BraidWord]:
    yield BraidWord()
    for start in (1, 2):
        stack: list[tuple[tuple[int, int], ...]] = [()]
        while stack:
            prefix = stack.pop()
            if prefix:
                yield BraidWord(prefix)
            if len(prefix) >= max_slots:
                continue
            used = sum(abs(e) for _, e in prefix)
            g = start if len(prefix) % 2 == 0 else 3 - start
            # reversed so that pops come out in ascending exponent order
            for e in reversed(WEAVE_EXPONENTS):
                if used + abs(e) <= max_exchanges:
                    stack.append(prefix + ((g, e),))


def enumerate_weaves(budget: SearchBudget) -> Iterator[BraidWord]:
    """Every weave within ``budget``, for both starting generators, empty weave first."""
    return _iter_weaves(budget.max_exchanges, budget.max_slots)


def count_weaves(max_exchanges: int, max_slots: int | None = None) -> int:
    """Size of the weave set, by dynamic programming over (crossings, slots)."""
    if max_slots is None:
        max_slots = max_exchanges // 2
    # ways[c] = sequences of the current slot count with exactly c crossings
    ways = [0] * (max_exchanges + 1)
    ways[0] = 1
    total = 0
    for _ in range(max_slots):
        nxt = [0] * (max_exchanges + 1)
        for c, k in enumerate(ways):
            if k:
                for e in WEAVE_EXPONENTS:
                    if c + abs(e) <= max_exchanges:
                        nxt[c + abs(e)] += k
        ways = nxt
        total += sum(ways)
    return 1 + 2 * total


def _apply(g: int, e: int, m: np.ndarray) -> np.ndarray:
    """sigma_g**e @ M for every column of a (4, N) array of row-major 2x2s."""
    p = generator_power(g, e)
    return np.stack((
        p[0, 0] * m[0] + p[0, 1] * m[2],
        p[0, 0] * m[1] + p[0, 1] * m[3],
        p[1, 0] * m[0] + p[1, 1] * m[2],
        p[1, 0] * m[1] + p[1, 1] * m[3],
    ))


def _errors(m: np.ndarray, target_dag: np.ndarray) -> np.ndarray:
    d = target_dag
    v00 = m[0] * d[0, 0] + m[1] * d[1, 0]
    v01 = m[0] * d[0, 1] + m[1] * d[1, 1]
    v10 = m[2] * d[0, 0] + m[3] * d[1, 0]
    v11 = m[2] * d[0, 1] + m[3] * d[1, 1]
    return phase_distance(v00, v01, v10, v11)


def _search_branch(start: int, first: int, target_dag: np.ndarray,
                   max_exchanges: int, max_slots: int) -> tuple[list[tuple[float, BraidWord]], int]:
    """Exhaust every weave beginning with ``sigma_start ** first``."""
    mats = np.asarray(generator_power(start, first), dtype=complex).reshape(4, 1)
    cost = np.array([abs(first)], dtype=np.int16)
    parents: list[np.ndarray] = [np.array([-1], dtype=np.int32)]
    exps: list[np.ndarray] = [np.array([first], dtype=np.int8)]

    best = math.inf
    hits: list[tuple[int, np.ndarray, np.ndarray]] = []
    nodes = 0
    level = 0
    while True:
        err = _errors(mats, target_dag)
        nodes += err.size
        best = min(best, float(err.min()))
        sel = np.flatnonzero(err <= best + TIE_TOL)
        hits.append((level, sel, err[sel]))

        if level + 1 >= max_slots:
            break
        g = start if (level + 1) % 2 == 0 else 3 - start
        kids_m, kids_c, kids_p, kids_e = [], [], [], []
        for e in WEAVE_EXPONENTS:
            idx = np.flatnonzero(cost + abs(e) <= max_exchanges)
            if idx.size == 0:
                continue
            kids_m.append(_apply(g, e, mats[:, idx]))
            kids_c.append(cost[idx] + abs(e))
            kids_p.append(idx.astype(np.int32))
            kids_e.append(np.full(idx.size, e, dtype=np.int8))
        if not kids_m:
            break
        mats = np.concatenate(kids_m, axis=1)
        cost = np.concatenate(kids_c)
        parents.append(np.concatenate(kids_p))
        exps.append(np.concatenate(kids_e))
        level += 1

    out = []
    for lvl, sel, errs in hits:
        for i, err in zip(sel, errs):
            if err > best + TIE_TOL:
                continue
            factors = []
            k, node = lvl, int(i)
            while k >= 0:
                g = start if k % 2 == 0 else 3 - start
                factors.append((g, int(exps[k][node])))
                node = int(parents[k][node])
                k -= 1
            out.append((float(err), BraidWord(tuple(reversed(factors)))))
    return out, nodes


def _finish(word: BraidWord, target: TargetGate, nodes: int, t0: float, method: str) -> SearchResult:
    m = evaluate(word)
    return SearchResult(word, m, distance(m, target.matrix), nodes, time.perf_counter() - t0, method)


def brute_force(target: TargetGate, budget: SearchBudget) -> SearchResult:
    """Global minimum of the error over every weave in ``budget``."""
    t0 = time.perf_counter()
    target_dag = target.matrix.conj().T
    empty_err = float(_errors(np.array([[1], [0], [0], [1]], dtype=complex), target_dag)[0])
    candidates: list[tuple[float, BraidWord]] = [(empty_err, BraidWord())]
    nodes = 1

    branches = [(g, e) for g in (1, 2) for e in WEAVE_EXPONENTS if abs(e) <= budget.max_exchanges]

    def run(branch):
        return _search_branch(branch[0], branch[1], target_dag, budget.max_exchanges, budget.max_slots)

    if budget.threads == 1:
        results = [run(b) for b in branches]
    else:
        with ThreadPoolExecutor(max_workers=budget.threads) as pool:
            results = list(pool.map(run, branches))
    for found, n in results:
        candidates.extend(found)
        nodes += n
    _, word = _pick(candidates)
    return _finish(word, target, nodes, t0, "brute")


def phase_canonicalize(u) -> np.ndarray:
    """Representative of ``u`` modulo global phase.

    Divides by sqrt(det u) to land in SU(2), then fixes the remaining sign so
    the first nonzero entry (row-major) has positive real part, or positive
    imaginary part when the real part is zero.
    """
    u = np.asarray(u, dtype=complex)
    v = u / np.sqrt(np.linalg.det(u))
    for z in v.flat:
        if abs(z) <= 1e-12:
            continue
        if z.real < -1e-12 or (abs(z.real) <= 1e-12 and z.imag < 0):
            v = -v
        break
    return v


def _coords(u: np.ndarray) -> np.ndarray:
    v = phase_canonicalize(u)
    return np.array([v[0, 0].real, v[0, 0].imag, v[0, 1].real, v[0, 1].imag])


def _cell(c: np.ndarray, size: float) -> tuple[int, ...]:
    return tuple(int(x) for x in np.floor(c / size))


_NEIGHBOURS = list(itertools.product((-1, 0, 1), repeat=4))


def _joinable(f: BraidWord, b: BraidWord, budget: SearchBudget) -> bool:
    if f.factors and b.factors and f.factors[-1][0] == b.factors[0][0]:
        return False
    return f.length + b.length <= budget.max_exchanges and f.slots + b.slots <= budget.max_slots


def build_half_index(max_exchanges: int, max_slots: int, cell: float = DEFAULT_CELL,
                     max_entries: int = DEFAULT_MAX_INDEX_ENTRIES):
    """Half-weaves, their matrices, and a cell -> half-index map over canonical coordinates.

    Each half is filed under both sign choices of its canonical SU(2) form.
    """
    n = count_weaves(max_exchanges, max_slots)
    if 2 * n > max_entries:
        raise SearchResourceError(
            f"half-weave index needs {2 * n} entries ({n} half-weaves), limit is {max_entries}")
    halves = list(_iter_weaves(max_exchanges, max_slots))
    mats = [evaluate(w) for w in halves]
    index: dict[tuple[int, ...], list[int]] = {}
    for i, m in enumerate(mats):
        c = _coords(m)
        for key in {_cell(c, cell), _cell(-c, cell)}:
            index.setdefault(key, []).append(i)
    return halves, mats, index


def bidirectional(target: TargetGate, budget: SearchBudget, cell: float = DEFAULT_CELL,
                  max_index_entries: int = DEFAULT_MAX_INDEX_ENTRIES) -> SearchResult:
    """Meet-in-the-middle search over pairs of half-weaves.

    A forward half ``f`` is completed by a backward half ``b`` when ``M_b`` lies
    in a grid cell next to ``U M_f^dagger``; each half on its own is also a
    candidate.  The result is never better than ``brute_force`` at the same budget.
    """
    t0 = time.perf_counter()
    half = math.ceil(budget.max_exchanges / 2)
    halves, mats, index = build_half_index(half, budget.max_slots, cell, max_index_entries)
    u = target.matrix

    def run(chunk: range):
        found: list[tuple[float, BraidWord]] = []
        nodes = 0
        for fi in chunk:
            f, mf = halves[fi], mats[fi]
            found.append((distance(mf, u), f))
            nodes += 1
            q = _cell(_coords(u @ mf.conj().T), cell)
            partners: set[int] = set()
            for off in _NEIGHBOURS:
                partners.update(index.get(tuple(a + b for a, b in zip(q, off)), ()))
            for bi in sorted(partners):
                b = halves[bi]
                if not b.factors or not _joinable(f, b, budget):
                    continue
                found.append((distance(mats[bi] @ mf, u), f + b))
                nodes += 1
        if not found:
            return [], nodes
        best = min(e for e, _ in found)
        return [(e, w) for e, w in found if e <= best + TIE_TOL], nodes

    n = len(halves)
    step = max(1, math.ceil(n / (4 * budget.threads)))
    chunks = [range(i, min(i + step, n)) for i in range(0, n, step)]
    if budget.threads == 1:
        results = [run(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=budget.threads) as pool:
            results = list(pool.map(run, chunks))
    candidates: list[tuple[float, BraidWord]] = []
    nodes = n
    for found, k in results:
        candidates.extend(found)
        nodes += k
    _, word = _pick(candidates)
    return _finish(word, target, nodes, t0, "bidirectional")


def compile_gate(target: TargetGate, budget: SearchBudget) -> SearchResult:
    if budget.method == "brute":
        return brute_force(target, budget)
    return bidirectional(target, budget)


__all__ = [
    "LIBRARY", "NonUnitaryError", "SearchBudget", "SearchResourceError", "SearchResult",
    "TargetGate", "UnknownTargetError", "bidirectional", "brute_force", "build_half_index",
    "compile_gate", "count_weaves", "enumerate_weaves", "load_target_file",
    "phase_canonicalize", "target", "tie_key",
]
