"""World-line diagrams of three-strand braid words, time running left to right.

Strand positions are numbered 0 (top) to 2 (bottom).  A positive exchange
(``s_i^+``, clockwise) draws the strand moving down as the over-strand; a
negative one draws the strand moving up on top.  Strand identities are
carried through each swap, so the labels at the right edge show where every
anyon ended up.
"""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .braid import BraidWord

LABELS = ("a", "b", "c")
COLOURS = ("#1f77b4", "#d62728", "#2ca02c")
PITCH = 100  # SVG units between strand rows and between crossings
CELL = 4  # ASCII columns per crossing


@dataclass(frozen=True)
class Crossing:
    step: int
    pair: int  # 1 swaps positions 0/1, 2 swaps positions 1/2
    sign: int  # +1 clockwise, -1 anticlockwise


@dataclass(frozen=True)
class Diagram:
    """``strands[s][t]`` is the position of strand ``s`` after ``t`` crossings."""

    strands: tuple[tuple[int, ...], ...]
    crossings: tuple[Crossing, ...]

    def movers(self, step: int) -> tuple[int, int]:
        """Strand identities exchanged at crossing ``step`` (top first)."""
        p = self.crossings[step].pair - 1
        at = {trace[step]: s for s, trace in enumerate(self.strands)}
        return at[p], at[p + 1]

    def mobile_strands(self) -> set[int]:
        """Strands taking part in every crossing; for a weave this is the one moving anyon."""
        out = set(range(3))
        for k in range(len(self.crossings)):
            out &= set(self.movers(k))
        return out


def build_diagram(word: BraidWord) -> Diagram:
    crossings = []
    for g, e in word:
        sign = 1 if e > 0 else -1
        for _ in range(abs(e)):
            crossings.append(Crossing(len(crossings), g, sign))
    pos = [0, 1, 2]
    traces = [[p] for p in pos]
    for c in crossings:
        top, bottom = c.pair - 1, c.pair
        for s in range(3):
            if pos[s] == top:
                pos[s] = bottom
            elif pos[s] == bottom:
                pos[s] = top
        for s in range(3):
            traces[s].append(pos[s])
    return Diagram(tuple(tuple(t) for t in traces), tuple(crossings))


def _ascii(d: Diagram) -> str:
    n = len(d.crossings)
    rows = [[" "] * (CELL * n + 1) for _ in range(5)]
    for r in (0, 2, 4):
        rows[r] = ["-"] * (CELL * n + 1)
    for c in d.crossings:
        x = CELL * c.step + 1
        top, mid, bot = 2 * (c.pair - 1), 2 * c.pair - 1, 2 * c.pair
        rows[top][x:x + 3] = ["\\", " ", "/"]
        rows[mid][x:x + 3] = [" ", "x", " "]
        rows[bot][x:x + 3] = ["/", " ", "\\"]
        # the under-strand loses its outgoing arm
        if c.sign > 0:
            rows[top][x + 2] = " "
        else:
            rows[bot][x + 2] = " "
    start = {t[0]: LABELS[s] for s, t in enumerate(d.strands)}
    end = {t[-1]: LABELS[s] for s, t in enumerate(d.strands)}
    lines = []
    for r, row in enumerate(rows):
        body = "".join(row)
        if r % 2 == 0:
            lines.append(f"{start[r // 2]} {body} {end[r // 2]}")
        else:
            lines.append(f"  {body}".rstrip())
    return "\n".join(lines) + "\n"


def _svg(d: Diagram) -> str:
    n = len(d.crossings)
    width, height = PITCH * (n + 1), PITCH * 3
    y = [PITCH // 2 + PITCH * p for p in range(3)]
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    x0 = PITCH // 2
    for s, trace in enumerate(d.strands):
        stroke = f'stroke="{COLOURS[s]}" stroke-width="6" fill="none"'
        parts.append(f'<line x1="0" y1="{y[trace[0]]}" x2="{x0}" y2="{y[trace[0]]}" {stroke}/>')
        for t in range(n):
            xa, xb = x0 + PITCH * t, x0 + PITCH * (t + 1)
            ya, yb = y[trace[t]], y[trace[t + 1]]
            if ya == yb:
                parts.append(f'<line x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" {stroke}/>')
                continue
            moving_down = yb > ya
            over = moving_down == (d.crossings[t].sign > 0)
            if over:
                parts.append(f'<line x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" {stroke}/>')
            else:
                # leave a gap around the midpoint for the under-strand
                dx, dy = (xb - xa) * 0.35, (yb - ya) * 0.35
                parts.append(
                    f'<path d="M {xa} {ya} L {xa + dx:.1f} {ya + dy:.1f} '
                    f'M {xb - dx:.1f} {yb - dy:.1f} L {xb} {yb}" {stroke}/>')
        last = y[trace[-1]]
        parts.append(f'<line x1="{x0 + PITCH * n}" y1="{last}" x2="{width}" y2="{last}" {stroke}/>')
    parts.append(f"<!-- {escape(' '.join(f'{c.pair}{c.sign:+d}' for c in d.crossings))} -->")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def diagram(word: BraidWord, format: str = "ascii") -> str:
    """Render ``word`` as ASCII art or an SVG document."""
    d = build_diagram(word)
    if format == "ascii":
        return _ascii(d)
    if format == "svg":
        return _svg(d)
    raise ValueError(f"unknown diagram format {format!r}")


def parse_ascii(text: str) -> BraidWord:
    """Read crossings back from ``diagram(word, "ascii")``, merging runs on one pair."""
    lines = text.splitlines()
    strand_rows = [lines[r][2:-2] for r in (0, 2, 4)]
    gaps = [lines[r][2:].ljust(len(strand_rows[0])) for r in (1, 3)]
    factors: list[list[int]] = []
    for x in range(1, len(strand_rows[0]), CELL):
        for pair in (1, 2):
            if gaps[pair - 1][x + 1] != "x":
                continue
            sign = 1 if strand_rows[pair - 1][x + 2] == " " else -1
            if factors and factors[-1][0] == pair and (factors[-1][1] > 0) == (sign > 0):
                factors[-1][1] += sign
            else:
                factors.append([pair, sign])
    return BraidWord(tuple((g, e) for g, e in factors))
