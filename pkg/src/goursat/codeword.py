"""RVT / Goursat code words and their canonical chart realizations.

A code word over the alphabet ``{R, V, T}`` records, level by level, how a
point sits inside the tower of prolongations over a surface: ``R`` for a
regular level, ``V`` for a vertical one (the point lies on the divisor at
infinity created at that level), and ``T`` for a tangency level.  The
grammar is: nonempty, starts with ``R``, and every ``T`` immediately
follows a ``V`` or a ``T``.  A *Goursat* word additionally has ``R`` in
position 2 (it avoids the divisor ``I_2``).

Each word is realized concretely as a point on a standard affine chart of
the corresponding tower level.  A chart is named by a choice word over
``{o, i}`` (ordinary / inverted); it carries coordinates
``r_0, n_0, n_1, ..., n_k`` built by the recursion

* ordinary at level j:  ``n_j = d n_{j-1} / d r_{j-1}``, retain ``r_{j-1}``,
  deactivate ``n_{j-1}``;
* inverted at level j:  ``n_j = d r_{j-1} / d n_{j-1}``, retain ``n_{j-1}``,
  deactivate ``r_{j-1}``.

Positions and levels are 1-indexed throughout, matching the usual
convention for these towers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from .errors import (
    BadSymbol,
    EmptyWord,
    LeadingCritical,
    OrphanT,
    TooShort,
    Unsupported,
    WordError,
)

ALPHABET = frozenset("RVT")
CRITICAL = frozenset("VT")

# Charts are capped by policy: tables grow quadratically with the level and
# nothing in scope needs more than 12 levels.
MAX_LEVELS = 16


def _validate_rvt(symbols: str) -> None:
    if not symbols:
        raise EmptyWord()
    for pos, s in enumerate(symbols, start=1):
        if s not in ALPHABET:
            raise BadSymbol(pos, s)
    if symbols[0] != "R":
        raise LeadingCritical(symbols[0])
    for pos in range(2, len(symbols) + 1):
        if symbols[pos - 1] == "T" and symbols[pos - 2] not in CRITICAL:
            raise OrphanT(pos)


@dataclass(frozen=True)
class RvtWord:
    """A validated word over {R, V, T}; construction raises on bad input."""

    symbols: str

    def __post_init__(self):
        _validate_rvt(self.symbols)

    @property
    def k(self) -> int:
        """Number of levels (the length of the word)."""
        return len(self.symbols)

    def letter(self, j: int) -> str:
        """Symbol at level j (1-indexed)."""
        if not 1 <= j <= self.k:
            raise IndexError(f"level {j} outside 1..{self.k}")
        return self.symbols[j - 1]

    def __str__(self) -> str:
        return self.symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)


@dataclass(frozen=True)
class GoursatWord(RvtWord):
    """An RVT word with R in position 2 (when the length is at least 2)."""

    def __post_init__(self):
        super().__post_init__()
        if self.k >= 2 and self.symbols[1] != "R":
            raise WordError(
                f"not a Goursat word: symbol 2 is {self.symbols[1]!r}, expected R"
            )


def parse_word(text: str) -> RvtWord:
    """Parse a bare symbol string (case-insensitive) into a validated word."""
    return RvtWord(text.upper())


def is_goursat(w: RvtWord | str) -> bool:
    """True iff the word avoids I_2, i.e. k < 2 or symbol 2 is R."""
    w = _as_word(w)
    return w.k < 2 or w.letter(2) == "R"


def _as_word(w: RvtWord | str) -> RvtWord:
    return w if isinstance(w, RvtWord) else parse_word(w)


def as_goursat(w: RvtWord | str) -> GoursatWord:
    """Re-type a word known to satisfy the Goursat grammar."""
    w = _as_word(w)
    return w if isinstance(w, GoursatWord) else GoursatWord(w.symbols)


def lift(w: GoursatWord | RvtWord | str) -> GoursatWord:
    """The lifted Goursat word, one level down the tower.

    Drop the leading R; if the remaining word starts with ``R V T^t``, the
    critical block ``V T^t`` is regularized to R's so the result is again a
    Goursat word.  The length always drops by exactly one.
    """
    w = as_goursat(w)
    if w.k < 2:
        raise TooShort(2, w.k)
    rest = list(w.symbols[1:])
    if len(rest) >= 2 and rest[1] == "V":
        rest[1] = "R"
        pos = 2
        while pos < len(rest) and rest[pos] == "T":
            rest[pos] = "R"
            pos += 1
    return GoursatWord("".join(rest))


def lift_chain(w: GoursatWord | str) -> list[GoursatWord]:
    """All iterated lifts, from the one-letter word R up to w itself."""
    w = as_goursat(w)
    chain = [w]
    while chain[-1].k > 1:
        chain.append(lift(chain[-1]))
    chain.reverse()
    return chain


def goursat_normalize(w: RvtWord | str) -> GoursatWord:
    """Replace a critical block starting at position 2 by R's.

    The result is a Goursat word of the same length whose germ invariants
    (beta, der, der^2, m_1.., VO_3..) agree with those of the input; only
    the base multiplicity m_0 and VO_2 are lost.  Identity on Goursat
    words, and idempotent.
    """
    w = _as_word(w)
    if is_goursat(w):
        return as_goursat(w)
    symbols = list(w.symbols)
    symbols[1] = "R"
    pos = 2
    while pos < len(symbols) and symbols[pos] == "T":
        symbols[pos] = "R"
        pos += 1
    return GoursatWord("".join(symbols))


# ---------------------------------------------------------------------------
# Charts


@dataclass(frozen=True)
class Chart:
    """A standard chart, named by its choice word over {o, i}.

    Coordinates are indexed 0..k+1 in the fixed order
    (r_0, n_0, n_1, ..., n_k); index 0 is r_0 and index j+1 is n_j.
    """

    choices: str

    def __post_init__(self):
        if any(c not in "oi" for c in self.choices):
            raise ValueError(f"chart word must use only o/i: {self.choices!r}")
        if len(self.choices) > MAX_LEVELS:
            raise ValueError(f"charts are limited to {MAX_LEVELS} levels")

    @property
    def k(self) -> int:
        return len(self.choices)

    @property
    def nvars(self) -> int:
        return self.k + 2

    def choice(self, j: int) -> str:
        """'o' or 'i' at level j (1-indexed)."""
        return self.choices[j - 1]

    @cached_property
    def ip(self) -> frozenset[int]:
        """Levels at which the inverted choice was made."""
        return frozenset(j for j in range(1, self.k + 1) if self.choice(j) == "i")

    @staticmethod
    def n_var(j: int) -> int:
        """Coordinate index of n_j."""
        return j + 1

    @cached_property
    def _retained(self) -> tuple[int, ...]:
        # retained[j] = coordinate index of r_j, j = 0..k
        out = [0]
        for j in range(1, self.k + 1):
            out.append(self.n_var(j - 1) if self.choice(j) == "i" else out[j - 1])
        return tuple(out)

    def retained_var(self, j: int) -> int:
        """Coordinate index of the retained coordinate r_j (j = 0..k)."""
        return self._retained[j]

    def deactivated_var(self, j: int) -> int:
        """Coordinate index of the deactivated coordinate d_j (j = 1..k)."""
        if self.choice(j) == "i":
            return self._retained[j - 1]
        return self.n_var(j - 1)

    @cached_property
    def var_names(self) -> tuple[str, ...]:
        return ("r0",) + tuple(f"n{j}" for j in range(self.k + 1))

    @cached_property
    def alt_names(self) -> tuple[str, ...]:
        """Coordinate names in the x/y naming scheme (x = r_0, y = n_0)."""
        fam = {0: ("x", 0), 1: ("y", 0)}
        for j in range(1, self.k + 1):
            src = self.n_var(j - 1) if self.choice(j) == "o" else self._retained[j - 1]
            base, order = fam[src]
            fam[self.n_var(j)] = (base, order + 1)

        def render(base, order):
            if order <= 2:
                return base + "'" * order
            return f"{base}^({order})"

        return tuple(render(*fam[v]) for v in range(self.nvars))


@dataclass(frozen=True)
class ChartPoint:
    """A chart together with exact rational coordinates of a point on it."""

    chart: Chart
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.chart.nvars:
            raise ValueError(
                f"expected {self.chart.nvars} coordinates, got {len(self.coords)}"
            )

    @property
    def k(self) -> int:
        return self.chart.k

    @property
    def ip(self) -> frozenset[int]:
        return self.chart.ip

    def n_value(self, j: int) -> Fraction:
        """Value of the coordinate n_j at the point."""
        return self.coords[Chart.n_var(j)]


def canonical_chart_point(w: RvtWord | str) -> ChartPoint:
    """The canonical realization of a word as a chart point.

    Letter map per level j:  V -> inverted choice, n_j = 0;
    T -> ordinary, n_j = 0;  R -> ordinary with n_j = 0 after R (or at
    level 1) and n_j = 1 after a critical letter.  The base point is the
    origin of the base chart (r_0 = n_0 = 0).  Any nonzero value would do
    for the R-after-critical case; 1 keeps the arithmetic integral.
    """
    w = _as_word(w)
    choices = []
    values = []
    prev = ""
    for s in w:
        if s == "V":
            choices.append("i")
            values.append(0)
        elif s == "T":
            choices.append("o")
            values.append(0)
        else:
            choices.append("o")
            values.append(1 if prev in CRITICAL else 0)
        prev = s
    coords = (Fraction(0), Fraction(0)) + tuple(Fraction(v) for v in values)
    return ChartPoint(Chart("".join(choices)), coords)


def rvt_of_chart_point(p: ChartPoint) -> RvtWord:
    """Recover the RVT code word of a canonical chart point.

    Inverse of the letter map of :func:`canonical_chart_point`; raises
    Unsupported for configurations that map cannot reach.
    """
    letters = []
    prev = ""
    for j in range(1, p.k + 1):
        inverted = j in p.ip
        vanishes = p.n_value(j) == 0
        if inverted:
            if not vanishes:
                raise Unsupported(
                    f"level {j}: inverted choice with n_{j} != 0 is outside the "
                    "validated letter map"
                )
            letters.append("V")
        elif vanishes:
            letters.append("T" if prev in CRITICAL else "R")
        else:
            if prev not in CRITICAL:
                raise Unsupported(
                    f"level {j}: ordinary choice with n_{j} != 0 after a "
                    "non-critical letter is outside the validated letter map"
                )
            letters.append("R")
        prev = letters[-1]
    return RvtWord("".join(letters))


# ---------------------------------------------------------------------------
# Enumeration helpers (used by the batch CLI mode and exhaustive tests)


def enumerate_rvt_words(k: int) -> Iterator[RvtWord]:
    """All valid RVT words of length exactly k, in lexicographic order."""
    if k < 1:
        return
    out: list[str] = []

    def extend(prefix: str) -> None:
        if len(prefix) == k:
            out.append(prefix)
            return
        for s in "RVT" if prefix[-1] in CRITICAL else "RV":
            extend(prefix + s)

    extend("R")
    for symbols in sorted(out):
        yield RvtWord(symbols)


def enumerate_goursat_words(k: int) -> Iterator[GoursatWord]:
    """All Goursat words of length exactly k, in lexicographic order."""
    for w in enumerate_rvt_words(k):
        if is_goursat(w):
            yield as_goursat(w)
