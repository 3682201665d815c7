"""Numeric invariants of Goursat germs, by independent combinatorial routes.

The six mutually convertible invariants of a Goursat word are the beta
vector, its first and second derived vectors, the b vector, the
multiplicity vector, and the (reversed, restricted) vertical-orders
vector.  This module computes them by Jean-style back-end recursions on
the word, by the front-end lifting recursion through proximity diagrams,
and through the e-table, and converts freely between the encodings.  All
arithmetic is exact integer arithmetic; nothing here touches floats.

Puiseux characteristics are handled through the classical correspondence
with multiplicity sequences (iterated Euclidean expansion), so that the
degree of nonholonomy can be read off as the last characteristic exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import proximity
from .codeword import (
    CRITICAL,
    GoursatWord,
    RvtWord,
    _as_word,
    as_goursat,
    goursat_normalize,
    is_goursat,
)
from .errors import (
    InvalidPC,
    MissingM0,
    NonMonotone,
    NotRealizable,
    RouteMismatch,
)

# ---------------------------------------------------------------------------
# Back-end recursions


def beta_backend(w: GoursatWord | str) -> tuple[int, ...]:
    """Jean's beta vector (beta_2 .. beta_{k+2}) by the back-end recursion.

    Seeds beta_2 = 1 and beta_3 = 2; for j >= 4 the entry depends on the
    last symbol of the word:  R adds 1 to the previous word's entry, V
    adds the two shorter prefixes' entries, T doubles one and subtracts
    the other.
    """
    w = as_goursat(w)
    vecs: list[tuple[int, ...]] = []  # vecs[m-1][j-2] = beta_j of prefix length m
    for m in range(1, w.k + 1):
        last = w.letter(m)
        vec = [1, 2]
        for j in range(4, m + 3):
            if last == "R":
                vec.append(1 + vecs[m - 2][j - 3])
            elif last == "V":
                vec.append(vecs[m - 2][j - 3] + vecs[m - 3][j - 4])
            else:
                vec.append(2 * vecs[m - 2][j - 3] - vecs[m - 3][j - 4])
        vecs.append(tuple(vec))
    return vecs[-1]


def der_backend(w: GoursatWord | str) -> tuple[int, ...]:
    """The derived vector (der_3 .. der_{k+2}); always begins (1, 1)."""
    w = as_goursat(w)
    vecs: list[tuple[int, ...]] = []  # vecs[m-1][j-3] = der_j of prefix length m
    for m in range(1, w.k + 1):
        last = w.letter(m)
        vec = [1] if m == 1 else [1, 1]
        for j in range(5, m + 3):
            if last == "R":
                vec.append(vecs[m - 2][j - 4])
            elif last == "V":
                vec.append(vecs[m - 2][j - 4] + vecs[m - 3][j - 5])
            else:
                vec.append(2 * vecs[m - 2][j - 4] - vecs[m - 3][j - 5])
        vecs.append(tuple(vec))
    return vecs[-1]


def der2_backend(w: GoursatWord | str) -> tuple[int, ...]:
    """The second derived vector (der2_4 .. der2_{k+2}); begins with 0.

    The seed pair (der2_4, der2_5) is (0, 1) when the word ends with V and
    (0, 0) otherwise; longer entries follow the same recursion shapes as
    the derived vector.
    """
    w = as_goursat(w)
    vecs: list[tuple[int, ...]] = []  # vecs[m-1][j-4] = der2_j of prefix length m
    for m in range(1, w.k + 1):
        last = w.letter(m)
        if m == 1:
            vec: list[int] = []
        elif m == 2:
            vec = [0]
        else:
            vec = [0, 1 if last == "V" else 0]
        for j in range(6, m + 3):
            if last == "R":
                vec.append(vecs[m - 2][j - 5])
            elif last == "V":
                vec.append(vecs[m - 2][j - 5] + vecs[m - 3][j - 6])
            else:
                vec.append(2 * vecs[m - 2][j - 5] - vecs[m - 3][j - 6])
        vecs.append(tuple(vec))
    return vecs[-1]


# ---------------------------------------------------------------------------
# Conversions between encodings


def vo_from_mult(mv: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Vertical orders (VO_2 .. VO_k) from a multiplicity vector.

    The input is (m_{k-1}, ..., m_1); successive differences give
    VO_{i+2} = m_i - m_{i+1}, and VO_2 = 0 since the word is Goursat.
    """
    mv = tuple(mv)
    if len(mv) != max(k - 1, 0):
        raise ValueError(f"expected {k - 1} multiplicities for k={k}, got {len(mv)}")
    if k <= 1:
        return ()
    if mv[0] != 1:
        raise ValueError(f"m_(k-1) must be 1, got {mv[0]}")
    m = list(reversed(mv))  # m[i-1] = m_i for i = 1..k-1
    out = [0]  # VO_2 vanishes off I_2
    for i in range(1, k - 1):
        diff = m[i - 1] - m[i]  # VO_{i+2}
        if diff < 0:
            raise NonMonotone(f"m_{i} = {m[i - 1]} < m_{i + 1} = {m[i]}")
        out.append(diff)
    return tuple(out)


def mult_from_vo(vo: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Multiplicity vector (m_{k-1}, ..., m_1) by accumulation:
    m_i = 1 + VO_{i+2} + ... + VO_k."""
    vo = _check_vo(vo, k)
    out = []
    total = 1  # m_{k-1}
    for i in range(k - 1, 0, -1):
        out.append(total)
        if i >= 2:
            total += vo[(i + 1) - 2]  # step from m_i to m_{i-1} adds VO_{i+1}
    return tuple(out)


def _check_vo(vo: tuple[int, ...], k: int) -> tuple[int, ...]:
    vo = tuple(vo)
    if len(vo) != max(k - 1, 0):
        raise ValueError(f"expected {k - 1} vertical orders for k={k}, got {len(vo)}")
    if any(v < 0 for v in vo):
        raise ValueError("vertical orders must be nonnegative")
    return vo


def _column_sums(vo: tuple[int, ...], k: int) -> dict[int, int]:
    """S_i = sum_{j=k-i+4}^{k} (i + j - k - 3) VO_j for i = 2..k+1.

    Only VO_3..VO_k can contribute, so the sums do not depend on VO_2.
    """
    sums = {}
    for i in range(2, k + 2):
        total = 0
        for j in range(max(k - i + 4, 2), k + 1):
            total += (i + j - k - 3) * vo[j - 2]
        sums[i] = total
    return sums


@dataclass(frozen=True)
class ETable:
    """The table of coefficient-order bounds e_{hi}, rows h = 2..H.

    Row h holds e_{h,i} for i = 2..min(h, k+1); its number of zero entries
    plus two is the small-growth rank SG_h.  H is b_{k+1}, past which every
    row is all zeros.
    """

    k: int
    vo: tuple[int, ...]
    b: tuple[int, ...]  # (b_2, ..., b_{k+1})
    rows: tuple[tuple[int, ...], ...]
    sg: tuple[int, ...]  # SG_h for h = 2..H

    @property
    def height(self) -> int:
        return self.b[-1]

    def entry(self, h: int, i: int) -> int:
        return self.rows[h - 2][i - 2]


def e_table(vo: tuple[int, ...], k: int) -> ETable:
    """Build the full e-table from the vertical orders (VO_2 .. VO_k)."""
    vo = _check_vo(vo, k)
    sums = _column_sums(vo, k)
    b = tuple(i + sums[i] for i in range(2, k + 2))
    height = b[-1]
    rows = []
    sg = []
    for h in range(2, height + 1):
        row = tuple(max(0, i - h + sums[i]) for i in range(2, min(h, k + 1) + 1))
        rows.append(row)
        sg.append(2 + sum(1 for e in row if e == 0))
    table = ETable(k=k, vo=vo, b=b, rows=tuple(rows), sg=tuple(sg))
    assert _b_by_scan(table) == b, "first-zero scan disagrees with closed form"
    return table


def _b_by_scan(table: ETable) -> tuple[int, ...]:
    out = []
    for i in range(2, table.k + 2):
        for h in range(i, table.height + 1):
            if table.entry(h, i) == 0:
                out.append(h)
                break
        else:
            raise AssertionError(f"column {i} never reaches zero")
    return tuple(out)


def b_vector(vo: tuple[int, ...], k: int) -> tuple[int, ...]:
    """The b vector (b_2, ..., b_{k+1}): first row where each column vanishes."""
    return e_table(vo, k).b


def beta_from_b(b: tuple[int, ...]) -> tuple[int, ...]:
    """Beta is the b vector with an initial 1 prepended."""
    return (1,) + tuple(b)


def sg_from_beta(beta: tuple[int, ...]) -> tuple[int, ...]:
    """The small growth vector SG_1 .. SG_{beta_last} from the beta vector."""
    beta = tuple(beta)
    if not beta or beta[0] != 1 or any(a >= b for a, b in zip(beta, beta[1:])):
        raise ValueError(f"beta must be strictly increasing starting at 1: {beta}")
    out = []
    for j in range(1, beta[-1] + 1):
        out.append(1 + sum(1 for v in beta if v <= j))
    return tuple(out)


# ---------------------------------------------------------------------------
# Puiseux characteristics


@dataclass(frozen=True)
class PuiseuxCharacteristic:
    """A Puiseux characteristic [lambda_0; lambda_1, ..., lambda_g].

    lambda_0 is the multiplicity of the plane-curve germ; each further
    exponent strictly drops the running gcd, which ends at 1.  g = 0
    encodes a smooth germ [1;].
    """

    lambda0: int
    exponents: tuple[int, ...] = ()

    def __post_init__(self):
        if self.lambda0 < 1:
            raise InvalidPC(f"lambda_0 must be positive, got {self.lambda0}")
        prev = self.lambda0
        e = self.lambda0
        for lam in self.exponents:
            if lam <= prev:
                raise InvalidPC(f"exponents must increase strictly: {lam} after {prev}")
            nxt = math.gcd(e, lam)
            if nxt == e:
                raise InvalidPC(f"exponent {lam} does not drop the gcd {e}")
            prev, e = lam, nxt
        if e != 1:
            raise InvalidPC(f"gcd of all entries is {e}, expected 1")

    @property
    def g(self) -> int:
        return len(self.exponents)

    def __str__(self) -> str:
        return f"[{self.lambda0};{','.join(str(x) for x in self.exponents)}]"


def _euclid_multiset(a: int, b: int) -> list[int]:
    # Repeated division of the larger by the smaller; the smaller value is
    # recorded quotient-many times.  Ends when the division is exact.
    if a < b:
        a, b = b, a
    out = []
    while b:
        q, r = divmod(a, b)
        out.extend([b] * q)
        a, b = b, r
    return out


def multseq_from_pc(pc: PuiseuxCharacteristic) -> tuple[int, ...]:
    """Multiplicity sequence of a germ with the given Puiseux characteristic.

    The pair (lambda_1, lambda_0) is expanded by the Euclidean algorithm,
    then each later pair (lambda_i - lambda_{i-1}, e_{i-1}) with
    e_i = gcd(e_{i-1}, lambda_i); the sequence is cut at its first 1.
    """
    if not isinstance(pc, PuiseuxCharacteristic):
        raise InvalidPC(f"not a Puiseux characteristic: {pc!r}")
    if pc.g == 0:
        return (1,)
    out = _euclid_multiset(pc.exponents[0], pc.lambda0)
    e = math.gcd(pc.lambda0, pc.exponents[0])
    for prev, lam in zip(pc.exponents, pc.exponents[1:]):
        out.extend(_euclid_multiset(lam - prev, e))
        e = math.gcd(e, lam)
    return tuple(out[: out.index(1) + 1])


def _normalize_multseq(ms: tuple[int, ...]) -> tuple[int, ...]:
    ms = tuple(ms)
    if not ms:
        raise NotRealizable("empty multiplicity sequence")
    if any(m < 1 for m in ms):
        raise NotRealizable(f"multiplicities must be positive: {ms}")
    if any(a < b for a, b in zip(ms, ms[1:])):
        raise NonMonotone(f"multiplicity sequence must be non-increasing: {ms}")
    if ms[-1] != 1:
        raise NotRealizable(f"multiplicity sequence must end in 1: {ms}")
    return ms[: ms.index(1) + 1]


def pc_from_multseq(ms: tuple[int, ...]) -> PuiseuxCharacteristic:
    """Invert :func:`multseq_from_pc`.

    Parses the sequence as a concatenation of Euclidean expansions.  Each
    block's leading run determines the quotient; the remainder is found by
    search (at most lambda_0 candidates per block) and the winner is
    verified by the forward map.
    """
    target = _normalize_multseq(ms)
    if target == (1,):
        return PuiseuxCharacteristic(1, ())
    lam0 = target[0]

    def value_at(pos: int) -> int:
        return target[pos] if pos < len(target) else 1

    def match(expansion: list[int], pos: int) -> bool:
        return all(value_at(pos + t) == v for t, v in enumerate(expansion))

    def search(e: int, lam_prev: int, pos: int, acc: tuple[int, ...]):
        if e == 1:
            return acc if pos >= len(target) else None
        run = 0
        while pos + run < len(target) and target[pos + run] == e:
            run += 1
        for r in range(1, e):
            d = run * e + r
            if acc:
                # later blocks expand the gap (lambda_i - lambda_{i-1}, e)
                lam = lam_prev + d
                expansion = _euclid_multiset(d, e)
            else:
                # the first block expands (lambda_1, lambda_0) itself
                lam = d
                expansion = _euclid_multiset(lam, e)
            if not match(expansion, pos):
                continue
            found = search(math.gcd(e, lam), lam, pos + len(expansion), acc + (lam,))
            if found is not None:
                return found
        return None

    exponents = search(lam0, lam0, 0, ())
    if exponents is None:
        raise NotRealizable(f"no Puiseux characteristic yields {target}")
    pc = PuiseuxCharacteristic(lam0, exponents)
    if multseq_from_pc(pc) != target:
        raise NotRealizable(f"no Puiseux characteristic yields {target}")
    return pc


def puiseux_of_word(
    w: RvtWord | str, m0: int | None = None
) -> PuiseuxCharacteristic:
    """Puiseux characteristic of the curve germ realizing the word.

    The multiplicity sequence is (m_0, m_1, ..., m_{k-1}, 1).  For Goursat
    words m_0 = m_1; otherwise m_0 depends on the point and must be
    supplied (the CLI wires it from the focal-order oracle).
    """
    w = _as_word(w)
    gw = goursat_normalize(w)
    mv = proximity.multiplicity_vector(proximity.build_diagram(gw))
    m1 = mv[-1] if mv else 1
    if is_goursat(w):
        if m0 is not None and m0 != m1:
            raise ValueError(f"Goursat word has m_0 = m_1 = {m1}, got m0={m0}")
        m0 = m1
    elif m0 is None:
        raise MissingM0()
    elif m0 < m1:
        raise ValueError(f"m_0 = {m0} cannot be smaller than m_1 = {m1}")
    ms = (m0,) + tuple(reversed(mv)) + (1,)
    return pc_from_multseq(ms)


# ---------------------------------------------------------------------------
# Assembly


def nonholonomy_degree(w: RvtWord | str) -> int:
    """Number of bracketing steps to reach the full tangent bundle."""
    return beta_backend(goursat_normalize(w))[-1]


@dataclass(frozen=True)
class InvariantBundle:
    """Every invariant of one word, cross-checked across its routes."""

    word: RvtWord
    goursat_word: GoursatWord
    k: int
    beta: tuple[int, ...]
    der: tuple[int, ...]
    der2: tuple[int, ...]
    sg: tuple[int, ...]
    mult_vector: tuple[int, ...]
    m0: int
    vo: tuple[int, ...]
    b: tuple[int, ...]
    e_table: ETable
    puiseux: PuiseuxCharacteristic
    nonholonomy_degree: int

    @property
    def provenance(self) -> dict[str, str]:
        """Which route produced each field (all routes are asserted equal)."""
        return {
            "beta": "back-end recursion = accumulated front-end der = 1+b",
            "der": "back-end recursion = front-end proximity recursion",
            "der2": "back-end recursion = reversed restricted VO",
            "sg": "beta positions = e-table zero counts",
            "mult_vector": "proximity diagram",
            "vo": "multiplicity differences (VO_2 from m_0 when supplied)",
            "b": "e-table closed form = first-zero scan",
            "puiseux": "multiplicity sequence via Euclidean expansion",
            "nonholonomy_degree": "last beta entry",
        }


def _require(cond: bool, name: str, *routes) -> None:
    if not cond:
        detail = " vs ".join(repr(r) for r in routes)
        raise RouteMismatch(f"{name}: {detail}")


def bundle(w: RvtWord | str, m0: int | None = None) -> InvariantBundle:
    """Assemble all invariants of a word, computing beta three independent
    ways and asserting exact agreement (RouteMismatch signals a bug)."""
    w = _as_word(w)
    gw = goursat_normalize(w)
    k = gw.k

    beta_be = beta_backend(gw)
    der_be = der_backend(gw)
    der2_be = der2_backend(gw)

    diagram = proximity.build_diagram(gw)
    mv = proximity.multiplicity_vector(diagram)
    der_fe = proximity.derived_frontend(gw)
    _require(der_fe == der_be, "der", der_fe, der_be)

    beta_fe = (1,)
    for d in der_fe:
        beta_fe += (beta_fe[-1] + d,)
    _require(beta_fe == beta_be, "beta front-end", beta_fe, beta_be)

    vo = vo_from_mult(mv, k)
    der2_vo = ((0,) + tuple(reversed(vo[1:]))) if k >= 2 else ()
    _require(der2_vo == der2_be, "der2", der2_vo, der2_be)

    m1 = mv[-1] if mv else 1
    if is_goursat(w):
        if m0 is not None and m0 != m1:
            raise ValueError(f"Goursat word has m_0 = m_1 = {m1}, got m0={m0}")
        m0 = m1
    elif m0 is None:
        raise MissingM0()
    vo_full = ((m0 - m1,) + vo[1:]) if k >= 2 else ()

    table = e_table(vo_full, k)
    beta_b = beta_from_b(table.b)
    _require(beta_b == beta_be, "beta from b", beta_b, beta_be)

    sg = sg_from_beta(beta_be)
    _require(table.sg == sg[1:], "sg", table.sg, sg[1:])

    pc = puiseux_of_word(w, m0=m0)
    if any(s in CRITICAL for s in w.symbols):
        trailing_r = len(w.symbols) - len(w.symbols.rstrip("R"))
        lam_last = pc.exponents[-1]
        _require(
            lam_last + trailing_r == beta_be[-1],
            "puiseux vs nonholonomy",
            (lam_last, trailing_r),
            beta_be[-1],
        )

    return InvariantBundle(
        word=w,
        goursat_word=gw,
        k=k,
        beta=beta_be,
        der=der_be,
        der2=der2_be,
        sg=sg,
        mult_vector=mv,
        m0=m0,
        vo=vo_full,
        b=table.b,
        e_table=table,
        puiseux=pc,
        nonholonomy_degree=beta_be[-1],
    )
