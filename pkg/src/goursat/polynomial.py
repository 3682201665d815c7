"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials are stored as a canonical mapping from exponent tuples to
nonzero coefficients (ints or Fractions; integer arithmetic is preserved
whenever possible).  Terms are ordered graded-lexicographically over the
fixed variable order (r_0, n_0, ..., n_k), which makes serialization
deterministic: equal polynomials render identically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NonExactDivision, VariableMismatch

Monomial = tuple[int, ...]
Coeff = int | Fraction


def _grlex(mono: Monomial) -> tuple[int, Monomial]:
    return (sum(mono), mono)


class Poly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Coeff] | None = None):
        object.__setattr__(self, "nvars", nvars)
        clean: dict[Monomial, Coeff] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise VariableMismatch(
                        f"monomial {mono} has {len(mono)} exponents, expected {nvars}"
                    )
                if c != 0:
                    clean[tuple(mono)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: Coeff) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, var: int) -> "Poly":
        mono = [0] * nvars
        mono[var] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def monomial(cls, nvars: int, exps: Mapping[int, int], c: Coeff = 1) -> "Poly":
        mono = [0] * nvars
        for var, e in exps.items():
            mono[var] = e
        return cls(nvars, {tuple(mono): c})

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> list[tuple[Monomial, Coeff]]:
        """Terms in descending graded-lex order (canonical)."""
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    def key(self) -> tuple:
        """Hashable canonical form (used for dedup of vector fields)."""
        return tuple((m, Fraction(c)) for m, c in self.items())

    def leading(self) -> tuple[Monomial, Coeff]:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=_grlex)
        return mono, self.terms[mono]

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def has_var(self, var: int) -> bool:
        return any(m[var] for m in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        if self.nvars != other.nvars or len(self.terms) != len(other.terms):
            return False
        return all(other.terms.get(m, 0) == c for m, c in self.terms.items())

    def __hash__(self) -> int:
        return hash((self.nvars, self.key()))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise VariableMismatch(
                f"polynomials over {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        out = Poly.__new__(Poly)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "terms", terms)
        return out

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "terms", {m: -c for m, c in self.terms.items()})
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly.zero(self.nvars)
            terms = {m: c * other for m, c in self.terms.items()}
            out = Poly.__new__(Poly)
            object.__setattr__(out, "nvars", self.nvars)
            object.__setattr__(out, "terms", terms)
            return out
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        terms: dict[Monomial, Coeff] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        out = Poly.__new__(Poly)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "terms", terms)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, var: int) -> "Poly":
        """Partial derivative with respect to variable ``var``."""
        terms: dict[Monomial, Coeff] = {}
        for m, c in self.terms.items():
            e = m[var]
            if e:
                lowered = m[:var] + (e - 1,) + m[var + 1 :]
                terms[lowered] = terms.get(lowered, 0) + c * e
        return Poly(self.nvars, terms)

    def evaluate(self, values: Sequence[Coeff]) -> Coeff:
        if len(values) != self.nvars:
            raise VariableMismatch(
                f"expected {self.nvars} values, got {len(values)}"
            )
        total: Coeff = 0
        for m, c in self.terms.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term *= v**e
            total += term
        return total

    def divide_monomial(self, exps: Monomial, c: Coeff = 1) -> "Poly":
        """Exact division by a monomial; NonExactDivision if any term fails."""
        terms: dict[Monomial, Coeff] = {}
        for m, coeff in self.terms.items():
            lowered = tuple(a - b for a, b in zip(m, exps))
            if any(e < 0 for e in lowered):
                raise NonExactDivision(
                    f"term with exponents {m} not divisible by {exps}"
                )
            q = Fraction(coeff, c) if not isinstance(coeff, Fraction) else coeff / c
            if q.denominator == 1:
                q = q.numerator
            terms[lowered] = q
        return Poly(self.nvars, terms)

    # -- rendering ----------------------------------------------------------

    def render(self, names: Sequence[str]) -> str:
        """Deterministic text form, e.g. ``-n4*n5^2*f2`` minus the field part."""
        if self.is_zero:
            return "0"
        parts = []
        for m, c in self.items():
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                term = str(c)
            elif c == 1:
                term = "*".join(factors)
            elif c == -1:
                term = "-" + "*".join(factors)
            else:
                term = str(c) + "*" + "*".join(factors)
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out

    def __repr__(self) -> str:
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Poly({self.render(names)})"


def var_names(k: int) -> tuple[str, ...]:
    """Standard chart coordinate names (r0, n0, n1, ..., nk)."""
    return ("r0",) + tuple(f"n{j}" for j in range(k + 1))
