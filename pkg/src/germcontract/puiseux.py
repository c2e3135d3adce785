"""Finite Puiseux series with exact rational exponents and coefficients.

Two orientations of the same data are used throughout:

* local (variable ``u``): germ expansions v = phi(u), exponents read in
  ascending order, the order ``ord`` is the smallest exponent;
* degree-wise (variable ``x``): expansions at infinity psi(x), exponents read
  in descending order, the degree ``deg`` is the largest exponent.

A term c*u^e of a local series corresponds to c*x^(1-e) of its degree-wise
counterpart (and back), so the two carry the same information; the
characteristic pairs transform accordingly.

Characteristic pairs are extracted by walking the support in order of
significance while maintaining the lattice (1/D)Z of exponents seen so far:
every exponent that escapes the lattice starts a new pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm
from types import MappingProxyType

from .errors import PreconditionError, SeriesParseError

RatLike = Fraction | int | str


class Orientation(Enum):
    LOCAL = "u"
    DEGREEWISE = "x"

    @property
    def var(self) -> str:
        return self.value


class PuiseuxPoly:
    """A finite sum of terms c * var^e with c, e rational, c != 0.

    Immutable after construction; zero coefficients are dropped, duplicate
    exponents rejected.  Supports either orientation; all exponent-order
    conventions (significance, ord/deg) follow the orientation.
    """

    __slots__ = ("orientation", "_terms")

    def __init__(self, orientation: Orientation, terms):
        items = terms.items() if hasattr(terms, "items") else terms
        clean: dict[Fraction, Fraction] = {}
        for e, c in items:
            e = Fraction(e)
            c = Fraction(c)
            if c == 0:
                continue
            if e in clean:
                raise ValueError(f"duplicate exponent {e}")
            clean[e] = c
        object.__setattr__(self, "orientation", orientation)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxPoly is immutable")

    @classmethod
    def zero(cls, orientation: Orientation) -> "PuiseuxPoly":
        return cls(orientation, {})

    @property
    def terms(self):
        """Read-only exponent -> coefficient view."""
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> tuple[Fraction, ...]:
        """Exponents in order of significance (ascending local, descending
        degree-wise)."""
        rev = self.orientation is Orientation.DEGREEWISE
        return tuple(sorted(self._terms, reverse=rev))

    def coeff(self, e) -> Fraction:
        return self._terms.get(Fraction(e), Fraction(0))

    def ord(self) -> Fraction:
        if self.orientation is not Orientation.LOCAL:
            raise PreconditionError("ord is defined for local series")
        if self.is_zero():
            raise PreconditionError("ord of the zero series is undefined")
        return min(self._terms)

    def deg(self) -> Fraction:
        if self.orientation is not Orientation.DEGREEWISE:
            raise PreconditionError("deg is defined for degree-wise series")
        if self.is_zero():
            raise PreconditionError("deg of the zero series is undefined")
        return max(self._terms)

    def keep_above(self, threshold) -> "PuiseuxPoly":
        """Sub-sum of terms with exponent strictly greater than threshold."""
        t = Fraction(threshold)
        return PuiseuxPoly(
            self.orientation, {e: c for e, c in self._terms.items() if e > t}
        )

    def with_term(self, e, c) -> "PuiseuxPoly":
        """Copy with one extra term (the exponent must be fresh)."""
        new = dict(self._terms)
        e = Fraction(e)
        if e in new:
            raise ValueError(f"exponent {e} already present")
        new[e] = Fraction(c)
        return PuiseuxPoly(self.orientation, new)

    def polydromy(self) -> int:
        """lcm of the exponent denominators (1 for the zero series)."""
        out = 1
        for e in self._terms:
            out = lcm(out, e.denominator)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PuiseuxPoly)
            and self.orientation is other.orientation
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.orientation, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"PuiseuxPoly({self.orientation.name}, {format_puiseux(self)!r})"

    def __str__(self) -> str:
        return format_puiseux(self)


@dataclass(frozen=True)
class CharacteristicData:
    """Characteristic pairs (q_k, p_k) plus the polydromy order p = prod p_k.

    Every p_k >= 2 and gcd(q_k, p_k) = 1.  The sign/monotonicity pattern of
    the q_k depends on which orientation the pairs were extracted from; the
    local-side validation lives with the operations that require it.
    """

    pairs: tuple[tuple[int, int], ...]
    polydromy: int

    def __post_init__(self):
        acc = 1
        for q, p in self.pairs:
            if p < 2:
                raise PreconditionError(f"pair ({q},{p}): p must be >= 2")
            if gcd(q, p) != 1:
                raise PreconditionError(f"pair ({q},{p}) is not coprime")
            acc *= p
        if acc != self.polydromy:
            raise PreconditionError(
                f"polydromy {self.polydromy} != product of the p_k = {acc}"
            )

    @classmethod
    def from_pairs(cls, pairs) -> "CharacteristicData":
        pairs = tuple((int(q), int(p)) for q, p in pairs)
        acc = 1
        for _, p in pairs:
            acc *= p
        return cls(pairs, acc)

    def cumulative_p(self) -> tuple[int, ...]:
        """(p_1, p_1p_2, ..., p_1..p_k)."""
        out = []
        acc = 1
        for _, p in self.pairs:
            acc *= p
            out.append(acc)
        return tuple(out)

    def char_exponents(self) -> tuple[Fraction, ...]:
        """q_k / (p_1..p_k) for each pair."""
        return tuple(
            Fraction(q, cp) for (q, _), cp in zip(self.pairs, self.cumulative_p())
        )


def puiseux_pairs(phi: PuiseuxPoly) -> CharacteristicData:
    """Extract the characteristic pairs of a nonzero series.

    Walks the support in order of significance with a running lattice
    denominator D (starting at 1); an exponent outside (1/D)Z contributes the
    pair (e*D', D'/D) with D' = lcm(D, den(e)).
    """
    if phi.is_zero():
        raise PreconditionError("characteristic pairs of the zero series")
    d = 1
    pairs = []
    for e in phi.support():
        if e.denominator == 1 or d % e.denominator == 0:
            continue
        d_new = lcm(d, e.denominator)
        p_k = d_new // d
        q_k = e * d_new
        assert q_k.denominator == 1 and gcd(int(q_k), p_k) == 1
        pairs.append((int(q_k), p_k))
        d = d_new
    return CharacteristicData(tuple(pairs), d)


def local_to_degreewise(phi: PuiseuxPoly) -> PuiseuxPoly:
    """c*u^e  ->  c*x^(1-e)."""
    if phi.orientation is not Orientation.LOCAL:
        raise PreconditionError("expected a local series")
    return PuiseuxPoly(
        Orientation.DEGREEWISE, {1 - e: c for e, c in phi.terms.items()}
    )


def degreewise_to_local(psi: PuiseuxPoly) -> PuiseuxPoly:
    """c*x^e  ->  c*u^(1-e) (inverse of local_to_degreewise)."""
    if psi.orientation is not Orientation.DEGREEWISE:
        raise PreconditionError("expected a degree-wise series")
    return PuiseuxPoly(Orientation.LOCAL, {1 - e: c for e, c in psi.terms.items()})


# ---------------------------------------------------------------------------
# text form
#
# series   := ['-'] term (('+'|'-') term)*
# term     := coeff | [coeff '*'] var ['^' exponent]
# coeff    := integer ['/' integer]
# exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
#
# The variable letter decides the orientation: u = local, x = degree-wise.


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.i += 1
        return ch

    def fail(self, message: str):
        raise SeriesParseError(message, self.i)

    def integer(self) -> int:
        self.skip_ws()
        start = self.i
        if self.peek() == "-":
            self.i += 1
        if not self.peek().isdigit():
            self.fail("expected an integer")
        while self.peek().isdigit():
            self.i += 1
        return int(self.text[start : self.i])

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/":
            self.i += 1
            pos = self.i
            den = self.integer()
            if den == 0:
                raise SeriesParseError("zero denominator", pos)
            return Fraction(num, den)
        return Fraction(num)

    def exponent(self) -> Fraction:
        self.skip_ws()
        if self.peek() == "(":
            self.i += 1
            value = self.rational()
            self.skip_ws()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.i += 1
            return value
        return Fraction(self.integer())


def _parse_term(sc: _Scanner, variables) -> tuple[Fraction, dict[str, Fraction]]:
    """One unsigned term: '*'-separated factors, at most one leading
    coefficient, each variable at most once.  Returns (coeff, var -> exp)."""
    coeff = Fraction(1)
    powers: dict[str, Fraction] = {}
    saw_factor = False
    while True:
        sc.skip_ws()
        ch = sc.peek()
        if ch.isdigit():
            if saw_factor:
                sc.fail("coefficient must come first in a term")
            coeff = sc.rational()
        elif ch.isalpha():
            name = sc.take()
            while sc.peek().isdigit():
                name += sc.take()
            if name not in variables:
                sc.fail(f"unknown variable {name!r}")
            if name in powers:
                sc.fail(f"variable {name!r} repeated in one term")
            exp = Fraction(1)
            sc.skip_ws()
            if sc.peek() == "^":
                sc.i += 1
                exp = sc.exponent()
            powers[name] = exp
        else:
            sc.fail("expected a coefficient or a variable")
        saw_factor = True
        sc.skip_ws()
        if sc.peek() == "*":
            sc.i += 1
            continue
        return coeff, powers


def parse_terms(text: str, variables):
    """Signed-sum driver shared by the series and polynomial parsers.

    Yields (signed coefficient, variable -> exponent, term position) per term.
    """
    sc = _Scanner(text)
    sc.skip_ws()
    if not sc.peek():
        sc.fail("empty input")
    sign = Fraction(1)
    if sc.peek() == "-":
        sc.i += 1
        sign = Fraction(-1)
    while True:
        sc.skip_ws()
        pos = sc.i
        coeff, powers = _parse_term(sc, variables)
        yield sign * coeff, powers, pos
        sc.skip_ws()
        ch = sc.peek()
        if not ch:
            return
        if ch == "+":
            sign = Fraction(1)
        elif ch == "-":
            sign = Fraction(-1)
        else:
            sc.fail(f"unexpected {ch!r}")
        sc.i += 1


def parse_puiseux(text: str, orientation: Orientation | None = None) -> PuiseuxPoly:
    """Parse a one-variable series; the variable letter (u or x) fixes the
    orientation unless one is supplied.  parse o format o parse = id."""
    terms: dict[Fraction, Fraction] = {}
    seen: Orientation | None = None
    for coeff, powers, pos in parse_terms(text, ("u", "x")):
        if len(powers) > 1:
            raise SeriesParseError("one variable per term expected", pos)
        var = next(iter(powers), None)
        if var is not None:
            this = Orientation.LOCAL if var == "u" else Orientation.DEGREEWISE
            if seen is None:
                seen = this
            elif seen is not this:
                raise SeriesParseError("mixed variables u and x", pos)
        e = powers.get(var, Fraction(0)) if var else Fraction(0)
        if coeff == 0:
            continue
        if e in terms:
            raise SeriesParseError(f"duplicate exponent {e}", pos)
        terms[e] = coeff
    if seen is not None and orientation is not None and seen is not orientation:
        raise SeriesParseError("series variable conflicts with the requested orientation", 0)
    final = seen or orientation
    if final is None:
        raise SeriesParseError("cannot infer the orientation (no variable present)", 0)
    return PuiseuxPoly(final, terms)


def _format_exponent(e: Fraction) -> str:
    if e == 1:
        return ""
    if e.denominator == 1 and e >= 0:
        return f"^{e}"
    return f"^({e})"


def _format_coeff(c: Fraction) -> str:
    return str(c)


def format_puiseux(phi: PuiseuxPoly) -> str:
    if phi.is_zero():
        return "0"
    var = phi.orientation.var
    parts: list[str] = []
    for e in phi.support():
        c = phi.terms[e]
        mag = abs(c)
        if e == 0:
            body = _format_coeff(mag)
        elif mag == 1:
            body = f"{var}{_format_exponent(e)}"
        else:
            body = f"{_format_coeff(mag)}*{var}{_format_exponent(e)}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
