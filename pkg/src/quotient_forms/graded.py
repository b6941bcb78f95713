"""Graded coefficient rings at desk scale.

A `GradedRing` is a sparse multivariate polynomial ring over F_{p^n} or
Z_(p), with even generator degrees, at most one invertible (Laurent)
generator, and an optional truncation window for presentations that
really have infinitely many generators (BP_*, P(n)_*, ...).

Elements are immutable: a canonically sorted tuple of (exponent vector,
coefficient) pairs, ordered graded-lexicographically, so structural
equality coincides with arithmetic equality and elements are hashable.

Slice enumeration is honest: a degree slice is only reported as a finite
set when the window and the base ring genuinely pin it down; anything
else comes back as an `Infinite` marker with a witness description.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegreeMismatch,
    EmptyTruncationForInfinitePresentation,
    MultipleInvertibleGenerators,
    OddDegreeGenerator,
)
from .fields import FFElement, FiniteField, PLocalIntegers


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    invertible: bool = False


@dataclass(frozen=True)
class Truncation:
    max_degree: int


@dataclass(frozen=True)
class Infinite:
    """Marker for a slice/count that is not finite, with a witness description."""

    witness: str

    def __str__(self):
        return f"infinite ({self.witness})"


@dataclass(frozen=True)
class GradedRing:
    base: FiniteField | PLocalIntegers
    generators: tuple[Generator, ...] = ()
    truncation: Truncation | None = None
    infinite_tail: bool = False
    tail_min_degree: int | None = None

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        invertibles = [g for g in self.generators if g.invertible]
        if len(invertibles) > 1:
            raise MultipleInvertibleGenerators(
                f"more than one invertible generator: {[g.name for g in invertibles]}"
            )
        for g in self.generators:
            if g.degree % 2 != 0:
                raise OddDegreeGenerator(f"generator {g.name} has odd degree {g.degree}")
            if g.degree < 0 and not g.invertible:
                raise ValueError(f"negative degree on non-invertible generator {g.name}")
        if self.infinite_tail:
            if self.truncation is None:
                raise EmptyTruncationForInfinitePresentation(
                    "an infinite generator family needs an explicit truncation window"
                )
            if self.tail_min_degree is None:
                raise ValueError("infinite_tail requires tail_min_degree")

    # -- element constructors ------------------------------------------------

    def zero(self) -> "RingElement":
        return RingElement(self, ())

    def one(self) -> "RingElement":
        return self.from_scalar(self.base.one())

    def from_scalar(self, c) -> "RingElement":
        c = self.base.coerce(c)
        if not c:
            return self.zero()
        return RingElement(self, (((0,) * len(self.generators), c),))

    def monomial(self, exponents, coefficient=1) -> "RingElement":
        exps = tuple(exponents)
        if len(exps) != len(self.generators):
            raise ValueError("exponent vector length does not match generator count")
        for e, g in zip(exps, self.generators):
            if e < 0 and not g.invertible:
                raise ValueError(f"negative exponent on non-invertible generator {g.name}")
        c = self.base.coerce(coefficient)
        if not c:
            return self.zero()
        return RingElement(self, ((exps, c),))

    def gen(self, name: str) -> "RingElement":
        for k, g in enumerate(self.generators):
            if g.name == name:
                exps = [0] * len(self.generators)
                exps[k] = 1
                return self.monomial(exps)
        raise KeyError(f"no generator named {name!r}")

    def from_terms(self, terms: dict) -> "RingElement":
        cleaned = tuple(
            sorted(((e, c) for e, c in terms.items() if c), key=self._term_key)
        )
        return RingElement(self, cleaned)

    def _term_key(self, term):
        exps, _ = term
        return (self.monomial_degree(exps), exps)

    # -- metadata ------------------------------------------------------------

    def monomial_degree(self, exps) -> int:
        return sum(e * g.degree for e, g in zip(exps, self.generators))

    def generator_index(self, name: str) -> int:
        for k, g in enumerate(self.generators):
            if g.name == name:
                return k
        raise KeyError(name)

    @property
    def has_positive_part(self) -> bool:
        """Whether the ring (window plus tail) has any nonzero positive degrees."""
        return bool(self.generators) or self.infinite_tail

    def is_unit(self, elem: "RingElement") -> bool:
        if len(elem.terms) != 1:
            return False
        exps, c = elem.terms[0]
        if not self.base.is_unit(c):
            return False
        return all(e == 0 or g.invertible for e, g in zip(exps, self.generators))

    def invert_unit(self, elem: "RingElement") -> "RingElement":
        if not self.is_unit(elem):
            raise ZeroDivisionError(f"{elem} is not a unit")
        exps, c = elem.terms[0]
        return self.monomial(tuple(-e for e in exps), self.base.invert(c))

    def __str__(self):
        gens = ", ".join(
            g.name + ("^±1" if g.invertible else "") for g in self.generators
        )
        tail = ", ..." if self.infinite_tail else ""
        return f"{self.base}[{gens}{tail}]"


class RingElement:
    """A sparse element of a `GradedRing`; immutable and hashable."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: GradedRing, terms: tuple):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.from_scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((RingElement, self.terms))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading -------------------------------------------------------------

    def is_homogeneous(self) -> bool:
        degs = {self.ring.monomial_degree(e) for e, _ in self.terms}
        return len(degs) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for 0; raises otherwise."""
        if not self.terms:
            return None
        degs = {self.ring.monomial_degree(e) for e, _ in self.terms}
        if len(degs) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return degs.pop()

    def homogeneous_components(self) -> dict:
        out: dict[int, dict] = {}
        for e, c in self.terms:
            out.setdefault(self.ring.monomial_degree(e), {})[e] = c
        return {d: self.ring.from_terms(t) for d, t in sorted(out.items())}

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError("mixed-ring arithmetic")
            return other
        if isinstance(other, (int, Fraction, FFElement)):
            return self.ring.from_scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for e, c in o.terms:
            s = acc.get(e)
            s = c if s is None else s + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return self.ring.from_terms(acc)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(self.terms) == 1 and len(o.terms) == 1:
            (e1, c1), (e2, c2) = self.terms[0], o.terms[0]
            c = c1 * c2
            if not c:
                return RingElement(self.ring, ())
            return RingElement(self.ring, ((tuple(a + b for a, b in zip(e1, e2)), c),))
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                c = c1 * c2
                if not c:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(e)
                s = c if s is None else s + c
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        return self.ring.from_terms(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.ring.invert_unit(self) ** (-k)
        acc = self.ring.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def scale(self, c) -> "RingElement":
        c = self.ring.base.coerce(c)
        return self.ring.from_terms({e: a * c for e, a in self.terms})

    def is_unit(self) -> bool:
        return self.ring.is_unit(self)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{format_element(self)}>"


def make_graded_ring(
    base,
    generators,
    truncation: int | Truncation | None = None,
    infinite_tail: bool = False,
    tail_min_degree: int | None = None,
) -> GradedRing:
    """Assemble a GradedRing from a lightweight description.

    `generators` is an iterable of Generator or (name, degree[, invertible])
    tuples; `truncation` may be given as a bare max degree.
    """
    gens = []
    for g in generators:
        if isinstance(g, Generator):
            gens.append(g)
        else:
            name, degree, *rest = g
            gens.append(Generator(name, degree, bool(rest[0]) if rest else False))
    if isinstance(truncation, int):
        truncation = Truncation(truncation)
    return GradedRing(base, tuple(gens), truncation, infinite_tail, tail_min_degree)


# -- degree slices ------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSlice:
    """All homogeneous elements of one degree: base-linear combinations of
    finitely many monomials."""

    ring: GradedRing
    degree: int
    monomials: tuple[tuple[int, ...], ...]

    @property
    def cardinality(self) -> int:
        return self.ring.base.size ** len(self.monomials) if self.monomials else 1

    def __iter__(self):
        if not self.monomials:
            yield self.ring.zero()
            return
        for coeffs in itertools.product(self.ring.base.elements(), repeat=len(self.monomials)):
            yield self.ring.from_terms(
                {m: c for m, c in zip(self.monomials, coeffs) if c}
            )

    def __contains__(self, elem) -> bool:
        if not isinstance(elem, RingElement) or elem.ring != self.ring:
            return False
        if elem.is_zero():
            return True
        mset = set(self.monomials)
        return all(e in mset for e, _ in elem.terms)

    def __len__(self):
        return self.cardinality


def _positive_knapsack(degrees, target):
    """Exponent vectors e >= 0 with sum(e_i * degrees_i) == target."""
    if target < 0:
        return []
    if not degrees:
        return [()] if target == 0 else []
    out = []
    head = degrees[0]
    limit = target // head if head > 0 else 0
    for e in range(limit + 1):
        for rest in _positive_knapsack(degrees[1:], target - e * head):
            out.append((e,) + rest)
    return out


def _slice_monomials(ring: GradedRing, d: int):
    """Monomial exponent vectors of degree d, or None when there are
    infinitely many."""
    gens = ring.generators
    zero_idx = [k for k, g in enumerate(gens) if g.degree == 0]
    inv_idx = [k for k, g in enumerate(gens) if g.invertible]
    pos_idx = [k for k, g in enumerate(gens) if g.degree > 0 and not g.invertible]
    pos_deg = [gens[k].degree for k in pos_idx]

    def assemble(pos_exps, inv_exp=0):
        e = [0] * len(gens)
        for k, v in zip(pos_idx, pos_exps):
            e[k] = v
        if inv_idx:
            e[inv_idx[0]] = inv_exp
        return tuple(e)

    if zero_idx:
        # a single degree-0 generator already makes every nonempty slice infinite
        probe = _slice_monomials(
            GradedRing(ring.base, tuple(g for g in gens if g.degree != 0)), d
        )
        if probe is None or probe:
            return None
        return []

    if not inv_idx:
        return [assemble(e) for e in _positive_knapsack(pos_deg, d)]

    g = gens[inv_idx[0]].degree
    if g == 0:
        return None if d == 0 or _positive_knapsack(pos_deg, d) else []
    if not pos_idx:
        if d % g == 0:
            return [assemble((), d // g)]
        return []
    # invertible generator mixed with positive ones: arbitrarily large
    # positive words can be compensated, so a slice is infinite exactly
    # when the degree gcd divides d
    all_gcd = math.gcd(abs(g), math.gcd(*pos_deg))
    return None if d % all_gcd == 0 else []


def homogeneous_slice(ring: GradedRing, d: int) -> FiniteSlice | Infinite:
    """The set of all homogeneous degree-d elements, when finite."""
    if ring.truncation is not None and d > ring.truncation.max_degree:
        return Infinite(f"degree {d} lies beyond the truncation bound {ring.truncation.max_degree}")
    if ring.infinite_tail and d >= ring.tail_min_degree:
        return Infinite(
            f"degree {d} can involve generators beyond the window (tail starts at degree {ring.tail_min_degree})"
        )
    monomials = _slice_monomials(ring, d)
    if monomials is None:
        return Infinite(f"infinitely many monomials of degree {d} in {ring}")
    if monomials and not ring.base.is_finite():
        sample = format_element(ring.monomial(monomials[0]))
        return Infinite(f"{ring.base}-multiples of {sample}")
    return FiniteSlice(ring, d, tuple(sorted(monomials)))


# -- ring maps ----------------------------------------------------------------


@dataclass(frozen=True)
class RingMap:
    """A degree-preserving ring homomorphism determined by generator images.

    The base map is inferred: identity between equal bases, or reduction
    Z_(p) -> F_p on matching primes.
    """

    source: GradedRing
    target: GradedRing
    images: tuple[RingElement, ...] = field(default=())

    def __post_init__(self):
        if len(self.images) != len(self.source.generators):
            raise ValueError("one image per source generator required")
        for g, img in zip(self.source.generators, self.images):
            if img.ring != self.target:
                raise ValueError(f"image of {g.name} lives in the wrong ring")
            if img and img.degree() != g.degree:
                raise DegreeMismatch(
                    f"image of {g.name} has degree {img.degree()}, expected {g.degree}"
                )

    def map_scalar(self, c):
        sb, tb = self.source.base, self.target.base
        if sb == tb:
            return c
        if isinstance(sb, PLocalIntegers) and isinstance(tb, FiniteField):
            if tb.p != sb.p:
                raise ValueError("base reduction must preserve the prime")
            num = c.numerator % tb.p
            den = c.denominator % tb.p
            return tb.element(num) / tb.element(den)
        raise ValueError(f"no base map from {sb} to {tb}")

    def __call__(self, elem: RingElement) -> RingElement:
        if elem.ring != self.source:
            raise ValueError("element not in the source ring")
        out = self.target.zero()
        for exps, c in elem.terms:
            term = self.target.from_scalar(self.map_scalar(c))
            for e, img in zip(exps, self.images):
                if e == 0:
                    continue
                if e < 0:
                    term = term * self.target.invert_unit(img) ** (-e)
                else:
                    term = term * img**e
            out = out + term
        return out


# -- textual form --------------------------------------------------------------
#
# Grammar (documented for the JSON interfaces):
#   element  := term (('+'|'-') term)*
#   term     := factor ('*' factor)*
#   factor   := coefficient | name ('^' integer)?
#   coefficient := integer | integer '/' integer | '(' t-polynomial ')'
# Extension-field coefficients are written as polynomials in `t`.


def _format_coefficient(c, base) -> str:
    if isinstance(base, FiniteField):
        if base.n == 1:
            return str(c.coeffs[0])
        s = str(c)
        return s if s.isdigit() else f"({s})"
    return str(c)


def format_element(elem: RingElement) -> str:
    if not elem.terms:
        return "0"
    ring = elem.ring
    pieces = []
    for exps, c in reversed(elem.terms):
        factors = []
        for e, g in zip(exps, ring.generators):
            if e == 0:
                continue
            factors.append(g.name if e == 1 else f"{g.name}^{e}")
        cs = _format_coefficient(c, ring.base)
        negative = cs.startswith("-")
        if negative:
            cs = cs[1:]
        if not factors:
            body = cs
        elif cs == "1":
            body = "*".join(factors)
        else:
            body = "*".join([cs] + factors)
        pieces.append(("-" if negative else "+", body))
    sign0, body0 = pieces[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _split_top_level(s: str):
    """Split on top-level +/- (outside parentheses, not exponent signs)."""
    parts = []
    depth = 0
    current = ""
    sign = 1
    prev = ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and prev != "^":
            if current.strip():
                parts.append((sign, current.strip()))
                sign = 1 if ch == "+" else -1
                current = ""
            else:
                sign = sign if ch == "+" else -sign
            prev = ch
            continue
        current += ch
        if not ch.isspace():
            prev = ch
    if current.strip():
        parts.append((sign, current.strip()))
    return parts


def _parse_coefficient(token: str, base):
    token = token.strip()
    if token.startswith("(") and token.endswith(")"):
        token = token[1:-1]
    if isinstance(base, PLocalIntegers):
        return base.element(Fraction(token))
    if "t" in token:
        if not isinstance(base, FiniteField) or base.n == 1:
            raise ValueError(f"coefficient {token!r} needs an extension field")
        coeffs = [0] * base.n
        for sign, part in _split_top_level(token):
            if "t" not in part:
                coeffs[0] = (coeffs[0] + sign * int(part)) % base.p
                continue
            factors = part.split("*")
            c = 1
            e = None
            for f in factors:
                f = f.strip()
                if f.startswith("t"):
                    e = 1 if f == "t" else int(f[2:])
                else:
                    c *= int(f)
            coeffs[e] = (coeffs[e] + sign * c) % base.p
        return base.element(tuple(coeffs))
    return base.element(int(token))


def parse_element(ring: GradedRing, text: str) -> RingElement:
    """Parse the documented signed-monomial grammar into a RingElement."""
    text = text.strip()
    if text == "0" or not text:
        return ring.zero()
    total = ring.zero()
    for sign, term in _split_top_level(text):
        exps = [0] * len(ring.generators)
        coeff = ring.base.one()
        depth = 0
        factors = []
        cur = ""
        for ch in term:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "*" and depth == 0:
                factors.append(cur)
                cur = ""
            else:
                cur += ch
        factors.append(cur)
        for f in factors:
            f = f.strip()
            if not f:
                raise ValueError(f"empty factor in {term!r}")
            if f[0].isalpha():
                name, exp = _parse_power(f)
                try:
                    idx = ring.generator_index(name)
                except KeyError:
                    # not a generator; coefficient token such as "t" over F_{p^n}
                    coeff = coeff * _parse_coefficient(f, ring.base)
                    continue
                exps[idx] += exp
            else:
                coeff = coeff * _parse_coefficient(f, ring.base)
        if sign < 0:
            coeff = -coeff
        total = total + ring.monomial(exps, coeff)
    return total


def _factor_name(f: str) -> str:
    return f.split("^", 1)[0].strip()


def _parse_power(f: str):
    if "^" in f:
        name, exp = f.split("^", 1)
        return name.strip(), int(exp)
    return f.strip(), 1
