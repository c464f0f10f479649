"""Exact scalars, monomials, monomial orders, polynomials and ring presentations.

Coefficients are either rationals (``gmpy2.mpq``, always in lowest terms) or
residues modulo a prime stored as Python ints in ``[0, p)``.  Monomials are
plain tuples of exponents; variables are identified by index and names are
only used for parsing and printing.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import gmpy2
from gmpy2 import mpq

from .errors import ParseError, PreconditionError, StructuralError

Monomial = Tuple[int, ...]

DEFAULT_PRIME = 32003


# ---------------------------------------------------------------------------
# fields


class RationalField:
    """The field of rational numbers."""

    char = 0
    name = "Q"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    def __call__(self, value) -> mpq:
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def from_ratio(self, num: int, den: int) -> mpq:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return mpq(num, den)

    def format(self, a) -> str:
        return str(a)

    def random(self, rng, low: int = 1, high: int = 100):
        return mpq(rng.randint(low, high))

    def normalizer(self, lead):
        """Scalar that makes a vector with leading coefficient ``lead`` canonical."""
        return 1 / lead

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field F_p with elements stored as ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.char = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.mul = lambda a, b: (a * b) % p
        self.neg = lambda a: (-a) % p

    def __call__(self, value) -> int:
        p = self.char
        if isinstance(value, (Fraction, type(mpq(0)))):
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inv(self, a):
        if a % self.char == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.char)

    def div(self, a, b):
        return a * self.inv(b) % self.char

    def from_ratio(self, num: int, den: int) -> int:
        return num * self.inv(den % self.char) % self.char

    def format(self, a) -> str:
        a = a % self.char
        return str(a - self.char) if a > self.char // 2 else str(a)

    def random(self, rng, low: int = 1, high: Optional[int] = None):
        return rng.randint(1, self.char - 1)

    def normalizer(self, lead):
        return self.inv(lead)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("Fp", self.char))

    def __repr__(self):
        return f"PrimeField({self.char})"


QQ = RationalField()


def field_from_name(name: str):
    """Return the field named ``Q``, ``Fp`` (p = 32003) or ``F<p>``."""
    if name in ("Q", "QQ"):
        return QQ
    if name == "Fp":
        return PrimeField(DEFAULT_PRIME)
    m = re.fullmatch(r"F(\d+)", name)
    if m:
        return PrimeField(int(m.group(1)))
    raise ValueError(f"unknown field {name!r}")


# ---------------------------------------------------------------------------
# monomials


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Quotient a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_deg(a: Monomial) -> int:
    return sum(a)


def monomials_of_degree(n: int, d: int) -> List[Monomial]:
    """All exponent vectors of total degree d in n variables, degrevlex-descending."""
    if n == 0:
        return [()] if d == 0 else []
    out: List[Monomial] = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, slots - 1)

    rec((), d, n)
    order = MonomialOrder("degrevlex")
    out.sort(key=order.key, reverse=True)
    return out


# ---------------------------------------------------------------------------
# monomial orders


def _revlex_tail(m: Sequence[int]) -> Tuple[int, ...]:
    return tuple(-e for e in reversed(m))


class MonomialOrder:
    """degrevlex (global) or negdegrevlex (local), optionally by blocks.

    ``blocks`` is a tuple of block sizes; monomials are compared block by block,
    each block with the chosen kind.  Larger keys mean larger monomials.
    """

    KINDS = ("degrevlex", "negdegrevlex")

    def __init__(self, kind: str = "degrevlex", blocks: Optional[Sequence[int]] = None):
        if kind == "local":
            kind = "negdegrevlex"
        if kind not in self.KINDS:
            raise ValueError(f"unsupported monomial order {kind!r}")
        self.kind = kind
        self.blocks = tuple(blocks) if blocks else None
        self._sign = 1 if kind == "degrevlex" else -1
        self._cache: Dict[Monomial, tuple] = {}

    @property
    def is_global(self) -> bool:
        return self.kind == "degrevlex"

    def key(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            if self.blocks is None:
                k = (self._sign * sum(m),) + _revlex_tail(m)
            else:
                parts: List[int] = []
                start = 0
                for size in self.blocks:
                    seg = m[start:start + size]
                    parts.append(self._sign * sum(seg))
                    parts.extend(_revlex_tail(seg))
                    start += size
                k = tuple(parts)
            self._cache[m] = k
        return k

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and other.kind == self.kind
                and other.blocks == self.blocks)

    def __hash__(self):
        return hash((self.kind, self.blocks))

    def __repr__(self):
        if self.blocks:
            return f"MonomialOrder({self.kind!r}, blocks={self.blocks})"
        return f"MonomialOrder({self.kind!r})"


DEGREVLEX = MonomialOrder("degrevlex")
NEGDEGREVLEX = MonomialOrder("negdegrevlex")


def order_compare(m1: Monomial, m2: Monomial, order: MonomialOrder) -> str:
    """Compare two monomials, returning ``"LT"``, ``"EQ"`` or ``"GT"``."""
    if len(m1) != len(m2):
        raise StructuralError("monomials have different numbers of variables")
    return ("LT", "EQ", "GT")[order.compare(m1, m2) + 1]


# ---------------------------------------------------------------------------
# polynomials


class PolynomialRing:
    """k[x_1..x_n] with a fixed monomial order."""

    def __init__(self, field, names: Sequence[str], order: MonomialOrder = DEGREVLEX):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.order = order

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.field == other.field
                and self.names == other.names and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"PolynomialRing({self.field.name}, {list(self.names)}, {self.order.kind})"

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.field, self.names, order)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field(c)})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): self.field(coeff)})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    @property
    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def from_dict(self, terms: Dict[Monomial, object]) -> "Polynomial":
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        parser = _Parser(_tokenize(text))
        poly = parser.expr(self)
        parser.expect_end()
        return poly

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, dict):
            return Polynomial(self, value)
        return self.constant(value)


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Dict[Monomial, object]):
        self.ring = ring
        F = ring.field
        self._terms = {m: F(c) for m, c in terms.items() if F(c) != 0}
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolynomialRing, terms: Dict[Monomial, object]) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # --- data access
    @property
    def terms(self) -> Dict[Monomial, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> List[Monomial]:
        """Monomials sorted descending by the ring's order."""
        return sorted(self._terms, key=self.ring.order.key, reverse=True)

    def sorted_terms(self) -> List[Tuple[Monomial, object]]:
        return [(m, self._terms[m]) for m in self.monomials()]

    def coefficient(self, m: Monomial):
        return self._terms.get(tuple(m), self.ring.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def lm(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=self.ring.order.key)

    @property
    def lc(self):
        return self._terms[self.lm]

    @property
    def lt(self) -> Tuple[Monomial, object]:
        m = self.lm
        return m, self._terms[m]

    def degree(self) -> int:
        """Largest total degree of a term (-1 for zero)."""
        return max((sum(m) for m in self._terms), default=-1)

    def low_degree(self) -> int:
        """Smallest total degree of a term: the order in the maximal ideal."""
        return min((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.ring, {m: c for m, c in self._terms.items() if sum(m) == d})

    def initial_form(self) -> "Polynomial":
        """Lowest-degree homogeneous component."""
        if not self._terms:
            return self
        return self.homogeneous_component(self.low_degree())

    # --- arithmetic
    def _check(self, other: "Polynomial"):
        if self.ring.field != other.ring.field or self.ring.names != other.ring.names:
            raise StructuralError("polynomials belong to different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self.ring.constant(other)
        raise StructuralError(f"cannot combine a polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = F.add(out.get(m, F.zero), c)
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial._raw(self.ring, {m: F.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out: Dict[Monomial, object] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = F.add(out.get(m, F.zero), F.mul(c1, c2))
                if v == 0:
                    out.pop(m, None)
                else:
                    out[m] = v
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: F.mul(a, c) for m, a in self._terms.items()})

    def mul_monomial(self, mono: Monomial, c=None) -> "Polynomial":
        F = self.ring.field
        c = F.one if c is None else F(c)
        return Polynomial._raw(
            self.ring, {mono_mul(m, mono): F.mul(a, c) for m, a in self._terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def change_ring(self, ring: PolynomialRing) -> "Polynomial":
        if ring.nvars != self.ring.nvars or ring.field != self.ring.field:
            raise StructuralError("target ring has a different shape")
        return Polynomial._raw(ring, dict(self._terms))

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``images[i]`` for the i-th variable."""
        if len(images) != self.ring.nvars:
            raise StructuralError("wrong number of substitution images")
        target = images[0].ring if images else self.ring
        result = target.zero()
        powers: Dict[Tuple[int, int], Polynomial] = {}
        for m, c in self._terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    # --- comparison and display
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.ring.field == other.ring.field and self.ring.names == other.ring.names
                    and self._terms == other._terms)
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: terms in degrevlex-descending order whatever the ring order."""
    if f.is_zero():
        return "0"
    F = f.ring.field
    out: List[str] = []
    for m in sorted(f._terms, key=DEGREVLEX.key, reverse=True):
        c = F.format(f._terms[m])
        mono = format_monomial(m, f.ring.names)
        if not mono:
            term = c
        elif c == "1":
            term = mono
        elif c == "-1":
            term = "-" + mono
        else:
            term = f"{c}*{mono}"
        if not out:
            out.append(term)
        elif term.startswith("-"):
            out.append(" - " + term[1:])
        else:
            out.append(" + " + term)
    return "".join(out)


# ---------------------------------------------------------------------------
# ring presentations


@dataclass(frozen=True)
class RingPresentation:
    """A quotient k[x_1..x_n]/I with I contained in the square of the maximal ideal.

    ``order`` is ``"degrevlex"`` (graded semantics) or ``"local"`` (the ring is
    the localization at the origin, computed with negdegrevlex).
    """

    field: object
    names: Tuple[str, ...]
    order: str
    generators: Tuple[Polynomial, ...]
    ideal_name: str = "I"

    def __post_init__(self):
        if self.order not in ("degrevlex", "local"):
            raise ValueError(f"unknown order kind {self.order!r}")
        ring = self.ring
        gens = []
        for g in self.generators:
            g = g.change_ring(ring) if g.ring != ring else g
            if not g.is_zero() and g.low_degree() < 2:
                raise PreconditionError(
                    f"generator {g} is not in the square of the maximal ideal")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def ring(self) -> PolynomialRing:
        order = NEGDEGREVLEX if self.order == "local" else DEGREVLEX
        return PolynomialRing(self.field, self.names, order)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def is_local(self) -> bool:
        return self.order == "local"

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def with_generators(self, gens: Iterable[Polynomial], order: Optional[str] = None,
                        names: Optional[Sequence[str]] = None) -> "RingPresentation":
        names = tuple(names) if names is not None else self.names
        order = order or self.order
        ring = PolynomialRing(self.field, names, NEGDEGREVLEX if order == "local" else DEGREVLEX)
        return RingPresentation(self.field, names, order,
                                tuple(g.change_ring(ring) for g in gens), self.ideal_name)

    def to_text(self) -> str:
        if self.order == "local":
            head = f"ring {self.field.name}[{','.join(self.names)}] local;"
        else:
            head = f"ring {self.field.name}[{','.join(self.names)}] order degrevlex;"
        body = ", ".join(str(g) for g in self.generators) or "0"
        return f"{head} ideal {self.ideal_name} = {body};"

    def __str__(self):
        return self.to_text()


def make_presentation(field, names: Sequence[str], gens: Iterable, local: bool = False,
                      ideal_name: str = "I") -> RingPresentation:
    """Build a presentation from polynomials or strings."""
    if isinstance(field, str):
        field = field_from_name(field)
    order = "local" if local else "degrevlex"
    ring = PolynomialRing(field, names, NEGDEGREVLEX if local else DEGREVLEX)
    polys = [ring.parse(g) if isinstance(g, str) else g.change_ring(ring) for g in gens]
    return RingPresentation(field, tuple(names), order, tuple(polys), ideal_name)


# ---------------------------------------------------------------------------
# ring DSL


@dataclass
class _Token:
    kind: str  # "id", "num", "sym", "end"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        j = i
        if ch.isalpha() or ch == "_":
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("id", text[i:j], line, col))
        elif ch.isdigit():
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("num", text[i:j], line, col))
        elif ch in "[],;=+-*^/()":
            j = i + 1
            tokens.append(_Token("sym", ch, line, col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        col += j - i
        i = j
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("sym", "id") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> _Token:
        if not (self.tok.kind in ("sym", "id") and self.tok.text == text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def expect_kind(self, kind: str) -> _Token:
        if self.tok.kind != kind:
            self.error(f"expected {kind}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def expect_end(self):
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")

    # expressions
    def expr(self, ring: PolynomialRing) -> Polynomial:
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        result = self.term(ring)
        if negate:
            result = -result
        while self.tok.kind == "sym" and self.tok.text in "+-":
            op = self.advance().text
            t = self.term(ring)
            result = result + t if op == "+" else result - t
        return result

    def term(self, ring: PolynomialRing) -> Polynomial:
        result = self.factor(ring)
        while self.tok.kind == "sym" and self.tok.text == "*":
            self.advance()
            result = result * self.factor(ring)
        return result

    def factor(self, ring: PolynomialRing) -> Polynomial:
        base = self.atom(ring)
        if self.accept("^"):
            exp = self.expect_kind("num")
            base = base ** int(exp.text)
        return base

    def atom(self, ring: PolynomialRing) -> Polynomial:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            num = int(tok.text)
            if self.accept("/"):
                den_tok = self.expect_kind("num")
                den = int(den_tok.text)
                if den == 0:
                    self.error("zero denominator", den_tok)
                try:
                    return ring.constant(ring.field.from_ratio(num, den))
                except ZeroDivisionError:
                    self.error("denominator vanishes in the coefficient field", den_tok)
            return ring.constant(num)
        if tok.kind == "id":
            self.advance()
            if tok.text not in ring.names:
                self.error(f"unknown variable {tok.text!r}", tok)
            return ring.gen(ring.names.index(tok.text))
        if self.accept("("):
            inner = self.expr(ring)
            self.expect(")")
            return inner
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def poly_list(self, ring: PolynomialRing, stop: str) -> List[Tuple[Polynomial, _Token]]:
        out = []
        if self.tok.kind == "sym" and self.tok.text == stop:
            return out
        while True:
            start = self.tok
            out.append((self.expr(ring), start))
            if not self.accept(","):
                break
        return out


def parse_presentation(text: str) -> RingPresentation:
    """Parse ``ring Q[x,y] order degrevlex; ideal I = x*y, y^2;`` style text."""
    p = _Parser(_tokenize(text))
    p.expect("ring")
    ftok = p.expect_kind("id")
    try:
        field = field_from_name(ftok.text)
    except ValueError as exc:
        raise ParseError(str(exc), ftok.line, ftok.col) from None
    p.expect("[")
    names: List[str] = []
    if not (p.tok.kind == "sym" and p.tok.text == "]"):
        while True:
            nt = p.expect_kind("id")
            if nt.text in names:
                p.error(f"duplicate variable {nt.text!r}", nt)
            names.append(nt.text)
            if not p.accept(","):
                break
    p.expect("]")
    order = "degrevlex"
    if p.accept("local"):
        order = "local"
    elif p.accept("order"):
        otok = p.expect_kind("id")
        if otok.text == "degrevlex":
            order = "degrevlex"
        elif otok.text in ("negdegrevlex", "local"):
            order = "local"
        else:
            p.error(f"unsupported order {otok.text!r}", otok)
    p.expect(";")
    ring = PolynomialRing(field, names, NEGDEGREVLEX if order == "local" else DEGREVLEX)
    ideal_name = "I"
    gens: List[Polynomial] = []
    if p.accept("ideal"):
        ideal_name = p.expect_kind("id").text
        p.expect("=")
        for g, tok in p.poly_list(ring, ";"):
            if not g.is_zero() and g.low_degree() < 2:
                raise ParseError(f"generator {g} is not in the square of the maximal ideal",
                                 tok.line, tok.col)
            gens.append(g)
        p.expect(";")
    p.expect_end()
    return RingPresentation(field, tuple(names), order, tuple(gens), ideal_name)


def parse_polynomials(ring: PolynomialRing, text: str) -> List[Polynomial]:
    """Parse a comma-separated list of polynomials (possibly empty)."""
    p = _Parser(_tokenize(text))
    out = [g for g, _ in p.poly_list(ring, "")] if p.tok.kind != "end" else []
    p.expect_end()
    return out


def poly_arithmetic(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Exact ``add`` or ``mul`` of two polynomials over the same ring."""
    if a.ring != b.ring:
        raise StructuralError("operands belong to different rings")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


__all__ = [
    "QQ",
    "DEFAULT_PRIME",
    "RationalField",
    "PrimeField",
    "field_from_name",
    "Monomial",
    "mono_mul",
    "mono_div",
    "mono_divides",
    "mono_lcm",
    "mono_deg",
    "monomials_of_degree",
    "MonomialOrder",
    "DEGREVLEX",
    "NEGDEGREVLEX",
    "order_compare",
    "PolynomialRing",
    "Polynomial",
    "format_polynomial",
    "RingPresentation",
    "make_presentation",
    "parse_presentation",
    "parse_polynomials",
    "poly_arithmetic",
]
