"""Sparse exact multivariate polynomial arithmetic over prime fields.

A polynomial is a finite map from exponent vectors to nonzero residues
mod p.  The canonical form sorts terms by the ring's active monomial
order (graded reverse lexicographic by default).  Every value here is
immutable after construction, so polynomials, monomials and scalars can
be shared freely between threads; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

GREVLEX = "grevlex"
LEX = "lex"

_PRIMES_SEEN: set[int] = set()


class ContextError(ValueError):
    """Operands belong to different ring contexts."""


class ParseError(ValueError):
    """Malformed polynomial text; carries the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for word-size moduli."""
    if n in _PRIMES_SEEN:
        return True
    if n < 2:
        return False
    for d in (2, 3):
        if n % d == 0:
            if n == d:
                _PRIMES_SEEN.add(n)
                return True
            return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    _PRIMES_SEEN.add(n)
    return True


class FpScalar:
    """Residue in the prime field F_p.  Arithmetic is field arithmetic."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if not is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other) -> int | None:
        if isinstance(other, FpScalar):
            if other.modulus != self.modulus:
                raise ContextError(
                    f"mixed moduli {self.modulus} and {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpScalar(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpScalar(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpScalar(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpScalar(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError("division by zero residue")
        return FpScalar(self.value * pow(v, -1, self.modulus), self.modulus)

    def __pow__(self, n: int):
        return FpScalar(pow(self.value, n, self.modulus), self.modulus)

    def __neg__(self):
        return FpScalar(-self.value, self.modulus)

    def inverse(self) -> "FpScalar":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FpScalar(pow(self.value, -1, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return (self.value, self.modulus) == (other.value, other.modulus)
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpScalar({self.value}, {self.modulus})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative well-order on exponent vectors.

    ``permutation`` lists variable indices by decreasing priority; None
    means the ring's declared order.  ``key`` maps an exponent vector to
    a sort key such that larger keys mean larger monomials.
    """

    kind: str = GREVLEX
    permutation: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in (GREVLEX, LEX):
            raise ValueError(f"unknown monomial order kind {self.kind!r}")
        if self.permutation is not None:
            object.__setattr__(self, "permutation", tuple(self.permutation))

    def key(self, exponents: Sequence[int]):
        e = exponents
        if self.permutation is not None:
            e = tuple(exponents[i] for i in self.permutation)
        if self.kind == LEX:
            return tuple(e)
        return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class Monomial:
    """Exponent vector, one entry per ambient variable."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative exponent")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if len(self.exponents) != len(other.exponents):
            raise ContextError("monomials from different rings")
        return Monomial(tuple(a + b for a, b in zip(self.exponents,
                                                    other.exponents)))


class PolynomialRing:
    """Multivariate polynomial ring F_p[variables] with an active order."""

    def __init__(self, characteristic: int, variables: Sequence[str],
                 order: MonomialOrder | None = None):
        if not is_prime(characteristic):
            raise ValueError(f"characteristic {characteristic} is not prime")
        variables = tuple(variables)
        if not variables:
            raise ValueError("ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        for name in variables:
            if not name.isidentifier():
                raise ValueError(f"variable name {name!r} is not an identifier")
        order = order or MonomialOrder()
        if order.permutation is not None and sorted(order.permutation) != list(
                range(len(variables))):
            raise ValueError("order permutation does not match variable count")
        self.characteristic = characteristic
        self.variables = variables
        self.order = order
        self._var_index = {v: i for i, v in enumerate(variables)}
        self._zero_exps = (0,) * len(variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> "Polynomial":
        return Polynomial._from_raw(self, {})

    def one(self) -> "Polynomial":
        return Polynomial._from_raw(self, {self._zero_exps: 1})

    def constant(self, c: int | FpScalar) -> "Polynomial":
        v = int(c) % self.characteristic
        return Polynomial._from_raw(self, {self._zero_exps: v} if v else {})

    def gen(self, name: str) -> "Polynomial":
        if name not in self._var_index:
            raise ValueError(f"unknown variable {name!r}")
        exps = [0] * self.nvars
        exps[self._var_index[name]] = 1
        return Polynomial._from_raw(self, {tuple(exps): 1})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(v) for v in self.variables)

    def monomial(self, exponents: Sequence[int] | Monomial) -> "Polynomial":
        exps = exponents.exponents if isinstance(exponents, Monomial) \
            else tuple(exponents)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        return Polynomial._from_raw(self, {exps: 1})

    def polynomial(self, terms: Mapping) -> "Polynomial":
        """Build from a map {Monomial or exponent tuple: coefficient}."""
        out: dict[tuple[int, ...], int] = {}
        p = self.characteristic
        for mono, coeff in terms.items():
            exps = mono.exponents if isinstance(mono, Monomial) else tuple(mono)
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            c = (out.get(exps, 0) + int(coeff)) % p
            if c:
                out[exps] = c
            else:
                out.pop(exps, None)
        return Polynomial._from_raw(self, out)

    def from_string(self, text: str) -> "Polynomial":
        return parse_poly(text, self)

    def __eq__(self, other):
        if not isinstance(other, PolynomialRing):
            return NotImplemented
        return (self.characteristic, self.variables, self.order) == \
            (other.characteristic, other.variables, other.order)

    def __hash__(self):
        return hash((self.characteristic, self.variables, self.order))

    def __repr__(self):
        return f"PolynomialRing(F_{self.characteristic}, {list(self.variables)})"


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> residue in (0, p)."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolynomialRing, terms: Mapping | None = None):
        built = ring.polynomial(terms or {})
        self.ring = ring
        self._terms = built._terms

    @classmethod
    def _from_raw(cls, ring: PolynomialRing,
                  terms: dict[tuple[int, ...], int]) -> "Polynomial":
        # trusted constructor: terms already canonical
        self = object.__new__(cls)
        self.ring = ring
        self._terms = terms
        return self

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def order_of_vanishing(self) -> int | None:
        """Minimal total degree of a term; None for the zero polynomial."""
        return min((sum(e) for e in self._terms), default=None)

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        key = (order or self.ring.order).key
        return Monomial(max(self._terms, key=key))

    def leading_coefficient(self, order: MonomialOrder | None = None) -> FpScalar:
        lm = self.leading_monomial(order)
        return FpScalar(self._terms[lm.exponents], self.ring.characteristic)

    def coefficient(self, monomial: Monomial | Sequence[int]) -> FpScalar:
        exps = monomial.exponents if isinstance(monomial, Monomial) \
            else tuple(monomial)
        return FpScalar(self._terms.get(exps, 0), self.ring.characteristic)

    def terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, FpScalar]]:
        """Canonical term list, largest monomial first."""
        key = (order or self.ring.order).key
        p = self.ring.characteristic
        return [(Monomial(e), FpScalar(c, p))
                for e, c in sorted(self._terms.items(),
                                   key=lambda t: key(t[0]), reverse=True)]

    def monomials(self, order: MonomialOrder | None = None) -> list[Monomial]:
        return [m for m, _ in self.terms(order)]

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextError("polynomials from different rings")
            return other
        if isinstance(other, (int, FpScalar)):
            if isinstance(other, FpScalar) and \
                    other.modulus != self.ring.characteristic:
                raise ContextError("scalar from a different prime field")
            return self.ring.constant(int(other))
        return None

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        p = self.ring.characteristic
        out = dict(self._terms)
        for e, c in g._terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._from_raw(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g + (-self)

    def __neg__(self):
        p = self.ring.characteristic
        return Polynomial._from_raw(self.ring,
                                    {e: p - c for e, c in self._terms.items()})

    def __mul__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        p = self.ring.characteristic
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in g._terms.items():
                k = tuple(a + b for a, b in zip(e1, e2))
                v = (out.get(k, 0) + c1 * c2) % p
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return Polynomial._from_raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def frobenius_power(self, q: int) -> "Polynomial":
        """q-th power for q a power of the characteristic.

        Termwise exponent scaling is exact here: the q-th power map is a
        ring homomorphism in characteristic p and fixes F_p coefficients.
        """
        p = self.ring.characteristic
        m = q
        while m > 1 and m % p == 0:
            m //= p
        if m != 1:
            raise ValueError(f"{q} is not a power of the characteristic {p}")
        return Polynomial._from_raw(
            self.ring,
            {tuple(x * q for x in e): c for e, c in self._terms.items()})

    def map_to(self, ring: PolynomialRing) -> "Polynomial":
        """Reinterpret in another ring, matching variables by name."""
        if ring.characteristic != self.ring.characteristic:
            raise ContextError("target ring has a different characteristic")
        positions = []
        for i, name in enumerate(self.ring.variables):
            positions.append(ring._var_index.get(name))
        out: dict[tuple[int, ...], int] = {}
        for e, c in self._terms.items():
            exps = [0] * ring.nvars
            for i, x in enumerate(e):
                if x == 0:
                    continue
                j = positions[i]
                if j is None:
                    raise ContextError(
                        f"variable {self.ring.variables[i]!r} missing in target")
                exps[j] = x
            out[tuple(exps)] = c
        return Polynomial._from_raw(ring, out)

    # -- comparison / rendering --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, FpScalar)):
            return self == self.ring.constant(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"Polynomial({render_poly(self)!r})"


# -- spec operations --------------------------------------------------------

def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Exact add/sub/mul in a shared ring context."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_power(f: Polynomial, n: int) -> Polynomial:
    """f**n by repeated squaring; f**0 is 1."""
    return f ** n


def render_poly(f: Polynomial) -> str:
    """Canonical text form; parse_poly(render_poly(f)) == f."""
    if f.is_zero():
        return "0"
    parts = []
    for mono, coeff in f.terms():
        factors = []
        if coeff.value != 1 or mono.degree == 0:
            factors.append(str(coeff.value))
        for name, e in zip(f.ring.variables, mono.exponents):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)


class _Scanner:
    # grammar: expr := term (('+'|'-') term)*
    #          term := factor ('*' factor)*
    #          factor := INT | VAR ('^' INT)?

    def __init__(self, text: str, ring: PolynomialRing):
        self.text = text
        self.ring = ring
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str | None:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def _integer(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def _identifier(self) -> tuple[str, int]:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos], start

    def _factor(self) -> tuple[int, list[int]]:
        ch = self._peek()
        exps = [0] * self.ring.nvars
        if ch is None:
            raise ParseError("expected integer or variable", self.pos)
        if ch.isdigit():
            return self._integer(), exps
        if ch.isalpha() or ch == "_":
            name, start = self._identifier()
            idx = self.ring._var_index.get(name)
            if idx is None:
                raise ParseError(f"unknown variable {name!r}", start)
            power = 1
            if self._peek() == "^":
                self.pos += 1
                power = self._integer()
            exps[idx] = power
            return 1, exps
        raise ParseError(f"unexpected character {ch!r}", self.pos)

    def _term(self) -> tuple[int, tuple[int, ...]]:
        coeff, exps = self._factor()
        while self._peek() == "*":
            self.pos += 1
            c2, e2 = self._factor()
            coeff *= c2
            exps = [a + b for a, b in zip(exps, e2)]
        return coeff, tuple(exps)

    def parse(self) -> Polynomial:
        p = self.ring.characteristic
        acc: dict[tuple[int, ...], int] = {}

        def push(sign: int, coeff: int, exps: tuple[int, ...]):
            v = (acc.get(exps, 0) + sign * coeff) % p
            if v:
                acc[exps] = v
            else:
                acc.pop(exps, None)

        push(1, *self._term())
        while True:
            ch = self._peek()
            if ch is None:
                break
            if ch == "+":
                self.pos += 1
                push(1, *self._term())
            elif ch == "-":
                self.pos += 1
                push(-1, *self._term())
            else:
                raise ParseError(f"unexpected character {ch!r}", self.pos)
        return Polynomial._from_raw(self.ring, acc)


def parse_poly(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse grammar-conforming text into a canonical polynomial.

    Integer literals are reduced mod p; unknown variables and stray
    characters raise ParseError with the offending position.
    """
    return _Scanner(text, ring).parse()
