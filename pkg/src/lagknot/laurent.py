"""Exact Laurent polynomials with integer coefficients.

:class:`LaurentPoly2` lives in ``Z[v, v^-1, z, z^-1]`` and holds HOMFLYPT
values; :class:`LaurentPoly1` lives in ``Z[v, v^-1]`` and holds their
specializations at ``z = v^-1 - v``.  Both are immutable and hashable.

Text form (parsed by :func:`parse_poly`, produced by ``str``)::

    -v^4 + 2*v^2 + v^2*z^2
    v^-1*z^-1 - v*z^-1

Terms are printed by descending v-exponent, then ascending z-exponent.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType

from .errors import NonDivisible, ParseError, ZeroPolynomial

__all__ = [
    "Rational",
    "LaurentPoly1",
    "LaurentPoly2",
    "parse_poly",
    "format_poly",
    "lp_add",
    "lp_mul",
    "lp_specialize_z",
    "lp_span_v",
    "ONE",
    "ZERO",
    "V",
    "Z",
    "DELTA",
]

# Exact rationals (auto-reduced, positive denominator) come from the stdlib.
Rational = Fraction


def _prune(items):
    return {k: c for k, c in items if c}


def _accumulate(pairs):
    out = {}
    for k, c in pairs:
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


class _Laurent:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = _accumulate(terms)
        self._terms = {self._key(k): int(c) for k, c in terms.items() if c}
        self._hash = None

    @staticmethod
    def _key(k):
        return k

    @property
    def terms(self):
        """Read-only view of the exponent -> coefficient map."""
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = type(self).constant(other)
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    @classmethod
    def constant(cls, c):
        return cls({cls._zero_exp: c})

    def _coerce(self, other):
        if isinstance(other, int):
            return type(self).constant(other)
        if type(other) is type(self):
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return type(self)(_prune(out.items()))

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        add = self._add_exp
        out = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = add(k1, k2)
                out[k] = out.get(k, 0) + c1 * c2
        return type(self)(_prune(out.items()))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers are defined only for monomials")
            ((k, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative powers need a unit coefficient")
            return type(self)({self._scale_exp(k, n): c ** (-n)})
        result = type(self).constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_one(self):
        return self._terms == {self._zero_exp: 1}

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class LaurentPoly1(_Laurent):
    """Laurent polynomial in ``v`` alone; exponents are plain integers."""

    __slots__ = ()
    _zero_exp = 0

    @staticmethod
    def _add_exp(a, b):
        return a + b

    @staticmethod
    def _scale_exp(a, n):
        return a * n

    def degree_range(self):
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return min(self._terms), max(self._terms)

    def exact_div(self, other: "LaurentPoly1") -> "LaurentPoly1":
        """Exact quotient in the Laurent ring; raises :class:`NonDivisible`."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return LaurentPoly1()
        a_lo, a_hi = self.degree_range()
        b_lo, b_hi = other.degree_range()
        num = [self._terms.get(a_lo + i, 0) for i in range(a_hi - a_lo + 1)]
        den = [other._terms.get(b_lo + i, 0) for i in range(b_hi - b_lo + 1)]
        if len(num) < len(den):
            raise NonDivisible(f"{self} is not divisible by {other}")
        lead = den[-1]
        quot = [0] * (len(num) - len(den) + 1)
        for i in range(len(quot) - 1, -1, -1):
            c = num[i + len(den) - 1]
            if c % lead:
                raise NonDivisible(f"{self} is not divisible by {other}")
            q = c // lead
            quot[i] = q
            if q:
                for j, d in enumerate(den):
                    num[i + j] -= q * d
        if any(num):
            raise NonDivisible(f"{self} is not divisible by {other}")
        shift = a_lo - b_lo
        return LaurentPoly1({shift + i: q for i, q in enumerate(quot) if q})

    def __str__(self):
        if not self._terms:
            return "0"
        return _join(
            (c, _mono(e, 0)) for e, c in sorted(self._terms.items(), key=lambda t: -t[0])
        )

    def evaluate(self, v):
        return sum(c * v**e for e, c in self._terms.items())


class LaurentPoly2(_Laurent):
    """Laurent polynomial in ``v`` and ``z``; key ``(i, j)`` means ``v^i z^j``."""

    __slots__ = ()
    _zero_exp = (0, 0)

    @staticmethod
    def _key(k):
        i, j = k
        return (int(i), int(j))

    @staticmethod
    def _add_exp(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @staticmethod
    def _scale_exp(a, n):
        return (a[0] * n, a[1] * n)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly2":
        return parse_poly(text)

    def v_degrees(self):
        if not self._terms:
            raise ZeroPolynomial("v-degrees of the zero polynomial")
        vs = [i for i, _ in self._terms]
        return min(vs), max(vs)

    def span_v(self) -> int:
        """Difference between the largest and smallest v-exponent."""
        lo, hi = self.v_degrees()
        return hi - lo

    def mirror(self) -> "LaurentPoly2":
        """Substitute ``v -> v^-1`` and ``z -> -z``."""
        return LaurentPoly2({(-i, j): (-c if j % 2 else c)
                             for (i, j), c in self._terms.items()})

    def specialize_z(self) -> LaurentPoly1:
        """Substitute ``z = v^-1 - v``, returning an element of ``Z[v, v^-1]``.

        Negative z-powers are cleared by lifting with ``z^k`` and dividing the
        substituted result by ``(v^-1 - v)^k`` exactly.
        """
        if not self._terms:
            return LaurentPoly1()
        k = max(0, -min(j for _, j in self._terms))
        by_z = {}
        for (i, j), c in self._terms.items():
            by_z.setdefault(j + k, {})[i] = c
        total = LaurentPoly1()
        for e, coeffs in by_z.items():
            total = total + LaurentPoly1(coeffs) * _s_power(e)
        if k:
            total = total.exact_div(_s_power(k))
        return total

    def __str__(self):
        return format_poly(self)


_S = LaurentPoly1({-1: 1, 1: -1})
_S_POWERS = [LaurentPoly1({0: 1})]


def _s_power(n):
    while len(_S_POWERS) <= n:
        _S_POWERS.append(_S_POWERS[-1] * _S)
    return _S_POWERS[n]


def _mono(i, j):
    parts = []
    if i:
        parts.append("v" if i == 1 else f"v^{i}")
    if j:
        parts.append("z" if j == 1 else f"z^{j}")
    return "*".join(parts)


def _join(items):
    out = []
    for c, m in items:
        a = abs(c)
        body = str(a) if not m else (m if a == 1 else f"{a}*{m}")
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def format_poly(p: LaurentPoly2) -> str:
    if not p:
        return "0"
    ordered = sorted(p.terms.items(), key=lambda t: (-t[0][0], t[0][1]))
    return _join((c, _mono(i, j)) for (i, j), c in ordered)


class _PolyParser:
    def __init__(self, text):
        self.s = text
        self.pos = 0

    def error(self, expected, message="unexpected input"):
        raise ParseError(message, offset=self.pos, expected=expected)

    def ws(self):
        while self.pos < len(self.s) and self.s[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self):
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def integer(self, signed=False):
        start = self.pos
        if signed and self.peek() in "+-":
            self.pos += 1
        digits = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.error("integer")
        return int(self.s[start:self.pos])

    def term(self):
        coeff = None
        exps = {}
        if self.peek().isdigit():
            coeff = self.integer()
            self.ws()
            if self.peek() == "*":
                self.pos += 1
                self.ws()
            elif self.peek() not in ("v", "z"):
                return coeff, 0, 0
        while True:
            ch = self.peek()
            if ch not in ("v", "z"):
                self.error("'v', 'z' or a coefficient")
            if ch in exps:
                self.error("each variable at most once per term",
                           message=f"repeated variable {ch!r}")
            self.pos += 1
            self.ws()
            e = 1
            if self.peek() == "^":
                self.pos += 1
                self.ws()
                e = self.integer(signed=True)
            exps[ch] = e
            self.ws()
            if self.peek() == "*":
                self.pos += 1
                self.ws()
                continue
            break
        return (1 if coeff is None else coeff), exps.get("v", 0), exps.get("z", 0)

    def parse(self):
        terms = {}
        self.ws()
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            self.ws()
        while True:
            c, i, j = self.term()
            terms[(i, j)] = terms.get((i, j), 0) + sign * c
            self.ws()
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                self.error("'+', '-' or end of input")
            sign = -1 if ch == "-" else 1
            self.pos += 1
            self.ws()
        return LaurentPoly2(_prune(terms.items()))


def parse_poly(text: str) -> LaurentPoly2:
    """Parse the canonical text form (and mild whitespace variations)."""
    return _PolyParser(text).parse()


ONE = LaurentPoly2({(0, 0): 1})
ZERO = LaurentPoly2()
V = LaurentPoly2({(1, 0): 1})
Z = LaurentPoly2({(0, 1): 1})
# Value of the 2-component unlink: (v^-1 - v) / z.
DELTA = LaurentPoly2({(-1, -1): 1, (1, -1): -1})


def lp_add(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    return a + b


def lp_mul(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    return a * b


def lp_specialize_z(p: LaurentPoly2) -> LaurentPoly1:
    return p.specialize_z()


def lp_span_v(p: LaurentPoly2) -> int:
    return p.span_v()
