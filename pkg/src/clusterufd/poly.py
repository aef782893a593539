"""Sparse multivariate polynomial and Laurent-polynomial arithmetic.

Polynomials over Q or Q(i) are stored as dicts mapping exponent tuples to
nonzero coefficients.  A Laurent polynomial is a polynomial numerator plus a
monomial denominator exponent vector, kept reduced so that no variable
divides both.  Variables are addressed 1-based (x1..xm) in every public
signature; exponent tuples are 0-indexed internally.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .fields import FieldTag, GaussianRational

Exponent = tuple[int, ...]


# -- exponent-vector helpers ------------------------------------------------

def ev_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def ev_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def ev_max(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def ev_min(a: Exponent, b: Exponent) -> Exponent:
    return tuple(min(x, y) for x, y in zip(a, b))


def ev_divides(a: Exponent, b: Exponent) -> bool:
    """True when the monomial x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def ev_degree(a: Exponent) -> int:
    return sum(a)


# -- monomial orders --------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on m variables, with an optional variable permutation.

    ``permutation`` lists 0-based positions in decreasing comparison
    priority; exponents are read through it before the order rule applies.
    ``kind`` is one of "lex", "grevlex" or "block"; a block order compares
    the first ``block`` permuted positions grevlex-first, which makes it an
    elimination order for those variables.
    """

    kind: str
    m: int
    permutation: tuple[int, ...]
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if sorted(self.permutation) != list(range(self.m)):
            raise ValueError("permutation must list the positions 0..m-1")
        if self.kind == "block" and not 0 < self.block < self.m:
            raise ValueError("block size must satisfy 0 < block < m")

    @staticmethod
    def _grevlex_key(pe: Sequence[int]):
        return (sum(pe), tuple(-e for e in reversed(pe)))

    def key(self, exp: Exponent):
        """A sort key; larger key means larger monomial."""
        pe = [exp[p] for p in self.permutation]
        if self.kind == "lex":
            return tuple(pe)
        if self.kind == "grevlex":
            return self._grevlex_key(pe)
        return (self._grevlex_key(pe[: self.block]),
                self._grevlex_key(pe[self.block:]))


def grevlex_order(m: int, permutation: Optional[Iterable[int]] = None) -> MonomialOrder:
    perm = tuple(permutation) if permutation is not None else tuple(range(m))
    return MonomialOrder("grevlex", m, perm)


def lex_order(m: int, permutation: Optional[Iterable[int]] = None) -> MonomialOrder:
    perm = tuple(permutation) if permutation is not None else tuple(range(m))
    return MonomialOrder("lex", m, perm)


def elimination_order(m: int, block: int = 1,
                      permutation: Optional[Iterable[int]] = None) -> MonomialOrder:
    """Block order eliminating the first ``block`` permuted positions."""
    perm = tuple(permutation) if permutation is not None else tuple(range(m))
    return MonomialOrder("block", m, perm, block)


# -- polynomials ------------------------------------------------------------

class Polynomial:
    """A sparse polynomial in m variables over a fixed coefficient field.

    ``terms`` maps exponent tuples of length m to nonzero field elements.
    Instances are immutable; all operators return new polynomials.

    >>> x1 = Polynomial.variable(1, 2, FieldTag.Q)
    >>> x2 = Polynomial.variable(2, 2, FieldTag.Q)
    >>> str((x1 + x2) * (x1 - x2))
    'x1^2 - x2^2'
    """

    __slots__ = ("m", "field", "terms", "_hash")

    def __init__(self, m: int, field: FieldTag, terms: dict):
        clean = {}
        for exp, coeff in terms.items():
            exp = tuple(exp)
            if len(exp) != m:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {m}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = field.coerce(coeff)
            if c:
                clean[exp] = clean[exp] + c if exp in clean else c
                if not clean[exp]:
                    del clean[exp]
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, m: int, field: FieldTag, terms: dict) -> "Polynomial":
        """Internal constructor: terms must already be clean."""
        self = object.__new__(cls)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, m: int, field: FieldTag) -> "Polynomial":
        return cls._raw(m, field, {})

    @classmethod
    def one(cls, m: int, field: FieldTag) -> "Polynomial":
        return cls._raw(m, field, {(0,) * m: field.one()})

    @classmethod
    def constant(cls, value, m: int, field: FieldTag) -> "Polynomial":
        c = field.coerce(value)
        return cls._raw(m, field, {(0,) * m: c} if c else {})

    @classmethod
    def variable(cls, var: int, m: int, field: FieldTag) -> "Polynomial":
        """The variable x_var, 1-based."""
        if not 1 <= var <= m:
            raise ValueError(f"variable index {var} outside 1..{m}")
        exp = tuple(1 if p == var - 1 else 0 for p in range(m))
        return cls._raw(m, field, {exp: field.one()})

    @classmethod
    def monomial(cls, coeff, exp: Exponent, m: int, field: FieldTag) -> "Polynomial":
        return cls(m, field, {tuple(exp): coeff})

    # -- queries ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Largest term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        """Largest exponent of x_var; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        p = var - 1
        return max(e[p] for e in self.terms)

    def leading(self, order: MonomialOrder):
        """(exponent, coefficient) of the largest term under ``order``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def coefficient_of(self, var: int, k: int) -> "Polynomial":
        """The coefficient of x_var^k, as a polynomial not involving x_var."""
        p = var - 1
        out = {}
        for exp, c in self.terms.items():
            if exp[p] == k:
                out[exp[:p] + (0,) + exp[p + 1:]] = c
        return Polynomial._raw(self.m, self.field, out)

    def support_vars(self) -> set[int]:
        """The 1-based indices of variables that actually appear."""
        out = set()
        for exp in self.terms:
            for p, e in enumerate(exp):
                if e:
                    out.add(p + 1)
        return out

    def min_exponents(self) -> Exponent:
        """Componentwise minimum exponent over all terms (the monomial content)."""
        if not self.terms:
            return (0,) * self.m
        it = iter(self.terms)
        acc = next(it)
        for exp in it:
            acc = ev_min(acc, exp)
        return acc

    def constant_coefficient(self):
        return self.terms.get((0,) * self.m, self.field.zero())

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.m != other.m or self.field is not other.field:
            raise ValueError("polynomials live in different ambient rings")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction, GaussianRational)):
                other = Polynomial.constant(other, self.m, self.field)
            else:
                return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            if exp in out:
                s = out[exp] + c
                if s:
                    out[exp] = s
                else:
                    del out[exp]
            else:
                out[exp] = c
        return Polynomial._raw(self.m, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.m, self.field,
                               {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Polynomial.constant(other, self.m, self.field)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction, GaussianRational)):
                c = self.field.coerce(other)
                if not c:
                    return Polynomial.zero(self.m, self.field)
                return Polynomial._raw(self.m, self.field,
                                       {e: v * c for e, v in self.terms.items()})
            return NotImplemented
        self._check_compatible(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                if exp in out:
                    s = out[exp] + c1 * c2
                    if s:
                        out[exp] = s
                    else:
                        del out[exp]
                else:
                    out[exp] = c1 * c2
        return Polynomial._raw(self.m, self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers take non-negative integer exponents")
        out = Polynomial.one(self.m, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.m == other.m and self.field is other.field
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            h = hash((self.m, self.field, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- rendering ----------------------------------------------------------

    def __str__(self):
        return render_polynomial(self)

    __repr__ = __str__

    # -- substitution -------------------------------------------------------

    def substitute(self, values: Sequence["LaurentPolynomial"]) -> "LaurentPolynomial":
        """Evaluate at Laurent values, one per variable position."""
        if len(values) != self.m:
            raise ValueError(f"expected {self.m} values, got {len(values)}")
        if not values:
            raise ValueError("cannot substitute in a 0-variable ring")
        ambient_m = values[0].m
        ambient_field = values[0].field
        acc = LaurentPolynomial.zero(ambient_m, ambient_field)
        for exp, c in self.terms.items():
            term = LaurentPolynomial.constant(ambient_field.coerce(c),
                                              ambient_m, ambient_field)
            for p, e in enumerate(exp):
                if e:
                    term = term * values[p] ** e
            acc = acc + term
        return acc


def divide_exact(p: Polynomial, q: Polynomial,
                 order: Optional[MonomialOrder] = None) -> Optional[Polynomial]:
    """The quotient p/q when q divides p exactly, else None.

    Single-divisor multivariate division: whenever a term would land in the
    remainder the division cannot be exact, so we stop early.
    """
    p._check_compatible(q)
    if q.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero:
        return Polynomial.zero(p.m, p.field)
    if order is None:
        order = grevlex_order(p.m)
    key = order.key
    q_exp, q_coeff = q.leading(order)
    q_terms = q.terms
    rem = dict(p.terms)
    quot: dict = {}
    while rem:
        exp = max(rem, key=key)
        if not ev_divides(q_exp, exp):
            return None
        shift = ev_sub(exp, q_exp)
        factor = rem[exp] / q_coeff
        quot[shift] = factor
        for e2, c2 in q_terms.items():
            tgt = ev_add(shift, e2)
            if tgt in rem:
                s = rem[tgt] - factor * c2
                if s:
                    rem[tgt] = s
                else:
                    del rem[tgt]
            else:
                rem[tgt] = -factor * c2
    return Polynomial._raw(p.m, p.field, quot)


# -- Laurent polynomials ----------------------------------------------------

class LaurentPolynomial:
    """A Laurent polynomial num / x^den with monomial denominator.

    The representation is kept reduced: no variable divides both the
    numerator and the denominator monomial, and the zero value has a zero
    denominator vector.  Equality of reduced forms is then literal equality.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Exponent):
        den = tuple(den)
        if len(den) != num.m:
            raise ValueError(f"denominator length {len(den)} != ambient {num.m}")
        if any(e < 0 for e in den):
            raise ValueError("denominator exponents must be non-negative")
        if num.is_zero:
            den = (0,) * num.m
        elif any(den):
            content = num.min_exponents()
            shift = ev_min(den, content)
            if any(shift):
                num = Polynomial._raw(
                    num.m, num.field,
                    {ev_sub(e, shift): c for e, c in num.terms.items()})
                den = ev_sub(den, shift)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "LaurentPolynomial":
        return cls(p, (0,) * p.m)

    @classmethod
    def zero(cls, m: int, field: FieldTag) -> "LaurentPolynomial":
        return cls(Polynomial.zero(m, field), (0,) * m)

    @classmethod
    def one(cls, m: int, field: FieldTag) -> "LaurentPolynomial":
        return cls(Polynomial.one(m, field), (0,) * m)

    @classmethod
    def constant(cls, value, m: int, field: FieldTag) -> "LaurentPolynomial":
        return cls(Polynomial.constant(value, m, field), (0,) * m)

    @classmethod
    def variable(cls, var: int, m: int, field: FieldTag) -> "LaurentPolynomial":
        return cls(Polynomial.variable(var, m, field), (0,) * m)

    # -- queries ------------------------------------------------------------

    @property
    def m(self) -> int:
        return self.num.m

    @property
    def field(self) -> FieldTag:
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_unit(self) -> bool:
        """True when invertible in the Laurent ring: a single-term numerator."""
        return len(self.num.terms) == 1

    def is_polynomial(self) -> bool:
        return not any(self.den)

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} has a nontrivial denominator")
        return self.num

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "LaurentPolynomial"):
        if self.m != other.m or self.field is not other.field:
            raise ValueError("Laurent polynomials live in different ambient rings")

    @staticmethod
    def _scale_num(p: Polynomial, shift: Exponent) -> Polynomial:
        if not any(shift):
            return p
        return Polynomial._raw(p.m, p.field,
                               {ev_add(e, shift): c for e, c in p.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPolynomial.constant(other, self.m, self.field)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_compatible(other)
        den = ev_max(self.den, other.den)
        num = (self._scale_num(self.num, ev_sub(den, self.den))
               + self._scale_num(other.num, ev_sub(den, other.den)))
        return LaurentPolynomial(num, den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPolynomial.constant(other, self.m, self.field)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPolynomial.constant(other, self.m, self.field)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_compatible(other)
        return LaurentPolynomial(self.num * other.num, ev_add(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPolynomial":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        if not self.is_unit():
            raise ValueError("only single-term Laurent polynomials are invertible")
        ((exp, coeff),) = self.num.terms.items()
        inv_num = Polynomial.monomial(self.field.one() / coeff, self.den,
                                      self.m, self.field)
        return LaurentPolynomial(inv_num, exp)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPolynomial.constant(other, self.m, self.field)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_compatible(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPolynomial.constant(other, self.m, self.field)
            return other / self
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("Laurent powers take integer exponents")
        if k < 0:
            return self.inverse() ** (-k)
        return LaurentPolynomial(self.num ** k,
                                 tuple(e * k for e in self.den))

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.num, self.den)))
        return self._hash

    def __str__(self):
        return render_laurent(self)

    __repr__ = __str__


# -- rendering --------------------------------------------------------------

def _monomial_str(exp: Exponent) -> str:
    parts = []
    for p, e in enumerate(exp):
        if e == 1:
            parts.append(f"x{p + 1}")
        elif e:
            parts.append(f"x{p + 1}^{e}")
    return "*".join(parts)


def _coeff_parts(coeff) -> tuple[bool, str]:
    """(negative, magnitude-text) for a coefficient; mixed Gaussians get parens."""
    if isinstance(coeff, GaussianRational):
        if not coeff.im:
            coeff = coeff.re
        elif not coeff.re:
            im = coeff.im
            mag = "i" if abs(im) == 1 else f"{abs(im)}*i"
            return im < 0, mag
        else:
            return False, f"({coeff})"
    return coeff < 0, str(abs(coeff))


def render_polynomial(p: Polynomial, order: Optional[MonomialOrder] = None) -> str:
    """Canonical text form: terms in descending monomial order."""
    if p.is_zero:
        return "0"
    if order is None:
        order = grevlex_order(p.m)
    pieces = []
    for exp in sorted(p.terms, key=order.key, reverse=True):
        neg, mag = _coeff_parts(p.terms[exp])
        mono = _monomial_str(exp)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


def render_laurent(v: LaurentPolynomial, order: Optional[MonomialOrder] = None) -> str:
    num_str = render_polynomial(v.num, order)
    if not any(v.den):
        return num_str
    if len(v.num.terms) > 1:
        num_str = f"({num_str})"
    den_str = _monomial_str(v.den)
    if sum(1 for e in v.den if e) > 1:
        den_str = f"({den_str})"
    return f"{num_str}/{den_str}"
