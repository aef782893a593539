"""Unique-factorization analysis for cluster seeds.

The pipeline: cheap necessary conditions on the exchange polynomials first
(reducible or coinciding f_i refute unique factorization outright), then an
inductive certificate search that justifies, for every nonempty support of
mutable indices, one of three combinatorial lemmas; a complete certificate
proves that products of the exchange ideals agree with their intersections
for every multi-index, which is the criterion for the upper cluster algebra
to be a UFD.  Certificates are re-checked, never trusted, and a UFD verdict
is additionally cross-validated against direct Groebner computations at
small multi-indices; disagreement there raises ``ConsistencyError`` because
it can only mean a bug.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Mapping, Optional, Sequence, Union

import sympy

from .cluster import ExchangeMatrix, exchange_polynomial, structure_report
from .fields import FieldTag, GaussianRational
from .groebner import (DEFAULT_BUDGET, BudgetExceeded, GroebnerBudget, Ideal,
                       ideal_intersection_many, ideal_product, normal_form)
from .poly import (LaurentPolynomial, Polynomial, divide_exact, grevlex_order)

logger = logging.getLogger("clusterufd")


class ConsistencyError(RuntimeError):
    """Two independent computations disagreed; this is always a bug."""


# -- exchange ideals and the divisibility membership test --------------------

class ExchangeIdeals:
    """The ideals (x_i, f_i) of a seed matrix, one per mutable index.

    Membership in a power (x_i, f_i)^a is decided without Groebner bases:
    writing P = sum_k P_k x_i^k with P_k free of x_i, P lies in the power
    exactly when f_i^(a-k) divides P_k for every k < a.
    """

    def __init__(self, matrix: ExchangeMatrix, field: FieldTag = FieldTag.Q):
        self.matrix = matrix
        self.field = field
        self.n = matrix.n
        self.m = matrix.m
        self._f = tuple(exchange_polynomial(matrix, j, field)
                        for j in range(1, matrix.n + 1))
        self._f_powers: dict[tuple[int, int], Polynomial] = {}
        self._ideals: dict[int, Ideal] = {}
        self._power_ideals: dict[tuple[int, int], Ideal] = {}

    def exchange_poly(self, i: int) -> Polynomial:
        if not 1 <= i <= self.n:
            raise ValueError(f"index {i} outside 1..{self.n}")
        return self._f[i - 1]

    def variable(self, i: int) -> Polynomial:
        return Polynomial.variable(i, self.m, self.field)

    def f_power(self, i: int, k: int) -> Polynomial:
        if k == 1:
            return self.exchange_poly(i)
        cached = self._f_powers.get((i, k))
        if cached is None:
            cached = self.exchange_poly(i) ** k
            self._f_powers[(i, k)] = cached
        return cached

    def ideal(self, i: int) -> Ideal:
        cached = self._ideals.get(i)
        if cached is None:
            cached = Ideal([self.variable(i), self.exchange_poly(i)])
            self._ideals[i] = cached
        return cached

    def power_ideal(self, i: int, a: int) -> Ideal:
        """(x_i, f_i)^a, generated by x_i^r * f_i^(a-r)."""
        if a < 0:
            raise ValueError("powers must be non-negative")
        if a == 0:
            return Ideal([Polynomial.one(self.m, self.field)])
        cached = self._power_ideals.get((i, a))
        if cached is None:
            x = self.variable(i)
            gens = []
            for r in range(a + 1):
                g = x ** r
                if r < a:
                    g = g * self.f_power(i, a - r)
                gens.append(g)
            cached = Ideal(gens)
            self._power_ideals[(i, a)] = cached
        return cached

    def power_membership(self, p: Polynomial, i: int, a: int) -> bool:
        """Whether p lies in (x_i, f_i)^a, by coefficientwise divisibility."""
        if a < 0:
            raise ValueError("powers must be non-negative")
        if a == 0 or p.is_zero:
            return True
        if not 1 <= i <= self.n:
            raise ValueError(f"index {i} outside 1..{self.n}")
        top = min(a - 1, p.degree_in(i))
        for k in range(top + 1):
            p_k = p.coefficient_of(i, k)
            if p_k.is_zero:
                continue
            if divide_exact(p_k, self.f_power(i, a - k)) is None:
                return False
        return True

    def valuation(self, p: Polynomial, i: int) -> int:
        """The largest a with p in (x_i, f_i)^a; p must be nonzero."""
        if p.is_zero:
            raise ValueError("the zero polynomial lies in every power")
        v = 0
        while self.power_membership(p, i, v + 1):
            v += 1
        return v

    def normal_monomial(self, p: Polynomial) -> tuple[int, ...]:
        """Exponents of the monomial M(p) = prod x_i^(valuation at i)."""
        out = [0] * self.m
        for i in range(1, self.n + 1):
            out[i - 1] = self.valuation(p, i)
        return tuple(out)


def power_membership_linear(ideals: ExchangeIdeals, p: Polynomial, i: int,
                            a: int, k: int) -> bool:
    """Membership in (x_i, f_i)^a via expansion in powers of f_i = x_k + M.

    Requires f_i to contain the bare variable x_k with coefficient one.
    Substituting x_k = T - M for a fresh symbol T writes p = sum_r A_r f_i^r
    with A_r free of x_k; membership then reads x_i^(a-r) divides A_r.
    Exists as an independent oracle for the divisibility-based test.
    """
    f = ideals.exchange_poly(i)
    m, fld = ideals.m, ideals.field
    x_k = Polynomial.variable(k, m, fld)
    monomial_part = f - x_k
    if len(monomial_part.terms) != 1:
        raise ValueError(f"f_{i} = {f} is not of the form x{k} + monomial")
    if monomial_part.degree_in(k) > 0:
        raise ValueError(f"f_{i} = {f} involves x{k} beyond the linear term")
    m2 = m + 1
    lift = {e + (0,): c for e, c in monomial_part.terms.items()}
    minus_m = Polynomial(m2, fld, {e: -c for e, c in lift.items()})
    t_minus_m = Polynomial(m2, fld, {(0,) * m + (1,): 1}) + minus_m
    kp = k - 1
    acc = Polynomial.zero(m2, fld)
    for exp, c in p.terms.items():
        stripped = exp[:kp] + (0,) + exp[kp + 1:] + (0,)
        term = Polynomial(m2, fld, {stripped: c})
        if exp[kp]:
            term = term * t_minus_m ** exp[kp]
        acc = acc + term
    if a == 0 or p.is_zero:
        return True
    for r in range(a):
        a_r = acc.coefficient_of(m2, r)
        if a_r.is_zero:
            continue
        if min(e[i - 1] for e in a_r.terms) < a - r:
            return False
    return True


# -- binomial irreducibility -------------------------------------------------

def _unit_binomial_exponents(f: Polynomial):
    """(u, v) when f = x^u + x^v with both coefficients 1, else None."""
    if len(f.terms) != 2:
        return None
    (u, cu), (v, cv) = sorted(f.terms.items())
    one = f.field.one()
    if cu != one or cv != one:
        return None
    return u, v


def binomial_irreducible(f: Polynomial) -> Optional[bool]:
    """Irreducibility of a unit-coefficient binomial; None when not one.

    With disjoint supports and d the gcd of all exponents, f = A^d + B^d for
    coprime monomials A, B; over Q it is irreducible exactly when d is a
    power of two, over Q(i) exactly when d = 1.  A shared variable gives a
    monomial factor, hence reducible.
    """
    ev = _unit_binomial_exponents(f)
    if ev is None:
        return None
    u, v = ev
    if any(min(a, b) for a, b in zip(u, v)):
        return False
    d = 0
    for e in (*u, *v):
        d = gcd(d, e)
    if f.field is FieldTag.QI:
        return d == 1
    return d & (d - 1) == 0


def binomial_witness_factors(f: Polynomial) -> Optional[tuple[Polynomial, Polynomial]]:
    """An explicit nontrivial factor pair for a reducible unit binomial.

    Shared variables give a monomial split; an odd prime p | d gives the
    classical divisor A^(d/p) + B^(d/p); over Q(i) an even d splits as a
    sum of two squares.  The pair is verified by multiplication.
    """
    ev = _unit_binomial_exponents(f)
    if ev is None:
        return None
    u, v = ev
    m, fld = f.m, f.field
    common = tuple(min(a, b) for a, b in zip(u, v))
    if any(common):
        g = Polynomial.monomial(1, common, m, fld)
        h = divide_exact(f, g)
    else:
        d = 0
        for e in (*u, *v):
            d = gcd(d, e)
        odd = next((p for p in _prime_factors(d) if p % 2), None)
        base_u = tuple(e // d for e in u)
        base_v = tuple(e // d for e in v)
        if odd is not None:
            e = d // odd
            g = (Polynomial.monomial(1, tuple(x * e for x in base_u), m, fld)
                 + Polynomial.monomial(1, tuple(x * e for x in base_v), m, fld))
            h = divide_exact(f, g)
        elif fld is FieldTag.QI and d % 2 == 0:
            half = d // 2
            im = fld.imaginary_unit()
            a_half = Polynomial.monomial(1, tuple(x * half for x in base_u), m, fld)
            b_half = Polynomial.monomial(1, tuple(x * half for x in base_v), m, fld)
            g = a_half + im * b_half
            h = a_half - im * b_half
        else:
            return None
    if h is None or g * h != f:
        raise ConsistencyError(f"constructed factors do not multiply back to {f}")
    return g, h


def _prime_factors(k: int):
    out = []
    p = 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


# -- brute-force factor search ----------------------------------------------

@dataclass(frozen=True)
class FactorSearchResult:
    """A factor pair if one was found, plus whether the search was complete."""

    factors: Optional[tuple[Polynomial, Polynomial]]
    exhausted: bool


def _to_sympy(f: Polynomial, symbols):
    total = sympy.Integer(0)
    for exp, c in f.terms.items():
        if isinstance(c, GaussianRational):
            coeff = (sympy.Rational(c.re.numerator, c.re.denominator)
                     + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator))
        else:
            coeff = sympy.Rational(c.numerator, c.denominator)
        mono = sympy.Integer(1)
        for p, e in enumerate(exp):
            if e:
                mono *= symbols[p] ** e
        total += coeff * mono
    return total

def _coeff_from_sympy(c_expr, fld: FieldTag):
    re_part, im_part = c_expr.as_real_imag()
    re_rat = sympy.Rational(re_part)
    im_rat = sympy.Rational(im_part)
    re_frac = Fraction(int(re_rat.p), int(re_rat.q))
    im_frac = Fraction(int(im_rat.p), int(im_rat.q))
    if im_frac and fld is not FieldTag.QI:
        raise ConsistencyError(f"imaginary coefficient {c_expr} over Q")
    if fld is FieldTag.QI:
        return GaussianRational(re_frac, im_frac)
    return re_frac


def _normalize_factor(g: Polynomial) -> Polynomial:
    """Scale so the constant term (else the leading coefficient) is one."""
    c0 = g.constant_coefficient()
    if c0:
        return g * (g.field.one() / c0)
    _, lc = g.leading(grevlex_order(g.m))
    return g * (g.field.one() / lc)


def brute_force_factor(f: Polynomial, max_degree: int = 12) -> FactorSearchResult:
    """Search for a nontrivial factor pair g * h = f.

    Backed by an exact factorization oracle whose output is re-verified by
    multiplication in our own arithmetic.  Inputs of total degree beyond
    ``max_degree`` are not searched (``exhausted=False``); finding nothing
    within an exhausted search does prove irreducibility.
    """
    if f.is_zero or f.total_degree() < 1:
        raise ValueError("factor search needs a nonconstant polynomial")
    if f.total_degree() > max_degree:
        return FactorSearchResult(None, exhausted=False)
    fld = f.field
    symbols = sympy.symbols(f"x1:{f.m + 1}")
    expr = _to_sympy(f, symbols)
    if fld is FieldTag.QI:
        _, factors = sympy.factor_list(expr, *symbols, gaussian=True)
    else:
        _, factors = sympy.factor_list(expr, *symbols)
    pieces = []
    for factor_expr, mult in factors:
        converted = _sympy_factor_to_poly(factor_expr, symbols, f.m, fld)
        if converted.total_degree() < 1:
            continue
        pieces.extend([converted] * mult)
    if len(pieces) < 2:
        return FactorSearchResult(None, exhausted=True)
    pieces = [_normalize_factor(p) for p in pieces]
    pieces.sort(key=lambda p: (p.total_degree(), str(p)))
    g = pieces[0]
    h = pieces[1]
    for extra in pieces[2:]:
        h = h * extra
    scale = _match_scale(f, g, h)
    h = h * scale
    if g * h != f:
        raise ConsistencyError("oracle factors do not multiply back to the input")
    return FactorSearchResult((g, h), exhausted=True)


def _sympy_factor_to_poly(expr, symbols, m: int, fld: FieldTag) -> Polynomial:
    poly = sympy.Poly(expr, *symbols)
    terms = {}
    for exp, coeff in poly.terms():
        terms[tuple(exp)] = _coeff_from_sympy(sympy.sympify(coeff), fld)
    return Polynomial(m, fld, terms)


def _match_scale(f: Polynomial, g: Polynomial, h: Polynomial):
    """The unit c with f = g * (c * h), read off leading coefficients."""
    order = grevlex_order(f.m)
    _, f_lc = f.leading(order)
    prod = g * h
    _, p_lc = prod.leading(order)
    return f_lc / p_lc


# -- necessary conditions ----------------------------------------------------

@dataclass(frozen=True)
class ReducibleExchangePolynomial:
    """f_index factors as the given verified pair, refuting factoriality."""

    index: int
    factors: tuple[Polynomial, Polynomial]


@dataclass(frozen=True)
class CoincidentExchangePolynomials:
    """f_i and f_j are literally equal."""

    i: int
    j: int
    value: Polynomial


@dataclass(frozen=True)
class NonCoprimeExchangePolynomials:
    """f_i and f_j are proportional without being equal."""

    i: int
    j: int
    scalar: object


NotUFDWitness = Union[ReducibleExchangePolynomial, CoincidentExchangePolynomials,
                      NonCoprimeExchangePolynomials]


def _scalar_multiple(f: Polynomial, g: Polynomial):
    """The scalar c with f = c * g, or None."""
    if set(f.terms) != set(g.terms):
        return None
    ratio = None
    for exp, c in f.terms.items():
        r = c / g.terms[exp]
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ratio


def necessary_conditions(ideals: ExchangeIdeals) -> Optional[NotUFDWitness]:
    """The cheap refutations: reducible, coincident or proportional f_i.

    Checked in a fixed order (irreducibility by ascending index, then pair
    coincidences in ascending (i, j)) so the reported witness is stable.
    """
    if ideals.m < 2:
        raise ValueError("single-variable seeds are outside the supported scope")
    polys = [ideals.exchange_poly(i) for i in range(1, ideals.n + 1)]
    for i, f in enumerate(polys, start=1):
        if f.total_degree() < 1:
            raise ValueError(
                f"f_{i} is constant (column {i} is zero); the seed is disconnected")
        verdict = binomial_irreducible(f)
        if verdict is None:
            raise ConsistencyError(f"exchange polynomial {f} is not a unit binomial")
        if verdict is False:
            factors = binomial_witness_factors(f)
            if factors is None:
                raise ConsistencyError(
                    f"{f} judged reducible but no factors constructed")
            return ReducibleExchangePolynomial(i, factors)
    for i, j in combinations(range(1, ideals.n + 1), 2):
        if polys[i - 1] == polys[j - 1]:
            return CoincidentExchangePolynomials(i, j, polys[i - 1])
    for i, j in combinations(range(1, ideals.n + 1), 2):
        scalar = _scalar_multiple(polys[i - 1], polys[j - 1])
        if scalar is not None:
            return NonCoprimeExchangePolynomials(i, j, scalar)
    return None


# -- the ideal-equality conjecture at one multi-index ------------------------

@dataclass(frozen=True)
class ConjectureOutcome:
    """Result of comparing a product of ideal powers with their intersection."""

    status: str  # "holds" | "fails" | "inconclusive"
    multi_index: tuple[int, ...]
    witness: Optional[Polynomial] = None
    detail: str = ""


def check_assumptions(ideals: ExchangeIdeals) -> Optional[str]:
    """A human-readable reason the standing assumptions fail, or None."""
    report = structure_report(ideals.matrix)
    if not report.connected:
        return "the exchange matrix is not connected"
    if not report.acyclic:
        return "the principal quiver has an oriented cycle"
    witness = necessary_conditions(ideals)
    if witness is not None:
        return f"necessary conditions already fail: {witness}"
    return None


def conjecture_check(ideals: ExchangeIdeals, multi_index: Sequence[int],
                     budget: GroebnerBudget = DEFAULT_BUDGET,
                     override_assumptions: bool = False) -> ConjectureOutcome:
    """Does prod_i (x_i, f_i)^(a_i) equal the intersection of the powers?

    The containment product <= intersection is asserted unconditionally via
    the divisibility membership test; only the reverse inclusion is in
    question, so a failure is reported with an intersection generator that
    stays outside the product.
    """
    a = tuple(multi_index)
    if len(a) != ideals.n or any(x < 0 for x in a):
        raise ValueError(f"multi-index must have {ideals.n} non-negative entries")
    if not override_assumptions:
        problem = check_assumptions(ideals)
        if problem is not None:
            raise ValueError(
                f"{problem}; pass override_assumptions=True to probe anyway")
    active = [i for i in range(1, ideals.n + 1) if a[i - 1] > 0]
    if not active:
        return ConjectureOutcome("holds", a, detail="zero multi-index is trivial")
    powers = [ideals.power_ideal(i, a[i - 1]) for i in active]
    product = powers[0]
    for extra in powers[1:]:
        product = ideal_product(product, extra)
    for g in product.generators:
        for i in active:
            if not ideals.power_membership(g, i, a[i - 1]):
                raise ConsistencyError(
                    f"product generator {g} escaped (x{i}, f_{i})^{a[i - 1]}")
    if len(active) == 1:
        return ConjectureOutcome("holds", a, detail="single active index")
    try:
        intersection = ideal_intersection_many(powers, budget)
        basis = product.groebner_basis(budget=budget)
        for g in intersection.generators:
            if not normal_form(g, basis).is_zero:
                return ConjectureOutcome("fails", a, witness=g)
    except BudgetExceeded as exc:
        return ConjectureOutcome("inconclusive", a, detail=str(exc))
    return ConjectureOutcome("holds", a)


def multi_indices_of_weight(n: int, weight: int):
    """All length-n tuples of non-negative integers summing to ``weight``."""
    if n == 1:
        yield (weight,)
        return
    for first in range(weight + 1):
        for rest in multi_indices_of_weight(n - 1, weight - first):
            yield (first,) + rest


# -- the inductive certificate search ---------------------------------------

@dataclass(frozen=True)
class SinkSourceSplit:
    """Index i is a sink or source, j is a support neighbor; coprimality
    of f_i and f_j lets the induction split off one power each."""

    i: int
    j: int


@dataclass(frozen=True)
class FreeIndex:
    """No neighbor of i lies in the support, so f_i is regular modulo the rest."""

    i: int


@dataclass(frozen=True)
class FreeVariable:
    """f_i = x_k + monomial with x_k outside the support and no other
    support index adjacent to k, so x_k can absorb one power of f_i."""

    i: int
    k: int


Justification = Union[SinkSourceSplit, FreeIndex, FreeVariable]


def _justification_holds(matrix: ExchangeMatrix, ideals: ExchangeIdeals,
                         support: tuple[int, ...], just: Justification) -> bool:
    s = set(support)
    if isinstance(just, SinkSourceSplit):
        return (just.i in s and just.j in s and just.i != just.j
                and (matrix.is_source(just.i) or matrix.is_sink(just.i))
                and just.j in matrix.neighbors(just.i))
    if isinstance(just, FreeIndex):
        return just.i in s and not (set(matrix.neighbors(just.i)) & s)
    if isinstance(just, FreeVariable):
        i, k = just.i, just.k
        if i not in s or not 1 <= k <= matrix.m or k == i:
            return False
        if k <= matrix.n and k in s:
            return False
        f = ideals.exchange_poly(i)
        unit = tuple(1 if p == k - 1 else 0 for p in range(matrix.m))
        if f.terms.get(unit) != ideals.field.one():
            return False
        others = set(matrix.neighbors(k)) - {i}
        return not (others & s)
    return False


class SupportCertificate:
    """A justification for every nonempty support of mutable indices.

    ``verify`` re-derives each side condition from the matrix, and checks
    the supports cover all of them, so a tampered certificate is caught.
    """

    def __init__(self, entries: Mapping[tuple[int, ...], Justification], n: int):
        self.entries = dict(entries)
        self.n = n

    def verify(self, matrix: ExchangeMatrix, ideals: Optional[ExchangeIdeals] = None) -> list[str]:
        """A list of problems; empty means the certificate checks out."""
        if ideals is None:
            ideals = ExchangeIdeals(matrix)
        problems = []
        expected = set()
        for size in range(1, self.n + 1):
            expected.update(combinations(range(1, self.n + 1), size))
        actual = set(self.entries)
        for missing in sorted(expected - actual):
            problems.append(f"support {missing} has no justification")
        for extra in sorted(actual - expected):
            problems.append(f"unexpected support {extra}")
        for support in sorted(actual & expected):
            just = self.entries[support]
            if not _justification_holds(matrix, ideals, support, just):
                problems.append(f"support {support}: {just} does not hold")
        return problems

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class ProverResult:
    certificate: Optional[SupportCertificate]
    stuck_supports: tuple[tuple[int, ...], ...]


def inductive_prover(ideals: ExchangeIdeals) -> ProverResult:
    """Search for a justification per support, in a fixed deterministic order.

    Assumes the standing assumptions (connected, acyclic, coprime
    irreducible exchange polynomials) were already verified by the caller.
    """
    matrix = ideals.matrix
    n = ideals.n
    if n > 16:
        raise ValueError(f"certificate search enumerates 2^{n} supports; "
                         f"n = {n} is past the supported size")
    entries = {}
    stuck = []
    for size in range(1, n + 1):
        for support in combinations(range(1, n + 1), size):
            just = _find_justification(matrix, ideals, support)
            if just is None:
                stuck.append(support)
            else:
                entries[support] = just
    if stuck:
        return ProverResult(None, tuple(stuck))
    return ProverResult(SupportCertificate(entries, n), ())


def _find_justification(matrix: ExchangeMatrix, ideals: ExchangeIdeals,
                        support: tuple[int, ...]) -> Optional[Justification]:
    s = set(support)
    for i in support:
        if matrix.is_source(i) or matrix.is_sink(i):
            for j in support:
                if j != i and j in matrix.neighbors(i):
                    return SinkSourceSplit(i, j)
    for i in support:
        if not (set(matrix.neighbors(i)) & s):
            return FreeIndex(i)
    for i in support:
        f = ideals.exchange_poly(i)
        for k in sorted(f.support_vars()):
            if k == i or (k <= matrix.n and k in s):
                continue
            candidate = FreeVariable(i, k)
            if _justification_holds(matrix, ideals, support, candidate):
                return candidate
    return None


# -- the full verdict pipeline ----------------------------------------------

@dataclass(frozen=True)
class NotUFD:
    """The upper cluster algebra is provably not a UFD."""

    witness: NotUFDWitness


@dataclass(frozen=True)
class UFD:
    """A complete verified certificate; cross-checked up to the given weight."""

    certificate: SupportCertificate
    cross_checked_bound: int
    notes: str = ""


@dataclass(frozen=True)
class Inconclusive:
    """Neither refuted nor certified; records how far direct checks got."""

    reason: str
    stuck_supports: tuple[tuple[int, ...], ...]
    verified_bound: int


UFDVerdict = Union[NotUFD, UFD, Inconclusive]


def _verified_weight_bound(ideals: ExchangeIdeals, degree_bound: int,
                           budget: GroebnerBudget,
                           override_assumptions: bool) -> tuple[int, str]:
    """Largest weight L <= degree_bound with every |a| <= L conjecture check
    passing, plus a note describing any early stop."""
    for weight in range(1, degree_bound + 1):
        for a in multi_indices_of_weight(ideals.n, weight):
            outcome = conjecture_check(ideals, a, budget, override_assumptions)
            if outcome.status == "fails":
                return weight - 1, (f"ideal equality fails at {a} "
                                    f"(witness {outcome.witness})")
            if outcome.status == "inconclusive":
                return weight - 1, f"budget exhausted at {a}"
    return degree_bound, ""


def ufd_verdict(ideals: ExchangeIdeals, degree_bound: int = 3,
                budget: GroebnerBudget = DEFAULT_BUDGET) -> UFDVerdict:
    """Necessary conditions, then certificate search, then cross-validation.

    A passing bounded search never upgrades to a UFD verdict on its own:
    only a complete verified certificate does.  Conversely a certificate
    that contradicts a direct Groebner check raises ``ConsistencyError``.
    """
    matrix = ideals.matrix
    if matrix.m < 2:
        raise ValueError("single-variable seeds are outside the supported scope")
    report = structure_report(matrix)
    if not report.connected:
        raise ValueError("the exchange matrix must be connected")
    witness = necessary_conditions(ideals)
    if witness is not None:
        return NotUFD(witness)
    if not report.acyclic:
        bound, note = _verified_weight_bound(ideals, degree_bound, budget,
                                             override_assumptions=True)
        reason = "the principal quiver has an oriented cycle; the certificate search needs an acyclic seed"
        if note:
            reason = f"{reason}; {note}"
        return Inconclusive(reason, (), bound)
    result = inductive_prover(ideals)
    if result.certificate is None:
        bound, note = _verified_weight_bound(ideals, degree_bound, budget,
                                             override_assumptions=False)
        reason = "no applicable lemma for some supports"
        if note:
            reason = f"{reason}; {note}"
        return Inconclusive(reason, result.stuck_supports, bound)
    problems = result.certificate.verify(matrix, ideals)
    if problems:
        raise ConsistencyError(f"freshly built certificate fails to verify: {problems}")
    if ideals.n > 8:
        logger.info("skipping conjecture cross-check for n = %d > 8", ideals.n)
        return UFD(result.certificate, 0, notes="cross-check skipped (n > 8)")
    notes = ""
    checked = 0
    for weight in range(1, degree_bound + 1):
        stop = False
        for a in multi_indices_of_weight(ideals.n, weight):
            outcome = conjecture_check(ideals, a, budget)
            if outcome.status == "fails":
                raise ConsistencyError(
                    f"certificate contradicts a direct check at {a}: "
                    f"witness {outcome.witness}")
            if outcome.status == "inconclusive":
                notes = f"cross-check stopped by budget at {a}"
                stop = True
                break
        if stop:
            break
        checked = weight
    return UFD(result.certificate, checked, notes=notes)


# -- membership and normal forms under a verified certificate ----------------

def algebra_membership(ideals: ExchangeIdeals, value: LaurentPolynomial,
                       certificate: SupportCertificate) -> bool:
    """Whether the Laurent value lies in the cluster algebra.

    Valid only under a verified certificate (which makes valuations detect
    membership exactly); without one, fall back to explicit Groebner
    product-ideal computations.
    """
    problems = certificate.verify(ideals.matrix, ideals)
    if problems:
        raise ValueError(
            f"certificate does not verify ({problems[0]}); use the "
            f"Groebner product-ideal membership test instead")
    if value.m != ideals.m:
        raise ValueError("value lives in the wrong ambient ring")
    if value.is_zero:
        return True
    for i in range(1, ideals.n + 1):
        needed = value.den[i - 1]
        if needed and not ideals.power_membership(value.num, i, needed):
            return False
    return True


@dataclass(frozen=True)
class NormalFormResult:
    """An irreducible element's canonical Laurent form P / M(P)."""

    value: LaurentPolynomial
    normal_monomial: tuple[int, ...]
    irreducibility: str  # "irreducible" | "reducible" | "unverified"


def normal_form_element(ideals: ExchangeIdeals, p: Polynomial,
                        certificate: SupportCertificate,
                        factor_bound: int = 12) -> NormalFormResult:
    """P / M(P) for a unit-normalized polynomial not divisible by any variable."""
    problems = certificate.verify(ideals.matrix, ideals)
    if problems:
        raise ValueError(f"certificate does not verify ({problems[0]})")
    if p.is_zero or p.total_degree() < 1:
        raise ValueError("normal forms are defined for nonconstant polynomials")
    content = p.min_exponents()
    for pos, e in enumerate(content):
        if e:
            raise ValueError(
                f"x{pos + 1} divides the input; strip monomial factors first")
    _, lc = p.leading(grevlex_order(p.m))
    normalized = p * (p.field.one() / lc)
    monomial = ideals.normal_monomial(normalized)
    value = LaurentPolynomial(normalized, monomial)
    verdict = binomial_irreducible(normalized)
    if verdict is True:
        status = "irreducible"
    elif verdict is False:
        status = "reducible"
    else:
        search = brute_force_factor(normalized, factor_bound)
        if search.factors is not None:
            status = "reducible"
        elif search.exhausted:
            status = "irreducible"
        else:
            status = "unverified"
    return NormalFormResult(value, monomial, status)
