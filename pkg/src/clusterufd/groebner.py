"""Groebner bases via Buchberger's algorithm, with ideal operations.

The kernel is deliberately plain: normal selection strategy (smallest lcm
degree first), the coprime-leading-term and chain criteria, full tail
reduction, and reduced monic output sorted by descending leading term, so
identical inputs always produce identical bases.  A work budget bounds the
number of S-pair reductions and the basis size; exceeding it raises
``BudgetExceeded`` rather than silently truncating.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Optional, Sequence

from .fields import FieldTag
from .poly import (MonomialOrder, Polynomial, elimination_order, ev_add,
                   ev_divides, ev_max, ev_sub, grevlex_order)


class BudgetExceeded(Exception):
    """Raised when a Groebner computation exceeds its work budget."""

    def __init__(self, reductions: int, basis_size: int):
        super().__init__(
            f"Groebner budget exceeded: {reductions} pair reductions, "
            f"basis size {basis_size}")
        self.reductions = reductions
        self.basis_size = basis_size


@dataclass(frozen=True)
class GroebnerBudget:
    """Work limits for a single Buchberger run."""

    max_reductions: int = 1_000_000
    max_basis: int = 10_000


DEFAULT_BUDGET = GroebnerBudget()


class _Work:
    """Mutable budget accounting shared across one computation."""

    def __init__(self, budget: GroebnerBudget):
        self.budget = budget
        self.reductions = 0

    def spend_reduction(self, basis_size: int):
        self.reductions += 1
        if (self.reductions > self.budget.max_reductions
                or basis_size > self.budget.max_basis):
            raise BudgetExceeded(self.reductions, basis_size)


def _reduce_full(terms: dict, reducers: Sequence[tuple], order: MonomialOrder) -> dict:
    """Fully reduce a term dict modulo reducers [(lt_exp, lt_coeff, terms)]."""
    key = order.key
    rem = dict(terms)
    out: dict = {}
    while rem:
        exp = max(rem, key=key)
        coeff = rem.pop(exp)
        for lt_exp, lt_coeff, g_terms in reducers:
            if ev_divides(lt_exp, exp):
                shift = ev_sub(exp, lt_exp)
                factor = coeff / lt_coeff
                for e2, c2 in g_terms.items():
                    if e2 == lt_exp:
                        continue
                    tgt = ev_add(shift, e2)
                    if tgt in rem:
                        s = rem[tgt] - factor * c2
                        if s:
                            rem[tgt] = s
                        else:
                            del rem[tgt]
                    else:
                        rem[tgt] = -factor * c2
                break
        else:
            out[exp] = coeff
    return out


def _prep(polys: Sequence[Polynomial], order: MonomialOrder) -> list[tuple]:
    reducers = []
    for g in polys:
        lt_exp, lt_coeff = g.leading(order)
        reducers.append((lt_exp, lt_coeff, g.terms))
    return reducers


def normal_form(p: Polynomial, basis: "GroebnerBasis") -> Polynomial:
    """The fully reduced remainder of p modulo the basis (unique when reduced)."""
    if p.is_zero:
        return p
    out = _reduce_full(p.terms, _prep(basis.polys, basis.order), basis.order)
    return Polynomial._raw(p.m, p.field, out)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    f_exp, f_coeff = f.leading(order)
    g_exp, g_coeff = g.leading(order)
    lcm = ev_max(f_exp, g_exp)
    mf = Polynomial.monomial(f.field.one() / f_coeff, ev_sub(lcm, f_exp), f.m, f.field)
    mg = Polynomial.monomial(g.field.one() / g_coeff, ev_sub(lcm, g_exp), g.m, g.field)
    return mf * f - mg * g


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder,
               budget: GroebnerBudget = DEFAULT_BUDGET) -> "GroebnerBasis":
    """Reduced Groebner basis of the given generators under ``order``."""
    work = _Work(budget)
    field = generators[0].field
    m = generators[0].m
    key = order.key

    basis: list[Polynomial] = []
    lead: list[tuple] = []  # (lt_exp, lt_coeff)
    seen = set()
    for g in generators:
        if g.is_zero:
            continue
        lt_exp, lt_coeff = g.leading(order)
        g = g * (field.one() / lt_coeff)
        if g not in seen:
            seen.add(g)
            basis.append(g)
            lead.append(g.leading(order))

    if not basis:
        raise ValueError("cannot compute a basis for the zero ideal")

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def lcm_of(i, j):
        return ev_max(lead[i][0], lead[j][0])

    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(lcm_of(*ij)), ij))
        pairs.discard((i, j))
        lcm = lcm_of(i, j)
        # coprime leading terms: S-polynomial reduces to zero
        if all(min(a, b) == 0 for a, b in zip(lead[i][0], lead[j][0])):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (ev_divides(lead[k][0], lcm)
                    and (min(i, k), max(i, k)) not in pairs
                    and (min(j, k), max(j, k)) not in pairs):
                skip = True
                break
        if skip:
            continue
        work.spend_reduction(len(basis))
        s = s_polynomial(basis[i], basis[j], order)
        if s.is_zero:
            continue
        reduced = _reduce_full(s.terms, _prep(basis, order), order)
        if not reduced:
            continue
        h = Polynomial._raw(m, field, reduced)
        lt_exp, lt_coeff = h.leading(order)
        h = h * (field.one() / lt_coeff)
        new_index = len(basis)
        basis.append(h)
        lead.append(h.leading(order))
        for k in range(new_index):
            pairs.add((k, new_index))

    # minimalize: drop elements whose leading term another one divides
    keep = []
    for i, g in enumerate(basis):
        lt = lead[i][0]
        if any(ev_divides(lead[j][0], lt) for j in keep if j != i):
            continue
        keep = [j for j in keep if not ev_divides(lt, lead[j][0])]
        keep.append(i)
    minimal = [basis[i] for i in keep]

    # inter-reduce tails
    reduced_basis = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        terms = _reduce_full(g.terms, _prep(others, order), order) if others else dict(g.terms)
        reduced_basis.append(Polynomial._raw(m, field, terms))
    reduced_basis.sort(key=lambda g: key(g.leading(order)[0]), reverse=True)
    return GroebnerBasis(tuple(reduced_basis), order)


class GroebnerBasis:
    """A reduced, monic Groebner basis together with its monomial order."""

    __slots__ = ("polys", "order")

    def __init__(self, polys: tuple[Polynomial, ...], order: MonomialOrder):
        self.polys = polys
        self.order = order

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].total_degree() == 0

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.polys) + "}"


def _canonical_gen_sort(gens: Iterable[Polynomial]) -> tuple[Polynomial, ...]:
    order = None
    gens = list(gens)
    if gens:
        order = grevlex_order(gens[0].m)
        gens.sort(key=lambda g: (g.total_degree(),
                                 sorted(order.key(e) for e in g.terms)))
    return tuple(gens)


class Ideal:
    """An ideal of K[x1..xm] given by nonzero generators.

    Groebner bases are cached write-once per monomial order, so repeated
    membership tests against the same ideal reuse one computation.
    """

    __slots__ = ("generators", "m", "field", "_gb_cache")

    def __init__(self, generators: Iterable[Polynomial]):
        gens = [g for g in generators]
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        for g in gens:
            if g.is_zero:
                raise ValueError("zero generators are not allowed")
        m = gens[0].m
        field = gens[0].field
        for g in gens:
            if g.m != m or g.field is not field:
                raise ValueError("generators live in different ambient rings")
        seen = set()
        unique = []
        for g in gens:
            if g not in seen:
                seen.add(g)
                unique.append(g)
        self.generators = _canonical_gen_sort(unique)
        self.m = m
        self.field = field
        self._gb_cache: dict[MonomialOrder, GroebnerBasis] = {}

    def groebner_basis(self, order: Optional[MonomialOrder] = None,
                       budget: GroebnerBudget = DEFAULT_BUDGET) -> GroebnerBasis:
        if order is None:
            order = grevlex_order(self.m)
        cached = self._gb_cache.get(order)
        if cached is None:
            cached = buchberger(self.generators, order, budget)
            self._gb_cache[order] = cached
        return cached

    def _attach_basis(self, basis: GroebnerBasis):
        self._gb_cache.setdefault(basis.order, basis)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def ideal_membership(p: Polynomial, ideal: Ideal,
                     order: Optional[MonomialOrder] = None,
                     budget: GroebnerBudget = DEFAULT_BUDGET) -> bool:
    """Whether p lies in the ideal, by reduction to zero."""
    if p.is_zero:
        return True
    return normal_form(p, ideal.groebner_basis(order, budget)).is_zero


def _lift(p: Polynomial, t_degree: int, m2: int, field: FieldTag) -> Polynomial:
    terms = {exp + (t_degree,): c for exp, c in p.terms.items()}
    return Polynomial._raw(m2, field, terms)


def ideal_intersection(left: Ideal, right: Ideal,
                       budget: GroebnerBudget = DEFAULT_BUDGET) -> Ideal:
    """I ∩ J by elimination: t·I + (1-t)·J with t eliminated.

    The surviving t-free basis elements form a reduced grevlex basis of the
    intersection, which is cached on the returned ideal.
    """
    if left.m != right.m or left.field is not right.field:
        raise ValueError("ideals live in different ambient rings")
    m = left.m
    field = left.field
    m2 = m + 1
    t_pos = m  # 0-based position of the eliminated variable
    gens = [_lift(g, 1, m2, field) for g in left.generators]
    one_minus_t = Polynomial(m2, field, {(0,) * m2: 1, (0,) * m + (1,): -1})
    for h in right.generators:
        gens.append(_lift(h, 0, m2, field) * one_minus_t)
    order = elimination_order(m2, block=1,
                              permutation=(t_pos,) + tuple(range(m)))
    basis = buchberger(gens, order, budget)
    projected = []
    for g in basis:
        if all(exp[t_pos] == 0 for exp in g.terms):
            projected.append(Polynomial._raw(
                m, field, {exp[:m]: c for exp, c in g.terms.items()}))
    if not projected:
        raise ValueError("intersection of nonzero ideals lost all generators")
    result = Ideal(projected)
    inner = grevlex_order(m)
    projected.sort(key=lambda g: inner.key(g.leading(inner)[0]), reverse=True)
    result._attach_basis(GroebnerBasis(tuple(projected), inner))
    return result


def ideal_intersection_many(ideals: Sequence[Ideal],
                            budget: GroebnerBudget = DEFAULT_BUDGET) -> Ideal:
    """Iterated pairwise intersection, left to right."""
    if not ideals:
        raise ValueError("need at least one ideal")
    acc = ideals[0]
    for nxt in ideals[1:]:
        acc = ideal_intersection(acc, nxt, budget)
    return acc


def ideal_product(left: Ideal, right: Ideal) -> Ideal:
    """The product ideal, generated by all pairwise generator products."""
    if left.m != right.m or left.field is not right.field:
        raise ValueError("ideals live in different ambient rings")
    return Ideal(g * h for g in left.generators for h in right.generators)


def ideal_power(ideal: Ideal, k: int) -> Ideal:
    """I^k; by convention I^0 is the unit ideal."""
    if k < 0:
        raise ValueError("ideal powers take non-negative exponents")
    if k == 0:
        return Ideal([Polynomial.one(ideal.m, ideal.field)])
    gens = []
    for combo in combinations_with_replacement(ideal.generators, k):
        g = combo[0]
        for h in combo[1:]:
            g = g * h
        gens.append(g)
    return Ideal(gens)


def ideal_equal(left: Ideal, right: Ideal,
                budget: GroebnerBudget = DEFAULT_BUDGET) -> bool:
    """Mutual containment via normal forms."""
    right_basis = right.groebner_basis(budget=budget)
    if not all(normal_form(g, right_basis).is_zero for g in left.generators):
        return False
    left_basis = left.groebner_basis(budget=budget)
    return all(normal_form(h, left_basis).is_zero for h in right.generators)


def is_unit_ideal(ideal: Ideal, budget: GroebnerBudget = DEFAULT_BUDGET) -> bool:
    """Whether the ideal is all of the ring (reduced basis {1})."""
    return ideal.groebner_basis(budget=budget).is_unit()
