"""Power membership, irreducibility, certificates, and the verdict pipeline."""
from __future__ import annotations

import random

import pytest

from conftest import random_polynomial
from clusterufd.cluster import ExchangeMatrix, builtin_matrix
from clusterufd.fields import FieldTag
from clusterufd.groebner import GroebnerBudget, ideal_membership, normal_form
from clusterufd.parse import parse_expression, parse_polynomial
from clusterufd.poly import Polynomial
from clusterufd.factoriality import (
    CoincidentExchangePolynomials,
    ConjectureOutcome,
    ExchangeIdeals,
    FreeIndex,
    FreeVariable,
    Inconclusive,
    NotUFD,
    ReducibleExchangePolynomial,
    SinkSourceSplit,
    SupportCertificate,
    UFD,
    algebra_membership,
    binomial_irreducible,
    binomial_witness_factors,
    brute_force_factor,
    check_assumptions,
    conjecture_check,
    necessary_conditions,
    inductive_prover,
    multi_indices_of_weight,
    normal_form_element,
    power_membership_linear,
    ufd_verdict,
)

Q = FieldTag.Q
QI = FieldTag.QI

STUCK_ROWS = [[0, 2, 0, 0], [-2, 0, 2, 0], [0, -2, 0, 2], [0, 0, -2, 0]]


def ideals_for(name: str, field: FieldTag = Q) -> ExchangeIdeals:
    return ExchangeIdeals(builtin_matrix(name), field)


def P(text: str, m: int, field: FieldTag = Q) -> Polynomial:
    return parse_polynomial(text, m, field)


# -- membership in powers of exchange ideals ---------------------------------

class TestPowerMembership:
    def test_rank2_valuations(self):
        ideals = ideals_for("A:2")
        x1 = P("x1", 2)
        f1 = P("1 + x2", 2)
        assert ideals.valuation(x1, 1) == 1
        assert ideals.valuation(f1, 1) == 1
        assert ideals.valuation(x1 * f1 ** 2, 1) == 3
        assert ideals.valuation(f1, 2) == 0
        assert ideals.normal_monomial(P("1 + x1 + x2", 2)) == (1, 1)

    def test_coincident_f_has_two_valuations(self):
        # On the path with three vertices f_1 = f_3 = x2 + 1, so that single
        # polynomial lies in both end ideals at once.
        ideals = ideals_for("A:3")
        assert ideals.normal_monomial(P("1 + x2", 3)) == (1, 0, 1)
        assert ideals.normal_monomial(P("x1 + x3", 3)) == (0, 1, 0)

    def test_trivial_cases(self):
        ideals = ideals_for("A:2")
        assert ideals.power_membership(P("x1", 2), 1, 0)
        assert ideals.power_membership(Polynomial.zero(2, Q), 1, 5)
        with pytest.raises(ValueError):
            ideals.power_membership(P("x1", 2), 1, -1)
        with pytest.raises(ValueError):
            ideals.power_membership(P("x1", 2), 3, 1)
        with pytest.raises(ValueError):
            ideals.valuation(Polynomial.zero(2, Q), 1)

    def test_valuation_additive_on_examples(self):
        ideals = ideals_for("A:2")
        p = P("x1 + x1*x2", 2)        # x1(1 + x2): valuation 2 at i = 1
        q = P("1 + x1 + x2", 2)
        assert ideals.valuation(p, 1) == 2
        assert ideals.valuation(p * q, 1) \
            == ideals.valuation(p, 1) + ideals.valuation(q, 1)

    def test_agrees_with_groebner_membership(self):
        rng = random.Random(127)
        for name in ("A:2", "A:3"):
            ideals = ideals_for(name)
            for _ in range(40):
                p = random_polynomial(rng, ideals.m, Q, max_terms=3, max_exp=2)
                i = rng.randint(1, ideals.n)
                a = rng.randint(1, 3)
                direct = ideals.power_membership(p, i, a)
                via_gb = p.is_zero or ideal_membership(p, ideals.power_ideal(i, a))
                assert direct == via_gb, (name, str(p), i, a)

    def test_agrees_with_linear_expansion(self):
        rng = random.Random(131)
        ideals = ideals_for("A:3")
        # f_2 = x1 + x3 exposes both linear variables as expansion pivots.
        for _ in range(40):
            p = random_polynomial(rng, 3, Q, max_terms=3, max_exp=2)
            a = rng.randint(1, 3)
            direct = ideals.power_membership(p, 2, a)
            for k in (1, 3):
                assert power_membership_linear(ideals, p, 2, a, k) == direct

    def test_linear_expansion_needs_linear_variable(self):
        ideals = ideals_for("rank2:2,3")
        with pytest.raises(ValueError):
            power_membership_linear(ideals, P("x1", 2), 1, 1, 2)

    def test_f_power_cached(self):
        ideals = ideals_for("A:2")
        assert ideals.f_power(1, 3) is ideals.f_power(1, 3)
        assert ideals.power_ideal(1, 2) is ideals.power_ideal(1, 2)

    def test_power_ideal_generators(self):
        ideals = ideals_for("A:2")
        gens = ideals.power_ideal(1, 2).generators
        assert set(map(str, gens)) \
            == {"x1^2", "x1*x2 + x1", "x2^2 + 2*x2 + 1"}


# -- irreducibility ----------------------------------------------------------

class TestBinomialCriterion:
    def test_small_cases(self):
        assert binomial_irreducible(P("x1 + x2", 2)) is True
        assert binomial_irreducible(P("1 + x2", 2)) is True
        assert binomial_irreducible(P("x1^2 + x2^2", 2)) is True
        assert binomial_irreducible(P("x1^3 + x2^3", 2)) is False
        assert binomial_irreducible(P("x1^4 + x2^4", 2)) is True
        assert binomial_irreducible(P("x1^6 + x2^10", 2)) is True

    def test_gaussian_rationals_differ(self):
        assert binomial_irreducible(P("x1^2 + x2^2", 2, QI)) is False
        assert binomial_irreducible(P("x1 + x2", 2, QI)) is True
        assert binomial_irreducible(P("1 + x2^2", 2, QI)) is False

    def test_shared_variable_reducible(self):
        assert binomial_irreducible(P("x1*x2 + x1", 2)) is False

    def test_non_binomials_give_no_answer(self):
        assert binomial_irreducible(P("x1 + x2 + 1", 2)) is None
        assert binomial_irreducible(P("2*x1 + x2", 2)) is None
        assert binomial_irreducible(P("x1", 2)) is None
        assert binomial_irreducible(P("x1 - x2", 2)) is None

    def test_witness_factors_multiply_back(self):
        for text, field in [
            ("x1^3 + x2^3", Q),
            ("x1^6 + x2^6", Q),
            ("x1*x2 + x1", Q),
            ("x1^2 + x2^2", QI),
            ("1 + x2^2", QI),
            ("x1^2*x2^2 + x3^4", QI),
        ]:
            f = P(text, 3, field)
            g, h = binomial_witness_factors(f)
            assert g * h == f
            assert g.total_degree() >= 1 and h.total_degree() >= 1

    def test_no_witness_for_irreducible(self):
        assert binomial_witness_factors(P("x1 + x2", 2)) is None
        assert binomial_witness_factors(P("x1^4 + x2^4", 2)) is None


class TestBruteForce:
    def test_cyclotomic_split(self):
        result = brute_force_factor(P("1 + x2^3", 2))
        assert [str(g) for g in result.factors] == ["x2 + 1", "x2^2 - x2 + 1"]
        assert result.exhausted

    def test_gaussian_split(self):
        result = brute_force_factor(P("1 + x2^2", 2, QI))
        g, h = result.factors
        assert g * h == P("1 + x2^2", 2, QI)

    def test_irreducible_input(self):
        result = brute_force_factor(P("1 + x1 + x2", 2))
        assert result.factors is None and result.exhausted

    def test_degree_cap(self):
        result = brute_force_factor(P("1 + x1 + x1^2*x2^13", 2), max_degree=12)
        assert result.factors is None and not result.exhausted

    def test_factors_are_verified_products(self):
        rng = random.Random(137)
        for _ in range(15):
            g = random_polynomial(rng, 2, Q, max_terms=3, max_exp=2, nonzero=True)
            h = random_polynomial(rng, 2, Q, max_terms=3, max_exp=2, nonzero=True)
            product = g * h
            if product.total_degree() < 2 or product.min_exponents() != (0, 0):
                continue
            result = brute_force_factor(product)
            if result.factors is not None:
                a, b = result.factors
                assert a * b == product


# -- necessary conditions ----------------------------------------------------

class TestNecessaryConditions:
    def test_path_with_three_vertices(self):
        witness = necessary_conditions(ideals_for("A:3"))
        assert isinstance(witness, CoincidentExchangePolynomials)
        assert (witness.i, witness.j) == (1, 3)
        assert str(witness.value) == "x2 + 1"

    def test_branching_coincidences(self):
        witness = necessary_conditions(ideals_for("D:4"))
        assert isinstance(witness, CoincidentExchangePolynomials)
        assert (witness.i, witness.j) == (1, 3)
        witness = necessary_conditions(ideals_for("D:5"))
        assert (witness.i, witness.j) == (4, 5)
        assert str(witness.value) == "x3 + 1"

    def test_reducible_over_gaussians(self):
        witness = necessary_conditions(ideals_for("kronecker", QI))
        assert isinstance(witness, ReducibleExchangePolynomial)
        assert witness.index == 1
        g, h = witness.factors
        assert g * h == P("1 + x2^2", 2, QI)

    def test_clean_cases(self):
        for name in ("A:2", "A:4", "E:6", "rank2:1,2", "kronecker"):
            assert necessary_conditions(ideals_for(name)) is None

    def test_rejects_tiny_and_degenerate(self):
        with pytest.raises(ValueError):
            necessary_conditions(ideals_for("A:1"))
        with pytest.raises(ValueError):
            necessary_conditions(
                ExchangeIdeals(ExchangeMatrix([[0, 0], [0, 0]])))

    def test_check_assumptions_messages(self):
        assert check_assumptions(ideals_for("A:2")) is None
        assert "cycle" in check_assumptions(ideals_for("cyclicA3"))
        assert "connected" in check_assumptions(
            ExchangeIdeals(ExchangeMatrix([[0, 0], [0, 0]])))
        assert "necessary" in check_assumptions(ideals_for("A:3"))


# -- the ideal-equality conjecture -------------------------------------------

class TestConjecture:
    def test_holds_on_small_type_a(self):
        ideals = ideals_for("A:2")
        for weight in (1, 2, 3):
            for a in multi_indices_of_weight(2, weight):
                outcome = conjecture_check(ideals, a)
                assert outcome.status == "holds", a

    def test_trivial_indices(self):
        ideals = ideals_for("A:2")
        assert conjecture_check(ideals, (0, 0)).status == "holds"
        assert conjecture_check(ideals, (3, 0)).status == "holds"

    def test_cycle_counterexample(self):
        ideals = ideals_for("cyclicA3")
        for a in ((1, 1, 0), (1, 1, 1)):
            outcome = conjecture_check(ideals, a, override_assumptions=True)
            assert outcome.status == "fails"
            assert str(outcome.witness) == "x1 + x2 + x3"

    def test_witness_is_honest(self):
        # Re-verify the counterexample without trusting conjecture_check:
        # the witness lies in each power yet misses the product ideal.
        ideals = ideals_for("cyclicA3")
        outcome = conjecture_check(ideals, (1, 1, 1), override_assumptions=True)
        w = outcome.witness
        for i in (1, 2, 3):
            assert ideals.power_membership(w, i, 1)
        from clusterufd.groebner import ideal_product
        product = ideal_product(
            ideal_product(ideals.ideal(1), ideals.ideal(2)), ideals.ideal(3))
        assert not ideal_membership(w, product)

    def test_assumption_gate(self):
        with pytest.raises(ValueError):
            conjecture_check(ideals_for("cyclicA3"), (1, 1, 1))
        with pytest.raises(ValueError):
            conjecture_check(ideals_for("A:3"), (1, 1, 1))

    def test_bad_multi_index(self):
        ideals = ideals_for("A:2")
        with pytest.raises(ValueError):
            conjecture_check(ideals, (1,))
        with pytest.raises(ValueError):
            conjecture_check(ideals, (1, -1))

    def test_budget_stops_politely(self):
        ideals = ideals_for("E:6")
        outcome = conjecture_check(ideals, (1, 1, 1, 1, 1, 1),
                                   budget=GroebnerBudget(max_reductions=10))
        assert outcome.status == "inconclusive"
        assert outcome.detail

    def test_multi_index_generator(self):
        indices = list(multi_indices_of_weight(3, 4))
        assert len(indices) == 15                       # C(6, 2)
        assert len(set(indices)) == 15
        assert all(sum(a) == 4 for a in indices)


# -- inductive certificates --------------------------------------------------

class TestCertificates:
    def test_path_certificate_complete(self):
        result = inductive_prover(ideals_for("A:4"))
        assert result.stuck_supports == ()
        assert len(result.certificate) == 15            # 2^4 - 1 supports
        assert result.certificate.verify(builtin_matrix("A:4")) == []

    def test_exceptional_types(self):
        for name, size in (("E:6", 63), ("E:7", 127)):
            result = inductive_prover(ideals_for(name))
            assert len(result.certificate) == size
            assert result.certificate.verify(builtin_matrix(name)) == []

    def test_single_vertex(self):
        result = inductive_prover(ideals_for("A:1"))
        assert len(result.certificate) == 1
        assert isinstance(result.certificate.entries[(1,)], FreeIndex)

    def test_weighted_chain_gets_stuck(self):
        result = inductive_prover(ExchangeIdeals(ExchangeMatrix(STUCK_ROWS)))
        assert result.certificate is None
        assert result.stuck_supports == ((2, 3),)

    def test_deterministic(self):
        a = inductive_prover(ideals_for("A:4")).certificate.entries
        b = inductive_prover(ideals_for("A:4")).certificate.entries
        assert a == b

    def test_size_cap(self):
        rows = [[0] * 17 for _ in range(17)]
        with pytest.raises(ValueError):
            inductive_prover(ExchangeIdeals(ExchangeMatrix(rows)))

    def test_justification_side_conditions(self):
        matrix = builtin_matrix("A:3")
        ideals = ExchangeIdeals(matrix)

        def holds(support, just):
            cert = {s: FreeIndex(s[0]) for s in all_supports(3)}
            cert[support] = just
            report = SupportCertificate(cert, 3).verify(matrix, ideals)
            return not any(str(support) in line for line in report)

        assert holds((1, 2), SinkSourceSplit(1, 2))
        assert not holds((1, 3), SinkSourceSplit(1, 3))  # 3 not adjacent to 1
        assert holds((1, 3), FreeIndex(1))
        assert not holds((1, 2), FreeIndex(1))           # 2 is a neighbor
        assert holds((2,), FreeVariable(2, 1))
        # The pivot variable may not itself lie in the support.
        assert not holds((1, 2), FreeVariable(2, 1))
        assert not holds((2,), FreeVariable(2, 2))

    def test_frozen_pivot_variable(self):
        matrix = ExchangeMatrix([[0, 1], [-1, 0], [1, 0]])
        ideals = ExchangeIdeals(matrix)
        cert = SupportCertificate({
            (1,): FreeVariable(1, 3),     # f_1 = x2 + x3, pivot frozen
            (2,): FreeIndex(2),
            (1, 2): FreeVariable(1, 3),
        }, 2)
        assert cert.verify(matrix, ideals) == []
        bad = SupportCertificate({
            (1,): FreeVariable(1, 3),
            (2,): FreeIndex(2),
            (1, 2): FreeVariable(1, 2),   # pivot x2 lies in the support
        }, 2)
        assert any("(1, 2)" in line for line in bad.verify(matrix, ideals))

    def test_tampering_detected(self):
        matrix = builtin_matrix("A:4")
        good = inductive_prover(ExchangeIdeals(matrix)).certificate
        entries = dict(good.entries)
        removed = dict(entries)
        del removed[(1, 2)]
        assert any("no justification" in line
                   for line in SupportCertificate(removed, 4).verify(matrix))
        extra = dict(entries)
        extra[(5,)] = FreeIndex(5)
        assert any("unexpected" in line
                   for line in SupportCertificate(extra, 4).verify(matrix))
        wrong = dict(entries)
        wrong[(1, 2)] = SinkSourceSplit(1, 3)
        assert any("does not hold" in line
                   for line in SupportCertificate(wrong, 4).verify(matrix))


def all_supports(n: int):
    from itertools import combinations
    out = []
    for size in range(1, n + 1):
        out.extend(combinations(range(1, n + 1), size))
    return out


# -- the full verdict --------------------------------------------------------

class TestVerdict:
    def test_unique_factorization_cases(self):
        for name in ("A:2", "A:4"):
            verdict = ufd_verdict(ideals_for(name), degree_bound=2)
            assert isinstance(verdict, UFD)
            assert verdict.cross_checked_bound == 2
            assert verdict.notes == ""

    def test_refuted_cases(self):
        verdict = ufd_verdict(ideals_for("A:3"))
        assert isinstance(verdict, NotUFD)
        assert isinstance(verdict.witness, CoincidentExchangePolynomials)
        verdict = ufd_verdict(ideals_for("kronecker", QI))
        assert isinstance(verdict, NotUFD)
        assert isinstance(verdict.witness, ReducibleExchangePolynomial)

    def test_cycle_is_inconclusive_with_probed_bound(self):
        verdict = ufd_verdict(ideals_for("cyclicA3"))
        assert isinstance(verdict, Inconclusive)
        assert "cycle" in verdict.reason
        # Equality fails first at weight 2, so only weight 1 verifies.
        assert verdict.verified_bound == 1
        assert "fails at" in verdict.reason

    def test_stuck_chain_is_inconclusive(self):
        verdict = ufd_verdict(ExchangeIdeals(ExchangeMatrix(STUCK_ROWS)),
                              degree_bound=2)
        assert isinstance(verdict, Inconclusive)
        assert verdict.stuck_supports == ((2, 3),)
        assert verdict.verified_bound == 2

    def test_budget_shortens_cross_check_but_keeps_verdict(self):
        verdict = ufd_verdict(ideals_for("A:4"), degree_bound=2,
                              budget=GroebnerBudget(max_reductions=3))
        assert isinstance(verdict, UFD)
        assert verdict.cross_checked_bound == 1
        assert "budget" in verdict.notes

    def test_input_gates(self):
        with pytest.raises(ValueError):
            ufd_verdict(ideals_for("A:1"))
        with pytest.raises(ValueError):
            ufd_verdict(ExchangeIdeals(ExchangeMatrix([[0, 0], [0, 0]])))


# -- membership and normal forms --------------------------------------------

@pytest.fixture(scope="module")
def a2():
    ideals = ideals_for("A:2")
    return ideals, inductive_prover(ideals).certificate


class TestAlgebraMembership:
    def test_members(self, a2):
        ideals, cert = a2
        for text in ("x1", "x2", "5", "0", "x1*x2",
                     "(1 + x2)/x1", "(1 + x1)/x2", "(1 + x1 + x2)/(x1*x2)"):
            value = parse_expression(text, 2, Q)
            assert algebra_membership(ideals, value, cert), text

    def test_non_members(self, a2):
        ideals, cert = a2
        for text in ("1/x1", "x2/x1", "(1 + x1)/x1", "(1 + x2)/x1^2"):
            value = parse_expression(text, 2, Q)
            assert not algebra_membership(ideals, value, cert), text

    def test_frozen_denominators_are_units(self):
        matrix = ExchangeMatrix([[0, 1], [-1, 0], [1, 1]])
        ideals = ExchangeIdeals(matrix)
        cert = inductive_prover(ideals).certificate
        assert cert is not None
        assert algebra_membership(ideals, parse_expression("1/x3", 3, Q), cert)
        assert algebra_membership(
            ideals, parse_expression("(x2 + x3)/x1", 3, Q), cert)
        assert not algebra_membership(
            ideals, parse_expression("x3/x1", 3, Q), cert)

    def test_bad_inputs(self, a2):
        ideals, cert = a2
        with pytest.raises(ValueError):
            algebra_membership(ideals, parse_expression("x1", 3, Q), cert)
        broken = SupportCertificate({(1,): FreeIndex(1)}, 2)
        with pytest.raises(ValueError):
            algebra_membership(ideals, parse_expression("x1", 2, Q), broken)


class TestNormalFormElement:
    def test_exchange_binomial(self, a2):
        ideals, cert = a2
        result = normal_form_element(ideals, P("1 + x2", 2), cert)
        assert str(result.value) == "(x2 + 1)/x1"
        assert result.normal_monomial == (1, 0)
        assert result.irreducibility == "irreducible"

    def test_last_cluster_variable(self, a2):
        ideals, cert = a2
        result = normal_form_element(ideals, P("1 + x1 + x2", 2), cert)
        assert str(result.value) == "(x1 + x2 + 1)/(x1*x2)"
        assert result.irreducibility == "irreducible"

    def test_scalar_normalization(self, a2):
        ideals, cert = a2
        doubled = normal_form_element(ideals, P("2 + 2*x2", 2), cert)
        plain = normal_form_element(ideals, P("1 + x2", 2), cert)
        assert doubled.value == plain.value

    def test_reducible_product(self, a2):
        ideals, cert = a2
        result = normal_form_element(
            ideals, P("1 + x1 + x2 + x1*x2", 2), cert)
        assert result.irreducibility == "reducible"
        assert result.normal_monomial == (1, 1)

    def test_unverified_beyond_bound(self, a2):
        ideals, cert = a2
        result = normal_form_element(
            ideals, P("1 + x1 + x1^2*x2^2", 2), cert, factor_bound=3)
        assert result.irreducibility == "unverified"

    def test_rejected_inputs(self, a2):
        ideals, cert = a2
        with pytest.raises(ValueError):
            normal_form_element(ideals, P("7", 2), cert)
        with pytest.raises(ValueError) as err:
            normal_form_element(ideals, P("x1 + x1*x2", 2), cert)
        assert "x1 divides" in str(err.value)
