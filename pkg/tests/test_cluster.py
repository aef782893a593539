"""Exchange matrices, seed mutation, enumeration, structure analysis.

Frozen counts below have two independent confirmations: variable counts
equal (number of positive roots) + n for the finite types, and seed counts
match the generalized Catalan numbers (A3: 14, A4: 42, D4: 50, D5: 182).
"""
from __future__ import annotations

import json
import random

import pytest

from conftest import random_skew_symmetrizable
from clusterufd.fields import FieldTag
from clusterufd.parse import parse_expression
from clusterufd.poly import LaurentPolynomial, Polynomial, render_laurent
from clusterufd.cluster import (
    ExchangeMatrix,
    Seed,
    builtin_matrix,
    builtin_seed,
    cyclic_a3_matrix,
    d_matrix,
    e_matrix,
    enumerate_cluster_variables,
    exchange_polynomial,
    find_skew_symmetrizer,
    hypersurface_relation,
    hypersurface_relation_check,
    kronecker_matrix,
    linear_a_matrix,
    load_seed_file,
    rank2_matrix,
    seed_from_dict,
    structure_report,
    verify_laurent_property,
)

Q = FieldTag.Q


def L(text: str, m: int = 2) -> LaurentPolynomial:
    return parse_expression(text, m, Q)


class TestSkewSymmetrizer:
    def test_skew_symmetric_gets_ones(self):
        d, refutation = find_skew_symmetrizer([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
        assert refutation is None and d == (1, 1, 1)

    def test_type_b_weights(self):
        d, refutation = find_skew_symmetrizer([[0, 1], [-2, 0]])
        assert refutation is None and d == (2, 1)

    def test_zero_matrix(self):
        d, refutation = find_skew_symmetrizer([[0, 0], [0, 0]])
        assert refutation is None and d == (1, 1)

    def test_sign_violation_refuted(self):
        d, refutation = find_skew_symmetrizer([[0, 1], [1, 0]])
        assert d is None and refutation is not None

    def test_cycle_inconsistency_refuted(self):
        # Tree edges force d = (2, 1, 2) but the back edge 2-3 needs
        # d2*b23 = -d3*b32, i.e. 1 = -2*(-1) = 2.  No symmetrizer exists.
        d, refutation = find_skew_symmetrizer(
            [[0, 1, -1], [-2, 0, 1], [1, -1, 0]])
        assert d is None and refutation is not None

    def test_components_scaled_independently(self):
        d, refutation = find_skew_symmetrizer(
            [[0, 1, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 3], [0, 0, -1, 0]])
        assert refutation is None and d == (2, 1, 1, 3)

    def test_minimality(self):
        d, _ = find_skew_symmetrizer([[0, 2], [-2, 0]])
        assert d == (1, 1)


class TestExchangeMatrix:
    def test_validation(self):
        with pytest.raises(ValueError):
            ExchangeMatrix([])
        with pytest.raises(ValueError):
            ExchangeMatrix([[0, 1]])                    # more columns than rows
        with pytest.raises(ValueError):
            ExchangeMatrix([[0, 1], [1, 0]])            # not skew-symmetrizable
        with pytest.raises(ValueError) as err:
            ExchangeMatrix([[0, True], [-1, 0]])
        assert "matrix[0][1]" in str(err.value)
        with pytest.raises(ValueError):
            ExchangeMatrix([[0, 1], [-1]])

    def test_accessors(self):
        mat = ExchangeMatrix([[0, 1], [-1, 0], [2, -3]])
        assert (mat.n, mat.m) == (2, 3)
        assert mat.entry(3, 1) == 2
        assert mat.column(2) == (1, 0, -3)
        assert mat.principal() == ((0, 1), (-1, 0))

    def test_mutation_example_interior(self):
        # A3, mutating the middle vertex turns the path into a 3-cycle.
        assert linear_a_matrix(3).mutate(2).rows \
            == ((0, -1, 1), (1, 0, -1), (-1, 1, 0))

    def test_mutation_example_rank2(self):
        assert kronecker_matrix().mutate(1).rows == ((0, -2), (2, 0))

    def test_mutation_updates_frozen_rows(self):
        mat = ExchangeMatrix([[0, 1], [-1, 0], [1, 0]])
        assert mat.mutate(1).rows == ((0, -1), (1, 0), (-1, 1))

    def test_mutation_index_range(self):
        with pytest.raises(ValueError):
            linear_a_matrix(2).mutate(0)
        with pytest.raises(ValueError):
            linear_a_matrix(2).mutate(3)    # frozen rows are not mutable

    def test_mutation_is_involution(self):
        rng = random.Random(97)
        for _ in range(100):
            n = rng.randint(1, 5)
            mat = ExchangeMatrix(
                random_skew_symmetrizable(rng, n, frozen=rng.randint(0, 2)))
            k = rng.randint(1, n)
            assert mat.mutate(k).mutate(k) == mat

    def test_mutation_preserves_symmetrizer(self):
        # For a connected principal part the minimal symmetrizer is unique,
        # and matrix mutation must not change it.
        for name in ("A:3", "rank2:1,2", "rank2:2,3", "D:4"):
            mat = builtin_matrix(name)
            d0 = structure_report(mat).skew_symmetrizer
            rng = random.Random(101)
            for _ in range(20):
                mat = mat.mutate(rng.randint(1, mat.n))
                assert structure_report(mat).skew_symmetrizer == d0

    def test_mutation_preserves_connectivity(self):
        rng = random.Random(103)
        for _ in range(50):
            mat = ExchangeMatrix(random_skew_symmetrizable(rng, 4))
            connected = structure_report(mat).connected
            for _ in range(6):
                mat = mat.mutate(rng.randint(1, 4))
                assert structure_report(mat).connected == connected


class TestExchangePolynomials:
    def test_path_quiver(self):
        mat = linear_a_matrix(3)
        assert str(exchange_polynomial(mat, 1, Q)) == "x2 + 1"
        assert str(exchange_polynomial(mat, 2, Q)) == "x1 + x3"
        assert str(exchange_polynomial(mat, 3, Q)) == "x2 + 1"

    def test_isolated_vertex(self):
        assert str(exchange_polynomial(linear_a_matrix(1), 1, Q)) == "2"

    def test_rank2_weights(self):
        mat = rank2_matrix(2, 3)
        assert str(exchange_polynomial(mat, 1, Q)) == "x2^3 + 1"
        assert str(exchange_polynomial(mat, 2, Q)) == "x1^2 + 1"

    def test_branch_vertex(self):
        assert str(exchange_polynomial(e_matrix(6), 3, Q)) == "x2*x5 + x4"

    def test_frozen_rows_contribute(self):
        mat = ExchangeMatrix([[0, 1], [-1, 0], [1, 0]])
        assert str(exchange_polynomial(mat, 1, Q)) == "x2 + x3"

    def test_always_a_unit_binomial(self):
        rng = random.Random(107)
        for _ in range(40):
            mat = ExchangeMatrix(
                random_skew_symmetrizable(rng, 3, frozen=rng.randint(0, 2)))
            for j in range(1, 4):
                f = exchange_polynomial(mat, j, Q)
                assert f.degree_in(j) == 0
                if not any(mat.column(j)):
                    assert f == 2 * Polynomial.one(mat.m, Q)
                    continue
                assert len(f.terms) == 2
                assert all(c == 1 for c in f.terms.values())
                supports = [
                    {p for p, e in enumerate(exp) if e} for exp in f.terms]
                assert supports[0].isdisjoint(supports[1])


class TestSeedMutation:
    def test_short_type_a_chain(self):
        seed = builtin_seed("A:2")
        s1 = seed.mutate(1)
        assert render_laurent(s1.cluster[0]) == "(x2 + 1)/x1"
        s12 = s1.mutate(2)
        assert render_laurent(s12.cluster[1]) == "(x1 + x2 + 1)/(x1*x2)"
        assert s12.history == (1, 2)

    def test_pentagon_periodicity(self):
        seed = builtin_seed("A:2")
        s5 = seed.mutate_sequence([1, 2, 1, 2, 1])
        assert [render_laurent(v) for v in s5.cluster] == ["x2", "x1"]
        assert s5.matrix.rows == ((0, -1), (1, 0))
        s10 = s5.mutate_sequence([2, 1, 2, 1, 2])
        assert s10.cluster == seed.cluster and s10.matrix == seed.matrix

    def test_sequence_applies_left_to_right(self):
        seed = builtin_seed("A:3")
        assert seed.mutate_sequence([1, 2]).cluster \
            == seed.mutate(1).mutate(2).cluster

    def test_involution_on_seeds(self):
        seed = builtin_seed("D:4")
        rng = random.Random(109)
        for _ in range(8):
            prefix = [rng.randint(1, 4) for _ in range(rng.randint(0, 4))]
            s = seed.mutate_sequence(prefix)
            k = rng.randint(1, 4)
            back = s.mutate(k).mutate(k)
            assert back.cluster == s.cluster and back.matrix == s.matrix

    def test_frozen_variables_stay_in_numerators(self):
        seed = Seed.initial(ExchangeMatrix([[0, 1], [-1, 0], [1, 1]]))
        s1 = seed.mutate(1)
        assert render_laurent(s1.cluster[0]) == "(x2 + x3)/x1"
        assert s1.cluster[2] == LaurentPolynomial.variable(3, 3, Q)
        with pytest.raises(ValueError):
            seed.mutate(3)

    def test_laurent_phenomenon_randomized(self):
        rng = random.Random(113)
        for name in ("A:3", "D:4"):
            seed = builtin_seed(name)
            for _ in range(12):
                length = rng.randint(1, 7)
                s = seed.mutate_sequence(
                    rng.randint(1, seed.matrix.n) for _ in range(length))
                for entry in s.cluster:
                    for coeff in entry.num.terms.values():
                        assert Q.is_integer_scalar(coeff)

    def test_dedup_key_ignores_order(self):
        # After five alternating flips the cluster is (x2, x1): a different
        # seed object carrying the same unordered cluster.
        seed = builtin_seed("A:2")
        s5 = seed.mutate_sequence([1, 2, 1, 2, 1])
        assert s5.cluster != seed.cluster
        assert s5.dedup_key() == seed.dedup_key()


class TestStructure:
    def test_path_report(self):
        report = structure_report(linear_a_matrix(3))
        assert report.sources == (1,)
        assert report.sinks == (3,)
        assert report.acyclic and report.connected
        assert report.skew_symmetrizer == (1, 1, 1)
        assert report.neighbors == ((2,), (1, 3), (2,))

    def test_cycle_not_acyclic(self):
        report = structure_report(cyclic_a3_matrix())
        assert not report.acyclic
        assert report.sources == () and report.sinks == ()

    def test_branching_types(self):
        report = structure_report(e_matrix(6))
        assert report.sources == (1, 6)
        assert report.sinks == (4,)
        report = structure_report(d_matrix(4))
        assert set(report.neighbors[1]) == {1, 3, 4}

    def test_frozen_rows_can_block_source_status(self):
        # Vertex 1 has only outgoing arrows among mutable vertices but an
        # incoming arrow from the frozen vertex 3, so it is neither a source
        # nor a sink under the full-column convention.
        report = structure_report(ExchangeMatrix([[0, 1], [-1, 0], [1, 0]]))
        assert report.sources == ()
        assert report.sinks == (2,)

    def test_disconnected(self):
        report = structure_report(
            ExchangeMatrix([[0, 0], [0, 0]]))
        assert not report.connected


class TestEnumeration:
    @pytest.mark.parametrize("name,variables,seeds", [
        ("A:2", 5, 5),
        ("A:3", 9, 14),
        ("A:4", 14, 42),
        ("D:4", 16, 50),
        ("D:5", 25, 182),
    ])
    def test_finite_type_counts(self, name, variables, seeds):
        result = enumerate_cluster_variables(builtin_seed(name))
        assert result.complete
        assert result.count == variables
        assert result.seeds_seen == seeds

    def test_rank1(self):
        result = enumerate_cluster_variables(builtin_seed("A:1"))
        assert result.complete and result.count == 2

    def test_infinite_type_hits_budget(self):
        result = enumerate_cluster_variables(builtin_seed("kronecker"),
                                             max_seeds=25)
        assert not result.complete
        assert result.seeds_seen >= 25
        assert result.count > 10

    def test_strategies_agree(self):
        bfs = enumerate_cluster_variables(builtin_seed("A:3"), strategy="bfs")
        dfs = enumerate_cluster_variables(builtin_seed("A:3"), strategy="dfs")
        assert set(bfs.variables) == set(dfs.variables)
        with pytest.raises(ValueError):
            enumerate_cluster_variables(builtin_seed("A:2"), strategy="random")

    def test_deterministic(self):
        a = enumerate_cluster_variables(builtin_seed("A:3"))
        b = enumerate_cluster_variables(builtin_seed("A:3"))
        assert a.variables == b.variables

    def test_variables_sorted_by_rendering(self):
        result = enumerate_cluster_variables(builtin_seed("A:2"))
        rendered = [render_laurent(v) for v in result.variables]
        assert rendered == sorted(rendered)

    def test_laurent_verification_clean(self):
        result, problems = verify_laurent_property(builtin_seed("A:3"))
        assert result.complete and problems == []


class TestBuiltins:
    def test_names(self):
        assert builtin_matrix("A:4").rows == linear_a_matrix(4).rows
        assert builtin_matrix("D:5").rows == d_matrix(5).rows
        assert builtin_matrix("E:7").rows == e_matrix(7).rows
        assert builtin_matrix("rank2:2,3").rows == rank2_matrix(2, 3).rows
        assert builtin_matrix("kronecker").rows == ((0, 2), (-2, 0))
        assert builtin_matrix("cyclicA3").rows \
            == ((0, 1, -1), (-1, 0, 1), (1, -1, 0))

    @pytest.mark.parametrize("bad", [
        "A:0", "D:3", "E:9", "E:5", "rank2:1", "rank2:0,1", "rank2:-1,2",
        "foo", "A:x", "A", ""])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            builtin_matrix(bad)

    def test_families_are_acyclic_and_connected(self):
        for name in ("A:1", "A:6", "D:4", "D:6", "E:6", "E:7", "E:8",
                     "rank2:3,1", "kronecker"):
            report = structure_report(builtin_matrix(name))
            assert report.connected and report.acyclic, name


class TestSeedFiles:
    def good(self):
        return {"n": 2, "m": 3, "matrix": [[0, 1], [-1, 0], [1, 0]],
                "field": "Q"}

    def test_roundtrip(self, tmp_path):
        path = tmp_path / "seed.json"
        path.write_text(json.dumps(self.good()))
        seed = load_seed_file(str(path))
        assert seed.matrix.rows == ((0, 1), (-1, 0), (1, 0))
        assert seed.field is Q

    def test_field_defaults_to_q(self):
        data = self.good()
        del data["field"]
        assert seed_from_dict(data).field is Q

    def test_field_override_must_match(self):
        with pytest.raises(ValueError):
            seed_from_dict(self.good(), field_override=FieldTag.QI)
        assert seed_from_dict(self.good(), field_override=Q).field is Q

    def test_error_names_entry(self):
        data = self.good()
        data["matrix"][2][1] = "x"
        with pytest.raises(ValueError) as err:
            seed_from_dict(data)
        assert "matrix[2][1]" in str(err.value)

    @pytest.mark.parametrize("mutate", [
        lambda d: d.pop("n"),
        lambda d: d.update(n="2"),
        lambda d: d.update(m=1),
        lambda d: d.update(matrix=[[0, 1], [-1, 0]]),
        lambda d: d.update(matrix=[[0, 1], [-1, 0], [1]]),
        lambda d: d.update(field="R"),
        lambda d: d.update(extra=1),
    ])
    def test_malformed_rejected(self, mutate):
        data = self.good()
        mutate(data)
        with pytest.raises(ValueError):
            seed_from_dict(data)

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(ValueError):
            load_seed_file(str(tmp_path / "missing.json"))
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        with pytest.raises(ValueError):
            load_seed_file(str(bad))


class TestHypersurface:
    def test_small_cases_vanish(self):
        for n in (2, 3, 4):
            assert hypersurface_relation_check(n)

    def test_rank2_shape(self):
        rel = hypersurface_relation(2)
        assert str(rel) == "x1*x2*x3 - x1 - x3 - 1"

    def test_recursion_consistency(self):
        # P_k = y_k P_{k-1} + y_k - P_{k-2} - 2 with matching variable counts.
        r4 = hypersurface_relation(4)
        assert r4.m == 5
        assert r4.total_degree() == 5

    def test_too_small(self):
        with pytest.raises(ValueError):
            hypersurface_relation(1)
