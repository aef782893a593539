"""Seeds, exchange-matrix mutation and cluster-variable enumeration.

An extended exchange matrix has m rows and n <= m columns; indices 1..n are
mutable, n+1..m frozen.  The principal (top n x n) part must be
skew-symmetrizable.  Seeds carry one Laurent-polynomial entry per row and
mutate by the exchange relation; every entry a mutation produces is checked
to be Laurent with a denominator supported on mutable indices, and a
failure raises ``LaurentViolation`` since it can only mean a bug.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

from .fields import FieldTag
from .poly import (LaurentPolynomial, Polynomial, divide_exact, ev_add,
                   ev_sub)


class LaurentViolation(RuntimeError):
    """A mutated entry failed to be Laurent; indicates an internal bug."""


# -- skew-symmetrizability ---------------------------------------------------

def find_skew_symmetrizer(principal: Sequence[Sequence[int]]):
    """(D, None) with minimal positive integer diagonal, or (None, refutation).

    D satisfies d_i * b_ij == -d_j * b_ji for all i, j.  The search assigns
    ratios along a spanning forest of the nonzero pattern and then verifies
    every pair, so any inconsistency is caught and named.
    """
    n = len(principal)
    for i in range(n):
        if principal[i][i] != 0:
            return None, f"diagonal entry b[{i + 1}][{i + 1}] = {principal[i][i]} is nonzero"
    for i in range(n):
        for j in range(i + 1, n):
            bij, bji = principal[i][j], principal[j][i]
            if (bij == 0) != (bji == 0) or bij * bji > 0:
                return None, (f"entries b[{i + 1}][{j + 1}] = {bij} and "
                              f"b[{j + 1}][{i + 1}] = {bji} violate sign "
                              f"skew-symmetry")
    d: list[Optional[Fraction]] = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if principal[i][j] == 0 or d[j] is not None:
                    continue
                # d_i * |b_ij| == d_j * |b_ji|
                d[j] = d[i] * abs(principal[i][j]) / abs(principal[j][i])
                queue.append(j)
    for i in range(n):
        for j in range(n):
            if d[i] * principal[i][j] != -d[j] * principal[j][i]:
                return None, (f"no symmetrizer: entries b[{i + 1}][{j + 1}] and "
                              f"b[{j + 1}][{i + 1}] are inconsistent with the "
                              f"spanning-forest ratios")
    # minimal positive integers, scaled per connected component
    comp: list[Optional[int]] = [None] * n
    labels = 0
    for root in range(n):
        if comp[root] is not None:
            continue
        comp[root] = labels
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if principal[i][j] != 0 and comp[j] is None:
                    comp[j] = labels
                    queue.append(j)
        labels += 1
    out = [0] * n
    for label in range(labels):
        members = [i for i in range(n) if comp[i] == label]
        scale = lcm(*(d[i].denominator for i in members)) if members else 1
        ints = [int(d[i] * scale) for i in members]
        shrink = gcd(*ints) if ints else 1
        for i, value in zip(members, ints):
            out[i] = value // shrink
    return tuple(out), None


class ExchangeMatrix:
    """An m x n integer exchange matrix with skew-symmetrizable principal part."""

    __slots__ = ("rows", "n", "m", "_hash")

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(entry for entry in row) for row in rows)
        if not rows:
            raise ValueError("matrix needs at least one row")
        n = len(rows[0])
        m = len(rows)
        if n == 0:
            raise ValueError("matrix needs at least one column")
        if n > m:
            raise ValueError(f"more columns ({n}) than rows ({m})")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i + 1} has {len(row)} entries, expected {n}")
            for j, entry in enumerate(row):
                if not isinstance(entry, int) or isinstance(entry, bool):
                    raise ValueError(
                        f"matrix[{i}][{j}]: expected an integer, got {entry!r}")
        _, refutation = find_skew_symmetrizer([rows[i][:n] for i in range(n)])
        if refutation is not None:
            raise ValueError(f"principal part is not skew-symmetrizable: {refutation}")
        self.rows = rows
        self.n = n
        self.m = m
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, n: int, m: int) -> "ExchangeMatrix":
        self = object.__new__(cls)
        self.rows = rows
        self.n = n
        self.m = m
        self._hash = None
        return self

    def entry(self, i: int, j: int) -> int:
        """b_ij with 1-based row i in 1..m and column j in 1..n."""
        return self.rows[i - 1][j - 1]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.rows)

    def principal(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.rows[i][: self.n] for i in range(self.n))

    def mutate(self, k: int) -> "ExchangeMatrix":
        """Matrix mutation in direction k (mutable, 1-based)."""
        if not 1 <= k <= self.n:
            raise ValueError(f"mutation index {k} outside 1..{self.n}")
        kp = k - 1
        col_k = [row[kp] for row in self.rows]
        row_k = self.rows[kp]
        new_rows = []
        for i, row in enumerate(self.rows):
            bik = col_k[i]
            new_row = []
            for j, b in enumerate(row):
                if i == kp or j == kp:
                    new_row.append(-b)
                else:
                    bkj = row_k[j]
                    new_row.append(b + (abs(bik) * bkj + bik * abs(bkj)) // 2)
            new_rows.append(tuple(new_row))
        return ExchangeMatrix._raw(tuple(new_rows), self.n, self.m)

    def neighbors(self, i: int) -> tuple[int, ...]:
        """Mutable indices j with b_ij != 0, for any row index i in 1..m."""
        row = self.rows[i - 1]
        return tuple(j + 1 for j in range(self.n) if row[j] != 0 and j != i - 1)

    def is_source(self, i: int) -> bool:
        """No arrow points into i: column i is non-positive (all m rows)."""
        return all(row[i - 1] <= 0 for row in self.rows)

    def is_sink(self, i: int) -> bool:
        """No arrow points out of i: column i is non-negative (all m rows)."""
        return all(row[i - 1] >= 0 for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __str__(self):
        return "\n".join(" ".join(f"{b:3d}" for b in row) for row in self.rows)


def exchange_polynomial(matrix: ExchangeMatrix, j: int,
                        field: FieldTag = FieldTag.Q) -> Polynomial:
    """f_j = prod_{b_ij > 0} x_i^{b_ij} + prod_{b_ij < 0} x_i^{-b_ij}."""
    if not 1 <= j <= matrix.n:
        raise ValueError(f"column index {j} outside 1..{matrix.n}")
    col = matrix.column(j)
    pos = tuple(b if b > 0 else 0 for b in col)
    neg = tuple(-b if b < 0 else 0 for b in col)
    return Polynomial(matrix.m, field, {pos: 1}) + Polynomial(matrix.m, field, {neg: 1})


# -- graphs on the matrix ----------------------------------------------------

def _is_connected(matrix: ExchangeMatrix) -> bool:
    m, n = matrix.m, matrix.n
    if m == 1:
        return True
    adj = [set() for _ in range(m)]
    for i in range(m):
        for j in range(n):
            if i != j and matrix.rows[i][j] != 0:
                adj[i].add(j)
                adj[j].add(i)
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == m


def _is_acyclic(matrix: ExchangeMatrix) -> bool:
    """No oriented cycle among mutable vertices (arrow i -> j iff b_ij > 0)."""
    n = matrix.n
    out_edges = [[j for j in range(n) if matrix.rows[i][j] > 0] for i in range(n)]
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    for start in range(n):
        if state[start]:
            continue
        stack = [(start, iter(out_edges[start]))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if state[nxt] == 1:
                    return False
                if state[nxt] == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(out_edges[nxt])))
                    advanced = True
                    break
            if not advanced:
                state[node] = 2
                stack.pop()
    return True


@dataclass(frozen=True)
class StructureReport:
    """Combinatorial facts about an exchange matrix."""

    n: int
    m: int
    skew_symmetrizer: tuple[int, ...]
    connected: bool
    acyclic: bool
    sources: tuple[int, ...]
    sinks: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]  # entry i-1 lists N(i), i = 1..m


def structure_report(matrix: ExchangeMatrix) -> StructureReport:
    symmetrizer, refutation = find_skew_symmetrizer(matrix.principal())
    if refutation is not None:  # unreachable for a validated matrix
        raise ValueError(refutation)
    sources = tuple(i for i in range(1, matrix.n + 1) if matrix.is_source(i))
    sinks = tuple(i for i in range(1, matrix.n + 1) if matrix.is_sink(i))
    return StructureReport(
        n=matrix.n,
        m=matrix.m,
        skew_symmetrizer=symmetrizer,
        connected=_is_connected(matrix),
        acyclic=_is_acyclic(matrix),
        sources=sources,
        sinks=sinks,
        neighbors=tuple(matrix.neighbors(i) for i in range(1, matrix.m + 1)),
    )


# -- seeds -------------------------------------------------------------------

class Seed:
    """An exchange matrix together with m Laurent cluster entries."""

    __slots__ = ("matrix", "cluster", "field", "history")

    def __init__(self, matrix: ExchangeMatrix,
                 cluster: Sequence[LaurentPolynomial], field: FieldTag,
                 history: tuple[int, ...] = ()):
        cluster = tuple(cluster)
        if len(cluster) != matrix.m:
            raise ValueError(f"cluster has {len(cluster)} entries, expected {matrix.m}")
        self.matrix = matrix
        self.cluster = cluster
        self.field = field
        self.history = history

    @classmethod
    def initial(cls, matrix: ExchangeMatrix, field: FieldTag = FieldTag.Q) -> "Seed":
        cluster = tuple(LaurentPolynomial.variable(i, matrix.m, field)
                        for i in range(1, matrix.m + 1))
        return cls(matrix, cluster, field)

    def mutable_entries(self) -> tuple[LaurentPolynomial, ...]:
        return self.cluster[: self.matrix.n]

    def mutate(self, k: int) -> "Seed":
        """Exchange the k-th entry and mutate the matrix."""
        if not 1 <= k <= self.matrix.n:
            raise ValueError(f"mutation index {k} outside 1..{self.matrix.n}")
        col = self.matrix.column(k)
        pos = LaurentPolynomial.one(self.matrix.m, self.field)
        neg = pos
        for i, b in enumerate(col):
            if b > 0:
                pos = pos * self.cluster[i] ** b
            elif b < 0:
                neg = neg * self.cluster[i] ** (-b)
        total = pos + neg
        new_entry = self._divide_laurent(total, self.cluster[k - 1])
        if any(new_entry.den[p] for p in range(self.matrix.n, self.matrix.m)):
            raise LaurentViolation(
                f"mutated entry {new_entry} has a frozen variable in its denominator")
        cluster = list(self.cluster)
        cluster[k - 1] = new_entry
        return Seed(self.matrix.mutate(k), tuple(cluster), self.field,
                    self.history + (k,))

    @staticmethod
    def _divide_laurent(total: LaurentPolynomial,
                        old: LaurentPolynomial) -> LaurentPolynomial:
        """total / old, where the quotient must again be Laurent.

        Write old = x^w * g / x^d with g free of monomial factors; then the
        quotient is (total.num / g) * x^d / x^(total.den + w), and g must
        divide total.num exactly or the exchange relation is broken.
        """
        w = old.num.min_exponents()
        if any(w):
            g = Polynomial._raw(
                old.num.m, old.num.field,
                {ev_sub(e, w): c for e, c in old.num.terms.items()})
        else:
            g = old.num
        h = divide_exact(total.num, g)
        if h is None:
            raise LaurentViolation(
                f"exchange quotient is not Laurent: {g} does not divide {total.num}")
        num = Polynomial._raw(
            h.m, h.field, {ev_add(e, old.den): c for e, c in h.terms.items()})
        return LaurentPolynomial(num, ev_add(total.den, w))

    def mutate_sequence(self, indices: Iterable[int]) -> "Seed":
        """Apply mutations in the order given (first index first)."""
        seed = self
        for k in indices:
            seed = seed.mutate(k)
        return seed

    def dedup_key(self) -> frozenset:
        return frozenset(self.mutable_entries())


# -- enumeration -------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of a breadth- or depth-first seed exploration."""

    variables: tuple[LaurentPolynomial, ...]
    complete: bool
    seeds_seen: int

    @property
    def count(self) -> int:
        return len(self.variables)


def enumerate_cluster_variables(seed: Seed, max_seeds: int = 10_000,
                                strategy: str = "bfs") -> EnumerationResult:
    """All cluster variables reachable from the seed, up to a seed budget.

    Seeds are deduplicated by their unordered set of mutable entries, not by
    mutation path, so finite types terminate with ``complete=True``.
    """
    if strategy not in ("bfs", "dfs"):
        raise ValueError(f"unknown strategy {strategy!r}")
    queue = deque([seed])
    visited = {seed.dedup_key()}
    variables = set(seed.mutable_entries())
    expanded = 0
    while queue and expanded < max_seeds:
        current = queue.popleft() if strategy == "bfs" else queue.pop()
        expanded += 1
        for k in range(1, seed.matrix.n + 1):
            neighbor = current.mutate(k)
            key = neighbor.dedup_key()
            if key not in visited:
                visited.add(key)
                variables.update(neighbor.mutable_entries())
                queue.append(neighbor)
    return EnumerationResult(
        variables=tuple(sorted(variables, key=str)),
        complete=not queue,
        seeds_seen=len(visited),
    )


def verify_laurent_property(seed: Seed, max_seeds: int = 1_000) -> tuple[EnumerationResult, list[str]]:
    """Enumerate and check every variable is Laurent with integer coefficients.

    Returns the enumeration plus a list of violation descriptions (expected
    to be empty; a violation would be a bug, not a mathematical discovery).
    """
    result = enumerate_cluster_variables(seed, max_seeds)
    n = seed.matrix.n
    field = seed.field
    problems = []
    for v in result.variables:
        if any(v.den[p] for p in range(n, seed.matrix.m)):
            problems.append(f"{v}: denominator involves a frozen variable")
        if not all(field.is_integer_scalar(c) for c in v.num.terms.values()):
            problems.append(f"{v}: non-integer coefficient")
    return result, problems


# -- builtin families --------------------------------------------------------

def _matrix_from_arrows(n: int, arrows: Iterable[tuple[int, int]]) -> ExchangeMatrix:
    rows = [[0] * n for _ in range(n)]
    for i, j in arrows:
        rows[i - 1][j - 1] = 1
        rows[j - 1][i - 1] = -1
    return ExchangeMatrix(rows)


def linear_a_matrix(n: int) -> ExchangeMatrix:
    """Type A_n with the linear orientation 1 -> 2 -> ... -> n."""
    if n < 1:
        raise ValueError("A requires n >= 1")
    return _matrix_from_arrows(n, ((i, i + 1) for i in range(1, n)))


def d_matrix(n: int) -> ExchangeMatrix:
    """Type D_n: a chain into n-2 with both fork tips pointing at n-2."""
    if n < 4:
        raise ValueError("D requires n >= 4")
    arrows = [(i, i + 1) for i in range(1, n - 2)]
    arrows += [(n - 1, n - 2), (n, n - 2)]
    return _matrix_from_arrows(n, arrows)


def e_matrix(n: int) -> ExchangeMatrix:
    """Type E_n for n in {6, 7, 8}: 1 -> 2 -> 3 <- 5 <- 6 <- ... <- n, 3 -> 4."""
    if n not in (6, 7, 8):
        raise ValueError("E requires n in {6, 7, 8}")
    arrows = [(1, 2), (2, 3), (3, 4)]
    arrows += [(k + 1, k) for k in range(5, n)]  # n -> ... -> 6 -> 5
    arrows += [(5, 3)]
    return _matrix_from_arrows(n, arrows)


def rank2_matrix(b: int, c: int) -> ExchangeMatrix:
    """Rank-2 matrix [[0, b], [-c, 0]] with b, c >= 1."""
    if b < 1 or c < 1:
        raise ValueError("rank2 requires positive weights")
    return ExchangeMatrix([[0, b], [-c, 0]])


def kronecker_matrix() -> ExchangeMatrix:
    return rank2_matrix(2, 2)


def cyclic_a3_matrix() -> ExchangeMatrix:
    """The oriented 3-cycle; the standard non-acyclic rank-3 example."""
    return ExchangeMatrix([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])


def builtin_matrix(name: str) -> ExchangeMatrix:
    """Parse names like 'A:4', 'D:5', 'E:6', 'rank2:2,3', 'kronecker', 'cyclicA3'."""
    head, _, params = name.partition(":")
    try:
        if head == "A":
            return linear_a_matrix(int(params))
        if head == "D":
            return d_matrix(int(params))
        if head == "E":
            return e_matrix(int(params))
        if head == "rank2":
            b_txt, _, c_txt = params.partition(",")
            return rank2_matrix(int(b_txt), int(c_txt))
        if head == "kronecker" and not params:
            return kronecker_matrix()
        if head == "cyclicA3" and not params:
            return cyclic_a3_matrix()
    except ValueError as exc:
        raise ValueError(f"invalid builtin seed {name!r}: {exc}") from None
    raise ValueError(f"unknown builtin seed {name!r}")


def builtin_seed(name: str, field: FieldTag = FieldTag.Q) -> Seed:
    return Seed.initial(builtin_matrix(name), field)


# -- seed files --------------------------------------------------------------

def seed_from_dict(data: dict, field_override: Optional[FieldTag] = None) -> Seed:
    """Build a seed from {"n", "m", "matrix", "field"?}, naming bad entries."""
    if not isinstance(data, dict):
        raise ValueError("seed file must contain a JSON object")
    allowed = {"n", "m", "matrix", "field"}
    unknown = set(data) - allowed
    if unknown:
        raise ValueError(f"unknown seed file keys: {sorted(unknown)}")
    for key in ("n", "m", "matrix"):
        if key not in data:
            raise ValueError(f"seed file is missing {key!r}")
    n, m = data["n"], data["m"]
    if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < n:
        raise ValueError(f"need integers 1 <= n <= m, got n={n!r}, m={m!r}")
    matrix = data["matrix"]
    if not isinstance(matrix, list) or len(matrix) != m:
        raise ValueError(f"matrix: expected {m} rows")
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"matrix[{i}]: expected a row of {n} integers")
        for j, entry in enumerate(row):
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise ValueError(f"matrix[{i}][{j}]: expected an integer, got {entry!r}")
    field_name = data.get("field", "Q")
    if field_name not in ("Q", "Qi"):
        raise ValueError(f"field: expected 'Q' or 'Qi', got {field_name!r}")
    field = FieldTag.from_name(field_name)
    if field_override is not None and field_override is not field:
        raise ValueError(
            f"--field {field_override.value} contradicts the seed file field "
            f"{field.value}")
    return Seed.initial(ExchangeMatrix(matrix), field)


def load_seed_file(path: str, field_override: Optional[FieldTag] = None) -> Seed:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read seed file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"seed file {path} is not valid JSON: {exc}") from None
    return seed_from_dict(data, field_override)


# -- hypersurface relations --------------------------------------------------

def hypersurface_relation(n: int) -> Polynomial:
    """The polynomial relating x_1 and the once-mutated entries of linear A_n.

    Lives in n+1 variables: position 1 is x_1, positions 2..n+1 are the
    entries obtained by mutating the initial seed once at 1, ..., n.
    """
    if n < 2:
        raise ValueError("hypersurface relations need n >= 2")
    m2 = n + 1
    field = FieldTag.Q
    x1 = Polynomial.variable(1, m2, field)
    primed = [None] + [Polynomial.variable(i + 1, m2, field) for i in range(1, n + 1)]
    relations: dict[int, Polynomial] = {}
    relations[2] = x1 * primed[1] * primed[2] - x1 - primed[2] - 1
    if n >= 3:
        relations[3] = (x1 * primed[1] * primed[2] * primed[3]
                        - primed[2] * primed[3] - x1 * primed[3] - x1 * primed[1])
    for k in range(4, n + 1):
        relations[k] = (primed[k] * relations[k - 1] + primed[k]
                        - relations[k - 2] - 2)
    return relations[n]


def hypersurface_relation_check(n: int) -> bool:
    """Substitute the actual mutated entries and confirm the relation vanishes."""
    relation = hypersurface_relation(n)
    matrix = linear_a_matrix(n)
    field = FieldTag.Q
    values = [LaurentPolynomial.variable(1, n, field)]
    for i in range(1, n + 1):
        f_i = exchange_polynomial(matrix, i, field)
        e_i = tuple(1 if p == i - 1 else 0 for p in range(n))
        values.append(LaurentPolynomial(f_i, e_i))
    return relation.substitute(values).is_zero
