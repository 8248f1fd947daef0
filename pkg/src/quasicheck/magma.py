"""Finite binary operations: Cayley tables, the Latin property, divisions.

Elements are always 0-based indices.  A CayleyTable is an arbitrary magma;
a Quasigroup wraps a table whose rows and columns are permutations and
carries precomputed division tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class CayleyTable:
    order: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise ValueError(f"order must be >= 1, got {n}")
        if len(self.entries) != n:
            raise ValueError(f"expected {n} rows, found {len(self.entries)}")
        for r, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError(f"row {r}: expected {n} entries, found {len(row)}")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"row {r}: entry {v} out of range 0..{n - 1}")

    @classmethod
    def from_rows(cls, rows) -> "CayleyTable":
        return cls(len(rows), tuple(tuple(row) for row in rows))

    def mul(self, a: int, b: int) -> int:
        if not (0 <= a < self.order and 0 <= b < self.order):
            raise ValueError(f"operands ({a}, {b}) out of range for order {self.order}")
        return self.entries[a][b]


def mul(t: CayleyTable, a: int, b: int) -> int:
    return t.mul(a, b)


@dataclass(frozen=True)
class LatinWitness:
    kind: str  # "row" or "column"
    index: int
    value: int  # the duplicated value


@dataclass(frozen=True)
class LatinVerdict:
    is_quasigroup: bool
    witness: Optional[LatinWitness]


def check_latin(t: CayleyTable) -> LatinVerdict:
    """Decide whether every row and column of the table is a permutation."""
    n = t.order
    for r, row in enumerate(t.entries):
        seen = [False] * n
        for v in row:
            if seen[v]:
                return LatinVerdict(False, LatinWitness("row", r, v))
            seen[v] = True
    for c in range(n):
        seen = [False] * n
        for r in range(n):
            v = t.entries[r][c]
            if seen[v]:
                return LatinVerdict(False, LatinWitness("column", c, v))
            seen[v] = True
    return LatinVerdict(True, None)


@dataclass(frozen=True)
class Quasigroup:
    """A Latin Cayley table with precomputed left/right division tables.

    ldiv_table[a][b] = a\\b (unique x with a*x = b);
    rdiv_table[b][a] = b/a (unique y with y*a = b).
    """

    table: CayleyTable
    ldiv_table: tuple[tuple[int, ...], ...]
    rdiv_table: tuple[tuple[int, ...], ...]

    @classmethod
    def from_table(cls, t: CayleyTable) -> "Quasigroup":
        verdict = check_latin(t)
        if not verdict.is_quasigroup:
            w = verdict.witness
            raise ValueError(
                f"not a quasigroup: {w.kind} {w.index} duplicates value {w.value}"
            )
        n = t.order
        ldiv = [[0] * n for _ in range(n)]
        rdiv = [[0] * n for _ in range(n)]
        for a in range(n):
            for x in range(n):
                b = t.entries[a][x]
                ldiv[a][b] = x
        for y in range(n):
            for a in range(n):
                b = t.entries[y][a]
                rdiv[b][a] = y
        return cls(t, tuple(map(tuple, ldiv)), tuple(map(tuple, rdiv)))

    @classmethod
    def from_rows(cls, rows) -> "Quasigroup":
        return cls.from_table(CayleyTable.from_rows(rows))

    @property
    def order(self) -> int:
        return self.table.order

    def mul(self, a: int, b: int) -> int:
        return self.table.mul(a, b)

    def ldiv(self, a: int, b: int) -> int:
        if not (0 <= a < self.order and 0 <= b < self.order):
            raise ValueError(f"operands ({a}, {b}) out of range for order {self.order}")
        return self.ldiv_table[a][b]

    def rdiv(self, b: int, a: int) -> int:
        if not (0 <= a < self.order and 0 <= b < self.order):
            raise ValueError(f"operands ({b}, {a}) out of range for order {self.order}")
        return self.rdiv_table[b][a]


def ldiv(q: Quasigroup, a: int, b: int) -> int:
    return q.ldiv(a, b)


def rdiv(q: Quasigroup, b: int, a: int) -> int:
    return q.rdiv(b, a)


@dataclass(frozen=True)
class EndoMap:
    """A total self-map on {0..n-1}."""

    order: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if len(self.values) != self.order:
            raise ValueError(
                f"expected {self.order} values, found {len(self.values)}"
            )
        for v in self.values:
            if not 0 <= v < self.order:
                raise ValueError(f"value {v} out of range 0..{self.order - 1}")

    def __call__(self, x: int) -> int:
        return self.values[x]


def j_map(q: Quasigroup) -> EndoMap:
    """The left unit extractor j(x) = x\\x, so x * j(x) = x."""
    return EndoMap(q.order, tuple(q.ldiv_table[x][x] for x in range(q.order)))


def k_map(q: Quasigroup) -> EndoMap:
    """The right unit extractor k(x) = x/x, so k(x) * x = x."""
    return EndoMap(q.order, tuple(q.rdiv_table[x][x] for x in range(q.order)))


def identity_element(t: CayleyTable) -> Optional[int]:
    """The unique two-sided identity if one exists, else None.

    Deliberately a direct scan over all candidates; serves as an oracle
    independent of any j-based reasoning.
    """
    n = t.order
    found = None
    for e in range(n):
        if all(t.entries[e][x] == x and t.entries[x][e] == x for x in range(n)):
            if found is not None:
                # two distinct two-sided identities cannot coexist: e*f = f = e
                raise AssertionError(f"two identity elements {found} and {e}")
            found = e
    return found


@dataclass(frozen=True)
class EndoAnalysis:
    is_idempotent: bool
    fixed_points: frozenset[int]
    image: frozenset[int]
    constant_value: Optional[int]


def analyze_endomap(f: EndoMap) -> EndoAnalysis:
    fixed = frozenset(x for x in range(f.order) if f.values[x] == x)
    image = frozenset(f.values)
    idem = all(f.values[f.values[x]] == f.values[x] for x in range(f.order))
    const = next(iter(image)) if len(image) == 1 else None
    return EndoAnalysis(idem, fixed, image, const)
