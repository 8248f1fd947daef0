"""Translation families, generated congruences, and the fixed-point collapse.

The quotient by the congruence generated by a family of bijections is
computed with union-find; "the coequalizer is terminal" becomes "the
partition has a single block".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .magma import CayleyTable, EndoMap, Quasigroup


@dataclass(frozen=True)
class BijectionFamily:
    order: int
    members: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.members):
            raise ValueError("labels and members must be parallel")
        for label, m in zip(self.labels, self.members):
            if len(m) != self.order or len(set(m)) != self.order:
                raise ValueError(f"member {label} is not a bijection on 0..{self.order - 1}")


def left_translations(q: Quasigroup) -> BijectionFamily:
    """The family L_a(x) = a*x; member a is row a of the table."""
    n = q.order
    return BijectionFamily(
        n,
        tuple(q.table.entries[a] for a in range(n)),
        tuple(f"L_{a}" for a in range(n)),
    )


def right_translations(q: Quasigroup) -> BijectionFamily:
    """The family R_a(x) = x*a; member a is column a of the table."""
    n = q.order
    return BijectionFamily(
        n,
        tuple(tuple(q.table.entries[x][a] for x in range(n)) for a in range(n)),
        tuple(f"R_{a}" for a in range(n)),
    )


def check_regularity(q: Union[Quasigroup, CayleyTable], u: int) -> bool:
    """Is a -> a*u a bijection?  True for every valid quasigroup."""
    t = q.table if isinstance(q, Quasigroup) else q
    if not 0 <= u < t.order:
        raise ValueError(f"element {u} out of range for order {t.order}")
    col = [t.entries[a][u] for a in range(t.order)]
    return len(set(col)) == t.order


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        self.parent[self.find(i)] = self.find(j)


@dataclass(frozen=True)
class Partition:
    """Blocks of {0..n-1}; block ids appear in increasing first-element order."""

    order: int
    block_id: tuple[int, ...]

    @property
    def num_blocks(self) -> int:
        return max(self.block_id) + 1

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block_id):
            out[b].append(x)
        return out


def _normalize_blocks(n: int, rep_of: list[int]) -> Partition:
    relabel: dict[int, int] = {}
    ids = []
    for x in range(n):
        r = rep_of[x]
        if r not in relabel:
            relabel[r] = len(relabel)
        ids.append(relabel[r])
    return Partition(n, tuple(ids))


def generated_partition(n: int, fam: BijectionFamily) -> Partition:
    """Finest partition closed under x ~ member_i(x) for every member."""
    if fam.order != n:
        raise ValueError(f"family order {fam.order} does not match n={n}")
    uf = _UnionFind(n)
    for m in fam.members:
        for x in range(n):
            uf.union(x, m[x])
    return _normalize_blocks(n, [uf.find(x) for x in range(n)])


@dataclass(frozen=True)
class CollapseVerdict:
    idempotent_ok: bool
    transitivity_ok: bool
    transitivity_witness: Optional[tuple[int, int]]  # unreachable pair (x, y)
    coequalization_ok: bool
    coequalization_witness: Optional[tuple[int, int]]  # failing (member index, x)
    is_constant: bool
    constant_value: Optional[int]


def collapse_check(e: EndoMap, fam: BijectionFamily) -> CollapseVerdict:
    """Check the hypotheses of the abstract collapse lemma against e.

    (a) e is idempotent; (b) the family acts transitively; (c) e composed
    with every member equals e.  Constancy of e is inspected directly; when
    (a)-(c) all hold, constancy is asserted outright -- a violation would
    contradict the lemma and can only mean an implementation defect.
    """
    n = e.order
    if fam.order != n:
        raise ValueError(f"family order {fam.order} does not match map order {n}")
    ev = e.values

    idempotent_ok = all(ev[ev[x]] == ev[x] for x in range(n))

    transitivity_ok = True
    trans_witness = None
    for x in range(n):
        targets = {m[x] for m in fam.members}
        if len(targets) < n:
            y = min(set(range(n)) - targets)
            transitivity_ok, trans_witness = False, (x, y)
            break

    coequalization_ok = True
    coeq_witness = None
    for i, m in enumerate(fam.members):
        for x in range(n):
            if ev[m[x]] != ev[x]:
                coequalization_ok, coeq_witness = False, (i, x)
                break
        if not coequalization_ok:
            break

    image = set(ev)
    is_constant = len(image) == 1
    constant_value = ev[0] if is_constant else None

    if idempotent_ok and transitivity_ok and coequalization_ok and not is_constant:
        raise AssertionError(
            "collapse lemma violated: idempotent map coequalizing a transitive "
            f"family is not constant (values {ev})"
        )
    return CollapseVerdict(
        idempotent_ok,
        transitivity_ok,
        trans_witness,
        coequalization_ok,
        coeq_witness,
        is_constant,
        constant_value,
    )
