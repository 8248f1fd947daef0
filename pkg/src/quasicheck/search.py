"""Backtracking enumeration of Latin squares and identity-constrained models.

Cells are filled row-major with per-row/per-column candidate bitmasks and
ascending value order, so the stream is lexicographic in the row-major
entry sequence.  Required multiplication-only identities are additionally
pruned at each completed row: an assignment whose subterms are all defined
on the partial table and evaluates unequal kills the subtree.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

from .identities import Identity, Node, Op, Term, Var, holds
from .magma import CayleyTable, identity_element

MAX_ORDER = 7

# non-Latin search has no candidate propagation; n^(n*n) explodes past this
MAX_FREE_ORDER = 3


@dataclass(frozen=True)
class SearchSpec:
    order: int
    require_latin: bool = True
    required_identities: tuple[Identity, ...] = ()
    forbidden_identities: tuple[Identity, ...] = ()
    forbid_identity_element: bool = False
    reduced_only: bool = False
    up_to_iso: bool = False
    limit: Optional[int] = None

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if self.order > MAX_ORDER:
            raise ValueError(f"order {self.order} exceeds the maximum {MAX_ORDER}")
        if self.reduced_only and self.up_to_iso:
            raise ValueError("reduced_only and up_to_iso are mutually exclusive")
        if not self.require_latin:
            if self.order > MAX_FREE_ORDER:
                raise ValueError(
                    f"non-Latin enumeration is limited to order <= {MAX_FREE_ORDER}"
                )
            for ident in self.required_identities + self.forbidden_identities:
                if ident.uses_division:
                    raise ValueError(
                        "division identities require require_latin=True"
                    )


def _eval_partial(t: Term, grid: list[list[int]], asg: tuple[int, ...],
                  var_index: dict[str, int]) -> Optional[int]:
    if isinstance(t, Var):
        return asg[var_index[t.name]]
    a = _eval_partial(t.left, grid, asg, var_index)
    if a is None:
        return None
    b = _eval_partial(t.right, grid, asg, var_index)
    if b is None:
        return None
    v = grid[a][b]
    return v if v >= 0 else None


def _mul_only(t: Term) -> bool:
    if isinstance(t, Var):
        return True
    return t.op is Op.MUL and _mul_only(t.left) and _mul_only(t.right)


def _partial_ok(grid: list[list[int]], n: int,
                idents: tuple[Identity, ...]) -> bool:
    """No fully-defined assignment of any required identity may fail."""
    for ident in idents:
        var_index = {name: i for i, name in enumerate(ident.variables)}
        for asg in itertools.product(range(n), repeat=len(ident.variables)):
            l = _eval_partial(ident.lhs, grid, asg, var_index)
            if l is None:
                continue
            r = _eval_partial(ident.rhs, grid, asg, var_index)
            if r is None:
                continue
            if l != r:
                return False
    return True


def _raw_stream(spec: SearchSpec, prune: bool,
                first_row: Optional[tuple[int, ...]] = None) -> Iterator[tuple]:
    """Yield entry grids (tuple of row tuples) matching the structural part
    of the spec (Latin/reduced and incremental identity pruning only)."""
    n = spec.order
    # divisions are undefined on a partial table; prune only mul-only laws
    prunable = tuple(
        i for i in spec.required_identities
        if _mul_only(i.lhs) and _mul_only(i.rhs)
    ) if prune else ()
    grid = [[-1] * n for _ in range(n)]
    if spec.require_latin:
        full = (1 << n) - 1
        row_mask = [full] * n
        col_mask = [full] * n

        def prefill(r: int, c: int, v: int) -> None:
            grid[r][c] = v
            row_mask[r] ^= 1 << v
            col_mask[c] ^= 1 << v

        if spec.reduced_only:
            for c in range(n):
                prefill(0, c, c)
            for r in range(1, n):
                prefill(r, 0, r)
        if first_row is not None:
            for c in range(n):
                if grid[0][c] == -1:
                    prefill(0, c, first_row[c])

        def place(pos: int) -> Iterator[tuple]:
            if pos == n * n:
                yield tuple(tuple(row) for row in grid)
                return
            r, c = divmod(pos, n)
            if grid[r][c] != -1:
                if c == n - 1 and prunable and not _partial_ok(grid, n, prunable):
                    return
                yield from place(pos + 1)
                return
            avail = row_mask[r] & col_mask[c]
            while avail:
                bit = avail & -avail
                avail ^= bit
                v = bit.bit_length() - 1
                grid[r][c] = v
                row_mask[r] ^= bit
                col_mask[c] ^= bit
                if not (c == n - 1 and prunable and not _partial_ok(grid, n, prunable)):
                    yield from place(pos + 1)
                grid[r][c] = -1
                row_mask[r] |= bit
                col_mask[c] |= bit

        yield from place(0)
    else:
        if spec.reduced_only:
            for c in range(n):
                grid[0][c] = c
            for r in range(1, n):
                grid[r][0] = r
        if first_row is not None:
            for c in range(n):
                if grid[0][c] == -1:
                    grid[0][c] = first_row[c]
        fixed = [[grid[r][c] != -1 for c in range(n)] for r in range(n)]

        def place_free(pos: int) -> Iterator[tuple]:
            if pos == n * n:
                yield tuple(tuple(row) for row in grid)
                return
            r, c = divmod(pos, n)
            if fixed[r][c]:
                if c == n - 1 and prunable and not _partial_ok(grid, n, prunable):
                    return
                yield from place_free(pos + 1)
                return
            for v in range(n):
                grid[r][c] = v
                if not (c == n - 1 and prunable and not _partial_ok(grid, n, prunable)):
                    yield from place_free(pos + 1)
            grid[r][c] = -1

        yield from place_free(0)


def _accept(spec: SearchSpec, t: CayleyTable) -> bool:
    """Full (slow-path) re-verification of a completed table against the spec."""
    for ident in spec.required_identities:
        if not holds(t, ident).holds:
            return False
    for ident in spec.forbidden_identities:
        if holds(t, ident).holds:
            return False
    if spec.forbid_identity_element and identity_element(t) is not None:
        return False
    if spec.up_to_iso and canonical_form(t) != t:
        return False
    return True


def _branch_worker(args) -> list[tuple]:
    spec, first_row, prune = args
    out = []
    for entries in _raw_stream(spec, prune, first_row=first_row):
        t = CayleyTable(spec.order, entries)
        if _accept(spec, t):
            out.append(entries)
    return out


def enumerate_tables(spec: SearchSpec, prune: bool = True,
                     workers: int = 1) -> Iterator[CayleyTable]:
    """Emit every matching table exactly once, lexicographically.

    prune=False disables incremental identity pruning (completed tables are
    always re-filtered, so the emitted stream is identical either way).
    With workers > 1 the tree is split at the first row's completions and
    branches are merged back in order.
    """
    emitted = 0
    if workers > 1 and spec.require_latin and not spec.reduced_only and spec.order > 1:
        first_rows = list(itertools.permutations(range(spec.order)))
        tasks = [(spec, fr, prune) for fr in first_rows]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for branch in pool.map(_branch_worker, tasks):
                for entries in branch:
                    yield CayleyTable(spec.order, entries)
                    emitted += 1
                    if spec.limit is not None and emitted >= spec.limit:
                        return
        return
    for entries in _raw_stream(spec, prune):
        t = CayleyTable(spec.order, entries)
        if not _accept(spec, t):
            continue
        yield t
        emitted += 1
        if spec.limit is not None and emitted >= spec.limit:
            return


def canonical_form(t: CayleyTable) -> CayleyTable:
    """Lexicographically least relabeling entry'[s(a)][s(b)] = s(entry[a][b]).

    Two tables are isomorphic as magmas iff their canonical forms coincide.
    """
    n = t.order
    e = t.entries
    best = None
    for perm in itertools.permutations(range(n)):
        relab = [[0] * n for _ in range(n)]
        for a in range(n):
            pa = perm[a]
            row = e[a]
            target = relab[pa]
            for b in range(n):
                target[perm[b]] = perm[row[b]]
        cand = tuple(map(tuple, relab))
        if best is None or cand < best:
            best = cand
    return CayleyTable(n, best)


@dataclass(frozen=True)
class CountResult:
    raw: int
    iso_classes: Optional[int] = None


def count_models(spec: SearchSpec) -> CountResult:
    """Count matching tables without materializing the stream."""
    base = SearchSpec(
        spec.order,
        spec.require_latin,
        spec.required_identities,
        spec.forbidden_identities,
        spec.forbid_identity_element,
        spec.reduced_only,
        up_to_iso=False,
        limit=spec.limit,
    )
    raw = 0
    iso = 0
    for t in enumerate_tables(base):
        raw += 1
        if spec.up_to_iso and canonical_form(t) == t:
            iso += 1
    return CountResult(raw, iso if spec.up_to_iso else None)


def find_witness(spec: SearchSpec) -> Optional[CayleyTable]:
    """First table matching the spec, or None once the space is exhausted."""
    return next(enumerate_tables(spec), None)


def random_latin_square(n: int, rng: random.Random) -> CayleyTable:
    """A Latin square sampled by randomized backtracking (not uniform)."""
    full = (1 << n) - 1
    grid = [[-1] * n for _ in range(n)]
    row_mask = [full] * n
    col_mask = [full] * n

    def place(pos: int) -> bool:
        if pos == n * n:
            return True
        r, c = divmod(pos, n)
        cands = [v for v in range(n) if (row_mask[r] & col_mask[c]) >> v & 1]
        rng.shuffle(cands)
        for v in cands:
            grid[r][c] = v
            row_mask[r] ^= 1 << v
            col_mask[c] ^= 1 << v
            if place(pos + 1):
                return True
            grid[r][c] = -1
            row_mask[r] |= 1 << v
            col_mask[c] |= 1 << v
        return False

    assert place(0)
    return CayleyTable(n, tuple(map(tuple, grid)))
