"""Independent brute-force oracles, kept deliberately naive."""

import itertools

from quasicheck import CayleyTable, Quasigroup, SearchSpec, enumerate_tables


def rows_cols_are_permutations(entries, n):
    want = list(range(n))
    for row in entries:
        if sorted(row) != want:
            return False
    for c in range(n):
        if sorted(entries[r][c] for r in range(n)) != want:
            return False
    return True


def naive_latin_tables_full(n):
    """Every Latin square of order n by scanning all n^(n*n) tables."""
    out = []
    for flat in itertools.product(range(n), repeat=n * n):
        entries = tuple(flat[r * n:(r + 1) * n] for r in range(n))
        if rows_cols_are_permutations(entries, n):
            out.append(entries)
    return out


def naive_latin_tables_by_rows(n):
    """Every Latin square of order n by stacking row permutations and
    filtering on columns; independent of the bitmask search."""
    out = []
    for rows in itertools.product(itertools.permutations(range(n)), repeat=n):
        if rows_cols_are_permutations(rows, n):
            out.append(rows)
    return out


def all_quasigroups_upto(max_order):
    """(order, Quasigroup) pairs for every Latin square of order <= max_order."""
    pairs = []
    for n in range(1, max_order + 1):
        for t in enumerate_tables(SearchSpec(n)):
            pairs.append((n, Quasigroup.from_table(t)))
    return pairs


def table(rows):
    return CayleyTable.from_rows(rows)
