import random

import pytest

from quasicheck import (
    CayleyTable,
    SearchSpec,
    builtin_n1,
    canonical_form,
    check_latin,
    count_models,
    enumerate_tables,
    find_witness,
    holds,
    identity_element,
    parse_identity,
    random_latin_square,
)
from util import naive_latin_tables_by_rows, naive_latin_tables_full


def test_matches_fully_naive_oracle_small():
    for n in (1, 2, 3):
        got = [t.entries for t in enumerate_tables(SearchSpec(n))]
        assert got == naive_latin_tables_full(n)


def test_matches_row_permutation_oracle_order_four():
    got = set(t.entries for t in enumerate_tables(SearchSpec(4)))
    assert got == set(naive_latin_tables_by_rows(4))
    assert len(got) == 576


def test_latin_counts():
    assert [count_models(SearchSpec(n)).raw for n in (1, 2, 3, 4)] == [1, 2, 12, 576]


def test_reduced_counts_and_counting_identity():
    reduced = [count_models(SearchSpec(n, reduced_only=True)).raw for n in (1, 2, 3, 4)]
    assert reduced == [1, 1, 1, 4]
    import math
    assert 576 == math.factorial(4) * math.factorial(3) * 4


def test_emitted_tables_are_lexicographic_and_latin():
    prev = None
    for t in enumerate_tables(SearchSpec(4)):
        assert check_latin(t).is_quasigroup
        flat = tuple(v for row in t.entries for v in row)
        if prev is not None:
            assert prev < flat
        prev = flat


def test_order_two_n1_models():
    n1 = builtin_n1()
    tables = list(enumerate_tables(SearchSpec(2, required_identities=(n1,))))
    assert len(tables) == 2
    for t in tables:
        assert identity_element(t) is not None


def test_canonical_form_properties(z3plus):
    relabeled = CayleyTable.from_rows([[2, 0, 1], [0, 1, 2], [1, 2, 0]])
    # relabeling (0 1 2) -> (1 2 0) applied to addition mod 3
    sigma = (1, 2, 0)
    expect = [[0] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            expect[sigma[a]][sigma[b]] = sigma[z3plus.entries[a][b]]
    relabeled = CayleyTable.from_rows(expect)
    assert canonical_form(z3plus) == canonical_form(relabeled)
    c = canonical_form(z3plus)
    assert canonical_form(c) == c


def test_order_three_iso_classes():
    forms = {canonical_form(t).entries for t in enumerate_tables(SearchSpec(3))}
    assert len(forms) == 5
    up_to_iso = count_models(SearchSpec(3, up_to_iso=True))
    assert up_to_iso.raw == 12
    assert up_to_iso.iso_classes == 5


def test_n1_classes_equal_associative_classes_small():
    n1 = builtin_n1()
    assoc = parse_identity("(x*y)*z = x*(y*z)")
    for n in range(1, 5):
        n1_forms = {
            canonical_form(t).entries
            for t in enumerate_tables(SearchSpec(n, required_identities=(n1,)))
        }
        assoc_forms = {
            canonical_form(t).entries
            for t in enumerate_tables(SearchSpec(n, required_identities=(assoc,)))
        }
        assert n1_forms == assoc_forms


def test_incremental_pruning_is_sound():
    n1 = builtin_n1()
    for n in range(1, 5):
        spec = SearchSpec(n, required_identities=(n1,))
        pruned = [t.entries for t in enumerate_tables(spec, prune=True)]
        filtered = [t.entries for t in enumerate_tables(spec, prune=False)]
        assert pruned == filtered


def test_determinism():
    spec = SearchSpec(4, required_identities=(builtin_n1(),))
    a = [t.entries for t in enumerate_tables(spec)]
    b = [t.entries for t in enumerate_tables(spec)]
    assert a == b


def test_parallel_matches_sequential():
    spec = SearchSpec(4)
    seq = [t.entries for t in enumerate_tables(spec)]
    par = [t.entries for t in enumerate_tables(spec, workers=2)]
    assert seq == par


def test_limit():
    got = list(enumerate_tables(SearchSpec(4, limit=10)))
    assert len(got) == 10


def test_find_witness_examples():
    n1 = builtin_n1()
    # the constant magma: N1 without the Latin hypothesis gives no identity
    w = find_witness(SearchSpec(2, require_latin=False,
                                required_identities=(n1,),
                                forbid_identity_element=True))
    assert w is not None
    assert w.entries == ((0, 0), (0, 0))

    # some order-3 quasigroup fails N1
    w = find_witness(SearchSpec(3, forbidden_identities=(n1,)))
    assert w is not None
    assert not holds(w, n1).holds

    # no Latin N1 model of order <= 4 lacks an identity (Kunen's theorem)
    for n in range(1, 5):
        assert find_witness(SearchSpec(n, required_identities=(n1,),
                                       forbid_identity_element=True)) is None


def test_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(8)
    with pytest.raises(ValueError):
        SearchSpec(0)
    with pytest.raises(ValueError):
        SearchSpec(3, reduced_only=True, up_to_iso=True)
    with pytest.raises(ValueError):
        SearchSpec(4, require_latin=False)
    with pytest.raises(ValueError):
        SearchSpec(3, require_latin=False,
                   required_identities=(parse_identity("x*(x\\y) = y"),))


def test_random_latin_square():
    rng = random.Random(5)
    for n in (1, 2, 5, 6):
        t = random_latin_square(n, rng)
        assert check_latin(t).is_quasigroup
