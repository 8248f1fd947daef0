import random

import pytest

from quasicheck import (
    BijectionFamily,
    EndoMap,
    Quasigroup,
    check_regularity,
    collapse_check,
    generated_partition,
    left_translations,
    random_latin_square,
    right_translations,
)
from util import all_quasigroups_upto


def fam(*members, labels=None):
    n = len(members[0])
    labels = labels or tuple(f"m{i}" for i in range(len(members)))
    return BijectionFamily(n, tuple(tuple(m) for m in members), tuple(labels))


def test_translations(qz3plus, qz3minus):
    assert left_translations(qz3plus).members[1] == (1, 2, 0)
    assert left_translations(qz3minus).members[1] == (1, 0, 2)
    assert right_translations(qz3minus).members[1] == (2, 0, 1)
    assert left_translations(qz3plus).labels[1] == "L_1"


def test_family_rejects_non_bijection():
    with pytest.raises(ValueError):
        fam((0, 0, 1))


def test_check_regularity(qz3plus, qz3minus, const2):
    assert check_regularity(qz3plus, 2)
    assert check_regularity(qz3minus, 0)
    assert not check_regularity(const2, 0)


def test_generated_partition_examples(qz3minus):
    p = generated_partition(3, left_translations(qz3minus))
    assert p.num_blocks == 1

    p = generated_partition(2, fam((0, 1)))
    assert p.blocks() == [[0], [1]]

    p = generated_partition(4, fam((1, 0, 2, 3), (0, 1, 3, 2)))
    assert p.blocks() == [[0, 1], [2, 3]]


def test_generated_partition_member_order_independent():
    rng = random.Random(3)
    members = [(1, 0, 2, 3, 4), (0, 1, 3, 2, 4), (0, 1, 2, 3, 4)]
    base = generated_partition(5, fam(*members))
    for _ in range(10):
        rng.shuffle(members)
        assert generated_partition(5, fam(*members)) == base


def test_one_block_for_all_small_quasigroups():
    for n, q in all_quasigroups_upto(4):
        assert generated_partition(n, left_translations(q)).num_blocks == 1
        assert generated_partition(n, right_translations(q)).num_blocks == 1


def test_one_block_sampled_orders_five_six():
    rng = random.Random(11)
    for n in (5, 6):
        for _ in range(25):
            q = Quasigroup.from_table(random_latin_square(n, rng))
            assert generated_partition(n, left_translations(q)).num_blocks == 1


def test_collapse_check_passes():
    v = collapse_check(EndoMap(2, (0, 0)), fam((0, 1), (1, 0)))
    assert v.idempotent_ok and v.transitivity_ok and v.coequalization_ok
    assert v.is_constant and v.constant_value == 0


def test_collapse_check_transitivity_failure():
    v = collapse_check(EndoMap(2, (0, 1)), fam((0, 1)))
    assert v.idempotent_ok
    assert not v.transitivity_ok
    assert v.transitivity_witness == (0, 1)
    assert not v.is_constant


def test_collapse_check_coequalization_witness_is_real():
    e = EndoMap(3, (0, 1, 1))  # idempotent, not constant
    family = fam((1, 2, 0), (0, 1, 2))
    v = collapse_check(e, family)
    assert not v.coequalization_ok
    i, x = v.coequalization_witness
    assert e.values[family.members[i][x]] != e.values[x]


def test_collapse_check_on_n1_quasigroups():
    from quasicheck import SearchSpec, builtin_n1, enumerate_tables, holds, identity_element, j_map

    n1 = builtin_n1()
    for n in range(1, 5):
        for t in enumerate_tables(SearchSpec(n, required_identities=(n1,))):
            q = Quasigroup.from_table(t)
            v = collapse_check(j_map(q), left_translations(q))
            assert v.idempotent_ok and v.transitivity_ok and v.coequalization_ok
            assert v.is_constant
            assert v.constant_value == identity_element(t)


def test_collapse_check_dimension_and_empty_errors():
    with pytest.raises(ValueError):
        collapse_check(EndoMap(2, (0, 0)), fam((0, 1, 2)))
    with pytest.raises(ValueError):
        EndoMap(0, ())


def random_idempotent(n, rng):
    if rng.random() < 0.6:
        return EndoMap(n, (rng.randrange(n),) * n)  # constant
    image = rng.sample(range(n), rng.randint(1, n))
    vals = [rng.choice(image) for _ in range(n)]
    for x in image:
        vals[x] = x  # idempotence forced on the image
    return EndoMap(n, tuple(vals))


def random_family(n, rng):
    members = []
    if rng.random() < 0.8:
        # rotations composed with a random relabeling: always transitive
        sigma = list(range(n))
        rng.shuffle(sigma)
        members = [tuple(sigma[(x + k) % n] for x in range(n)) for k in range(n)]
    for _ in range(rng.randint(0, 2)):
        perm = list(range(n))
        rng.shuffle(perm)
        members.append(tuple(perm))
    if not members:
        members.append(tuple(range(n)))
    labels = tuple(f"a{i}" for i in range(len(members)))
    return BijectionFamily(n, tuple(members), labels)


def _random_instance(rng):
    n = rng.randint(1, 6)
    return random_idempotent(n, rng), random_family(n, rng)


def test_collapse_lemma_randomized():
    """Whenever all three premises hold, the map must be constant (the
    assertion lives inside collapse_check; a violation raises)."""
    rng = random.Random(2024)
    qualifying = 0
    for _ in range(5000):
        e, family = _random_instance(rng)
        v = collapse_check(e, family)
        if v.idempotent_ok and v.transitivity_ok and v.coequalization_ok:
            qualifying += 1
            assert v.is_constant
    assert qualifying > 500
