import pytest

from typeflow.defsets import (
    FiniteSubset,
    IntegerSet,
    congruence_set,
    difference_set,
    integer_ray,
    intersect,
    is_left_generic,
    member,
)
from typeflow.ellis import find_idempotents, star
from typeflow.flows import minimal_subflows
from typeflow.groups import INTEGERS, cyclic_group
from typeflow.oracle import (
    WindowUniverse,
    oracle_difference_set,
    oracle_equivariant_maps,
    oracle_equivariant_maps_brute,
    oracle_generic,
    oracle_idempotents,
    oracle_minimal_subflows,
    oracle_star,
)
from typeflow.typespace import LevelTypeSpace, Limit

EVENS = congruence_set(2, [0])


def test_window_sufficiency_guard():
    with pytest.raises(ValueError):
        oracle_difference_set(congruence_set(12, [0]), WindowUniverse(20))


def test_oracle_difference_set():
    universe = WindowUniverse(200)
    listed = oracle_difference_set(EVENS, universe)
    assert listed == list(range(-100, 101, 2))

    nonneg_evens = intersect(EVENS, integer_ray(1, 0))
    listed = oracle_difference_set(nonneg_evens, universe)
    diff = difference_set(nonneg_evens)
    assert listed == [t for t in range(-100, 101) if member(diff, t)]


def test_oracle_generic_finds_and_misses():
    found = oracle_generic(EVENS, max_translates=2, shift_bound=3, universe=WindowUniverse(60))
    assert found is not None and len(found) == 2

    ray = integer_ray(1, 0)
    assert oracle_generic(ray, max_translates=4, shift_bound=50, universe=WindowUniverse(200)) is None

    # agreement contract on a small mixed batch
    batch = [
        EVENS,
        congruence_set(3, [1]),
        congruence_set(4, [0, 3]),
        integer_ray(-1, 5),
        IntegerSet(1),
        IntegerSet(3, up=[0], down=[2], lo=0, hi=2, bits=[1, 1, 0]),
    ]
    for Y in batch:
        structural = is_left_generic(INTEGERS, Y).generic
        found = oracle_generic(Y, max_translates=10, shift_bound=25, universe=WindowUniverse(120))
        if found is not None:
            assert structural
        else:
            assert not structural


def test_oracle_star_matches_examples():
    from typeflow.typespace import Realized

    assert oracle_star(INTEGERS, Limit(-1, 1, 4), Limit(1, 2, 4), 4) == Limit(1, 3, 4)
    assert oracle_star(INTEGERS, Limit(1, 1, 4), Limit(-1, 2, 4), 4) == Limit(-1, 3, 4)
    # a realized right factor never outweighs a limit left factor
    huge = Realized(-(10**6) + 1)
    assert oracle_star(INTEGERS, Limit(1, 0, 2), huge, 2) == Limit(1, 1, 2)
    c3 = cyclic_group(3)
    assert oracle_star(c3, Realized(1), Realized(2), 1) == Realized(0)


def test_oracle_enumerations_at_4():
    assert len(oracle_minimal_subflows(INTEGERS, 4)) == 2
    assert set(oracle_minimal_subflows(INTEGERS, 4)) == set(minimal_subflows(INTEGERS, 4))
    assert oracle_idempotents(INTEGERS, 4) == find_idempotents(INTEGERS, 4)
    plus, minus = minimal_subflows(INTEGERS, 4)
    assert len(oracle_equivariant_maps(INTEGERS, 4, plus, minus)) == 4


def test_oracle_exhaustion_bound():
    with pytest.raises(ValueError):
        oracle_minimal_subflows(INTEGERS, 9)
    with pytest.raises(ValueError):
        oracle_equivariant_maps_brute(INTEGERS, 6, set(), set())


def test_brute_maps_certify_propagation():
    for n in (1, 2, 3, 4, 5):
        space = LevelTypeSpace(INTEGERS, n)
        plus = frozenset(p for p in space.limit_points() if p.sign > 0)
        fast = oracle_equivariant_maps(INTEGERS, n, plus, plus)
        brute = oracle_equivariant_maps_brute(INTEGERS, n, plus, plus)
        as_sets = lambda maps: {tuple(sorted(((k.residue, v.residue) for k, v in f.items()))) for f in maps}
        assert as_sets(fast) == as_sets(brute)


def test_oracle_agreement_with_structured_star():
    for n in (1, 2, 3, 4, 6, 8):
        pts = LevelTypeSpace(INTEGERS, n).limit_points()
        for p in pts:
            for q in pts:
                assert oracle_star(INTEGERS, p, q, n) == star(INTEGERS, p, q)
