import pytest

from typeflow.groups import (
    BackendMismatch,
    FiniteGroup,
    INTEGERS,
    ProductGroup,
    bundled_small_groups,
    cyclic_group,
    dihedral_group_8,
    group_from_json,
    group_to_json,
    quaternion_group_8,
    symmetric_group_3,
)


def test_compose_examples():
    assert INTEGERS.compose(3, 4) == 7
    c3 = cyclic_group(3)
    assert c3.compose(1, 2) == 0
    prod = ProductGroup(INTEGERS, cyclic_group(2))
    assert prod.compose((1, 1), (2, 1)) == (3, 0)


def test_invert_examples():
    assert INTEGERS.invert(5) == -5
    c3 = cyclic_group(3)
    assert c3.invert(1) == 2
    assert c3.invert(c3.identity) == c3.identity


def test_invert_is_involution():
    for g in bundled_small_groups():
        for x in g.elements():
            assert g.invert(g.invert(x)) == x
    for x in (-9, 0, 14):
        assert INTEGERS.invert(INTEGERS.invert(x)) == x


def test_associativity_exhaustive_small_orders():
    for g in bundled_small_groups():
        if g.order > 12:
            continue
        for a in g.elements():
            for b in g.elements():
                for c in g.elements():
                    assert g.compose(g.compose(a, b), c) == g.compose(a, g.compose(b, c))


def test_identity_neutral():
    for g in bundled_small_groups():
        for x in g.elements():
            assert g.compose(g.identity, x) == x
            assert g.compose(x, g.identity) == x


def test_bundled_covers_orders_2_through_8():
    orders = sorted(g.order for g in bundled_small_groups())
    assert set(orders) == set(range(2, 9))
    # identity sits at index 0 in every bundled table
    assert all(g.identity == 0 for g in bundled_small_groups())


def test_nonabelian_tables_are_groups():
    s3 = symmetric_group_3()
    d4 = dihedral_group_8()
    q8 = quaternion_group_8()
    assert s3.order == 6 and d4.order == 8 and q8.order == 8
    assert any(s3.compose(a, b) != s3.compose(b, a) for a in s3.elements() for b in s3.elements())
    # q8 has a unique element of order 2
    squares = [x for x in q8.elements() if x != 0 and q8.compose(x, x) == 0]
    assert len(squares) == 1


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]])  # 1 has no inverse / not latin
    with pytest.raises(ValueError):
        FiniteGroup([[1, 0], [0, 0]])  # no identity behaves
    with pytest.raises(ValueError):
        FiniteGroup([])


def test_context_mismatch_errors():
    c3 = cyclic_group(3)
    with pytest.raises(BackendMismatch):
        c3.compose(1, 5)
    with pytest.raises(BackendMismatch):
        INTEGERS.compose(1, (2, 3))
    prod = ProductGroup(INTEGERS, c3)
    with pytest.raises(BackendMismatch):
        prod.compose((1, 1), 5)


def test_product_depth_limited():
    prod = ProductGroup(INTEGERS, cyclic_group(2))
    with pytest.raises(ValueError):
        ProductGroup(prod, INTEGERS)


def test_group_json_round_trip():
    for ctx in [INTEGERS, cyclic_group(5), ProductGroup(INTEGERS, symmetric_group_3())]:
        assert group_from_json(group_to_json(ctx)) == ctx
