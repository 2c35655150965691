"""Group backends over which all dynamics is computed.

Three kinds of context: finite groups given by explicit multiplication
tables, the additive integers, and binary products of the other two.
Elements are raw values (table indices, ints, pairs) validated against
their context. Contexts are immutable after construction and safe to
share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass


class BackendMismatch(ValueError):
    """An element or set was used with a context it does not belong to."""


class Group:
    """Common interface for the computable group backends."""

    identity = None

    def compose(self, g, h):
        raise NotImplementedError

    def invert(self, g):
        raise NotImplementedError

    def is_element(self, g) -> bool:
        raise NotImplementedError

    def check_element(self, g):
        if not self.is_element(g):
            raise BackendMismatch(f"{g!r} is not an element of {self}")
        return g

    @property
    def is_finite(self) -> bool:
        return False


class FiniteGroup(Group):
    """Finite group presented by a full multiplication table.

    The table is row major: ``table[i][j]`` is the index of the product of
    elements ``i`` and ``j``. Group axioms (identity, inverses, exhaustive
    associativity) are verified on construction, so holding a FiniteGroup
    is a proof that the table is a group.
    """

    def __init__(self, table, name: str | None = None):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0:
            raise ValueError("empty multiplication table")
        for row in table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise ValueError("table is not a square array of element indices")
        ident = None
        for e in range(n):
            if all(table[e][x] == x == table[x][e] for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("table has no identity element")
        inverse = []
        for g in range(n):
            inv_g = None
            for h in range(n):
                if table[g][h] == ident and table[h][g] == ident:
                    inv_g = h
                    break
            if inv_g is None:
                raise ValueError(f"element {g} has no inverse")
            inverse.append(inv_g)
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                row_b = table[b]
                for c in range(n):
                    if table[ab][c] != table[a][row_b[c]]:
                        raise ValueError(f"table is not associative at ({a},{b},{c})")
        self.order = n
        self.table = table
        self.inverse = tuple(inverse)
        self.identity = ident
        self.name = name or f"finite{n}"

    @property
    def is_finite(self) -> bool:
        return True

    def elements(self) -> range:
        return range(self.order)

    def compose(self, g, h):
        return self.table[self.check_element(g)][self.check_element(h)]

    def invert(self, g):
        return self.inverse[self.check_element(g)]

    def is_element(self, g) -> bool:
        return isinstance(g, int) and not isinstance(g, bool) and 0 <= g < self.order

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


class IntegerGroup(Group):
    """The integers under addition."""

    identity = 0

    def compose(self, g, h):
        return self.check_element(g) + self.check_element(h)

    def invert(self, g):
        return -self.check_element(g)

    def is_element(self, g) -> bool:
        return isinstance(g, int) and not isinstance(g, bool)

    def __eq__(self, other):
        return isinstance(other, IntegerGroup)

    def __hash__(self):
        return hash(IntegerGroup)

    def __repr__(self):
        return "IntegerGroup()"


INTEGERS = IntegerGroup()


class ProductGroup(Group):
    """Binary product of two non-product backends, elements are pairs.

    Nesting is kept shallow on purpose: neither factor may itself be a
    product.
    """

    def __init__(self, left: Group, right: Group):
        if isinstance(left, ProductGroup) or isinstance(right, ProductGroup):
            raise ValueError("products nest at most one level deep")
        self.left = left
        self.right = right
        self.identity = (left.identity, right.identity)

    @property
    def is_finite(self) -> bool:
        return self.left.is_finite and self.right.is_finite

    def compose(self, g, h):
        self.check_element(g)
        self.check_element(h)
        return (self.left.compose(g[0], h[0]), self.right.compose(g[1], h[1]))

    def invert(self, g):
        self.check_element(g)
        return (self.left.invert(g[0]), self.right.invert(g[1]))

    def is_element(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == 2
            and self.left.is_element(g[0])
            and self.right.is_element(g[1])
        )

    def elements(self):
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite product")
        return [(a, b) for a in self.left.elements() for b in self.right.elements()]

    def __eq__(self, other):
        return (
            isinstance(other, ProductGroup)
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash((ProductGroup, self.left, self.right))

    def __repr__(self):
        return f"ProductGroup({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Subgroup:
    """Subgroup descriptor: a congruence nZ of the integers, or an explicit
    finite element set."""

    modulus: int | None = None
    elements: frozenset | None = None

    @staticmethod
    def congruence(n: int) -> "Subgroup":
        if n < 1:
            raise ValueError("congruence modulus must be positive")
        return Subgroup(modulus=n)

    @staticmethod
    def of_elements(elems) -> "Subgroup":
        return Subgroup(elements=frozenset(elems))

    def to_json(self):
        if self.modulus is not None:
            return {"kind": "congruence", "modulus": self.modulus}
        return {"kind": "elements", "elements": sorted(self.elements)}


# ---------------------------------------------------------------------------
# bundled finite groups (identity always at index 0)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=f"c{n}")


def klein_four_group() -> FiniteGroup:
    # xor on two bits
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return FiniteGroup(table, name="v4")


def symmetric_group_3() -> FiniteGroup:
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(3))] for q in perms]
        for p in perms
    ]
    return FiniteGroup(table, name="s3")


def dihedral_group_8() -> FiniteGroup:
    # elements r^a s^b with a < 4, b < 2, index a + 4b; s r = r^-1 s
    def mul(x, y):
        a, b = x % 4, x // 4
        c, d = y % 4, y // 4
        return (a + (c if b == 0 else -c)) % 4 + 4 * ((b + d) % 2)

    table = [[mul(i, j) for j in range(8)] for i in range(8)]
    return FiniteGroup(table, name="d4")


def quaternion_group_8() -> FiniteGroup:
    # index 2u + s: u in (e, i, j, k), s = 0 for +, 1 for -
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(x, y):
        su, u = (-1 if x % 2 else 1), x // 2
        sv, v = (-1 if y % 2 else 1), y // 2
        sw, w = unit_mul[(u, v)]
        s = su * sv * sw
        return 2 * w + (0 if s > 0 else 1)

    table = [[mul(i, j) for j in range(8)] for i in range(8)]
    return FiniteGroup(table, name="q8")


def bundled_small_groups() -> list[FiniteGroup]:
    """Finite groups of order 2 through 8 shipped with the tool."""
    return [
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        klein_four_group(),
        cyclic_group(5),
        cyclic_group(6),
        symmetric_group_3(),
        cyclic_group(7),
        cyclic_group(8),
        dihedral_group_8(),
        quaternion_group_8(),
    ]


_BUNDLED_BY_NAME = None


def bundled_group(name: str) -> FiniteGroup:
    global _BUNDLED_BY_NAME
    if _BUNDLED_BY_NAME is None:
        _BUNDLED_BY_NAME = {g.name: g for g in bundled_small_groups()}
        _BUNDLED_BY_NAME["c1"] = cyclic_group(1)
    if name not in _BUNDLED_BY_NAME:
        raise ValueError(f"unknown bundled group {name!r}")
    return _BUNDLED_BY_NAME[name]


# ---------------------------------------------------------------------------
# scenario (de)serialization


def group_to_json(ctx: Group):
    if isinstance(ctx, IntegerGroup):
        return {"kind": "integers"}
    if isinstance(ctx, FiniteGroup):
        return {"kind": "finite", "name": ctx.name, "table": [list(r) for r in ctx.table]}
    if isinstance(ctx, ProductGroup):
        return {"kind": "product", "left": group_to_json(ctx.left), "right": group_to_json(ctx.right)}
    raise TypeError(f"not a group context: {ctx!r}")


def group_from_json(obj) -> Group:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("group spec must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "integers":
        return INTEGERS
    if kind == "finite":
        return FiniteGroup(obj["table"], name=obj.get("name"))
    if kind == "cyclic":
        return cyclic_group(int(obj["order"]))
    if kind == "bundled":
        return bundled_group(obj["name"])
    if kind == "product":
        return ProductGroup(group_from_json(obj["left"]), group_from_json(obj["right"]))
    raise ValueError(f"unknown group kind {kind!r}")
