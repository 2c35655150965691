"""Complete types over a backend at a finite congruence level.

A type point is either a realized group element (kept exact, never
quotiented into the level) or a limit point: a sign direction together
with a residue class at the level modulus. Limit points exist only over
the integers; finite backends admit realized points only. The level
topology: realized points are isolated, every subset of the limit part is
closed, and a limit point is the limit of any integer sequence escaping in
its direction within its residue class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .defsets import IntegerSet, congruence_set, member, right_translate
from .groups import BackendMismatch, FiniteGroup, Group, IntegerGroup


class LevelError(ValueError):
    """Level and set period (or target level) are incompatible."""


@dataclass(frozen=True)
class Realized:
    """The type of an actual group element."""

    value: object


@dataclass(frozen=True)
class Limit:
    """A nonrealized complete type at a level: sign direction and residue."""

    sign: int
    residue: int
    modulus: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.modulus < 1:
            raise ValueError("modulus must be at least 1")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue out of range for modulus")


def point_key(p):
    """Deterministic ordering: + circle first, then residues ascending."""
    if isinstance(p, Limit):
        return (1, 0 if p.sign > 0 else 1, p.residue)
    return (0, p.value)


def contains(p, Y) -> bool:
    """Does the definable set Y belong to the type p?

    Realized points test actual membership. A limit point tests the
    eventual residue pattern of Y in its direction, which requires Y's
    period to divide the point's level.
    """
    if isinstance(p, Realized):
        return member(Y, p.value)
    if not isinstance(p, Limit):
        raise TypeError(f"not a type point: {p!r}")
    if not isinstance(Y, IntegerSet):
        raise BackendMismatch("limit points live over the integers")
    if p.modulus % Y.period != 0:
        raise LevelError(
            f"set period {Y.period} does not divide level {p.modulus}"
        )
    return (p.residue % Y.period) in Y.pattern(p.sign)


def restrict(p, m: int):
    """Project a type point to a coarser level; m must divide the level."""
    if isinstance(p, Realized):
        return p
    if p.modulus % m != 0:
        raise LevelError(f"{m} does not divide level {p.modulus}")
    return Limit(p.sign, p.residue % m, m)


def apply_group(ctx: Group, g, p):
    """The group action on type points, a level-preserving bijection."""
    ctx.check_element(g)
    if isinstance(p, Realized):
        return Realized(ctx.compose(g, p.value))
    if not isinstance(ctx, IntegerGroup):
        raise BackendMismatch("limit points live over the integers")
    return Limit(p.sign, (p.residue + g) % p.modulus, p.modulus)


def acting_set(ctx: Group, p, Y):
    """The definable set {g : Y belongs to g.p}.

    This is the executable content of definability of the type p: the
    answer is always a canonical definable set for these backends.
    """
    if isinstance(p, Realized):
        # g.p realized at g.a, so the condition is g.a in Y
        return right_translate(ctx.invert(p.value), Y)
    if not isinstance(ctx, IntegerGroup):
        raise BackendMismatch("limit points live over the integers")
    if not isinstance(Y, IntegerSet):
        raise BackendMismatch("expected an integer set")
    if p.modulus % Y.period != 0:
        raise LevelError(f"set period {Y.period} does not divide level {p.modulus}")
    pat = Y.pattern(p.sign)
    return congruence_set(Y.period, [(r - p.residue) % Y.period for r in pat])


def limit_of(sign: int, residue: int, modulus: int):
    """A limit point together with a witness sequence converging to it.

    The witness terms are residue + sign * k * modulus for k = 0, 1, ...;
    they stay in the residue class and escape in the sign direction, hence
    converge in the level topology.
    """
    point = Limit(sign, residue % modulus, modulus)

    def witness(count: int = 8, start: int = 0):
        return [point.residue + sign * k * modulus for k in range(start, start + count)]

    return point, witness


class LevelTypeSpace:
    """The type space truncated at a congruence level.

    The finite limit part is {+,-} x Z/n for the integers and empty for
    finite backends (which only have the trivial level 1). The realized
    part is kept symbolic. Any closed invariant set containing a realized
    point is the whole space, so subflow machinery works on the limit part.
    """

    def __init__(self, ctx: Group, modulus: int = 1):
        if modulus < 1:
            raise ValueError("level modulus must be at least 1")
        if isinstance(ctx, FiniteGroup) and modulus != 1:
            raise LevelError("finite backends have only the trivial level 1")
        if not isinstance(ctx, (FiniteGroup, IntegerGroup)):
            raise BackendMismatch("type spaces are provided for integer and finite backends")
        self.ctx = ctx
        self.modulus = modulus

    def limit_points(self) -> list[Limit]:
        if isinstance(self.ctx, FiniteGroup):
            return []
        n = self.modulus
        return [Limit(1, r, n) for r in range(n)] + [Limit(-1, r, n) for r in range(n)]

    def realized_points(self) -> list[Realized]:
        """The realized part; only enumerable for finite backends."""
        if isinstance(self.ctx, FiniteGroup):
            return [Realized(g) for g in self.ctx.elements()]
        raise ValueError("the realized part over the integers is infinite")

    def is_invariant(self, points) -> bool:
        """Invariance of a limit-part subset under the group action."""
        pts = frozenset(points)
        if isinstance(self.ctx, FiniteGroup):
            moved = {apply_group(self.ctx, g, p) for g in self.ctx.elements() for p in pts}
            return moved <= pts
        moved = {apply_group(self.ctx, 1, p) for p in pts}
        return moved <= pts

    def is_closed_invariant(self, points) -> bool:
        pts = frozenset(points)
        if isinstance(self.ctx, FiniteGroup):
            # discrete space: closedness is free
            return self.is_invariant(pts)
        # over the integers every limit-part subset is closed, while a finite
        # descriptor holding a realized point can never be invariant
        if any(isinstance(p, Realized) for p in pts):
            return False
        return self.is_invariant(pts)

    def standard_family(self) -> list[IntegerSet]:
        """A probe family of definable sets whose periods divide the level."""
        if isinstance(self.ctx, FiniteGroup):
            raise ValueError("probe family is for the integer backend")
        n = self.modulus
        family = []
        for d in range(1, n + 1):
            if n % d:
                continue
            for r in range(d):
                family.append(congruence_set(d, [r]))
        family.append(IntegerSet(1, up=[0], down=(), lo=0, hi=-1, bits=()))
        family.append(IntegerSet(1, up=(), down=[0], lo=1, hi=0, bits=()))
        return family

    def __repr__(self):
        return f"LevelTypeSpace({self.ctx!r}, modulus={self.modulus})"


def point_to_json(p):
    if isinstance(p, Realized):
        value = list(p.value) if isinstance(p.value, tuple) else p.value
        return {"kind": "realized", "value": value}
    return {
        "kind": "limit",
        "sign": "+" if p.sign > 0 else "-",
        "res": p.residue,
        "mod": p.modulus,
    }


def point_from_json(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("type point must be an object with a 'kind' field")
    if obj["kind"] == "realized":
        value = obj["value"]
        if isinstance(value, list):
            value = tuple(value)
        return Realized(value)
    if obj["kind"] == "limit":
        sign = {"+": 1, "-": -1}.get(obj["sign"])
        if sign is None:
            raise ValueError(f"bad sign {obj['sign']!r}")
        return Limit(sign, int(obj["res"]), int(obj["mod"]))
    raise ValueError(f"unknown type point kind {obj['kind']!r}")
