"""Definable flows at desk scale.

Finite flow presentations (a carrier acted on by bijections, optionally
with a distinguished dense-orbit point), the morphism from the level type
space onto any such pointed flow, minimal subflows, left ideals for the
semigroup product, and the constructive uniqueness of the universal
minimal flow.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .ellis import star
from .groups import BackendMismatch, FiniteGroup, Group, IntegerGroup, Subgroup
from .typespace import (
    LevelError,
    LevelTypeSpace,
    Limit,
    Realized,
    apply_group,
    limit_of,
    point_key,
)


def _is_permutation(seq, size: int) -> bool:
    return len(seq) == size and sorted(seq) == list(range(size))


def _perm_compose(p, q):
    return tuple(p[q[x]] for x in range(len(p)))


def _orbit_cycle(pi, start: int) -> list[int]:
    cycle = [start]
    x = pi[start]
    while x != start:
        if len(cycle) > len(pi):
            raise ValueError("map is not a bijection: orbit does not close")
        cycle.append(x)
        x = pi[x]
    return cycle


class FiniteFlowPresentation:
    """A finite carrier with a group action and an optional base point.

    Over the integers the action is generated by a single map ``pi`` (the
    action of 1); over a finite backend a permutation is supplied for every
    group element. Construction checks shapes only; `check_definable_flow`
    performs the axiom checks.
    """

    def __init__(self, ctx: Group, size: int, pi=None, action=None, base=None):
        if size < 1:
            raise ValueError("carrier must be nonempty")
        self.ctx = ctx
        self.size = size
        if isinstance(ctx, IntegerGroup):
            if pi is None or action is not None:
                raise ValueError("integer flows are given by a single map pi")
            pi = tuple(int(x) for x in pi)
            if len(pi) != size or any(not 0 <= x < size for x in pi):
                raise ValueError("pi is not a map of the carrier")
            self.pi = pi
            self.action = None
        elif isinstance(ctx, FiniteGroup):
            if action is None or pi is not None:
                raise ValueError("finite-backend flows are given by one permutation per element")
            action = tuple(tuple(int(x) for x in row) for row in action)
            if len(action) != ctx.order or any(
                len(row) != size or any(not 0 <= x < size for x in row) for row in action
            ):
                raise ValueError("action table has the wrong shape")
            self.action = action
            self.pi = None
        else:
            raise BackendMismatch("flows are provided for integer and finite backends")
        if base is not None and not 0 <= base < size:
            raise ValueError("base point outside the carrier")
        self.base = base
        self._order = None

    def act(self, g, x: int) -> int:
        self.ctx.check_element(g)
        if self.pi is not None:
            for _ in range(g % self._pi_order()):
                x = self.pi[x]
            return x
        return self.action[g][x]

    def _pi_order(self) -> int:
        if self._order is None:
            order = 1
            seen: set[int] = set()
            for x in range(self.size):
                if x in seen:
                    continue
                cycle = _orbit_cycle(self.pi, x)
                seen.update(cycle)
                order = order * len(cycle) // gcd(order, len(cycle))
            self._order = order
        return self._order

    def __repr__(self):
        kind = "integer" if self.pi is not None else "finite"
        return f"FiniteFlowPresentation({kind}, size={self.size}, base={self.base})"


@dataclass(frozen=True)
class FlowVerdict:
    valid: bool
    ambit: bool | None
    orbit_periods: tuple


def check_definable_flow(F: FiniteFlowPresentation) -> FlowVerdict:
    """Verify the flow axioms and report orbit periods.

    Raises ValueError for a non-bijective generator or a homomorphism
    violation. A present base point with a non-dense orbit is a valid flow
    that fails the ambit condition, reported in the verdict.
    """
    if F.pi is not None:
        if not _is_permutation(F.pi, F.size):
            raise ValueError("generator is not a bijection of the carrier")
        periods = tuple(len(_orbit_cycle(F.pi, x)) for x in range(F.size))
    else:
        ctx = F.ctx
        for g, row in enumerate(F.action):
            if not _is_permutation(row, F.size):
                raise ValueError(f"element {g} does not act by a bijection")
        ident = tuple(range(F.size))
        if F.action[ctx.identity] != ident:
            raise ValueError("identity element does not act trivially")
        for g in ctx.elements():
            for h in ctx.elements():
                if F.action[ctx.table[g][h]] != _perm_compose(F.action[g], F.action[h]):
                    raise ValueError(f"action is not a homomorphism at ({g},{h})")
        periods = tuple(len({F.action[g][x] for g in ctx.elements()}) for x in range(F.size))
    ambit = None
    if F.base is not None:
        orbit = _flow_orbit(F, F.base)
        ambit = len(orbit) == F.size
    return FlowVerdict(valid=True, ambit=ambit, orbit_periods=periods)


def _flow_orbit(F: FiniteFlowPresentation, x: int) -> set[int]:
    if F.pi is not None:
        return set(_orbit_cycle(F.pi, x))
    return {F.action[g][x] for g in F.ctx.elements()}


def minimal_subflows_of_flow(F: FiniteFlowPresentation) -> list[frozenset[int]]:
    """Minimal closed invariant subsets of a finite flow: its orbits."""
    seen: set[int] = set()
    out = []
    for x in range(F.size):
        if x in seen:
            continue
        orbit = _flow_orbit(F, x)
        seen.update(orbit)
        out.append(frozenset(orbit))
    return sorted(out, key=min)


def minimal_subflows(ctx: Group, level: int) -> list[frozenset]:
    """Minimal subflows of the level type space.

    Over the integers these are the two sign circles of the limit part
    (any closed invariant set touching the realized part is everything).
    Over a finite backend the space is the group acting on itself, a
    single orbit.
    """
    space = LevelTypeSpace(ctx, level if isinstance(ctx, IntegerGroup) else 1)
    if isinstance(ctx, FiniteGroup):
        return [frozenset(space.realized_points())]
    n = space.modulus
    plus = frozenset(Limit(1, r, n) for r in range(n))
    minus = frozenset(Limit(-1, r, n) for r in range(n))
    return [plus, minus]


def is_left_ideal(ctx: Group, level: int, points) -> bool:
    """Is the set closed under left star multiplication by the whole space?

    Limit left factors are checked exhaustively; realized left factors act
    through the group action, so they require the full sign circle of each
    member. A realized member forces unboundedly many realized products
    and can never sit inside a finite descriptor.
    """
    S = frozenset(points)
    if not S:
        return False
    if isinstance(ctx, FiniteGroup):
        whole = frozenset(Realized(g) for g in ctx.elements())
        return S == whole
    for p in S:
        if isinstance(p, Realized):
            return False
        if p.modulus != level:
            raise LevelError(f"point at level {p.modulus} in a level-{level} check")
    space = LevelTypeSpace(ctx, level)
    for l in S:
        circle = {Limit(l.sign, r, level) for r in range(level)}
        if not circle <= S:
            return False
        for s in space.limit_points():
            if star(ctx, s, l) not in S:
                return False
    return True


# ---------------------------------------------------------------------------
# the morphism from the level space onto a pointed flow


@dataclass
class AmbitMorphism:
    """The unique equivariant map from the level space onto a pointed flow.

    Realized points go to their orbit position; limit points go to the
    stable value of the orbit map along any witness sequence.
    """

    flow: FiniteFlowPresentation
    level: int
    orbit_period: int
    realized_images: tuple
    limit_images: dict

    def apply(self, p):
        if isinstance(p, Realized):
            return self.realized_images[p.value % self.orbit_period]
        return self.limit_images[p]

    def certify(self) -> dict:
        F = self.flow
        ctx = F.ctx
        surjective = set(self.realized_images) | set(self.limit_images.values())
        checks = {"surjective": surjective >= set(range(F.size))}
        if isinstance(ctx, IntegerGroup):
            equivariant = True
            for p in list(self.limit_images) + [Realized(v) for v in range(-8, 9)]:
                if self.apply(apply_group(ctx, 1, p)) != F.pi[self.apply(p)]:
                    equivariant = False
            stable = True
            for p in self.limit_images:
                _, witness = limit_of(p.sign, p.residue, p.modulus)
                values = {self.apply(Realized(a)) for a in witness(count=4, start=3)}
                if values != {self.limit_images[p]}:
                    stable = False
            checks["equivariant"] = equivariant
            checks["limits_stable_on_witnesses"] = stable
            # realized values are forced by equivariance from the base point,
            # and limit values by continuity, so agreement there is uniqueness
            checks["unique"] = equivariant and stable
        else:
            equivariant = all(
                self.realized_images[ctx.table[g][h]] == F.action[g][self.realized_images[h]]
                for g in ctx.elements()
                for h in ctx.elements()
            )
            checks["equivariant"] = equivariant
            checks["unique"] = equivariant
        return checks


def universal_ambit_morphism(level: int, F: FiniteFlowPresentation) -> AmbitMorphism:
    """Build the unique base-point-preserving map of the level space onto F.

    Requires F to be a valid pointed flow with dense orbit. Over the
    integers the orbit period of the base must divide the level, otherwise
    the limit values do not stabilize and a "level too coarse" error is
    raised.
    """
    if F.base is None:
        raise ValueError("a pointed flow is required")
    verdict = check_definable_flow(F)
    if not verdict.ambit:
        raise ValueError("base point orbit is not dense in the carrier")
    ctx = F.ctx
    if isinstance(ctx, IntegerGroup):
        cycle = _orbit_cycle(F.pi, F.base)
        d = len(cycle)
        if level % d != 0:
            raise LevelError(f"level too coarse: orbit period {d} does not divide level {level}")
        realized = tuple(cycle[r % d] for r in range(d))
        limits = {}
        for p in LevelTypeSpace(ctx, level).limit_points():
            limits[p] = cycle[p.residue % d]
        return AmbitMorphism(F, level, d, realized, limits)
    realized = tuple(F.action[g][F.base] for g in ctx.elements())
    return AmbitMorphism(F, 1, ctx.order, realized, {})


# ---------------------------------------------------------------------------
# universal minimal flow and its uniqueness isomorphisms


@dataclass
class SubflowIsomorphism:
    source: frozenset
    target: frozenset
    t: object
    s: object
    forward: dict
    backward: dict

    def certify(self, ctx: Group) -> dict:
        fwd_bijective = set(self.forward.values()) == set(self.target) and len(
            set(self.forward.values())
        ) == len(self.forward)
        round_trip = all(self.backward[self.forward[p]] == p for p in self.source)
        round_trip_back = all(self.forward[self.backward[q]] == q for q in self.target)
        equivariant = True
        if isinstance(ctx, IntegerGroup):
            for p in self.source:
                if self.forward[apply_group(ctx, 1, p)] != apply_group(ctx, 1, self.forward[p]):
                    equivariant = False
        return {
            "bijective": fwd_bijective,
            "mutually_inverse": round_trip and round_trip_back,
            "equivariant": equivariant,
        }


@dataclass
class UniversalMinimalFlow:
    """One minimal subflow of the level space with an isomorphism builder.

    Any other minimal subflow is isomorphic to it through a right
    translation: pick t in the other subflow, find s here with t * s equal
    to this subflow's idempotent, and the two right translations invert
    each other.
    """

    ctx: Group
    level: int
    subflow: frozenset
    idempotent: object

    def isomorphism_to(self, other) -> SubflowIsomorphism:
        other = frozenset(other)
        if isinstance(self.ctx, FiniteGroup):
            if other != self.subflow:
                raise ValueError("a finite backend has a single minimal subflow")
            ident = {p: p for p in self.subflow}
            return SubflowIsomorphism(self.subflow, other, self.idempotent, self.idempotent, ident, dict(ident))
        t = min(other, key=point_key)
        s = None
        for cand in sorted(self.subflow, key=point_key):
            if star(self.ctx, t, cand) == self.idempotent:
                s = cand
                break
        if s is None:
            raise AssertionError("no right inverse found; subflow is not minimal")
        forward = {p: star(self.ctx, p, t) for p in self.subflow}
        backward = {q: star(self.ctx, q, s) for q in other}
        return SubflowIsomorphism(self.subflow, other, t, s, forward, backward)


def universal_minimal_flow(ctx: Group, level: int) -> UniversalMinimalFlow:
    flows = minimal_subflows(ctx, level)
    subflow = flows[0]
    if isinstance(ctx, FiniteGroup):
        return UniversalMinimalFlow(ctx, 1, subflow, Realized(ctx.identity))
    idem = Limit(1, 0, level)
    return UniversalMinimalFlow(ctx, level, subflow, idem)


# ---------------------------------------------------------------------------
# extension of eventually periodic maps to the level space


class EventuallyPeriodicMap:
    """A map from the integers to a finite value set, periodic toward both
    infinities with finitely many exceptional values."""

    def __init__(self, period: int, up_values, down_values, window=None):
        if period < 1:
            raise ValueError("period must be at least 1")
        self.period = period
        self.up_values = tuple(up_values)
        self.down_values = tuple(down_values)
        if len(self.up_values) != period or len(self.down_values) != period:
            raise ValueError("value tuples must have length equal to the period")
        self.window = dict(window or {})

    def at(self, x: int):
        if x in self.window:
            return self.window[x]
        if x >= 0:
            return self.up_values[x % self.period]
        return self.down_values[x % self.period]


@dataclass
class ExtendedMap:
    """The unique extension of an eventually periodic map to type points."""

    base: EventuallyPeriodicMap
    level: int

    def apply(self, p):
        if isinstance(p, Realized):
            return self.base.at(p.value)
        values = self.base.up_values if p.sign > 0 else self.base.down_values
        return values[p.residue % self.base.period]

    def certify(self) -> dict:
        """Limit values are singleton limits along witness sequences."""
        escape = max((abs(k) for k in self.base.window), default=0) // self.level + 2
        stable = True
        for r in range(self.level):
            for sign in (1, -1):
                p, witness = limit_of(sign, r, self.level)
                seen = {self.base.at(a) for a in witness(count=4, start=escape)}
                if seen != {self.apply(p)}:
                    stable = False
        return {"singleton_limits": stable}


def extend_definable_map(f: EventuallyPeriodicMap, level: int) -> ExtendedMap:
    if level % f.period != 0:
        raise LevelError(f"map period {f.period} does not divide level {level}")
    return ExtendedMap(f, level)


# ---------------------------------------------------------------------------
# kernels


def kernel_of_action(ctx: Group, level: int) -> Subgroup:
    """Elements acting as the identity on the level minimal subflows."""
    if isinstance(ctx, FiniteGroup):
        return Subgroup.of_elements({ctx.identity})
    return Subgroup.congruence(level)


def kernel_of_flow(F: FiniteFlowPresentation) -> Subgroup:
    if F.pi is not None:
        return Subgroup.congruence(F._pi_order())
    ident = tuple(range(F.size))
    return Subgroup.of_elements(g for g in F.ctx.elements() if F.action[g] == ident)


# ---------------------------------------------------------------------------
# scenario (de)serialization


def flow_from_json(ctx: Group, obj) -> FiniteFlowPresentation:
    if not isinstance(obj, dict) or "carrier" not in obj:
        raise ValueError("flow spec must be an object with a 'carrier' field")
    size = int(obj["carrier"])
    base = obj.get("base")
    if base is not None:
        base = int(base)
    if "pi" in obj:
        return FiniteFlowPresentation(ctx, size, pi=obj["pi"], base=base)
    if "action" in obj:
        return FiniteFlowPresentation(ctx, size, action=obj["action"], base=base)
    raise ValueError("flow spec needs 'pi' (integers) or 'action' (finite backend)")


def flow_to_json(F: FiniteFlowPresentation):
    obj = {"carrier": F.size}
    if F.pi is not None:
        obj["pi"] = list(F.pi)
    else:
        obj["action"] = [list(row) for row in F.action]
    if F.base is not None:
        obj["base"] = F.base
    return obj
