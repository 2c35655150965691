"""Amenability and extreme amenability over the computable backends.

Invariant measures are exact rational weights. Extreme-amenability
verdicts are certificate based: a left generic set whose difference set
misses part of the group witnesses failure, and an exhausted search is
reported as exactly that, never as a proof. Every finite-level flow here
is a permutation action, so an invariant measure always exists and the
checks verify invariance rather than existence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .defsets import (
    FiniteSubset,
    IntegerSet,
    complement,
    congruence_set,
    difference_set,
    full_set,
    intersect,
    is_empty,
    is_left_generic,
    member,
    translate,
)
from .flows import FiniteFlowPresentation, minimal_subflows, minimal_subflows_of_flow
from .groups import FiniteGroup, Group, IntegerGroup, Subgroup
from .typespace import LevelError, LevelTypeSpace, Limit, Realized, apply_group, contains


class InvariantMeasure:
    """Exact rational probability weights on a level space or finite flow.

    Keys are type points (level spaces) or carrier indices (flows); the
    realized part of an integer level space carries weight zero and is not
    stored.
    """

    def __init__(self, weights):
        weights = {k: Fraction(v) for k, v in weights.items()}
        if any(w < 0 for w in weights.values()):
            raise ValueError("weights must be nonnegative")
        if sum(weights.values(), Fraction(0)) != 1:
            raise ValueError("weights must sum to one")
        self.weights = weights

    def weight(self, key) -> Fraction:
        return self.weights.get(key, Fraction(0))

    def mass_of(self, keys) -> Fraction:
        return sum((self.weight(k) for k in keys), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, InvariantMeasure) and self.weights == other.weights

    def __repr__(self):
        return f"InvariantMeasure({len(self.weights)} atoms)"


def invariant_measure(ctx: Group, level: int) -> InvariantMeasure:
    """Canonical invariant measure on the level space: equal weight on each
    minimal subflow, uniform inside each."""
    flows = minimal_subflows(ctx, level)
    share = Fraction(1, len(flows))
    weights = {}
    for flow in flows:
        per_point = share / len(flow)
        for p in flow:
            weights[p] = per_point
    return InvariantMeasure(weights)


def invariant_measure_of_flow(F: FiniteFlowPresentation) -> InvariantMeasure:
    orbits = minimal_subflows_of_flow(F)
    share = Fraction(1, len(orbits))
    weights = {}
    for orbit in orbits:
        for x in orbit:
            weights[x] = share / len(orbit)
    return InvariantMeasure(weights)


def verify_invariance(ctx: Group, level: int, mu: InvariantMeasure) -> bool:
    """Exact check that every group generator preserves every atom weight."""
    if isinstance(ctx, FiniteGroup):
        return all(
            mu.weight(apply_group(ctx, g, p)) == w
            for g in ctx.elements()
            for p, w in mu.weights.items()
        )
    return all(
        mu.weight(apply_group(ctx, 1, p)) == w for p, w in mu.weights.items()
    )


def pushforward_measure(ctx: Group, mu: InvariantMeasure, target_level: int) -> InvariantMeasure:
    """Image of a level measure under restriction to a divisor level."""
    out: dict = {}
    for p, w in mu.weights.items():
        if not isinstance(p, Limit):
            raise ValueError("pushforward is for level measures")
        if p.modulus % target_level != 0:
            raise LevelError(f"{target_level} does not divide level {p.modulus}")
        q = Limit(p.sign, p.residue % target_level, target_level)
        out[q] = out.get(q, Fraction(0)) + w
    return InvariantMeasure(out)


def fixed_points(ctx: Group, level: int) -> list:
    """Points of the level space fixed by the whole group."""
    if isinstance(ctx, FiniteGroup):
        if ctx.order == 1:
            return [Realized(ctx.identity)]
        return []
    space = LevelTypeSpace(ctx, level)
    return [p for p in space.limit_points() if apply_group(ctx, 1, p) == p]


def fixed_points_of_flow(F: FiniteFlowPresentation) -> list[int]:
    if F.pi is not None:
        return [x for x in range(F.size) if F.pi[x] == x]
    return [
        x
        for x in range(F.size)
        if all(F.action[g][x] == x for g in F.ctx.elements())
    ]


# ---------------------------------------------------------------------------
# the generated set family used by certificate searches


def generated_family(ctx: Group, max_modulus: int = 4):
    """Deterministic enumeration of probe sets.

    Integers: pure congruence-class sets of modulus up to the bound, in
    (modulus, residue-mask) order, deduplicated by canonical form. Finite
    backends: every nonempty subset in mask order.
    """
    if isinstance(ctx, IntegerGroup):
        seen = set()
        out = []
        for n in range(1, max_modulus + 1):
            for mask in range(1, 1 << n):
                Y = congruence_set(n, [r for r in range(n) if mask >> r & 1])
                if Y not in seen:
                    seen.add(Y)
                    out.append(Y)
        return out
    if isinstance(ctx, FiniteGroup):
        return [
            FiniteSubset(ctx, mask=mask) for mask in range(1, 1 << ctx.order)
        ]
    raise ValueError("certificate families are provided for integer and finite backends")


def _some_missing_element(ctx: Group, Y):
    """A concrete witness in the complement of Y, smallest first."""
    comp = complement(Y)
    if isinstance(comp, FiniteSubset):
        elems = comp.elements()
        return elems[0] if elems else None
    if isinstance(comp, IntegerSet):
        if comp.is_empty:
            return None
        for radius in range(0, 10 * comp.period + abs(comp.lo) + abs(comp.hi) + 1):
            for x in (radius, -radius) if radius else (0,):
                if comp.member(x):
                    return x
    return None


@dataclass
class PestovCertificate:
    """A left generic set whose difference set misses part of the group."""

    witness_set: object
    genericity: object
    difference: object
    missed_element: object

    note = "certificate: the group is not extremely amenable in the definable sense"


@dataclass
class PestovExhausted:
    family_size: int
    note: str = (
        "no counterexample within the searched family; "
        "this is not a proof of extreme amenability"
    )


def pestov_check(ctx: Group, max_modulus: int = 4):
    """Search the generated family for a generic Y with Y Y^{-1} != G.

    Returns the lexicographically first certificate in enumeration order,
    or an exhausted verdict with an explicit soundness note.
    """
    full = full_set(ctx)
    count = 0
    for Y in generated_family(ctx, max_modulus):
        count += 1
        verdict = is_left_generic(ctx, Y)
        if not verdict.generic:
            continue
        diff = difference_set(Y)
        if diff == full:
            continue
        return PestovCertificate(
            witness_set=Y,
            genericity=verdict,
            difference=diff,
            missed_element=_some_missing_element(ctx, diff),
        )
    return PestovExhausted(family_size=count)


def kernel_intersection(ctx: Group, max_modulus: int = 4):
    """Intersection of the difference sets of all generic family members.

    Returns (descriptor, exact set). The descriptor is the recognized
    subgroup form; over the integers the intersection is a full congruence
    subgroup at these scales.
    """
    acc = full_set(ctx)
    for Y in generated_family(ctx, max_modulus):
        if not is_left_generic(ctx, Y).generic:
            continue
        acc = intersect(acc, difference_set(Y))
    if isinstance(acc, FiniteSubset):
        return Subgroup.of_elements(acc.elements()), acc
    if isinstance(acc, IntegerSet):
        if acc == congruence_set(acc.period, [0]):
            return Subgroup.congruence(acc.period), acc
        return None, acc
    raise ValueError("unsupported backend for kernel intersection")


@dataclass
class SingletonReport:
    all_minimal_singletons: bool
    meeting_sets_have_full_difference: bool
    agree: bool
    witness: object


def singleton_minimal_criterion(ctx: Group, level: int, max_modulus: int = 4) -> SingletonReport:
    """Evaluate both sides of the singleton-minimal-subflow equivalence.

    Side one: every minimal subflow of the level space is a singleton.
    Side two: every family set that meets some minimal subflow (as a
    clopen set of the space) has difference set equal to the whole group.
    """
    flows = minimal_subflows(ctx, level)
    side_a = all(len(flow) == 1 for flow in flows)
    full = full_set(ctx)
    side_b = True
    witness = None
    for Y in generated_family(ctx, max_modulus):
        if isinstance(Y, IntegerSet):
            meets = bool(Y.up) or bool(Y.down)
        else:
            meets = any(any(contains(p, Y) for p in flow) for flow in flows)
        if not meets:
            continue
        if difference_set(Y) != full:
            side_b = False
            witness = Y
            break
    return SingletonReport(side_a, side_b, side_a == side_b, witness)


# ---------------------------------------------------------------------------
# the measure-definability diagnostic


@dataclass
class MeasureDefinabilityReport:
    definable: bool
    entries: list
    note: str = (
        "diagnostic for the canonical measures on these backends; "
        "not a general theorem check"
    )


def measure_definability_check(
    ctx: Group, level: int, mu: InvariantMeasure, max_modulus: int = 4
) -> MeasureDefinabilityReport:
    """Check that measure-threshold sets of translates are separated by
    definable sets.

    For each family set Y the cylinder measure g -> mu(gY) is periodic in
    g, so each threshold pair yields low and high g-sets that are unions
    of congruence classes; the low set itself is the definable separator.
    """
    if not isinstance(ctx, IntegerGroup):
        # over a finite backend every subset is definable, so separation is free
        return MeasureDefinabilityReport(True, [{"backend": "finite", "separable": True}])
    space = LevelTypeSpace(ctx, level)
    limit_points = space.limit_points()
    entries = []
    ok = True
    for Y in generated_family(ctx, max_modulus):
        if level % Y.period != 0:
            continue
        values = {}
        for g in range(level):
            gy = translate(g, Y)
            values[g] = sum(
                (mu.weight(p) for p in limit_points if contains(p, gy)), Fraction(0)
            )
        distinct = sorted(set(values.values()))
        separable = True
        for i, low in enumerate(distinct):
            for high in distinct[i + 1 :]:
                low_set = congruence_set(level, [g for g, v in values.items() if v <= low])
                high_set = congruence_set(level, [g for g, v in values.items() if v >= high])
                if not is_empty(intersect(low_set, high_set)):
                    separable = False
        entries.append(
            {
                "set": Y,
                "cylinder_values": [str(v) for v in distinct],
                "separable": separable,
            }
        )
        ok = ok and separable
    return MeasureDefinabilityReport(ok, entries)


# ---------------------------------------------------------------------------
# consistency of the two extreme-amenability diagnostics


@dataclass
class ConsistencyReport:
    fixed_points_at_all_levels: bool
    certificate_found: bool
    consistent: bool


def pestov_fixed_point_consistency(
    ctx: Group, levels, max_modulus: int = 4
) -> ConsistencyReport:
    """Fixed points at every level of a divisor chain must exclude a
    certificate, and a certificate must kill fixed points somewhere."""
    all_fixed = all(bool(fixed_points(ctx, n)) for n in levels)
    cert = pestov_check(ctx, max_modulus)
    found = isinstance(cert, PestovCertificate)
    consistent = not (all_fixed and found)
    if found and not any(not fixed_points(ctx, n) for n in levels):
        consistent = False
    return ConsistencyReport(all_fixed, found, consistent)
