"""Independent brute-force cross-checks for the structured algorithms.

Everything here is deliberately naive and bounded: enumerate, realize with
concrete big integers, or try all candidates. None of it shares algorithmic
code with the implementations it certifies; membership evaluation is the
only common ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .defsets import member
from .groups import FiniteGroup, Group, IntegerGroup
from .typespace import LevelTypeSpace, Limit, Realized, apply_group, point_key

EXHAUSTION_LEVEL_BOUND = 8


@dataclass(frozen=True)
class WindowUniverse:
    """A symmetric integer window standing in for the whole line."""

    radius: int

    def points(self) -> range:
        return range(-self.radius, self.radius + 1)

    def assert_sufficient(self, *sets):
        """The window must dwarf every modulus and window bound in play."""
        needed = 4
        for Y in sets:
            bound = max(1, abs(Y.lo), abs(Y.hi))
            needed = max(needed, 4 * Y.period * bound)
        if self.radius < needed:
            raise ValueError(
                f"window radius {self.radius} below sufficiency bound {needed}"
            )


def oracle_difference_set(Y, universe: WindowUniverse) -> list[int]:
    """{a - b} by direct enumeration, clipped to the trustworthy half window."""
    universe.assert_sufficient(Y)
    elems = [x for x in universe.points() if member(Y, x)]
    half = universe.radius // 2
    out = {a - b for a in elems for b in elems if abs(a - b) <= half}
    return sorted(out)


def oracle_generic(
    Y,
    max_translates: int = 4,
    shift_bound: int = 50,
    universe: WindowUniverse = WindowUniverse(200),
    exhaustive_limit: int = 300_000,
):
    """Search translate sets that cover the window; None when the budget is
    exhausted.

    Small sizes are searched exhaustively; beyond the combination budget a
    deterministic greedy pass takes over. A returned tuple is a verified
    window cover; None only means nothing was found within bounds.
    """
    universe.assert_sufficient(Y)
    points = list(universe.points())
    offset = universe.radius
    full = (1 << len(points)) - 1
    shifts = list(range(-shift_bound, shift_bound + 1))
    covers = {}
    for g in shifts:
        mask = 0
        for i, x in enumerate(points):
            if member(Y, x - g):
                mask |= 1 << i
        covers[g] = mask
    exhausted_all_sizes = True
    for k in range(1, max_translates + 1):
        if comb(len(shifts), k) > exhaustive_limit:
            exhausted_all_sizes = False
            break
        for combo in combinations(shifts, k):
            u = 0
            for g in combo:
                u |= covers[g]
            if u == full:
                return tuple(combo)
    if exhausted_all_sizes:
        return None
    chosen: list[int] = []
    covered = 0
    for _ in range(max_translates):
        best = None
        best_gain = 0
        for g in shifts:
            gain = (covers[g] & ~covered).bit_count()
            if gain > best_gain or (
                gain == best_gain and gain > 0 and (abs(g), g) < (abs(best), best)
            ):
                best, best_gain = g, gain
        if best is None or best_gain == 0:
            return None
        chosen.append(best)
        covered |= covers[best]
        if covered == full:
            return tuple(sorted(chosen))
    return None


def oracle_star(ctx: Group, p, q, level: int, base_magnitude: int = 1000):
    """The semigroup product by numeric realization.

    Realize the left factor at moderate magnitude and the right factor a
    thousandfold further out, multiply, and classify the type of the
    result at the level. Limit points are realized along the canonical
    integer representative of their residue.
    """
    if isinstance(ctx, FiniteGroup):
        return Realized(ctx.compose(p.value, q.value))

    def realize(point, magnitude):
        if isinstance(point, Realized):
            return point.value
        return point.sign * magnitude * level + point.residue

    # a limit left factor must outgrow any fixed realized right factor
    left_magnitude = base_magnitude
    if isinstance(q, Realized):
        left_magnitude += abs(q.value)
    a = realize(p, left_magnitude)
    b = realize(q, 1000 * max(base_magnitude, abs(a)))
    s = a + b
    if isinstance(p, Realized) and isinstance(q, Realized):
        return Realized(s)
    return Limit(1 if s > 0 else -1, s % level, level)


def _require_small(level: int):
    if level > EXHAUSTION_LEVEL_BOUND:
        raise ValueError(f"exhaustive oracles are bounded at level {EXHAUSTION_LEVEL_BOUND}")


def oracle_minimal_subflows(ctx: Group, level: int) -> list[frozenset]:
    """All minimal invariant subsets of the limit part, by trying every subset."""
    _require_small(level)
    pts = LevelTypeSpace(ctx, level).limit_points()
    n = len(pts)
    index = {p: i for i, p in enumerate(pts)}
    perm = [index[apply_group(ctx, 1, p)] for p in pts]
    invariant = []
    for mask in range(1, 1 << n):
        moved = 0
        m = mask
        while m:
            low = m & -m
            moved |= 1 << perm[low.bit_length() - 1]
            m ^= low
        if moved == mask:
            invariant.append(mask)
    minimal_masks = [
        m
        for m in invariant
        if not any(o != m and o & m == o for o in invariant)
    ]
    subflows = [
        frozenset(pts[i] for i in range(n) if m >> i & 1) for m in minimal_masks
    ]
    return sorted(subflows, key=lambda s: sorted(point_key(p) for p in s))


def oracle_idempotents(ctx: Group, level: int) -> list:
    _require_small(level)
    pts = LevelTypeSpace(ctx, level).limit_points()
    return [p for p in pts if oracle_star(ctx, p, p, level) == p]


def oracle_equivariant_maps(ctx: Group, level: int, source, target) -> list[dict]:
    """All equivariant maps between single orbits of the limit part.

    Independent of the semigroup product: a candidate image of the least
    source point is propagated around the orbit by the group action and
    kept only if the propagation closes up consistently.
    """
    _require_small(level)
    src = sorted(source, key=point_key)
    tgt = set(target)
    base = src[0]
    out = []
    for image in sorted(tgt, key=point_key):
        f = {}
        p, y = base, image
        consistent = True
        for _ in range(len(src)):
            if p not in source or y not in tgt:
                consistent = False
                break
            f[p] = y
            p = apply_group(ctx, 1, p)
            y = apply_group(ctx, 1, y)
        if not consistent or p != base or y != image:
            continue
        if len(f) == len(src):
            out.append(f)
    return out


def oracle_equivariant_maps_brute(ctx: Group, level: int, source, target) -> list[dict]:
    """Every function source -> target, filtered by equivariance.

    Exponential; certifies the propagation enumeration on tiny levels.
    """
    if level > 5:
        raise ValueError("brute map enumeration is bounded at level 5")
    src = sorted(source, key=point_key)
    tgt = sorted(target, key=point_key)
    out = []

    def assign(i, f):
        if i == len(src):
            for p in src:
                if f[apply_group(ctx, 1, p)] != apply_group(ctx, 1, f[p]):
                    return
            out.append(dict(f))
            return
        for y in tgt:
            f[src[i]] = y
            assign(i + 1, f)
        del f[src[i]]

    assign(0, {})
    return out
