"""The semigroup product on level type spaces.

The product p * q is the type of a product a . b where b realizes q far
beyond everything relevant to a realizing p. Two independent computations
are provided: the closed-form right-dominant rule (`star`) and the
defining-schema route (`star_via_schema`), which answers membership
questions through acting sets. They must agree everywhere; the equality is
the executable form of the duality between the two canonical type
extensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .defsets import congruence_set, integer_ray
from .groups import BackendMismatch, FiniteGroup, Group, IntegerGroup
from .typespace import LevelError, LevelTypeSpace, Limit, Realized, acting_set, apply_group, contains, limit_of

DEFAULT_LEVEL_GUARD = 10**6


class LevelGuardExceeded(ValueError):
    """Unifying levels would exceed the configured lcm guard."""


def point_level(p) -> int:
    return p.modulus if isinstance(p, Limit) else 1


def lift(p, level: int):
    """Reinterpret a point at a finer level.

    Realized points carry exact values and need no lifting. A limit point
    is lifted along its integer residue representative, the canonical
    choice among the finer classes it could stand for.
    """
    if isinstance(p, Realized):
        return p
    if level % p.modulus != 0:
        raise LevelError(f"{p.modulus} does not divide target level {level}")
    return Limit(p.sign, p.residue, level)


def unify_levels(p, q, guard: int = DEFAULT_LEVEL_GUARD):
    a, b = point_level(p), point_level(q)
    level = a * b // gcd(a, b)
    if level > guard:
        raise LevelGuardExceeded(f"lcm of levels {a} and {b} exceeds guard {guard}")
    return lift(p, level), lift(q, level), level


def star(ctx: Group, p, q, guard: int = DEFAULT_LEVEL_GUARD):
    """The semigroup product p * q, closed form.

    Realized points multiply by the group law, a realized left factor acts
    on the right factor, and between limit points the right factor's
    direction wins while residues add. The rule extends the group action
    and is continuous in the left argument.
    """
    if isinstance(p, Realized) and isinstance(q, Realized):
        return Realized(ctx.compose(p.value, q.value))
    if not isinstance(ctx, IntegerGroup):
        raise BackendMismatch(
            "the semigroup product on limit points is provided for the integer backend"
        )
    p, q, level = unify_levels(p, q, guard)
    if isinstance(p, Realized):
        return Limit(q.sign, (p.value + q.residue) % level, level)
    if isinstance(q, Realized):
        return Limit(p.sign, (p.residue + q.value) % level, level)
    return Limit(q.sign, (p.residue + q.residue) % level, level)


def star_via_schema(ctx: Group, p, q, guard: int = DEFAULT_LEVEL_GUARD):
    """The semigroup product computed through defining schemas.

    Membership of Y in p * q is decided as: the acting set of q for Y
    belongs to p. The result point is reconstructed from finitely many
    probe sets (one congruence class per residue plus a half line for the
    sign), so this path exercises acting sets and membership instead of
    the closed form.
    """
    if isinstance(p, Realized) and isinstance(q, Realized):
        # both factors realized: the product is realized by the group law
        return Realized(ctx.compose(p.value, q.value))
    if not isinstance(ctx, IntegerGroup):
        raise BackendMismatch(
            "the semigroup product on limit points is provided for the integer backend"
        )
    p, q, level = unify_levels(p, q, guard)
    positive = contains(p, acting_set(ctx, q, integer_ray(1, 0)))
    sign = 1 if positive else -1
    residues = [
        r
        for r in range(level)
        if contains(p, acting_set(ctx, q, congruence_set(level, [r])))
    ]
    if len(residues) != 1:
        raise AssertionError(f"schema probes selected {len(residues)} residues")
    return Limit(sign, residues[0], level)


@dataclass(frozen=True)
class RightTranslation:
    """The map p -> p * q induced by a fixed right factor q.

    This is the unique continuous map of the level space sending the type
    of the identity to q; on realized points it coincides with the group
    action on q.
    """

    ctx: Group
    q: object
    level: int
    guard: int = field(default=DEFAULT_LEVEL_GUARD)

    def __call__(self, p):
        return star(self.ctx, p, self.q, self.guard)

    def limit_images(self) -> dict:
        space = LevelTypeSpace(self.ctx, self.level)
        return {p: self(p) for p in space.limit_points()}

    def certify(self, realized_samples=None) -> dict:
        """Checks backing uniqueness: base point lands on q, realized points
        follow the group action, limit points are limits of realized images."""
        if realized_samples is None:
            realized_samples = (
                self.ctx.elements() if isinstance(self.ctx, FiniteGroup) else range(-6, 7)
            )
        base_ok = self(Realized(self.ctx.identity)) == self.q
        action_ok = all(
            self(Realized(g)) == apply_group(self.ctx, g, self.q)
            for g in realized_samples
        )
        continuity_ok = True
        if isinstance(self.ctx, IntegerGroup):
            for p in LevelTypeSpace(self.ctx, self.level).limit_points():
                _, witness = limit_of(p.sign, p.residue, p.modulus)
                tail = [self(Realized(a)) for a in witness(count=3, start=4)]
                limit_image = self(p)
                if isinstance(limit_image, Limit) and any(
                    t != limit_image for t in tail
                ):
                    continuity_ok = False
        return {
            "base_point_to_target": base_ok,
            "extends_group_action": action_ok,
            "left_continuous_on_witnesses": continuity_ok,
        }


def right_translation(ctx: Group, q, level: int, guard: int = DEFAULT_LEVEL_GUARD) -> RightTranslation:
    if isinstance(q, Limit) and q.modulus != level:
        raise LevelError(f"right factor lives at level {q.modulus}, not {level}")
    return RightTranslation(ctx, q, level, guard)


def find_idempotents(ctx: Group, level: int) -> list:
    """All limit-part points p with p * p = p, by brute force over the level.

    For a finite backend the type space is the group itself and the only
    idempotent is the identity.
    """
    if isinstance(ctx, FiniteGroup):
        return [Realized(ctx.identity)]
    space = LevelTypeSpace(ctx, level)
    return [p for p in space.limit_points() if star(ctx, p, p) == p]
