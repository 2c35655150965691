"""Scenario-driven batch interface.

A scenario file names a group backend, a level, and a list of tasks; the
tool executes the tasks in order and emits one deterministic report (JSON
by default, human-readable text with --text). Exit codes: 0 success, 2
schema or parse error, 3 task error (the report is still emitted, flagged
partial).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .amenability import (
    PestovCertificate,
    fixed_points,
    fixed_points_of_flow,
    invariant_measure,
    invariant_measure_of_flow,
    kernel_intersection,
    measure_definability_check,
    pestov_check,
    singleton_minimal_criterion,
    verify_invariance,
)
from .compactify import (
    CongruenceEquivalence,
    PartitionEquivalence,
    definable_homomorphism_check,
    g00_at_level,
    logic_quotient,
    universal_compactification,
)
from .defsets import (
    boolean_op,
    difference_set,
    is_left_generic,
    member,
    set_from_json,
    set_to_json,
    translate,
)
from .ellis import DEFAULT_LEVEL_GUARD, LevelGuardExceeded, find_idempotents, star, star_via_schema
from .flows import (
    check_definable_flow,
    EventuallyPeriodicMap,
    extend_definable_map,
    flow_from_json,
    is_left_ideal,
    kernel_of_action,
    kernel_of_flow,
    minimal_subflows,
    universal_ambit_morphism,
    universal_minimal_flow,
)
from .groups import BackendMismatch, FiniteGroup, IntegerGroup, bundled_group, group_from_json, group_to_json
from .oracle import (
    WindowUniverse,
    oracle_difference_set,
    oracle_generic,
    oracle_idempotents,
    oracle_minimal_subflows,
    oracle_star,
)
from .typespace import LevelError, Limit, Realized, acting_set, contains, point_from_json, point_to_json


class SchemaError(ValueError):
    """The scenario file does not match the expected schema."""


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _points_json(points) -> list:
    from .typespace import point_key

    return [point_to_json(p) for p in sorted(points, key=point_key)]


def _subgroup_json(sub):
    return sub.to_json()


# ---------------------------------------------------------------------------
# task handlers; each returns a JSON-ready result


def _task_star(ctx, level, params, opts):
    p = point_from_json(params["p"])
    q = point_from_json(params["q"])
    result = star(ctx, p, q, opts["level_guard"])
    out = {"product": point_to_json(result)}
    if opts["with_oracle"]:
        lvl = result.modulus if isinstance(result, Limit) else level
        out["oracle_agrees"] = oracle_star(ctx, p, q, lvl) == result
    return out


def _task_star_via_schema(ctx, level, params, opts):
    p = point_from_json(params["p"])
    q = point_from_json(params["q"])
    direct = star(ctx, p, q, opts["level_guard"])
    schema = star_via_schema(ctx, p, q, opts["level_guard"])
    return {"product": point_to_json(schema), "agrees_with_closed_form": schema == direct}


def _task_idempotents(ctx, level, params, opts):
    idems = find_idempotents(ctx, level)
    out = {"idempotents": _points_json(idems)}
    if opts["with_oracle"] and isinstance(ctx, IntegerGroup) and level <= 8:
        out["oracle_agrees"] = set(oracle_idempotents(ctx, level)) == set(idems)
    return out


def _task_minimal_subflows(ctx, level, params, opts):
    flows = minimal_subflows(ctx, level)
    out = {"subflows": [_points_json(f) for f in flows]}
    if opts["with_oracle"] and isinstance(ctx, IntegerGroup) and level <= 8:
        out["oracle_agrees"] = set(oracle_minimal_subflows(ctx, level)) == set(flows)
    return out


def _task_universal_minimal_flow(ctx, level, params, opts):
    umf = universal_minimal_flow(ctx, level)
    flows = minimal_subflows(ctx, level)
    out = {
        "subflow": _points_json(umf.subflow),
        "idempotent": point_to_json(umf.idempotent),
        "isomorphisms": [],
    }
    from .typespace import point_key

    for other in flows:
        iso = umf.isomorphism_to(other)
        out["isomorphisms"].append(
            {
                "target": _points_json(other),
                "map": [
                    [point_to_json(p), point_to_json(iso.forward[p])]
                    for p in sorted(iso.forward, key=point_key)
                ],
                "checks": iso.certify(ctx),
            }
        )
    return out


def _task_is_left_ideal(ctx, level, params, opts):
    points = frozenset(point_from_json(p) for p in params["points"])
    return {"left_ideal": is_left_ideal(ctx, level, points)}


def _task_check_flow(ctx, level, params, opts):
    F = flow_from_json(ctx, params["flow"])
    verdict = check_definable_flow(F)
    return {
        "valid": verdict.valid,
        "ambit": verdict.ambit,
        "orbit_periods": list(verdict.orbit_periods),
    }


def _task_ambit_morphism(ctx, level, params, opts):
    F = flow_from_json(ctx, params["flow"])
    h = universal_ambit_morphism(level, F)
    return {
        "orbit_period": h.orbit_period,
        "realized_images": list(h.realized_images),
        "limit_images": [
            [point_to_json(p), h.limit_images[p]]
            for p in sorted(h.limit_images, key=lambda q: (q.sign < 0, q.residue))
        ],
        "checks": h.certify(),
    }


def _task_extend_map(ctx, level, params, opts):
    if not isinstance(ctx, IntegerGroup):
        raise ValueError("extend-map applies to the integer backend")
    spec = params["map"]
    f = EventuallyPeriodicMap(
        spec["period"],
        spec["up"],
        spec["down"],
        {int(k): v for k, v in spec.get("window", {}).items()},
    )
    ext = extend_definable_map(f, level)
    images = {}
    for sign, name in ((1, "+"), (-1, "-")):
        for r in range(level):
            images[f"{name}{r}"] = ext.apply(Limit(sign, r, level))
    return {"limit_values": images, "checks": ext.certify()}


def _task_kernel_of_action(ctx, level, params, opts):
    if "flow" in params:
        return {"kernel": _subgroup_json(kernel_of_flow(flow_from_json(ctx, params["flow"])))}
    return {"kernel": _subgroup_json(kernel_of_action(ctx, level))}


def _task_fixed_points(ctx, level, params, opts):
    if "flow" in params:
        return {"fixed_points": fixed_points_of_flow(flow_from_json(ctx, params["flow"]))}
    return {"fixed_points": _points_json(fixed_points(ctx, level))}


def _task_invariant_measure(ctx, level, params, opts):
    if "flow" in params:
        F = flow_from_json(ctx, params["flow"])
        mu = invariant_measure_of_flow(F)
        return {
            "weights": [[x, _frac(w)] for x, w in sorted(mu.weights.items())],
        }
    mu = invariant_measure(ctx, level)
    from .typespace import point_key

    return {
        "weights": [
            [point_to_json(p), _frac(w)]
            for p, w in sorted(mu.weights.items(), key=lambda kv: point_key(kv[0]))
        ],
        "invariant": verify_invariance(ctx, level, mu),
    }


def _task_pestov_check(ctx, level, params, opts):
    result = pestov_check(ctx, params.get("max_modulus", 4))
    if isinstance(result, PestovCertificate):
        return {
            "verdict": "certificate",
            "witness_set": set_to_json(result.witness_set),
            "translate_cover": list(result.genericity.translates),
            "difference_set": set_to_json(result.difference),
            "missed_element": result.missed_element,
            "note": result.note,
        }
    return {"verdict": "exhausted", "family_size": result.family_size, "note": result.note}


def _task_kernel_intersection(ctx, level, params, opts):
    descriptor, exact = kernel_intersection(ctx, params.get("max_modulus", 4))
    out = {"intersection": set_to_json(exact)}
    if descriptor is not None:
        out["subgroup"] = _subgroup_json(descriptor)
    return out


def _task_singleton_minimal(ctx, level, params, opts):
    report = singleton_minimal_criterion(ctx, level, params.get("max_modulus", 4))
    out = {
        "all_minimal_singletons": report.all_minimal_singletons,
        "meeting_sets_have_full_difference": report.meeting_sets_have_full_difference,
        "agree": report.agree,
    }
    if report.witness is not None:
        out["witness"] = set_to_json(report.witness)
    return out


def _task_measure_definability(ctx, level, params, opts):
    mu = invariant_measure(ctx, level)
    report = measure_definability_check(ctx, level, mu, params.get("max_modulus", 4))
    entries = []
    for entry in report.entries:
        item = dict(entry)
        if "set" in item:
            item["set"] = set_to_json(item["set"])
        entries.append(item)
    return {"definable": report.definable, "entries": entries, "note": report.note}


def _task_difference_set(ctx, level, params, opts):
    Y = set_from_json(ctx, params["set"])
    diff = difference_set(Y)
    out = {"difference_set": set_to_json(diff)}
    if opts["with_oracle"] and isinstance(ctx, IntegerGroup):
        universe = WindowUniverse(max(200, 8 * diff.period * (1 + abs(diff.lo) + abs(diff.hi))))
        listed = oracle_difference_set(Y, universe)
        half = universe.radius // 2
        out["oracle_agrees"] = listed == [x for x in range(-half, half + 1) if member(diff, x)]
    return out


def _task_is_generic(ctx, level, params, opts):
    Y = set_from_json(ctx, params["set"])
    verdict = is_left_generic(ctx, Y)
    out = {"generic": verdict.generic}
    if verdict.translates is not None:
        out["translates"] = [list(t) if isinstance(t, tuple) else t for t in verdict.translates]
    if verdict.obstruction:
        out["obstruction"] = verdict.obstruction
    if verdict.note:
        out["note"] = verdict.note
    if opts["with_oracle"] and isinstance(ctx, IntegerGroup):
        found = oracle_generic(Y, max_translates=2 * Y.period + 4, shift_bound=40, universe=WindowUniverse(200))
        out["oracle_agrees"] = (found is not None) == verdict.generic
    return out


def _task_boolean(ctx, level, params, opts):
    A = set_from_json(ctx, params["a"])
    B = set_from_json(ctx, params["b"]) if "b" in params else None
    return {"result": set_to_json(boolean_op(params["kind"], A, B))}


def _task_translate(ctx, level, params, opts):
    Y = set_from_json(ctx, params["set"])
    g = params["g"]
    if isinstance(g, list):
        g = tuple(g)
    return {"result": set_to_json(translate(g, Y))}


def _task_acting_set(ctx, level, params, opts):
    p = point_from_json(params["p"])
    Y = set_from_json(ctx, params["set"])
    return {"result": set_to_json(acting_set(ctx, p, Y))}


def _task_contains(ctx, level, params, opts):
    p = point_from_json(params["p"])
    Y = set_from_json(ctx, params["set"])
    return {"contains": contains(p, Y)}


def _task_logic_quotient(ctx, level, params, opts):
    if "modulus" in params:
        quotient = logic_quotient(ctx, CongruenceEquivalence(params["modulus"]))
    else:
        quotient = logic_quotient(ctx, PartitionEquivalence(tuple(frozenset(b) for b in params["blocks"])))
    return {
        "size": quotient.size,
        "is_group": quotient.group is not None,
        "discrete": quotient.discrete,
        "fibers": [set_to_json(f) for f in quotient.fibers],
    }


def _task_g00(ctx, level, params, opts):
    return {"subgroup": _subgroup_json(g00_at_level(ctx, params.get("level", level)))}


def _task_universal_compactification(ctx, level, params, opts):
    targets = params["targets"]
    result = universal_compactification(ctx, level, targets)
    return {
        "quotient_size": result.quotient.size,
        "factors": [
            {
                "target_size": f.target_size,
                "images": list(f.images),
                "homomorphism": f.homomorphism,
                "surjective": f.surjective,
                "commutes": f.commutes,
                "unique": f.unique,
            }
            for f in result.factors
        ],
    }


def _task_check_homomorphism(ctx, level, params, opts):
    target_spec = params["target"]
    if isinstance(target_spec, dict):
        target = group_from_json(target_spec)
    else:
        target = bundled_group(target_spec)
    if not isinstance(target, FiniteGroup):
        raise SchemaError("homomorphism target must be a finite group")
    verdict = definable_homomorphism_check(ctx, params["values"], target, params.get("level"))
    out = {"valid": verdict.valid}
    if verdict.reason:
        out["reason"] = verdict.reason
    if verdict.valid:
        out["fiber_modulus"] = verdict.fiber_modulus
        out["fibers"] = [set_to_json(f) for f in verdict.fibers]
        out["factor_images"] = list(verdict.factor_images)
        out["closure_identity_checked"] = verdict.closure_identity_checked
    return out


TASKS = {
    "star": (_task_star, {"p": "type point", "q": "type point"}),
    "star-via-schema": (_task_star_via_schema, {"p": "type point", "q": "type point"}),
    "idempotents": (_task_idempotents, {}),
    "minimal-subflows": (_task_minimal_subflows, {}),
    "universal-minimal-flow": (_task_universal_minimal_flow, {}),
    "is-left-ideal": (_task_is_left_ideal, {"points": "list of type points"}),
    "check-flow": (_task_check_flow, {"flow": "flow presentation"}),
    "universal-ambit-morphism": (_task_ambit_morphism, {"flow": "pointed flow presentation"}),
    "extend-map": (_task_extend_map, {"map": "eventually periodic map"}),
    "kernel-of-action": (_task_kernel_of_action, {"flow": "optional flow presentation"}),
    "fixed-points": (_task_fixed_points, {"flow": "optional flow presentation"}),
    "invariant-measure": (_task_invariant_measure, {"flow": "optional flow presentation"}),
    "pestov-check": (_task_pestov_check, {"max_modulus": "int, default 4"}),
    "kernel-intersection": (_task_kernel_intersection, {"max_modulus": "int, default 4"}),
    "singleton-minimal": (_task_singleton_minimal, {"max_modulus": "int, default 4"}),
    "measure-definability": (_task_measure_definability, {"max_modulus": "int, default 4"}),
    "difference-set": (_task_difference_set, {"set": "definable set"}),
    "is-generic": (_task_is_generic, {"set": "definable set"}),
    "boolean": (_task_boolean, {"kind": "union|intersection|complement", "a": "set", "b": "set (binary ops)"}),
    "translate": (_task_translate, {"g": "group element", "set": "definable set"}),
    "acting-set": (_task_acting_set, {"p": "type point", "set": "definable set"}),
    "contains": (_task_contains, {"p": "type point", "set": "definable set"}),
    "logic-quotient": (_task_logic_quotient, {"modulus": "int (integers)", "blocks": "partition (finite)"}),
    "g00": (_task_g00, {"level": "int, default scenario level"}),
    "universal-compactification": (_task_universal_compactification, {"targets": "list of moduli or subgroups"}),
    "check-homomorphism": (_task_check_homomorphism, {"values": "one period of values", "target": "finite group", "level": "optional int"}),
}


def list_capabilities() -> dict:
    """Stable machine-readable catalog of task names and parameter schemas."""
    return {
        "tool": "typeflow",
        "version": __version__,
        "tasks": [
            {"op": name, "params": TASKS[name][1]} for name in sorted(TASKS)
        ],
    }


def validate_scenario(scenario) -> None:
    if not isinstance(scenario, dict):
        raise SchemaError("scenario must be a JSON object")
    if "group" not in scenario:
        raise SchemaError("scenario must name a group")
    try:
        group_from_json(scenario["group"])
    except ValueError as exc:
        raise SchemaError(f"bad group spec: {exc}") from exc
    level = scenario.get("level", 1)
    if not isinstance(level, int) or level < 1:
        raise SchemaError("level must be a positive integer")
    tasks = scenario.get("tasks", [])
    if not isinstance(tasks, list):
        raise SchemaError("tasks must be a list")
    for task in tasks:
        if not isinstance(task, dict) or "op" not in task:
            raise SchemaError("each task must be an object with an 'op' field")
        if task["op"] not in TASKS:
            raise SchemaError(f"unknown task {task['op']!r}")


def run_scenario(scenario, with_oracle: bool = False, level_guard: int = DEFAULT_LEVEL_GUARD):
    """Execute a scenario dict; returns (report, exit_code)."""
    validate_scenario(scenario)
    started = time.monotonic()
    ctx = group_from_json(scenario["group"])
    level = scenario.get("level", 1)
    opts = {"with_oracle": with_oracle, "level_guard": level_guard}
    results = []
    partial = False
    for task in scenario.get("tasks", []):
        op = task["op"]
        params = {k: v for k, v in task.items() if k != "op"}
        handler, _ = TASKS[op]
        entry = {"op": op, "params": params}
        try:
            entry["result"] = handler(ctx, level, params, opts)
            entry["ok"] = True
        except (ValueError, BackendMismatch, LevelError, LevelGuardExceeded, KeyError) as exc:
            entry["ok"] = False
            entry["error"] = f"{type(exc).__name__}: {exc}"
            partial = True
        results.append(entry)
    report = {
        "tool": "typeflow",
        "version": __version__,
        "scenario": scenario,
        "results": results,
        "partial": partial,
        "timings": {"total_ms": int((time.monotonic() - started) * 1000)},
    }
    return report, (3 if partial else 0)


def render_text(report) -> str:
    lines = [f"typeflow {report['version']}"]
    for entry in report["results"]:
        status = "ok" if entry["ok"] else "error"
        lines.append(f"- {entry['op']}: {status}")
        if entry["ok"]:
            lines.append(f"    {json.dumps(entry['result'], sort_keys=True)}")
        else:
            lines.append(f"    {entry['error']}")
    if report["partial"]:
        lines.append("(partial: some tasks failed)")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="typeflow",
        description="scenario-driven analyses of definable dynamics at finite levels",
    )
    parser.add_argument("--scenario", help="path to a scenario JSON file")
    parser.add_argument("--text", action="store_true", help="human-readable report")
    parser.add_argument("--with-oracle", action="store_true", help="re-run oracle agreement checks")
    parser.add_argument("--level-guard", type=int, default=DEFAULT_LEVEL_GUARD, help="lcm guard for level unification")
    parser.add_argument("--capabilities", action="store_true", help="print the task catalog and exit")
    args = parser.parse_args(argv)

    if args.capabilities:
        print(json.dumps(list_capabilities(), indent=2, sort_keys=True))
        return 0
    if not args.scenario:
        parser.print_usage(sys.stderr)
        return 2
    try:
        with open(args.scenario, "r", encoding="utf-8") as fh:
            scenario = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read scenario: {exc}", file=sys.stderr)
        return 2
    try:
        report, code = run_scenario(scenario, args.with_oracle, args.level_guard)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.text:
        print(render_text(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
