import json

import pytest

from typeflow.cli import SchemaError, list_capabilities, main, render_text, run_scenario
from typeflow.defsets import congruence_set, set_from_json
from typeflow.groups import INTEGERS
from typeflow.typespace import point_from_json


def strip_timings(report):
    out = dict(report)
    out.pop("timings", None)
    return out


def test_minimal_subflows_scenario():
    scenario = {
        "group": {"kind": "integers"},
        "level": 4,
        "tasks": [{"op": "minimal-subflows"}],
    }
    report, code = run_scenario(scenario)
    assert code == 0
    subflows = report["results"][0]["result"]["subflows"]
    assert len(subflows) == 2
    assert all(len(f) == 4 for f in subflows)


def test_pestov_scenario():
    scenario = {
        "group": {"kind": "integers"},
        "tasks": [{"op": "pestov-check", "max_modulus": 4}],
    }
    report, code = run_scenario(scenario)
    assert code == 0
    result = report["results"][0]["result"]
    assert result["verdict"] == "certificate"
    assert set_from_json(INTEGERS, result["witness_set"]) == congruence_set(2, [0])
    assert result["translate_cover"] == [0, 1]


def test_report_determinism_modulo_timings():
    scenario = {
        "group": {"kind": "integers"},
        "level": 6,
        "tasks": [
            {"op": "minimal-subflows"},
            {"op": "idempotents"},
            {"op": "universal-minimal-flow"},
            {"op": "invariant-measure"},
            {"op": "kernel-intersection", "max_modulus": 4},
        ],
    }
    a, _ = run_scenario(scenario)
    b, _ = run_scenario(scenario)
    dump = lambda r: json.dumps(strip_timings(r), sort_keys=True)
    assert dump(a) == dump(b)


def test_report_values_round_trip():
    scenario = {
        "group": {"kind": "integers"},
        "level": 4,
        "tasks": [
            {"op": "difference-set", "set": "evens"},
            {
                "op": "star",
                "p": {"kind": "realized", "value": 5},
                "q": {"kind": "limit", "sign": "+", "res": 1, "mod": 4},
            },
        ],
    }
    report, code = run_scenario(scenario)
    assert code == 0
    diff = set_from_json(INTEGERS, report["results"][0]["result"]["difference_set"])
    assert diff == congruence_set(2, [0])
    product = point_from_json(report["results"][1]["result"]["product"])
    assert product.residue == 2 and product.modulus == 4


def test_task_error_gives_partial_report_and_exit_3():
    scenario = {
        "group": {"kind": "integers"},
        "level": 6,
        "tasks": [
            {"op": "universal-compactification", "targets": [4]},
            {"op": "minimal-subflows"},
        ],
    }
    report, code = run_scenario(scenario)
    assert code == 3
    assert report["partial"]
    assert not report["results"][0]["ok"]
    assert "level too coarse" in report["results"][0]["error"]
    assert report["results"][1]["ok"]


def test_schema_errors():
    with pytest.raises(SchemaError):
        run_scenario({"tasks": []})
    with pytest.raises(SchemaError):
        run_scenario({"group": {"kind": "integers"}, "tasks": [{"op": "no-such-op"}]})
    with pytest.raises(SchemaError):
        run_scenario({"group": {"kind": "integers"}, "level": 0, "tasks": []})


def test_capabilities_catalog():
    cat = list_capabilities()
    names = [t["op"] for t in cat["tasks"]]
    assert names == sorted(names)
    for required in ("star", "universal-minimal-flow", "pestov-check"):
        assert required in names
    assert json.loads(json.dumps(cat)) == cat
    assert list_capabilities() == cat


def test_with_oracle_flag():
    scenario = {
        "group": {"kind": "integers"},
        "level": 4,
        "tasks": [
            {"op": "difference-set", "set": "evens"},
            {"op": "is-generic", "set": "evens"},
            {"op": "minimal-subflows"},
        ],
    }
    report, code = run_scenario(scenario, with_oracle=True)
    assert code == 0
    assert all(r["result"].get("oracle_agrees", True) for r in report["results"])
    assert report["results"][0]["result"]["oracle_agrees"] is True


def test_main_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(
        json.dumps(
            {"group": {"kind": "integers"}, "level": 4, "tasks": [{"op": "idempotents"}]}
        )
    )
    assert main(["--scenario", str(good)]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["results"][0]["ok"]

    assert main(["--scenario", str(good), "--text"]) == 0
    assert "idempotents: ok" in capsys.readouterr().out

    bad = tmp_path / "bad.json"
    bad.write_text("garbage{")
    assert main(["--scenario", str(bad)]) == 2
    capsys.readouterr()

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"group": {"kind": "integers"}, "tasks": [{"op": "zzz"}]}))
    assert main(["--scenario", str(unknown)]) == 2
    capsys.readouterr()

    assert main(["--capabilities"]) == 0
    assert "universal-minimal-flow" in capsys.readouterr().out


def test_finite_group_scenario():
    scenario = {
        "group": {"kind": "bundled", "name": "s3"},
        "tasks": [
            {"op": "pestov-check"},
            {"op": "fixed-points"},
            {"op": "g00"},
        ],
    }
    report, code = run_scenario(scenario)
    assert code == 0
    assert report["results"][0]["result"]["verdict"] == "certificate"
    assert report["results"][0]["result"]["witness_set"] == {"elements": [0]}
    assert report["results"][1]["result"]["fixed_points"] == []


def test_raw_table_group_scenario():
    scenario = {
        "group": {"kind": "finite", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
        "tasks": [{"op": "kernel-intersection", "max_modulus": 3}],
    }
    report, code = run_scenario(scenario)
    assert code == 0
    assert report["results"][0]["result"]["subgroup"] == {"kind": "elements", "elements": [0]}


def test_level_guard_flag():
    scenario = {
        "group": {"kind": "integers"},
        "level": 1,
        "tasks": [
            {
                "op": "star",
                "p": {"kind": "limit", "sign": "+", "res": 0, "mod": 997},
                "q": {"kind": "limit", "sign": "+", "res": 0, "mod": 996},
            }
        ],
    }
    report, code = run_scenario(scenario, level_guard=1000)
    assert code == 3
    assert "LevelGuardExceeded" in report["results"][0]["error"]
    report, code = run_scenario(scenario)
    assert code == 0


def test_product_backend_scenario():
    scenario = {
        "group": {"kind": "product", "left": {"kind": "integers"}, "right": {"kind": "cyclic", "order": 2}},
        "tasks": [
            {
                "op": "is-generic",
                "set": {"rectangles": [[{"mod": 2, "up": [0], "down": [0], "window": {"lo": 0, "hi": -1, "bits": []}}, [0]]]},
            }
        ],
    }
    report, code = run_scenario(scenario)
    assert code == 0
    result = report["results"][0]["result"]
    assert result["generic"] and result["note"] == "relative to the rectangle algebra"


def test_render_text_shape():
    scenario = {
        "group": {"kind": "integers"},
        "level": 2,
        "tasks": [{"op": "idempotents"}],
    }
    report, _ = run_scenario(scenario)
    text = render_text(report)
    assert text.startswith("typeflow")
    assert "- idempotents: ok" in text


def test_every_cataloged_task_runs():
    point_p = {"kind": "limit", "sign": "+", "res": 0, "mod": 4}
    point_q = {"kind": "limit", "sign": "-", "res": 1, "mod": 4}
    flow = {"carrier": 4, "pi": [1, 2, 3, 0], "base": 0}
    per_task_params = {
        "star": {"p": point_p, "q": point_q},
        "star-via-schema": {"p": point_p, "q": point_q},
        "is-left-ideal": {"points": []},  # filled in below
        "check-flow": {"flow": flow},
        "universal-ambit-morphism": {"flow": flow},
        "extend-map": {"map": {"period": 2, "up": [0, 1], "down": [0, 1], "window": {"0": 9}}},
        "kernel-of-action": {},
        "fixed-points": {},
        "invariant-measure": {},
        "pestov-check": {"max_modulus": 3},
        "kernel-intersection": {"max_modulus": 3},
        "singleton-minimal": {"max_modulus": 3},
        "measure-definability": {"max_modulus": 2},
        "difference-set": {"set": "evens"},
        "is-generic": {"set": "evens"},
        "boolean": {"kind": "union", "a": "evens", "b": "odds"},
        "translate": {"g": 3, "set": "evens"},
        "acting-set": {"p": point_p, "set": "evens"},
        "contains": {"p": point_p, "set": "evens"},
        "logic-quotient": {"modulus": 4},
        "g00": {},
        "universal-compactification": {"targets": [2, 4]},
        "check-homomorphism": {"values": [0, 1], "target": {"kind": "cyclic", "order": 2}},
        "idempotents": {},
        "minimal-subflows": {},
        "universal-minimal-flow": {},
    }
    ideal_points = [{"kind": "limit", "sign": "+", "res": r, "mod": 4} for r in range(4)]
    per_task_params["is-left-ideal"] = {"points": ideal_points}
    catalog = [t["op"] for t in list_capabilities()["tasks"]]
    assert set(per_task_params) == set(catalog)
    scenario = {
        "group": {"kind": "integers"},
        "level": 4,
        "tasks": [{"op": op, **per_task_params[op]} for op in catalog],
    }
    report, code = run_scenario(scenario, with_oracle=True)
    assert code == 0, [r for r in report["results"] if not r["ok"]]
    assert all(r["ok"] for r in report["results"])
    assert report["results"][0]["op"] == catalog[0]
