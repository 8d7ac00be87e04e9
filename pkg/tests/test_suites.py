import pytest

from operadkit import suites
from operadkit.limits import DEFAULT_CAPS


@pytest.mark.parametrize("name", sorted(suites.SUITES))
def test_suite_passes(name):
    report = suites.run_suite(name, seed=3)
    failed = [c.name for c in report.checks if not c.passed]
    assert report.passed, f"{name} failed checks: {failed}"
    assert report.checks


def test_unknown_suite_raises():
    with pytest.raises(KeyError):
        suites.run_suite("made-up")


def test_report_json_shape():
    report = suites.run_suite("counterexample-s1", seed=1)
    payload = report.to_json()
    assert payload["suite"] == "counterexample-s1"
    assert payload["seed"] == 1
    assert payload["passed"] is True
    for check in payload["checks"]:
        assert set(check) == {
            "name",
            "status",
            "observed",
            "expected",
            "note",
            "wall_time",
        }


def test_reports_reproducible_modulo_timing():
    def strip(payload):
        payload = dict(payload)
        payload.pop("wall_time")
        payload["checks"] = [
            {k: v for k, v in c.items() if k != "wall_time"}
            for c in payload["checks"]
        ]
        return payload

    first = strip(suites.run_suite("bv-retract-82", seed=11).to_json())
    second = strip(suites.run_suite("bv-retract-82", seed=11).to_json())
    assert first == second


def test_caps_are_threaded_through():
    report = suites.run_suite("mu-image-11x", seed=0, caps=DEFAULT_CAPS)
    assert report.passed


def test_recompute_oracles_adds_passing_checks():
    plain = suites.run_suite("thm-graphs-44", seed=0)
    oracled = suites.run_suite("thm-graphs-44", seed=0, recompute_oracles=True)
    extra = {c.name for c in oracled.checks} - {c.name for c in plain.checks}
    assert extra == {"oracle-count-acyclic", "oracle-count-extended"}
    assert oracled.passed
