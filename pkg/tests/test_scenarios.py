import json

import pytest

from amalgam_cgt.report import PROVENANCE
from amalgam_cgt.scenarios import (SCENARIOS, VerifyConfig, get_scenario, list_scenarios,
                                   results_to_json, results_to_text, run_scenario)

CHEAP = ["theta-check", "amalgam-two-classes", "q8-lemma", "sl3-geometry", "free-identities"]


def test_names():
    names = list_scenarios()
    assert len(names) == 16 and len(set(names)) == 16
    assert names[0] == "presentation-orders"
    with pytest.raises(KeyError):
        get_scenario("nope")


def test_config():
    cfg = VerifyConfig()
    assert cfg.replace(max_cosets=None).max_cosets == cfg.max_cosets
    assert cfg.replace(strategy="felsch").limits.strategy == "felsch"
    with pytest.raises(ValueError):
        VerifyConfig(time_cap=0)


def test_config_file(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"strategy": "felsch", "time_cap": 30}))
    cfg = VerifyConfig.from_file(str(p))
    assert cfg.strategy == "felsch" and cfg.time_cap == 30
    p.write_text(json.dumps({"colour": "red"}))
    with pytest.raises(ValueError):
        VerifyConfig.from_file(str(p))


@pytest.mark.parametrize("name", CHEAP)
def test_cheap_scenarios_pass_deterministically(name):
    a = run_scenario(name)
    b = run_scenario(name)
    assert a.passed, a.to_text()
    assert results_to_json([a]) == results_to_json([b])
    for c in a.report.claims:
        assert c.provenance in PROVENANCE


def test_resource_error_becomes_failed_claim():
    r = run_scenario("presentation-orders", VerifyConfig(max_cosets=50))
    assert not r.passed
    assert any("resource" in c.name or "enumeration" in c.name for c in r.report.failures())


def test_time_cap_is_reported():
    r = run_scenario("free-identities", VerifyConfig(time_cap=1e-9))
    assert not r.passed
    assert r.report.failures()[-1].name == "finished within the time cap"


def test_timing_only_on_request():
    r = run_scenario("free-identities")
    assert "seconds" not in r.to_dict()
    r = run_scenario("free-identities", VerifyConfig(timing=True))
    assert "seconds" in r.to_dict()


def test_output_formats():
    r = run_scenario("theta-check")
    doc = json.loads(results_to_json([r]))
    assert doc["schema"] == "verification-run" and doc["pass"] is True
    assert doc["scenarios"][0]["scenario"] == "theta-check"
    assert results_to_text([r]).rstrip().endswith("1/1 scenarios passed")


def test_every_scenario_has_a_description():
    for sc in SCENARIOS:
        assert sc.description and sc.anchor
