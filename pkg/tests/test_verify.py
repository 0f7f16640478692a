import json

import pytest

from dissociation.verify import VERDICTS, load_manifest, named_graph, registered_ids, verify

REGISTERED = [
    "L2.1", "L2.2", "T2.3", "L3.2", "T3.3", "P4.1", "L4.2c", "T4.3", "P4.4", "L4.6",
    "T4.5", "L5.1", "P5.3", "T5.4", "T5.5", "L6.1", "L6.6", "T6.5c", "T7.1", "L7.2",
    "L7.4", "T7.5c", "P7.7", "L8.1", "P8.3", "P9.1", "P9.2", "P9.3",
]

QUICK = ["L5.1", "T5.4", "T5.5", "L6.6", "T7.1", "L7.2", "P7.7", "P9.2", "L4.6", "L3.2"]


def test_registry_and_manifest_agree():
    manifest = load_manifest()
    assert registered_ids() == REGISTERED
    assert set(manifest["checks"]) == set(REGISTERED)
    assert manifest["manifest_version"]


def test_unknown_id():
    with pytest.raises(KeyError):
        verify("X1.1")


@pytest.mark.parametrize("theorem_id", QUICK)
def test_quick_checks_pass(theorem_id):
    report = verify(theorem_id)
    assert report.verdict == "PASS", report.notes
    assert report.observed["checks_run"] > 0


def test_report_is_json_ready():
    report = verify("L5.1")
    text = json.dumps(report.to_json(), sort_keys=True)
    back = json.loads(text)
    assert back["verdict"] in VERDICTS
    assert back["theorem_id"] == "L5.1"


def test_tiny_cap_skips():
    report = verify("T7.5c", max_n=5)
    assert report.verdict == "SKIPPED"


def test_order_override_narrows_work():
    report = verify("P4.1", params={"n": 6})
    assert report.verdict == "PASS"
    assert list(k for k in report.observed if k.isdigit()) == ["6"]


def test_custom_manifest_changes_expectations(tmp_path):
    manifest = load_manifest()
    manifest["checks"]["L4.6"]["expected"]["tau"]["2"] = 5
    path = tmp_path / "m.json"
    path.write_text(json.dumps(manifest))
    assert verify("L4.6", manifest=load_manifest(path)).verdict == "FAIL"


def test_named_graphs():
    assert named_graph("P5").n == 5
    assert named_graph("C7").num_edges() == 7
    assert named_graph("CP4").num_edges() == 4
    assert named_graph("L5").num_edges() == 8
    assert named_graph("hat8").n == 8
    assert named_graph("cpcycle:2:4").n == 8
    with pytest.raises(ValueError):
        named_graph("Z3")


def test_small_order_counterexample_is_reported():
    report = verify("L8.1", max_n=4)
    assert report.verdict == "FAIL"
    assert any("s=3 d=0 n=4 ex_cc" in note for note in report.notes)
