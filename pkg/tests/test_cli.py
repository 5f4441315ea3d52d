import io
import json
import subprocess
import sys

import pytest

from linkcert.cli import run
from linkcert.template import dump_model, load_model, TemplateModel, Layering


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--output", "json")
    assert code == 0, err
    return json.loads(out)


def test_certify_gamma8_json():
    doc = call_json("certify", "--surface", "3,3,4", "--base", "gamma8", "--max-len", "20")
    r = doc["result"]
    assert r["all_negative"] is True
    assert r["self_linking"] == "-1/3"
    assert r["max_non_base"] == {"value": "-2/3", "witness": "aababab"}
    assert doc["schema"] == "linkcert/1"
    assert doc["max_len"] == 20
    assert "finite" in doc["finite_prefix"] or "up to" in doc["finite_prefix"]
    assert len(doc["calibration_digest"]) == 64
    rec = r["orbits"][0]
    assert rec == {"word": "ab", "canonical": "ab", "n_a": 1, "n_b": 1, "identity": "ab",
                   "linking": {"num": -1, "den": 3}}


def test_json_deterministic():
    a = call("certify", "--surface", "2,3,7", "--max-len", "16", "--output", "json")
    b = call("certify", "--surface", "2,3,7", "--max-len", "16", "--output", "json")
    assert a == b


def test_homology_text():
    code, out, _ = call("homology", "--surface", "2,3,7")
    assert code == 0 and "group: trivial" in out
    assert call_json("homology", "--surface", "3,3,4")["result"]["group"] == "Z/3"


def test_section():
    r = call_json("section", "--surface", "2,3,7", "--base", "h")["result"]
    assert (r["genus"], r["monodromy"], r["trace"]) == (1, "LR", 3)
    r = call_json("section", "--surface", "3,3,4")["result"]
    assert (r["multiplicity"], r["chi"], r["genus"], r["monodromy"]) == (3, -1, 1, "LR")


def test_link_and_selflink():
    assert call_json("link", "ababb", "abababbabb")["result"]["linking"] == "-2"
    r = call_json("selflink", "--surface", "3,3,4", "ab")["result"]
    assert (r["self_linking"], r["s3_self_linking"]) == ("-1/3", -1)


def test_enumerate_csv():
    code, out, _ = call("enumerate", "--surface", "2,3,7", "--max-len", "10", "--output", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[1] == "word,canonical,n_a,n_b,identity"
    assert [l.split(",")[0] for l in lines[2:]] == ["ababb", "abababb", "ababbabb", "abababbabb"]


def test_sl2_commands():
    assert call_json("sl2-trace", "LRRLRR")["result"]["trace"] == 14
    assert call_json("sl2-classify", "--matrix", "2,1,1,1")["result"]["word"] == "LR"
    assert call_json("sl2-classify", "--trace", "3", "--max-len", "12")["result"]["classes"] == ["LR"]
    r = call_json("appendix-check")["result"]
    assert r["sphere_237_matches_monodromy"] is True


@pytest.mark.parametrize("argv", [
    ["link", "ababb", "aab"],
    ["link", "ababb", "babab"],
    ["certify", "--surface", "2,3,8"],
    ["certify", "--surface", "3,3,4", "--base", "h"],
    ["homology", "--surface", "2,3,6"],
    ["sl2-classify", "--matrix", "1,1,1,1"],
    ["sl2-classify", "--matrix", "1,1,0,1"],
    ["sl2-trace", "LXR"],
    ["appendix-check", "--family", "sphere_23r", "5"],
    ["certify", "--max-len", "3"],
])
def test_invalid_input_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2
    assert err.startswith("linkcert: error:")


@pytest.mark.parametrize("argv", [["certify", "--bogus"], ["nonsense"], []])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_failed_certificate_exit_1(monkeypatch):
    import linkcert.birkhoff as bk
    real = bk.base_linking
    monkeypatch.setattr(bk, "base_linking",
                        lambda base, w: 1 if w == "abababbabb" else real(base, w))
    code, out, err = call("certify", "--max-len", "12", "--output", "json")
    assert code == 1 and "negatively" in err
    doc = json.loads(out)
    assert doc["result"]["all_negative"] is False
    assert doc["result"]["max_witness"] == "abababbabb"


def test_bad_calibration_exit_1(tmp_path):
    path = tmp_path / "cal.txt"
    path.write_text(dump_model(TemplateModel(2, 0, False, False, Layering.B_OVER_A)))
    code, _, err = call("certify", "--calibration", str(path))
    assert code == 1 and "calibration" in err


def test_calibration_flag(tmp_path):
    path = tmp_path / "cal.txt"
    path.write_text(dump_model(load_model()))
    doc = call_json("link", "ababb", "abababb", "--calibration", str(path))
    assert doc["result"]["linking"] == "-1"


def test_calibrate_writes(tmp_path):
    path = tmp_path / "cal.txt"
    code, out, _ = call("calibrate", "--write", str(path))
    assert code == 0
    assert path.read_text() == dump_model(load_model())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "linkcert", "homology", "--surface", "3,3,4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "Z/3" in proc.stdout
