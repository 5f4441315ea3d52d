import itertools
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from linkcert.errors import CalibrationError, InvalidWordError, SameOrbitError
from linkcert.template import (FIXTURE_PAIRS, FIXTURE_SELF, Layering, TemplateModel, calibrate,
                               calibration_digest, dump_model, hopf_linking_vector, load_model,
                               parse_model, passes_fixture, raw_linking, s3_linking,
                               s3_self_linking)
from linkcert.words import S237, S334, enumerate_orbits

import oracles

ORBITS = sorted(set(enumerate_orbits(S237, 17)) | set(enumerate_orbits(S334, 10)))


def test_bundled_calibration():
    m = load_model()
    assert m == TemplateModel(0, 0, False, False, Layering.B_OVER_A)
    assert len(calibration_digest()) == 64


def test_fixture_values():
    for (u, v), want in FIXTURE_PAIRS.items():
        assert s3_linking(u, v) == want
    for w, want in FIXTURE_SELF.items():
        assert s3_self_linking(w) == want


def test_hopf_vector():
    assert hopf_linking_vector("ababb") == (2, -3, 0)
    assert hopf_linking_vector("ab") == (1, -1, 0)


@given(st.sampled_from(ORBITS), st.sampled_from(ORBITS))
@settings(max_examples=150)
def test_linking_matches_oracle_and_is_symmetric(u, v):
    if u == v:
        return
    want = oracles.linking_oracle(u, v)
    assert s3_linking(u, v) == s3_linking(v, u) == want


@pytest.mark.parametrize("w", ORBITS[:30])
def test_self_linking_matches_oracle(w):
    assert s3_self_linking(w) == oracles.self_linking_oracle(w)


def test_other_models_match_oracle():
    # the crossing count is checked for every parameter choice, not only the calibrated one
    pairs = [("ababb", "abababbabb"), ("ab", "aabab"), ("aabb", "abababb")]
    for ta, tb, ra, rb in itertools.product((-1, 2), (0, 1), (False, True), (False, True)):
        for lay in Layering:
            m = TemplateModel(ta, tb, ra, rb, lay)
            for u, v in pairs:
                assert raw_linking(u, v, m) == oracles.linking_oracle(u, v, ta, tb, ra, rb, lay.sign)


def test_linking_integer_on_all_pairs():
    for u, v in itertools.combinations(ORBITS[:40], 2):
        s3_linking(u, v)  # raises if half-integral


def test_rotations_give_same_value():
    assert s3_linking("babab", "bbababa") == s3_linking("ababb", "abababb")


def test_same_orbit_refused():
    with pytest.raises(SameOrbitError):
        s3_linking("ababb", "babab")


def test_proper_power_refused():
    with pytest.raises(InvalidWordError):
        s3_self_linking("abab")


def test_calibration_search_is_unique():
    assert calibrate() == load_model()


def test_dump_parse_round_trip():
    m = load_model()
    assert parse_model(dump_model(m)) == m


def test_bad_calibration_file(tmp_path: Path, monkeypatch):
    bad = tmp_path / "cal.txt"
    bad.write_text(dump_model(TemplateModel(1, 0, False, False, Layering.A_OVER_B)))
    with pytest.raises(CalibrationError):
        load_model(bad)
    bad.write_text("format = 1\ntwist_a = x\n")
    with pytest.raises(CalibrationError):
        load_model(bad)
    with pytest.raises(CalibrationError):
        load_model(tmp_path / "missing.txt")


def test_env_var_selects_file(tmp_path: Path, monkeypatch):
    path = tmp_path / "cal.txt"
    path.write_text(dump_model(load_model()))
    monkeypatch.setenv("LINKCERT_CALIBRATION", str(path))
    assert calibration_digest() == calibration_digest(path)
    assert load_model() == calibrate()


def test_uncalibrated_model_refused():
    wrong = TemplateModel(0, 0, False, False, Layering.A_OVER_B)
    assert not passes_fixture(wrong)
    with pytest.raises(CalibrationError):
        s3_linking("ababb", "abababb", wrong)
