import math

import pytest

import imcflab


def test_euclidean_flow_matches_area_law():
    g = imcflab.make_preset("euclidean")
    prof = imcflab.exact_flow(g, 1.0, 2.0 * math.log(2.0), 32)
    assert prof.samples[-1].B == pytest.approx(16.0 * math.pi, rel=1e-12)
    assert not prof.jumps


def test_rhs_and_oracle_agree_in_flat_space():
    g = imcflab.make_preset("euclidean")
    prof = imcflab.exact_flow(g, 1e-3, 16.0, 256)
    v = 4.0 * math.pi / 3.0
    assert imcflab.theorem1_rhs(prof, v) == pytest.approx(4.0 * math.pi, rel=1e-9)
    assert imcflab.oracle_A(g, v)["area"] == pytest.approx(4.0 * math.pi, rel=1e-10)


def test_schwarzschild_hawking_mass():
    g = imcflab.make_preset("schwarzschild-areal", {"m": 1.0})
    for s in (2.0, 5.0, 50.0):
        assert imcflab.hawking_mass(g, s) == pytest.approx(1.0, abs=1e-10)


def test_meeks_yau_reference():
    assert imcflab.meeks_yau_bound(1.0, math.pi / 2.0) == pytest.approx(5.178216920830412, rel=1e-12)


def test_regularized_solve_converges():
    g = imcflab.make_preset("euclidean")
    res = imcflab.solve_regularized(g, 1.0, 5.0, 0.1, 256)
    assert res["converged"]
    assert len(res["u"]) == 256


def test_config_errors_raise():
    with pytest.raises(imcflab.ConfigError):
        imcflab.make_preset("no-such-metric")
    with pytest.raises(imcflab.ConfigError):
        imcflab.meeks_yau_bound(0.0, 1.0)


def test_cli_entry_point(tmp_path):
    out = tmp_path / "flow"
    assert imcflab.cli_main(["flow", "--metric", "euclidean", "--samples", "8", "--out", str(out)]) == 0
    assert (out / "summary.json").exists()
