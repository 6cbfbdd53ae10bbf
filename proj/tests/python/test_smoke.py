import json

import pytest

confoliation = pytest.importorskip("confoliation")


def test_profiles():
    lam = confoliation.make_lambda(1.2)
    assert lam(0.2) == 0.0
    assert lam(1.0) == 1.0
    assert 0.0 < lam(0.65) < 1.0
    assert lam.derivative(0.65, 1) > 0.0

    f = confoliation.make_f(0.05, 1.2)
    assert f(0.0) == 0.0
    assert -1.0 < f(1.15) < -0.95


def test_verify_small_grid():
    report = confoliation.verify(
        {
            "t_sweep": [0.05],
            "grid": {"n_r": 24, "n_theta": 6, "n_phi": 6, "n_cyl": 12},
        }
    )
    assert report["overall_pass"] is True
    checks = {(c["check"], c["region"]): c for c in report["checks"]}
    assert checks[("contact", "N0:core")]["margin"] > 0.0


def test_contact_margin_and_slice():
    cfg = json.dumps({"grid": {"n_r": 8, "n_theta": 4, "n_phi": 4, "n_cyl": 6}})
    m = confoliation.contact_margin(cfg, "N0:reeb", 0.05, 0.7, 0.0, 0.0)
    assert m > 0.0
    svg = confoliation.slice_svg(cfg, "phi", 0.0, 0.0)
    assert svg.startswith("<svg") and "<line" in svg
