import math

import numpy as np
import pytest

import ddaqc


def test_version():
    assert ddaqc.__version__ == "0.1.0"


def test_spectral_density_and_autocorrelation():
    assert ddaqc.autocorrelation(0.0, 2.0) == pytest.approx(4.0 / math.sqrt(2 * math.pi))
    assert ddaqc.spectral_density(0.0, 1.0) == pytest.approx(1.0 / math.sqrt(2 * math.pi))
    with pytest.raises(ValueError):
        ddaqc.spectral_density(0.0, -1.0)


def test_sample_noise_shape_and_reproducibility():
    step, a = ddaqc.sample_noise(beta=1.0, duration=2.0, seed=4, realization=3)
    _, b = ddaqc.sample_noise(beta=1.0, duration=2.0, seed=4, realization=3)
    assert a.shape == (12, 41)
    assert step == pytest.approx(0.05)
    np.testing.assert_array_equal(a, b)


def test_gaps():
    g, s, samples = ddaqc.gap_scan("grover")
    assert g == pytest.approx(0.5, abs=1e-9)
    assert s == pytest.approx(0.5, abs=1e-6)
    assert len(samples) >= 201
    g2, s2, _ = ddaqc.gap_scan("2sat")
    assert g2 == pytest.approx(4 / math.sqrt(5), abs=1e-9)
    assert s2 == pytest.approx(0.8, abs=1e-6)


def test_schedules():
    c = ddaqc.cdd_schedule(1, 1.0)
    assert c.label == "CDD1"
    assert [p for _, p in c.events] == ["+XXXX", "+ZZZZ", "+XXXX"]
    assert c.segment_count == 4
    q = ddaqc.qdd_schedule(3, 7, 2.0)
    assert q.segment_count == 32
    u = ddaqc.udd_schedule(2, "y", 1.0)
    assert u.label == "UDD2"
    assert ddaqc.uhrig_times(2, 1.0) == pytest.approx([0.25, 0.75])


def test_distance_curve_is_deterministic():
    config = {"algorithm": "grover", "t_grid": [2, 5], "realizations": 3, "sequences": ["CDD:1"], "workers": 1}
    rows = ddaqc.distance_curve(config)
    assert [r["sequence"] for r in rows[:3]] == ["ideal", "faulty", "CDD"]
    assert all(0.0 <= r["D_mean"] <= 1.0 for r in rows)
    again = ddaqc.distance_curve(dict(config, workers=2))
    assert [r["D_mean"] for r in rows] == [r["D_mean"] for r in again]


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError, match="realisations"):
        ddaqc.distance_curve({"realisations": 3})


def test_sweep_and_compare():
    records, summaries = ddaqc.sweep_beta_tau(
        {"algorithm": "2sat", "tau_level": 1, "beta_ratios": [1.0], "tau_grid": [0.5, 2.0], "realizations": 2, "workers": 1}
    )
    assert len(records) == 2 and len(summaries) == 1
    rows = ddaqc.compare_cdd_qdd(
        {"t_grid": [3.0], "sequences": ["CDD:1", "QDD:1"], "realizations": 2, "workers": 1}
    )
    assert [r["sequence"] for r in rows] == ["CDD", "QDD"]


def test_noise_validation_report():
    checks = ddaqc.validate_noise(realizations=50)
    assert {"name", "measured", "expected", "tolerance", "passed"} <= set(checks[0])
