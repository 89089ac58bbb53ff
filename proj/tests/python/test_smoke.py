import math

import pytest

import frobenius


def test_confined_harmonic():
    levels = frobenius.confined_levels("harmonic", {"omega": 1}, l=0, R=2.5, states=2)
    assert [lv["n"] for lv in levels] == [0, 1]
    assert abs(levels[0]["lambda"] - 1.5514217) < 1e-7
    assert abs(levels[1]["lambda"] - 4.1842613) < 1e-7
    assert levels[0]["lambda_text"].startswith("1.55142165")


def test_kratzer_certified():
    out = frobenius.unconfined_level(
        "kratzer", {"d-2": 4, "d-1": -8}, l=1, k=1, tol="1e-13", R0=5, dR=0.5, K_start=160
    )
    assert out["converged"]
    assert abs(float(out["energy_text"]) + 1.4476568219254) <= 1e-13
    assert out["width"] < 1e-13
    assert len(out["trace"]) > 1


def test_anharmonic_and_crossing():
    e = frobenius.anharmonic_energy(2, 1, n=0, l=0, tol="1e-9")
    assert abs(e["energy"] - 3.05794573) < 1e-8
    c = frobenius.level_crossing(2, (1, 0), (0, 3), -3.8, -3.7)
    assert -3.8 < c["z"] < -3.7


def test_series_and_oracle():
    a = frobenius.series_coefficients("harmonic", {"omega": 1}, l=0, lam="1.5", K=6)
    # Ground state r e^{-r^2/2}: odd powers vanish, a_2 = -1/2, a_4 = 1/8.
    assert float(a[0]) == 1.0
    assert float(a[1]) == 0.0
    assert math.isclose(float(a[2]), -0.5, abs_tol=1e-40)
    assert math.isclose(float(a[4]), 0.125, abs_tol=1e-40)
    fd = frobenius.oracle_levels("harmonic", {"omega": 1}, l=0, states=2)
    assert abs(fd[1] - 3.5) < 1e-4


def test_errors_raise():
    with pytest.raises(frobenius.Error):
        frobenius.confined_levels("hulthen", {"delta": 1, "P": 6}, R=7)
    with pytest.raises(frobenius.Error):
        frobenius.confined_levels("morse", {}, R=2)
