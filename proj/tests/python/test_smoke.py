import numpy as np
import pytest

import moyal


def test_grid_info():
    info = moyal.grid_info(1, 16)
    assert info["delta"] == pytest.approx(np.sqrt(2 * np.pi / 16))
    assert info["weight"] == pytest.approx(1 / 16)
    assert len(info["coordinates"]) == 16
    with pytest.raises(moyal.GridError):
        moyal.grid_info(1, 15)


def test_shapes_and_unit():
    f, g = moyal.random_fields(1, 16, seed=3, count=2)
    assert f.shape == (16, 16) and f.dtype == np.complex128
    h = moyal.compose(f, g)
    assert h.shape == f.shape
    one = np.ones_like(f)
    assert np.linalg.norm(moyal.compose(one, f) - f) < 1e-8 * np.linalg.norm(f)


def test_integral_identity_and_pairing():
    f, g = moyal.random_fields(1, 16, seed=4, count=2)
    assert moyal.crichi_defect(f, g) < 1e-10
    w = moyal.grid_info(1, 16)["weight"]
    assert moyal.pair(f, g) == pytest.approx(w * np.sum(f * g))


def test_gaussian_fixed_by_fourier():
    f = moyal.gauss0(1, 48)
    assert np.linalg.norm(moyal.symplectic_fourier(f) - f) < 1e-12 * np.linalg.norm(f)


def test_pointwise_law_commutes():
    f, g = moyal.random_fields(1, 8, seed=5, count=2)
    assert np.allclose(moyal.compose(f, g, law="pointwise"), f * g)


def test_errors_map_to_python():
    f = moyal.gauss0(1, 16)
    g = moyal.gauss0(1, 8)
    with pytest.raises(moyal.GridMismatch):
        moyal.compose(f, g)
    with pytest.raises(moyal.FormatError):
        moyal.compose(f, f, law="nonsense")
    with pytest.raises(moyal.DimensionMismatch):
        moyal.compose(f, f, law="magnetic-b1")
    with pytest.raises(moyal.IdempotencyFailure):
        moyal.mod_map(f, window="idempotent")
    assert issubclass(moyal.GridMismatch, moyal.MoyalError)


def test_modulation_isometry():
    f = moyal.random_fields(1, 32, seed=6)[0]
    w = moyal.grid_info(1, 32)["weight"]
    l2 = np.sqrt(w * np.sum(np.abs(f) ** 2))
    assert moyal.modulation_norm(f, window="idempotent") == pytest.approx(l2, rel=1e-6)


def test_mod_map_and_stft_shapes():
    f = moyal.random_fields(1, 8, seed=7)[0]
    assert moyal.mod_map(f).shape == (64, 64)
    assert moyal.stft(f, moyal.gauss0(1, 8)).shape == (64, 64)


def test_array_window():
    f = moyal.random_fields(1, 8, seed=8)[0]
    h = moyal.gaussian(1, 8, [0.3, 0.0], 1.0)
    assert moyal.mod_map(f, window=h).shape == (64, 64)


def test_magnetic_two_dimensional():
    f, g = moyal.random_fields(2, 6, seed=9, count=2)
    assert f.shape == (6, 6, 6, 6)
    assert moyal.crichi_defect(f, g, law="magnetic-b1") < 1e-8


def test_symbol_file_round_trip(tmp_path):
    f = moyal.random_fields(1, 8, seed=10)[0]
    path = str(tmp_path / "f.json")
    moyal.write_symbol(path, f)
    assert (tmp_path / "f.bin").stat().st_size == 64 * 16
    assert np.array_equal(moyal.read_symbol(path), f)


def test_verify_report():
    r = moyal.verify("weyl", 1, 8, 7)
    assert r["registry_version"] == moyal.registry_version
    assert [c["check_id"] for c in r["checks"]] == moyal.check_ids()
    assert {c["status"] for c in r["checks"]} <= {"pass", "fail", "expected_fail", "non_check"}
    by_id = {c["check_id"]: c for c in r["checks"]}
    assert by_id["crichi"]["status"] == "pass"
    assert by_id["hypothesis_b"]["defect"] is None
    assert "weyl" in moyal.laws()
