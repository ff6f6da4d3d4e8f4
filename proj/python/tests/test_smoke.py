import numpy as np
import pytest

import smsec


@pytest.fixture
def setup():
    cfg = smsec.SystemConfig()
    cfg.sigma_b2 = cfg.sigma_e2 = smsec.noise_variance_for_snr(cfg.power, 5.0)
    cs = smsec.draw_channel_set(cfg, smsec.AnMode.NullSpace, smsec.Rng.derive(1, [0, 3]))
    return cfg, cs


def test_codebook():
    cb = smsec.build_codebook(8, 4)
    assert len(cb) == 32
    assert cb.bits_per_use == 5
    assert abs(abs(cb[5].symbol) - 1.0) < 1e-12


def test_channel_shapes(setup):
    cfg, cs = setup
    assert cs.h.shape == (6, 8)
    assert cs.p_jm.shape == (4, 3)
    assert cs.h.dtype == np.complex128


def test_beamformers_unit_norm_and_equivalence(setup):
    cfg, cs = setup
    vals = {}
    for m in smsec.ALL_METHODS:
        bf = smsec.design(m, cs, cfg)
        assert abs(np.linalg.norm(bf.u_br) - 1.0) < 1e-12
        vals[m] = smsec.sjnr(bf.u_br, cs, cfg)
    assert vals[smsec.Method.MaxSJNR] == pytest.approx(vals[smsec.Method.MaxWFRP], rel=1e-9)
    assert vals[smsec.Method.MaxSJNR] >= max(vals.values()) * (1 - 1e-12)


def test_zf_residual(setup):
    cfg, cs = setup
    u = smsec.max_rp_zfc(cs, cfg).u_br
    jam = cs.f @ cs.p_jm
    assert np.linalg.norm(u.conj() @ jam) <= 1e-10 * np.linalg.norm(jam)


def test_zfc_infeasible_raises():
    cfg = smsec.SystemConfig()
    cfg.n_bob, cfg.n_mallory = 2, 4
    cs = smsec.draw_channel_set(cfg, smsec.AnMode.NullSpace, smsec.Rng(4))
    with pytest.raises(smsec.ZfcInfeasible):
        smsec.max_rp_zfc(cs, cfg)


def test_mutual_info_bounds(setup):
    cfg, cs = setup
    cb = smsec.build_codebook(8, 4)
    u = smsec.max_sjnr(cs, cfg).u_br
    i = smsec.mutual_info_mc(u, smsec.Side.Bob, cs, cfg, cb, 100, smsec.Rng(2))
    assert 0.0 <= i <= 5.0


def test_whitening():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    r = a @ a.conj().T + np.eye(4)
    w = smsec.whitening_matrix(r)
    np.testing.assert_allclose(w @ r @ w.conj().T, np.eye(4), atol=1e-10)


def test_flops():
    assert smsec.flop_estimate(smsec.Method.MaxRP, 2) == 129 * 8
    assert smsec.flop_estimate(smsec.Method.MaxSJNR, 2) == 268 * 8 + 6


def test_config_roundtrip_and_errors():
    cfg = smsec.parse_config(smsec.emit_config(smsec.ExperimentConfig()))
    assert cfg.system.n_bob == 6
    with pytest.raises(ValueError, match="beta"):
        smsec.parse_config("beta = 2\n")


def test_small_sweep_deterministic(tmp_path):
    sweep = smsec.SweepSpec()
    sweep.snr_grid_db = [0.0]
    sweep.p_m_list = [1.0]
    sweep.n_channel_realizations = 6
    sweep.n_noise = 20
    sweep.n_ber_trials = 120
    cfg = smsec.SystemConfig()
    a = smsec.records_to_rows(smsec.run_sweep(cfg, sweep, 1))
    b = smsec.records_to_rows(smsec.run_sweep(cfg, sweep, 2))
    assert a == b
    assert len(a) == 4
    exp = smsec.ExperimentConfig()
    exp.sweep = sweep
    smsec.write_outputs(smsec.run_sweep(cfg, sweep, 1), exp, str(tmp_path))
    header = (tmp_path / "results.csv").read_text().splitlines()[0]
    assert header == "method,snr_db,p_m,avg_sr,ber,avg_sjnr_db,n_realizations,n_zfc_infeasible"
