import math

import pytest

import bayesmet as bm


def test_probe_roundtrip():
    noon = bm.make_probe("noon")
    assert noon.amps.shape == (3, 3)
    assert abs(bm.mean_photon_number(noon) - 2.0) < 1e-9
    assert abs(bm.mandel_q(noon)) < 1e-9
    assert abs(bm.j_parameter(noon) + 1.0) < 1e-9
    assert abs(bm.quantum_fisher(noon) - 4.0) < 1e-9


def test_encode_phase_is_unitary():
    tsv = bm.make_probe("tsv")
    enc = bm.encode_phase(tsv, 0.3)
    assert abs((abs(enc.amps) ** 2).sum() - 1.0) < 1e-9


def test_single_shot_bound():
    bound = bm.single_shot_bound("noon", 0.0, math.pi / 2)
    assert abs(bound - (math.pi**2 / 48 - 1 / math.pi**2)) < 1e-6
    sol = bm.personick_solve("noon", 0.0, math.pi / 2)
    assert sol.support_dim == 2
    assert abs(sol.estimates[1] - 1 / math.pi) < 1e-9
    assert sol.sylvester_residual < 1e-8


def test_simulate_and_mu_tau():
    curve = bm.simulate("noon", "counting-even", mu_max=5, samples=4000, seed=11)
    assert curve.mu == [1, 2, 3, 4, 5]
    assert abs(curve.mse[0] - 0.10430) < 2e-4
    assert all(b >= 0 for b in curve.mse)

    flat = bm.simulate("tsv", "optimal", mu_max=10, samples=30000)
    assert bm.mu_tau(flat, 8.0) == 5


def test_scheme_likelihood_normalised():
    p = bm.scheme_likelihood("tsv", "quadratures", 0.2)
    assert abs(sum(p) - 1.0) < 1e-8
    assert min(p) >= 0.0


def test_collective_and_narrow_prior():
    assert abs(bm.collective_bound("noon", 0.0, math.pi / 2, 2) - 7.02e-2) < 2e-4
    v = 0.01 / 12
    assert abs(bm.narrow_prior_bound("noon", 0.0, 0.1, 4.0) - v * (1 - v * 4)) < 1e-12


def test_loss_probe():
    probe = bm.best_fisher_two_photon(0.9)
    assert abs(probe.c0.real - 3 / math.sqrt(19)) < 1e-3
    assert abs(probe.c2.real - math.sqrt(10 / 19)) < 1e-3


def test_errors_surface_as_python_exceptions():
    with pytest.raises(bm.BayesmetError):
        bm.make_probe("not-a-state")
