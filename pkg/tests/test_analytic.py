import dataclasses
import math

import numpy as np
import pytest
from scipy.special import erf

import fasaris as fa
from fasaris.errors import ConfigurationError, NumericalError

from helpers import binomial_se, draw_max_bc, draw_max_iid, empirical_cdf


def single_gaussian_cdf(y, s):
    return 0.5 * (1.0 + erf((y - s.mean_gain) / math.sqrt(2.0 * s.var_gain)))


def test_chebyshev_node_values():
    nodes, _ = fa.chebyshev_nodes(1)
    assert nodes == pytest.approx([0.0], abs=1e-16)
    nodes2, _ = fa.chebyshev_nodes(2)
    assert sorted(nodes2) == pytest.approx(
        [-math.cos(math.pi / 4.0), math.cos(math.pi / 4.0)], rel=1e-15
    )


def test_chebyshev_semicircle_exact():
    from fasaris.analytic import integrate_chebyshev

    value = integrate_chebyshev(lambda x: np.sqrt(1.0 - x**2), -1.0, 1.0, 64)
    assert value == pytest.approx(math.pi / 2.0, abs=1e-12)


def test_chebyshev_second_order_on_generic_integrands():
    # With a plain integrand that does not vanish at the endpoints the rule
    # is second order: quadrupling accuracy per node doubling.
    from fasaris.analytic import integrate_chebyshev

    exact = math.e - 1.0
    errs = [abs(integrate_chebyshev(np.exp, 0.0, 1.0, u) - exact) for u in (64, 128, 256)]
    assert errs[0] < 1e-3
    for a, b in zip(errs, errs[1:]):
        assert b < a / 3.2


def test_chebyshev_spectral_on_endpoint_vanishing_integrands():
    # Integrands that decay to ~0 at both endpoints (every Gaussian-density
    # expectation in this package) converge far faster than second order.
    from fasaris.analytic import integrate_chebyshev

    f = lambda x: np.exp(-(x**2) / 2.0) / math.sqrt(2.0 * math.pi)
    exact = math.erf(6.0 / math.sqrt(2.0))
    err = abs(integrate_chebyshev(f, -6.0, 6.0, 64) - exact)
    assert err < 1e-9


def test_quadrature_spec_validation():
    with pytest.raises(ConfigurationError):
        fa.QuadratureSpec(u=2)
    with pytest.raises(ConfigurationError):
        fa.QuadratureSpec(h_gauss=2.0)
    assert fa.QuadratureSpec().doubled().u == 128


@pytest.fixture(scope="module")
def surrogate():
    return fa.GaussianSurrogate(
        mean_gain=50.0, var_gain=25.0, rho_intra=0.95, rho_inter=0.44
    )


def test_iid_cdf_single_block_collapses(surrogate, quad):
    ygrid = surrogate.mean_gain + np.linspace(-3, 3, 13) * 5.0
    got = fa.cdf_gamma_star_iid(ygrid, surrogate, 1, quad)
    want = single_gaussian_cdf(ygrid, surrogate)
    assert got == pytest.approx(want, abs=1e-8)


def test_bc_cdf_single_port_collapses(quad):
    s = fa.GaussianSurrogate(mean_gain=50.0, var_gain=25.0, rho_intra=0.95, rho_inter=0.44)
    part = fa.BlockPartition(mu=0.97, block_sizes=(1,), lambda_th=0.1, fit_distance=0.0)
    ygrid = s.mean_gain + np.linspace(-3, 3, 13) * 5.0
    got = fa.cdf_gamma_star_bc(ygrid, s, part, quad)
    want = single_gaussian_cdf(ygrid, s)
    assert got == pytest.approx(want, abs=1e-8)


def test_cdf_saturation(surrogate, quad):
    part = fa.BlockPartition(mu=0.97, block_sizes=(3, 2, 1), lambda_th=0.1, fit_distance=0.0)
    hi = surrogate.mean_gain + 10.0 * 5.0
    lo = surrogate.mean_gain - 10.0 * 5.0
    assert fa.cdf_gamma_star_bc(hi, surrogate, part, quad) >= 1.0 - 1e-6
    assert fa.cdf_gamma_star_bc(lo, surrogate, part, quad) <= 1e-6
    assert fa.cdf_gamma_star_iid(hi, surrogate, 4, quad) >= 1.0 - 1e-6
    assert fa.cdf_gamma_star_iid(lo, surrogate, 4, quad) <= 1e-6


def test_cdfs_monotone_and_bounded(surrogate, quad):
    part = fa.BlockPartition(mu=0.97, block_sizes=(4, 3, 2, 1), lambda_th=0.1, fit_distance=0.0)
    ygrid = surrogate.mean_gain + np.linspace(-6, 6, 61) * 5.0
    for values in (
        fa.cdf_gamma_star_bc(ygrid, surrogate, part, quad),
        fa.cdf_gamma_star_iid(ygrid, surrogate, part.n_blocks, quad),
    ):
        assert np.all(values >= 0.0) and np.all(values <= 1.0)
        assert np.all(np.diff(values) >= -1e-12)


def test_bc_routes_to_iid_at_full_intra_correlation(quad):
    s = fa.GaussianSurrogate(mean_gain=50.0, var_gain=25.0, rho_intra=1.0, rho_inter=0.44)
    part = fa.BlockPartition(mu=1.0, block_sizes=(5, 5, 5, 5), lambda_th=0.1, fit_distance=0.0)
    ygrid = s.mean_gain + np.linspace(-2, 2, 9) * 5.0
    via_bc = fa.cdf_gamma_star_bc(ygrid, s, part, quad)
    via_iid = fa.cdf_gamma_star_iid(ygrid, s, part.n_blocks, quad)
    assert np.array_equal(via_bc, via_iid)


def test_bc_rejects_degenerate_correlations(quad):
    s = fa.GaussianSurrogate(mean_gain=50.0, var_gain=25.0, rho_intra=0.44, rho_inter=0.44)
    part = fa.BlockPartition(mu=0.97, block_sizes=(2, 2), lambda_th=0.1, fit_distance=0.0)
    with pytest.raises(NumericalError):
        fa.cdf_gamma_star_bc(50.0, s, part, quad)
    s_bad = fa.GaussianSurrogate(mean_gain=50.0, var_gain=25.0, rho_intra=1.0, rho_inter=1.0)
    with pytest.raises(NumericalError):
        fa.cdf_gamma_star_iid(50.0, s_bad, 3, quad)


def test_bc_cdf_matches_decomposition_draws(quad):
    # Four blocks of five ports at the reference moments.
    mean, var = fa.cascade_moments(64, 1.0, 1.0)
    rho1 = fa.gain_correlation(0.97)
    rho0 = fa.gain_correlation(0.0)
    s = fa.GaussianSurrogate(mean_gain=mean, var_gain=var, rho_intra=rho1, rho_inter=rho0)
    part = fa.BlockPartition(mu=0.97, block_sizes=(5, 5, 5, 5), lambda_th=0.1, fit_distance=0.0)
    y = mean + math.sqrt(var)
    rng = np.random.default_rng(314159)
    draws = draw_max_bc(mean, var, rho1, rho0, part.block_sizes, rng, 1_000_000)
    emp = float(np.mean(draws <= y))
    ana = fa.cdf_gamma_star_bc(y, s, part, quad)
    se = binomial_se(emp, ana, len(draws))
    assert abs(ana - emp) <= 3.0 * se


def test_iid_cdf_matches_decomposition_draws(quad):
    mean, var = fa.cascade_moments(64, 1.0, 1.0)
    rho0 = fa.gain_correlation(0.0)
    s = fa.GaussianSurrogate(mean_gain=mean, var_gain=var, rho_intra=1.0, rho_inter=rho0)
    rng = np.random.default_rng(271828)
    draws = draw_max_iid(mean, var, rho0, 5, rng, 1_000_000)
    ygrid = mean + np.linspace(-2, 2, 5) * math.sqrt(var)
    emp = empirical_cdf(draws, ygrid)
    ana = fa.cdf_gamma_star_iid(ygrid, s, 5, quad)
    se = binomial_se(emp, ana, len(draws))
    assert np.all(np.abs(ana - emp) <= 3.0 * se)


def test_snr_cdf_basics(ref_cfg, ref_surrogate, ref_partition, quad):
    lb = fa.link_budget(ref_cfg)
    star = lambda y: fa.cdf_gamma_star_bc(y, ref_surrogate, ref_partition, quad)
    assert fa.cdf_snr(0.0, star, lb, ref_cfg.eps3, quad) == 0.0
    with pytest.raises(ValueError):
        fa.cdf_snr(-1.0, star, lb, ref_cfg.eps3, quad)
    tgrid = np.array([1.0, 10.0, 100.0, 1023.0, 1e4, 1e6])
    values = [fa.cdf_snr(t, star, lb, ref_cfg.eps3, quad) for t in tgrid]
    assert all(0.0 <= v <= 1.0 for v in values)
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_snr_cdf_degenerate_direct_link(ref_cfg, ref_surrogate, ref_partition, quad):
    # With a vanishing direct-link variance the SNR CDF collapses onto the
    # best-gain CDF evaluated at sqrt(t)/omega1.
    lb = fa.link_budget(dataclasses.replace(ref_cfg, P_dBm=45.0))
    star = lambda y: fa.cdf_gamma_star_bc(y, ref_surrogate, ref_partition, quad)
    eps3 = 1e-12
    for t in (0.3 * lb.beta, lb.beta):
        got = fa.cdf_snr(t, star, lb, eps3, quad)
        want = float(star(math.sqrt(t) / lb.omega1))
        assert got == pytest.approx(want, abs=1e-4)


def test_outage_probability_validation(ref_cfg):
    with pytest.raises(ConfigurationError):
        fa.outage_probability(ref_cfg, method="bogus")


def test_outage_probability_saturation_limits(ref_cfg):
    hopeless = dataclasses.replace(ref_cfg, R=100.0)
    assert fa.outage_probability(hopeless, method="iid_analytic").op >= 1.0 - 1e-6
    strong = dataclasses.replace(ref_cfg, P_dBm=60.0)
    weak = dataclasses.replace(ref_cfg, P_dBm=0.0)
    op_strong = fa.outage_probability(strong, method="bc_analytic").op
    op_weak = fa.outage_probability(weak, method="bc_analytic").op
    assert op_strong <= 1e-3
    assert op_strong < op_weak


def test_outage_probability_reports_diagnostics(ref_cfg):
    result = fa.outage_probability(ref_cfg, method="bc_analytic")
    assert result.method == "bc_analytic"
    assert 0.0 <= result.op <= 1.0
    assert result.diag_residual is not None and result.diag_residual >= 0.0
    assert result.runtime_ms > 0.0


def test_bc_and_iid_agree_when_blocks_fully_correlated(ref_cfg):
    bc = fa.outage_probability(ref_cfg, method="bc_analytic", mu=1.0)
    iid = fa.outage_probability(ref_cfg, method="iid_analytic", mu=1.0)
    assert bc.op == iid.op


def test_quadrature_convergence_probe(ref_cfg, ref_surrogate, ref_partition):
    # The independent-blocks form is fully converged at the default node
    # count; the block form needs one doubling before its inner transition
    # layer is resolved, after which it also collapses.
    ygrid = ref_surrogate.mean_gain + np.linspace(-3, 3, 7) * math.sqrt(
        ref_surrogate.var_gain
    )
    v64 = fa.cdf_gamma_star_iid(ygrid, ref_surrogate, ref_partition.n_blocks, fa.QuadratureSpec(u=64))
    v128 = fa.cdf_gamma_star_iid(ygrid, ref_surrogate, ref_partition.n_blocks, fa.QuadratureSpec(u=128))
    assert np.max(np.abs(v64 - v128)) < 1e-6
    b128 = fa.cdf_gamma_star_bc(ygrid, ref_surrogate, ref_partition, fa.QuadratureSpec(u=128))
    b256 = fa.cdf_gamma_star_bc(ygrid, ref_surrogate, ref_partition, fa.QuadratureSpec(u=256))
    assert np.max(np.abs(b128 - b256)) < 1e-9
    b64 = fa.cdf_gamma_star_bc(ygrid, ref_surrogate, ref_partition, fa.QuadratureSpec(u=64))
    assert np.max(np.abs(b64 - b128)) < 1e-4


def test_direct_link_outage_formula(ref_cfg):
    lb = fa.link_budget(ref_cfg)
    got = fa.direct_link_outage(lb, ref_cfg.eps3)
    want = 1.0 - math.exp(-lb.beta / (lb.omega2**2 * ref_cfg.eps3))
    assert got == pytest.approx(want, rel=1e-15)
