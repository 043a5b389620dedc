"""Smoke tests for the python bindings: one call through each module area."""

import math

import pytest

import qcp


def test_version():
    assert qcp.__version__ == "0.1.0"


def test_charges_and_partition():
    cs = qcp.make_binary(12, 7)
    assert cs.n == 12
    assert all(w in (-1.0, 1.0) for w in cs.omega)
    logz = qcp.prefix_log_partition(cs, 1.0)
    assert len(logz) == 13
    assert logz[0] == 0.0 and logz[1] == 0.0
    # enumeration oracle agrees with the DP
    oracle = qcp.oracle_log_partition(cs, 1.0, qcp.Convention.original)
    assert abs(logz[12] - oracle) <= 1e-10 * max(1.0, abs(oracle))
    # bar convention bridge
    bar = qcp.log_partition_bar(cs, 0.5)
    bar_oracle = qcp.oracle_log_partition(cs, 0.5, qcp.Convention.bar)
    assert abs(bar - bar_oracle) <= 1e-10 * max(1.0, abs(bar_oracle))


def test_determinism():
    a = qcp.make_gaussian(50, 123)
    b = qcp.make_gaussian(50, 123)
    assert a.omega == b.omega


def test_bond_profile():
    cs = qcp.make_binary(30, 11)
    prof = qcp.bond_profile(cs, 0.3)
    assert len(prof.p) == 29
    assert all(0.0 <= p <= 1.0 for p in prof.p)
    assert min(prof.p) >= qcp.dgh2_bound(0.3)
    assert qcp.empirical_cdf(prof, 1.0) == 1.0


def test_free_energy_bounds():
    beta = 1.0
    mc = qcp.mc_quenched_fe(200, beta, 50, 42, qcp.ChargeDist.binary)
    ub = qcp.annealed_fe(beta, qcp.AnnealedDist.binary)
    lb = max(-beta, qcp.variational_lb(beta))
    assert lb <= mc.mean + 3 * mc.std_error
    assert mc.mean - 3 * mc.std_error <= ub
    assert qcp.annealed_fe(0.0, qcp.AnnealedDist.binary) == 0.0


def test_wsaw_and_diblock():
    assert abs(qcp.wsaw_fe(1.0) - 1.5775587257521941) < 1e-9
    assert 0.33 < qcp.beta0() < 0.36
    joint = qcp.diblock_joint(10, 1.0)
    total = sum(
        math.exp(lw - joint.log_norm) for row in joint.log_weight for lw in row
    )
    assert abs(total - 1.0) < 1e-10


def test_undirected():
    cs = qcp.make_gaussian(8, 3)
    en = qcp.enumerate_undirected(cs, 0.5, 1)
    assert en.min_range_energy_margin >= 0.0
    assert en.eq2_margin >= 0.0
    cond = qcp.ballistic_condition(2.0, 2.0, qcp.ChargeDist.gaussian)
    assert cond.holds == (2.0**2 > 1.0 + math.log(2.0) / 2.0)


def test_errors():
    with pytest.raises(ValueError):
        qcp.make_binary(0, 1)
    with pytest.raises(ValueError):
        qcp.prefix_log_partition(qcp.make_binary(5, 1), -1.0)
