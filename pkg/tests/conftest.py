"""Shared fixtures. The four production solves (both delay intervals,
both discretisation variants) are expensive, so they run once per
session and are reused by the unit and acceptance tests."""

from dataclasses import dataclass

import pytest

import polydelay as pdl


@dataclass(frozen=True)
class SirRun:
    """One solved SIR configuration in rescaled time.

    system is the EquivalentSystem (equivalent variant) or the assembled
    DiscreteDelayDde (quadrature variant); tfac maps solver time back to
    original time (t = tfac * t_scaled); horizon is the scaled end time.
    """

    params: object
    base: object
    system: object
    traj: object
    tfac: float
    horizon: float


def _params(a, b):
    weight = pdl.beta_polynomial(a, b, 2, 2)
    return pdl.SirParameters(sigma=0.1, theta=0.05, weight=weight,
                             y0=(0.99, 0.01, 0.0))


def _solve_equivalent(params, horizon, h_max):
    base = pdl.scale_distributed(pdl.sir_distributed(params))
    system = pdl.build_equivalent(base)
    opts = pdl.SolverOptions(rtol=1e-6, atol=1e-8, h_max=h_max)
    traj = pdl.solve(system.assembled, horizon, opts)
    return SirRun(params=params, base=base, system=system, traj=traj,
                  tfac=params.weight.b, horizon=horizon)


def _solve_quadrature(params, horizon, h_max, m):
    base = pdl.scale_distributed(pdl.sir_distributed(params))
    rule = pdl.gauss_jacobi(m, 2, 2, base.weight.a, base.weight.b)
    dde = pdl.build_quadrature_dde(base, rule)
    opts = pdl.SolverOptions(rtol=1e-6, atol=1e-8, h_max=h_max)
    traj = pdl.solve(dde, horizon, opts)
    return SirRun(params=params, base=base, system=dde, traj=traj,
                  tfac=params.weight.b, horizon=horizon)


@pytest.fixture(scope="session")
def case_i_params():
    return _params(30.0, 150.0)


@pytest.fixture(scope="session")
def case_ii_params():
    return _params(150.0, 250.0)


@pytest.fixture(scope="session")
def case_i_equivalent(case_i_params):
    return _solve_equivalent(case_i_params, 20.0 / 3.0, 1e-3)


@pytest.fixture(scope="session")
def case_ii_equivalent(case_ii_params):
    return _solve_equivalent(case_ii_params, 4.0, 5e-4)


@pytest.fixture(scope="session")
def case_i_quadrature(case_i_params):
    return _solve_quadrature(case_i_params, 20.0 / 3.0, 1e-3, 4)


@pytest.fixture(scope="session")
def case_ii_quadrature(case_ii_params):
    return _solve_quadrature(case_ii_params, 4.0, 5e-4, 4)
