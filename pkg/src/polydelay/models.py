"""Delayed SIR model: susceptible, infected, recovered populations where
immunity is lost after a distributed delay.

Recovered individuals rejoin the susceptible pool at the rate
theta * integral I(t - tau) g(tau) dtau, giving

    S' = -sigma S I + theta z,    I' = sigma S I - theta I,
    R' =  theta I   - theta z,

with z the distributed integral of I. The three right-hand sides cancel
pairwise, so S + I + R is conserved; that makes the conservation residual
an independent accuracy diagnostic, which is why R is integrated
explicitly instead of being recovered from 1 - S - I.
"""

import math
from dataclasses import dataclass

import numpy as np

from .ddesolver import sample
from .transform import (DistributedDelayDde, StationaryPoint,
                        build_equivalent, stationary_aux)
from .weightfn import PolynomialWeight


@dataclass(frozen=True)
class SirParameters:
    """Rates, delay density and the constant initial populations (S, I, R).

    sigma is the infection rate, theta the recovery rate (both per unit
    time and positive); y0 must be componentwise nonnegative and sum to
    one within 1e-14.
    """

    sigma: float
    theta: float
    weight: PolynomialWeight
    y0: tuple

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise ValueError("sigma must be positive")
        if not self.theta > 0.0:
            raise ValueError("theta must be positive")
        y0 = tuple(float(v) for v in self.y0)
        if len(y0) != 3:
            raise ValueError("y0 must have three components")
        if any(v < 0.0 for v in y0):
            raise ValueError("populations must be nonnegative")
        if abs(math.fsum(y0) - 1.0) > 1e-14:
            raise ValueError("populations must sum to one")
        object.__setattr__(self, "y0", y0)


def sir_distributed(params):
    """Distributed-delay DDE of the model; the delay acts on component I."""
    sigma = params.sigma
    theta = params.theta
    y0 = np.array(params.y0)

    def rhs(t, y, z):
        si = sigma * y[0] * y[1]
        inflow = theta * z[1]
        return np.array([-si + inflow,
                         si - theta * y[1],
                         theta * y[1] - inflow])

    def hist(t):
        return y0

    return DistributedDelayDde(dimension=3, rhs=rhs, weight=params.weight,
                               delayed_components=frozenset({1}),
                               history=hist)


def sir_equivalent(params, rule=None):
    """Equivalent two-delay system of the delayed SIR model.

    For a degree-4 density this is the 8-dimensional system: S, I, R plus
    the auxiliary chain x_0..x_4 of I.
    """
    return build_equivalent(sir_distributed(params), rule)


def sir_conserved(traj, k=1000):
    """Largest violation of S + I + R = 1 on a k-point sample grid."""
    worst = 0.0
    for _, y in sample(traj, k):
        worst = max(worst, abs(float(y[0] + y[1] + y[2]) - 1.0))
    return worst


def sir_equilibrium(params, endemic_infected=None):
    """Representative equilibria of the model, as StationaryPoint list.

    Disease-free states (S*, 0, 1 - S*) are stationary for every S*; the
    returned representative puts everyone in S. When theta/sigma < 1 an
    endemic equilibrium family exists with S* = theta/sigma forced and
    I* free in (0, 1 - S*]; endemic_infected selects the member (default:
    half the non-susceptible mass). Auxiliary values follow the
    stationary closed form applied to I*.
    """
    w = params.weight
    points = [StationaryPoint(y_star=np.array([1.0, 0.0, 0.0]),
                              x_star=stationary_aux(0.0, w))]
    s_star = params.theta / params.sigma
    if s_star < 1.0:
        if endemic_infected is None:
            endemic_infected = 0.5 * (1.0 - s_star)
        i_star = float(endemic_infected)
        if not 0.0 < i_star <= 1.0 - s_star:
            raise ValueError(
                "endemic infected fraction must lie in (0, 1 - theta/sigma]")
        points.append(StationaryPoint(
            y_star=np.array([s_star, i_star, 1.0 - s_star - i_star]),
            x_star=stationary_aux(i_star, w)))
    return points
