"""Exact reformulation of distributed-delay DDEs as two-delay systems.

For y'(t) = f(y(t), integral_a^b y(t - tau) g(tau) dtau) with a polynomial
density g of degree n, the truncated moment functions

    x_i(t) = integral_a^b y(t - tau) tau^i dtau

satisfy the closed chain x_i'(t) = y(t-a) a^i - y(t-b) b^i + i x_{i-1}(t)
with x_{-1} = 0, and the distributed integral is recovered exactly as
sum_i alpha_i x_i(t). The pair (y, x) therefore solves an ordinary DDE
with just the two discrete delays a and b. This module builds that
augmented system, its auxiliary initial and stationary values, the time
scaling t -> t/b, and the nilpotent structure matrix of the auxiliary
block.
"""

from dataclasses import dataclass

import numpy as np

from .ddesolver import DiscreteDelayDde
from .weightfn import PolynomialWeight, rescale_to_unit

_REL_TOL = 1e-12


@dataclass(frozen=True)
class DistributedDelayDde:
    """DDE with a distributed delay: y' = rhs(t, y, z).

    rhs receives z, a length-d vector holding the weighted integral of
    each delayed component over the delay interval (zero in the other
    components). history(t) supplies the state for t <= 0; rhs must be
    deterministic and reentrant.
    """

    dimension: int
    rhs: object
    weight: PolynomialWeight
    delayed_components: frozenset
    history: object

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be at least 1")
        comps = frozenset(int(c) for c in self.delayed_components)
        if not comps:
            raise ValueError("delayed_components must be nonempty")
        if not all(0 <= c < self.dimension for c in comps):
            raise ValueError("delayed_components must index state components")
        object.__setattr__(self, "delayed_components", comps)


@dataclass(frozen=True)
class EquivalentSystem:
    """Augmented two-delay system equivalent to a distributed-delay DDE.

    State layout of `assembled`: the d base components first, then for
    each delayed component (ascending index) its auxiliary chain
    x_0..x_n. delays is the conceptual pair (a, b); when a = 0 the
    assembled DDE carries the single true delay b and the a-terms read
    the current state instead.
    """

    base: DistributedDelayDde
    degree: int
    aux_count: int
    delays: tuple
    assembled: DiscreteDelayDde


@dataclass(frozen=True)
class StationaryPoint:
    """Constant solution y* (componentwise f(y*, y*) = 0) with the
    stationary auxiliary values x* of every delayed component, stacked in
    chain order."""

    y_star: np.ndarray
    x_star: np.ndarray


def _check_rule_interval(rule, a, b):
    ra, rb = rule.interval
    if (abs(ra - a) > _REL_TOL * max(1.0, abs(a))
            or abs(rb - b) > _REL_TOL * max(1.0, abs(b))):
        raise ValueError(
            "rule interval [%g, %g] does not match the weight support "
            "[%g, %g]" % (ra, rb, a, b))


def aux_initial_values(history, weight, rule):
    """Initial auxiliary values x_i(0) = integral_a^b history(-tau) tau^i dtau.

    history is scalar-valued on [-b, 0]. The integral is evaluated with
    the supplied plain Gauss-Legendre rule; its weights are
    probability-normalised, so the interval length multiplies the sum.
    When every sampled history value equals history(0) the constant
    closed form y0 (b^{i+1} - a^{i+1}) / (i+1) is used instead.
    """
    a, b = weight.a, weight.b
    _check_rule_interval(rule, a, b)
    n = weight.degree
    h0 = float(history(0.0))
    hv = np.array([float(history(-tau)) for tau in rule.nodes])
    if np.all(hv == h0):
        i1 = np.arange(1, n + 2)
        return h0 * (b ** i1 - a ** i1) / i1
    out = np.empty(n + 1)
    powers = np.ones_like(hv)
    for i in range(n + 1):
        out[i] = (b - a) * float(np.dot(rule.weights, hv * powers))
        powers = powers * rule.nodes
    return out


def stationary_aux(y_star_component, weight):
    """Stationary auxiliary values x_i* = y* (b^{i+1} - a^{i+1}) / (i+1)."""
    i1 = np.arange(1, weight.degree + 2)
    return float(y_star_component) * (weight.b ** i1 - weight.a ** i1) / i1


def build_equivalent(dde, rule=None):
    """Assemble the equivalent two-delay system of a distributed-delay DDE.

    rule is the plain quadrature used to initialise the auxiliary chains
    from the history (32-node Gauss-Legendre on [a, b] by default;
    constant histories bypass it through the closed form). The assembled
    DDE has dimension d + (n+1) * #delayed and delays {a, b}, or just {b}
    when a = 0 since a zero lag is the current state.
    """
    w = dde.weight
    a, b = w.a, w.b
    n = w.degree
    if rule is None:
        from .quadrature import gauss_legendre
        rule = gauss_legendre(32, a, b)
    d = dde.dimension
    comps = sorted(dde.delayed_components)
    aux_count = (n + 1) * len(comps)
    dim = d + aux_count
    alpha = np.array(w.coeffs)
    apow = a ** np.arange(n + 1)
    bpow = b ** np.arange(n + 1)
    chain = np.arange(1, n + 1)
    degenerate = a == 0.0
    offsets = {c: d + (n + 1) * k for k, c in enumerate(comps)}
    base_rhs = dde.rhs
    base_hist = dde.history

    def rhs(t, Y, Z):
        y = Y[:d]
        z = np.zeros(d)
        for c in comps:
            o = offsets[c]
            z[c] = alpha @ Y[o:o + n + 1]
        dY = np.empty(dim)
        dY[:d] = base_rhs(t, y, z)
        if degenerate:
            y_a = y
            y_b = Z[:d, 0]
        else:
            y_a = Z[:d, 0]
            y_b = Z[:d, 1]
        for c in comps:
            o = offsets[c]
            x = Y[o:o + n + 1]
            dx = y_a[c] * apow - y_b[c] * bpow
            dx[1:] += chain * x[:-1]
            dY[o:o + n + 1] = dx
        return dY

    x0_full = np.concatenate([
        aux_initial_values(
            lambda s, c=c: np.asarray(base_hist(s), dtype=float)[c], w, rule)
        for c in comps])

    def hist(t):
        Y = np.empty(dim)
        Y[:d] = np.asarray(base_hist(t), dtype=float)
        # the auxiliary components are never read back in time by the
        # rhs; a constant extension keeps the history total
        Y[d:] = x0_full
        return Y

    assembled = DiscreteDelayDde(
        dimension=dim, delays=(b,) if degenerate else (a, b),
        rhs=rhs, history=hist)
    return EquivalentSystem(base=dde, degree=n, aux_count=aux_count,
                            delays=(a, b), assembled=assembled)


def scale_distributed(dde):
    """Scaled copy of a distributed-delay DDE: the new time is t/b.

    The right-hand side gains a factor b, the weight moves to [a/b, 1]
    via rescale_to_unit, and the history is read at b*t. The distributed
    integral itself is invariant under the change of variables, so the
    rhs callback signature is unchanged.
    """
    b = dde.weight.b
    rhs0 = dde.rhs
    hist0 = dde.history

    def rhs(t, y, z):
        return b * np.asarray(rhs0(b * t, y, z), dtype=float)

    def hist(t):
        return hist0(b * t)

    return DistributedDelayDde(
        dimension=dde.dimension, rhs=rhs, weight=rescale_to_unit(dde.weight),
        delayed_components=dde.delayed_components, history=hist)


def scale_system(sys, rule=None):
    """Rescale an equivalent system so the maximum delay is one.

    Base right-hand sides are multiplied by b, the delays become
    {a/b, 1}, and the auxiliary chains (coupling terms included) are
    regenerated from the rescaled weight, so the base components satisfy
    y_scaled(t / b) = y(t).
    """
    return build_equivalent(scale_distributed(sys.base), rule)


@dataclass(frozen=True)
class StructureMatrix:
    """Subdiagonal coupling matrix of an auxiliary chain of degree n."""

    n: int
    entries: np.ndarray


def structure_matrix(n):
    """(n+1) x (n+1) matrix with subdiagonal entries 1..n.

    This is the linear part of the auxiliary chain: nilpotent of index
    n+1, rank n, sole eigenvalue 0 with the single eigenvector direction
    (0, ..., 0, 1).
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    A = np.zeros((n + 1, n + 1))
    for i in range(1, n + 1):
        A[i, i - 1] = float(i)
    return StructureMatrix(n=n, entries=A)


def nilpotent_exponential(A, t):
    """exp(t A) as the exact finite sum of n+1 powers.

    Because A is nilpotent of index n+1 the series terminates; the
    entries are polynomials in t."""
    n = A.n
    out = np.eye(n + 1)
    term = np.eye(n + 1)
    for j in range(1, n + 1):
        term = (term @ A.entries) * (t / j)
        out = out + term
    return out


def find_stationary(dde, guess, tol=1e-12, max_iter=50):
    """Damped Newton iteration for stationary points f(y*, y*) = 0.

    In a stationary state the distributed integral of a delayed component
    equals the component itself (the density integrates to one), so the
    algebraic system is rhs(0, y, z) = 0 with z = y on the delayed
    components. The Jacobian is forward-difference and the update is its
    least-squares solution, so families of equilibria (singular
    Jacobians) converge to a nearby family member; the step is halved
    until the residual decreases. Raises RuntimeError when the residual
    cannot be pushed below 1e-10.
    """
    d = dde.dimension
    comps = sorted(dde.delayed_components)

    def resid(y):
        z = np.zeros(d)
        for c in comps:
            z[c] = y[c]
        return np.asarray(dde.rhs(0.0, y, z), dtype=float)

    y = np.asarray(guess, dtype=float).copy()
    r = resid(y)
    for _ in range(max_iter):
        rnorm = float(np.max(np.abs(r)))
        if rnorm <= tol:
            break
        J = np.empty((d, d))
        for j in range(d):
            step = 1e-7 * max(1.0, abs(y[j]))
            yp = y.copy()
            yp[j] += step
            J[:, j] = (resid(yp) - r) / step
        dy = np.linalg.lstsq(J, -r, rcond=None)[0]
        lam = 1.0
        improved = False
        while lam > 1e-6:
            y_try = y + lam * dy
            r_try = resid(y_try)
            if float(np.max(np.abs(r_try))) < rnorm:
                y, r = y_try, r_try
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
    if float(np.max(np.abs(r))) > 1e-10:
        raise RuntimeError(
            "Newton iteration stalled at residual %g" % np.max(np.abs(r)))
    x = np.concatenate([stationary_aux(y[c], dde.weight) for c in comps])
    return StationaryPoint(y_star=y, x_star=x)
