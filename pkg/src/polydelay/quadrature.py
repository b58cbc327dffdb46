"""Gaussian quadrature for polynomial densities on compact intervals.

Rules are generated by the Golub-Welsch procedure: the three-term
recurrence coefficients of the orthogonal polynomials for the weight form
a symmetric tridiagonal Jacobi matrix whose eigenvalues are the nodes,
and the squared first components of the normalised eigenvectors give the
weights. The eigenproblem is solved by an implicit-shift QL iteration
with Wilkinson shifts that accumulates only the first row of the
eigenvector matrix. Weights are normalised to sum to one, matching the
probability densities they integrate against.
"""

import math
from dataclasses import dataclass

import numpy as np

from .ddesolver import DiscreteDelayDde

_EPS = float(np.finfo(float).eps)

_QL_BUDGET_FACTOR = 50


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """Three-term recurrence data of an orthogonal polynomial family.

    diag holds the recurrence diagonal a_0..a_{m-1}, offdiag the square
    roots of b_1..b_{m-1}, and mu0 the total mass of the (classical,
    unnormalised) weight on [-1, 1].
    """

    diag: np.ndarray
    offdiag: np.ndarray
    mu0: float

    def __post_init__(self):
        if np.any(np.asarray(self.offdiag) <= 0.0):
            raise ValueError("off-diagonal recurrence entries must be positive")


def jacobi_recurrence(m, alpha, beta):
    """Monic recurrence coefficients of the weight (1-x)^alpha (1+x)^beta
    on [-1, 1], for the first m polynomials."""
    if m < 1:
        raise ValueError("need at least one recurrence coefficient")
    nu = alpha + beta
    diag = np.empty(m)
    diag[0] = (beta - alpha) / (nu + 2.0)
    for k in range(1, m):
        two = 2.0 * k + nu
        diag[k] = (beta * beta - alpha * alpha) / (two * (two + 2.0))
    bsq = np.empty(m - 1)
    if m > 1:
        bsq[0] = (4.0 * (alpha + 1.0) * (beta + 1.0)
                  / ((nu + 2.0) ** 2 * (nu + 3.0)))
    for k in range(2, m):
        two = 2.0 * k + nu
        bsq[k - 1] = (4.0 * k * (k + alpha) * (k + beta) * (k + nu)
                      / (two * two * (two + 1.0) * (two - 1.0)))
    mu0 = (2.0 ** (nu + 1.0) * math.gamma(alpha + 1.0)
           * math.gamma(beta + 1.0) / math.gamma(nu + 2.0))
    return RecurrenceCoefficients(diag=diag, offdiag=np.sqrt(bsq), mu0=mu0)


def _tqli(diag, offdiag):
    """Implicit-shift QL with Wilkinson shifts for a symmetric tridiagonal
    matrix, tracking only the first row of the eigenvector matrix.

    Returns (eigenvalues ascending, matching first-row components).
    Raises RuntimeError when the rotation budget of 50 sweeps per
    eigenvalue is exhausted.
    """
    d = np.array(diag, dtype=float)
    n = d.size
    e = np.zeros(n)
    e[: n - 1] = offdiag
    z = np.zeros(n)
    z[0] = 1.0
    total = 0
    for l in range(n):
        while True:
            mm = l
            while mm < n - 1:
                dd = abs(d[mm]) + abs(d[mm + 1])
                if abs(e[mm]) <= _EPS * dd:
                    break
                mm += 1
            if mm == l:
                break
            total += 1
            if total > _QL_BUDGET_FACTOR * n:
                raise RuntimeError(
                    "tridiagonal QL iteration failed to converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[mm] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            annihilated = False
            for i in range(mm - 1, l - 1, -1):
                f = s * e[i]
                h = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # a rotation vanished early; absorb the shift and
                    # restart the sweep
                    d[i + 1] -= p
                    e[mm] = 0.0
                    annihilated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * h
                p = s * r
                d[i + 1] = g + p
                g = c * r - h
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if annihilated:
                continue
            d[l] -= p
            e[l] = g
            e[mm] = 0.0
    order = np.argsort(d, kind="stable")
    return d[order], z[order]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and probability-normalised weights of a Gaussian rule.

    exactness is the certified polynomial degree 2m-1 and interval the
    open support (a, b) containing the nodes. Weights are positive and
    sum to one.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exactness: int
    interval: tuple

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        a, b = self.interval
        if nodes.size < 1 or weights.size != nodes.size:
            raise ValueError("need matching nonempty nodes and weights")
        if np.any(np.diff(nodes) <= 0.0):
            raise ValueError("nodes must be strictly increasing")
        if nodes[0] <= a or nodes[-1] >= b:
            raise ValueError("nodes must lie strictly inside the interval")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be positive")
        if abs(float(weights.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must sum to one")


def _rule_from_recurrence(rec, a, b):
    lam, z0 = _tqli(rec.diag, rec.offdiag)
    if lam.size > 1:
        gaps = np.diff(lam)
        if np.any(gaps <= 8.0 * _EPS):
            raise RuntimeError(
                "quadrature eigenvalues collided; recurrence data must be "
                "inconsistent")
    w = rec.mu0 * z0 * z0
    total = float(w.sum())
    if not total > 0.0:
        raise RuntimeError("eigenvector mass vanished in the weight formula")
    w = w / total
    nodes = a + (b - a) * (lam + 1.0) / 2.0
    m = lam.size
    return QuadratureRule(nodes=nodes, weights=w, exactness=2 * m - 1,
                          interval=(a, b))


def _check_rule_args(m, a, b):
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError("node count m must be an integer")
    if m < 1:
        raise ValueError("node count m must be at least 1")
    if not float(b) > float(a):
        raise ValueError("interval must satisfy b > a")
    return int(m), float(a), float(b)


def gauss_legendre(m, a, b):
    """m-node Gauss-Legendre rule for the uniform density on [a, b]."""
    m, a, b = _check_rule_args(m, a, b)
    return _rule_from_recurrence(jacobi_recurrence(m, 0.0, 0.0), a, b)


def gauss_jacobi(m, p, q, a, b):
    """m-node rule for the normalised density C (tau-a)^p (b-tau)^q.

    Mapped to [-1, 1] this density is the classical weight
    (1-x)^q (1+x)^p, which fixes the recurrence fed to the Golub-Welsch
    matrix; the affine node map and the weight normalisation bring the
    rule back to [a, b].
    """
    m, a, b = _check_rule_args(m, a, b)
    if p < 0 or q < 0:
        raise ValueError("exponents must be nonnegative")
    return _rule_from_recurrence(
        jacobi_recurrence(m, float(q), float(p)), a, b)


def apply(rule, f):
    """Weighted-integral approximation sum_k w_k f(tau_k)."""
    return math.fsum(w * f(t) for t, w in zip(rule.nodes, rule.weights))


def build_quadrature_dde(dde, rule):
    """Replace the distributed integral with its quadrature sum.

    Each delayed component's integral becomes sum_k w_k y_c(t - tau_k),
    so the result is an ordinary DDE with the m nodes as discrete delays
    and the dimension unchanged. The rule must target the weight's
    support interval.
    """
    a, b = dde.weight.a, dde.weight.b
    ra, rb = rule.interval
    if (abs(ra - a) > 1e-12 * max(1.0, abs(a))
            or abs(rb - b) > 1e-12 * max(1.0, abs(b))):
        raise ValueError(
            "rule interval [%g, %g] does not match the weight support "
            "[%g, %g]" % (ra, rb, a, b))
    comps = sorted(dde.delayed_components)
    weights = rule.weights
    base_rhs = dde.rhs
    d = dde.dimension

    def rhs(t, y, Z):
        z = np.zeros(d)
        for c in comps:
            z[c] = float(Z[c, :] @ weights)
        return base_rhs(t, y, z)

    return DiscreteDelayDde(dimension=d, delays=tuple(rule.nodes),
                            rhs=rhs, history=dde.history)
