"""Gaussian rules for polynomial delay densities.

An m-node Gaussian rule integrates polynomials up to degree 2m-1 exactly
against the density, so replacing the distributed integral with the rule
turns the model into an m-delay DDE whose lags sit at the quadrature
nodes. The single-node rule is the classical reduction of a distributed
delay to a discrete delay at the distribution mean.
"""

import numpy as np

import polydelay as pdl

weight = pdl.beta_polynomial(30, 150, 2, 2)

print("rules for the case (i) density, m = 1..4:")
for m in range(1, 5):
    rule = pdl.gauss_jacobi(m, 2, 2, 30, 150)
    nodes = " ".join("%8.3f" % v for v in rule.nodes)
    wts = " ".join("%8.5f" % v for v in rule.weights)
    print("  m=%d  nodes  %s" % (m, nodes))
    print("       weights %s" % wts)

print()
print("the m=1 node is the distribution mean (90 for case (i),")
print("200 for case (ii)):")
print("  case (i):  %.12f" % pdl.gauss_jacobi(1, 2, 2, 30, 150).nodes[0])
print("  case (ii): %.12f" % pdl.gauss_jacobi(1, 2, 2, 150, 250).nodes[0])

print()
print("exactness: relative moment error of the m=4 rule, i = 0..7")
rule = pdl.gauss_jacobi(4, 2, 2, 30, 150)
for i in range(8):
    exact = pdl.moment(weight, i)
    approx = pdl.apply(rule, lambda t, i=i: t ** i)
    print("  i=%d  %.3e" % (i, abs(approx - exact) / abs(exact)))

print()
print("degree 2m (first moment past the guarantee) is no longer exact:")
for m in (2, 3, 4):
    rule = pdl.gauss_jacobi(m, 2, 2, 30, 150)
    i = 2 * m
    exact = pdl.moment(weight, i)
    approx = pdl.apply(rule, lambda t: t ** i)
    print("  m=%d, i=%d: relative error %.3e"
          % (m, i, abs(approx - exact) / abs(exact)))

print()
print("discretising the SIR model with the m=3 rule yields delays at")
params = pdl.SirParameters(sigma=0.1, theta=0.05, weight=weight,
                           y0=(0.99, 0.01, 0.0))
dde = pdl.build_quadrature_dde(pdl.sir_distributed(params),
                               pdl.gauss_jacobi(3, 2, 2, 30, 150))
print("  " + ", ".join("%.3f" % d for d in dde.delays))
