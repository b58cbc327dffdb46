"""How fast does the quadrature discretisation converge?

The equivalent two-delay system is exact, so it serves as the reference.
Each m-node quadrature DDE is solved with identical tolerances and the
maximum difference over a 1000-point grid is recorded per component.
The differences fall rapidly with m (roughly exponentially) until they
stagnate at the time-integration error floor; S and R differences track
each other closely, while I moves less and differs less.

If matplotlib is installed, a semi-log plot of the differences is saved.
"""

from polydelay import cli

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

config = cli.assemble_config("case-i")
m_values = list(range(1, 9))
print("case (i), reference = equivalent system, rtol 1e-6, atol 1e-8")
report = cli.run_convergence(config, m_values)
print("reference solve: %d steps" % report.reference_steps)
print()
print("  m   max|dS|      max|dI|      max|dR|")
for k, m in enumerate(report.m_values):
    print("  %d   %.5e  %.5e  %.5e"
          % (m, report.diffs["S"][k], report.diffs["I"][k],
             report.diffs["R"][k]))

ds = report.diffs["S"]
print()
print("S difference shrinks %.0fx from m=1 to m=6, then the decay"
      % (ds[0] / ds[5]))
print("slows towards the integration-error floor.")

if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, marker in (("S", "o"), ("I", "s"), ("R", "^")):
        ax.semilogy(report.m_values, report.diffs[name], marker=marker,
                    label=name)
    ax.set_xlabel("quadrature nodes m")
    ax.set_ylabel("max difference vs equivalent system")
    ax.legend()
    fig.tight_layout()
    fig.savefig("convergence_case_i.png", dpi=120)
    print()
    print("wrote convergence_case_i.png")
else:
    print()
    print("matplotlib not installed; skipping the plot")
