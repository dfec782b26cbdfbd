#!/usr/bin/env python3
"""Where the system settles, and how much taxis the smallness check tolerates.

Scans the prey growth rate m2 with every other parameter pinned at 1,
printing the predicted equilibrium and regime for each value; then scans
the prey diffusivity d2 to show the taxis threshold scaling; finally
prints the full decay certificate for a coexistence setup at two initial
prey levels.
"""

import math

from preytaxis import ModelParams, certify, check_stabilization_condition, steady_states

BASE = dict(d1=1.0, d2=1.0, m1=1.0, chi=1.0, a=1.0, b=1.0)

print("equilibrium map (all other parameters = 1)")
print(f"{'m2':>6}  {'regime':<16} {'u*':>8} {'v*':>8}")
for m2 in (-1.0, 0.0, 0.5, 1.0, 2.0, 4.0):
    ss = steady_states(ModelParams(m2=m2, **BASE))
    print(f"{m2:6.2f}  {ss.regime.value:<16} {ss.u_star:8.4f} {ss.v_star:8.4f}")

print()
print("taxis threshold vs prey diffusivity (m2 = 2)")
print(f"{'d2':>6} {'chi^2 threshold':>16} {'largest safe chi':>18}")
for d2 in (0.25, 1.0, 4.0):
    p = ModelParams(d1=1.0, d2=d2, m1=1.0, m2=2.0, chi=1.0, a=1.0, b=1.0)
    cond = check_stabilization_condition(p)
    print(f"{d2:6.2f} {cond.threshold:16.6g} {math.sqrt(cond.threshold):18.6g}")

print()
print("certificates at d1=d2=m1=a=b=chi=1, m2=2 (u*=1.5, v*=0.5)")
for v0_sup in (1.5, 3.0):
    cert = certify(ModelParams(m2=2.0, **BASE), v0_sup=v0_sup)
    print(
        f"  sup v(0) = {v0_sup:g}: relaxed prey bound {cert.m2_relaxed:.6f}, "
        f"decay margin {cert.delta:.6f}, settling time {cert.t_settle:.6f}"
    )

# the same condition fails once chi is pushed past sqrt(17/3) ~ 2.38
hot = check_stabilization_condition(ModelParams(d1=1.0, d2=1.0, m1=1.0, m2=2.0, chi=3.0, a=1.0, b=1.0))
print(f"\nchi = 3: chi^2 = {hot.chi_sq:g} vs threshold {hot.threshold:.6g} -> holds = {hot.holds}")
