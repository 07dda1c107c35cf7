"""Front tracking: exact event-driven evolution of step data.

Two shocks of a Burgers mesh merge at t = 1; afterwards a single shock
carries the outer states.  The event log records every interaction; total
variation never increases.
"""

import numpy as np

from shocklab import AnalyticFluxSpec, approximate_pw_affine, advance, init_state
from shocklab.step import step

fl = approximate_pw_affine(AnalyticFluxSpec("burgers", -1, 3, 0.5, corners=(0.0, 1.0, 2.0)))
u0 = step([2.0, 1.0, 0.0], [0.0, 1.0])
s = init_state(fl, u0)

print("initial fronts (pos, speed, left, right):")
for row in s.front_snapshot():
    print("  ", tuple(round(v, 4) for v in row))

profile = advance(s, 2.0)
print("\nevents:")
for rec in s.event_log:
    ins = ", ".join(f"{f.left:g}->{f.right:g}@{f.speed:g}" for f in rec.incoming)
    outs = ", ".join(f"{f.left:g}->{f.right:g}@{f.speed:g}" for f in rec.outgoing)
    print(f"  t={rec.t:.4f} x={rec.x:.4f}   in: [{ins}]   out: [{outs}]")
print(f"\nprofile at t=2: values {profile.values} at jumps {profile.positions}")

print("\nTV decay for random 8-step data:")
rng = np.random.default_rng(7)
vals = rng.uniform(-1.5, 1.5, 9)
pos = np.sort(rng.uniform(-2, 2, 8))
u0 = step([float(v) for v in vals], [float(x) for x in pos])
big = approximate_pw_affine(AnalyticFluxSpec("burgers", -3, 3, 0.1, corners=(0.0,)))
s = init_state(big, u0)
for t in (0.0, 0.5, 1.0, 2.0, 5.0, 15.0):
    prof = advance(s, t) if t > 0 else u0
    print(f"  t={t:5.1f}: {len(prof.positions):2d} jumps, TV = {prof.tv():.6f}")
