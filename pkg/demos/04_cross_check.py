"""Two independent exact solvers, one answer.

For convex piecewise-affine flux the variational (Hopf/Lax-Oleinik) solution
and the front-tracking solution are both exact; their L1 distance is float
noise.  The variational solver also exposes the characteristic feet y+-.
"""

import numpy as np

from shocklab import AnalyticFluxSpec, advance, approximate_pw_affine, init_state, solve_pointwise, value_function
from shocklab.step import step

fl = approximate_pw_affine(AnalyticFluxSpec("burgers", -3, 3, 0.05, corners=(0.0, 1.0)))
u0 = step([1.0, -0.4, 0.7, 0.0], [0.0, 0.5, 1.0])
state = init_state(fl, u0)

for t in (0.5, 1.0, 3.0):
    prof = advance(state, t)
    grid = sorted(set(np.linspace(-8, 8, 161)) | set(prof.positions))
    err = 0.0
    for a, b in zip(grid, grid[1:]):
        m = 0.5 * (a + b)
        err += (b - a) * abs(prof(m) - solve_pointwise(fl, u0, m, t).value)
    print(f"t={t:3.1f}: fronts={len(prof.positions):2d}   L1(front tracking, variational) = {err:.2e}")

print("\ncharacteristic feet across the leading shock at t=1:")
for x in (0.2, 0.6, 0.8, 1.1, 1.4):
    cd = value_function(fl, u0, x, 1.0)
    pv = solve_pointwise(fl, u0, x, 1.0)
    tag = "shock" if pv.at_shock else "     "
    print(f"  x={x:+.2f}  y-={cd.y_minus:+.4f}  y+={cd.y_plus:+.4f}  "
          f"u=({pv.left:+.3f},{pv.right:+.3f}) {tag}")
