"""Forward characteristics R+- through shocks and rarefactions.

Both extreme curves from the origin stick to the shock x = t/2 of the
(1 | 0) Burgers data; through the V-flux rarefaction they ride the fan
edges x = -t and x = +t.  Curves from distinct anchors merge once the shock
absorbs them and never separate again.
"""

import numpy as np

from shocklab import AnalyticFluxSpec, approximate_pw_affine, make_flux, r_curve
from shocklab.step import step

burgers = approximate_pw_affine(AnalyticFluxSpec("burgers", -3, 3, 0.05, corners=(0.0, 1.0)))
v_flux = make_flux([-2, -1, 0, 1, 2], [4, 1, 0, 1, 4])
shock = step([1.0, 0.0], [0.0])
fan = step([-1.0, 1.0], [0.0])

ts = [0.25, 0.5, 1.0, 2.0, 4.0]
print("shock data (1 | 0), anchor 0:")
plus = r_curve(burgers, shock, 0.0, "plus", ts)
minus = r_curve(burgers, shock, 0.0, "minus", ts)
print("  t      R+        R-        t/2")
for (t, xp), (_, xm) in zip(plus, minus):
    print(f"  {t:4.2f}  {xp:+.6f} {xm:+.6f} {0.5 * t:+.6f}")

print("\nrarefaction data (-1 | 1) on the V-flux, anchor 0:")
plus = r_curve(v_flux, fan, 0.0, "plus", ts)
minus = r_curve(v_flux, fan, 0.0, "minus", ts)
print("  t      R+        R-")
for (t, xp), (_, xm) in zip(plus, minus):
    print(f"  {t:4.2f}  {xp:+.6f} {xm:+.6f}")

print("\nmerging anchors -0.2 and 0.2 into the shock:")
ts = list(np.linspace(0.2, 4.0, 9))
ca = r_curve(burgers, shock, -0.2, "plus", ts)
cb = r_curve(burgers, shock, 0.2, "plus", ts)
for (t, xa), (_, xb) in zip(ca, cb):
    print(f"  t={t:4.2f}  R(-0.2)={xa:+.6f}  R(+0.2)={xb:+.6f}  gap={xb - xa:.2e}")
