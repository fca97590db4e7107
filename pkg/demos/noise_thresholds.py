"""How much flat noise can the correlation test tolerate?

Two benchmark families, both mixing an entangled two-term superposition with
flat noise of weight 1 - s:

* c1|00> + c2|11> probed with the rank-one hops |1><0| and |0><1|: the
  verdict flips at s* = (sqrt(1 + 16|c1 c2|^2) - 1) / (8 |c1 c2|^2).
* the correlated-subspace family, where the probe operator is expanded over
  all four hops between two 2-dim blocks; the resulting 4x4 matrix has top
  eigenvalue (2 s^2 + s - 1)/8 regardless of which block vectors were drawn,
  so the threshold is exactly 1/2.
"""

import math

import numpy as np

from entwitness import families

print("balanced superposition (c1 = c2):")
s_star = families.bell_threshold_scan(1 / math.sqrt(2), tol=1e-5)
print(f"  scanned threshold  s* = {s_star:.5f}")
print(f"  closed form            = {families.bell_threshold_closed_form(0.5):.5f}")

print("\nlopsided superposition (|c1 c2| = 0.1):")
c1 = math.sqrt((1 - math.sqrt(1 - 4 * 0.1**2)) / 2)
s_star = families.bell_threshold_scan(c1, tol=1e-5)
print(f"  scanned threshold  s* = {s_star:.5f}")
print(f"  closed form            = {families.bell_threshold_closed_form(0.1):.5f}")

print("\ncorrelated subspaces (threshold must ignore the block vectors):")
rng = np.random.default_rng(1)
for trial in range(3):
    s_star = families.subspace_threshold_scan(rng, tol=1e-5)
    print(f"  draw {trial}: s* = {s_star:.5f}   (expected 0.5)")

print("\ndoubly-expanded quadrature form on the noisy single-photon pair:")
comparison = families.psi01_x_threshold(tol=2e-3)
print(f"  {comparison.summary()}")
