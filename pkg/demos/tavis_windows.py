"""Entanglement windows of two atoms sharing n photons.

Starting from |n, g, g>, both margins oscillate with the collective Rabi
phase.  One photon entangles the atoms with the field at almost every time;
more photons narrow the windows, but a window around every revival survives
at any n (the quartic correction can't beat the quadratic term for small
phase).  The collective both-atoms margin is never harder to satisfy than
the single-atom one, and for n >= 3 there are phases where only it fires.
"""

import math

import numpy as np

from entwitness.models import tavis_cummings as tc

for n in (1, 2, 5):
    grid = np.linspace(0.0, 2 * math.pi, 721)
    atom = np.array([tc.tc_atom_field_condition(n, w) for w in grid])
    both = np.array([tc.tc_field_both_condition(n, w) for w in grid])
    frac_atom = float(np.mean(atom > 0))
    frac_both = float(np.mean(both > 0))
    print(
        f"n = {n}: atom-field margin positive on {frac_atom:5.1%} of the period, "
        f"both-atoms on {frac_both:5.1%}"
    )

print("\nn = 2 boundary sits where |cos(phase) + 2| = 3/sqrt(2):")
w = np.linspace(1.0, 2.0, 100001)
margins = np.array([tc.tc_atom_field_condition(2, x) for x in w])
flip = w[np.argmax(margins < 0)]
print(f"  flip at phase {flip:.5f};  |cos + 2| there = {abs(math.cos(flip) + 2):.6f}"
      f"  vs 3/sqrt(2) = {3 / math.sqrt(2):.6f}")

print("\nwindow width around a revival shrinks with n (margin at phase 0.05):")
for n in (2, 5, 10, 20):
    exact, series = tc.tc_epsilon_check(n, 0.05, "atom")
    print(f"  n = {n:2d}: exact {exact:+.5f}, quartic series {series:+.5f}")
