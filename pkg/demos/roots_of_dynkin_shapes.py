"""
Dimension vectors of indecomposables
====================================

For Dynkin shapes the indecomposables are exactly the positive roots of the
Tits form.  We enumerate the roots and compare with indecomposables built
from intervals and generic bricks.
"""

import numpy as np

from lfquiver.roots import is_positive_definite, positive_roots, roots_bijection_check, tits
from lfquiver.shapes import named_shape

###############################################################################
# Root counts and the largest entry for the A, D and E series.

for name in ["A4", "D4", "D6", "E6", "E7", "E8"]:
    q = named_shape(name)
    roots = np.array(positive_roots(q, 6))
    print(f"{name}: {len(roots):4d} roots, max entry {roots.max()}, positive definite {is_positive_definite(q)}")

# the highest root of E8, with the branch vertex last
e8 = np.array(positive_roots(named_shape("E8"), 6))
print("highest root of E8:", e8[e8.sum(axis=1).argmax()])

###############################################################################
# The form on an extended diagram has a null root, so no finite list exists.

dt4 = named_shape("Dt4")
print("null root of extended D4:", tits(dt4, (1, 1, 2, 1, 1)))

###############################################################################
# Indecomposables against roots, including windows of quivers with tails.

for name in ["A4", "Ainfinf6", "D5", "Dinf5", "E6"]:
    print(roots_bijection_check(name, trials=4).summary())
