"""
Barcodes of line representations
================================

A representation of a line quiver splits into thin intervals.  We build a
few small ones, decompose them exactly and compare with the rank formula.
"""

import random

import numpy as np

from lfquiver.decompose import decompose, rank_oracle
from lfquiver.exactalg import FieldSpec, Matrix
from lfquiver.generate import random_line
from lfquiver.line import LineRep

gf5 = FieldSpec.gf(5)

###############################################################################
# Three copies of F joined by an identity and then a zero map.  The first
# two positions form one bar, the last position is a bar on its own.

a3 = LineRep.from_lists(gf5, [1, 1, 1], [[[1]], [[0]]], origin=1)
dec = decompose(a3)
print(dec.barcode)
print(dec.certificate.summary())
print("rank formula agrees:", rank_oracle(a3) == dec.barcode)

###############################################################################
# An end can also repeat forever.  Here F^2 repeats to the left, is sent to
# F by the first coordinate and then to zero.  The kernel line dies at 0 and
# the rest lives one step longer; both bars are unbounded on the left.

vp = LineRep.from_lists(gf5, [2, 1], [[[1, 0]]], left_ext="stable")
print(decompose(vp).barcode)

# the same answer from a long finite truncation and the rank formula
k = 6
trunc = LineRep.from_lists(gf5, [2] * k + [2, 1], [Matrix.identity(gf5, 2)] * k + [[[1, 0]]], origin=-k)
print(rank_oracle(trunc))

###############################################################################
# Zigzags have no rank formula, but the decomposition is still checked from
# scratch.  The bar lengths of a batch of random zigzags:

rng = random.Random(0)
lengths = []
for _ in range(200):
    line = random_line(rng, gf5, max_len=8, max_dim=3)
    d = decompose(line)
    assert d.certificate.ok
    lengths += [t - s + 1 for (s, t) in d.barcode.elements()]
print("bars:", len(lengths), "mean length:", np.mean(lengths).round(2))
print("histogram:", np.bincount(lengths)[1:])
