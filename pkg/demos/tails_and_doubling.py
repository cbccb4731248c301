"""
Tails, doubling and FLEI
========================

On a tree quiver with a tail, copying the tail's first space forever to the
left gives a line.  Decomposing that line splits the original
representation whenever a tail arrow has the wrong rank.
"""

import random
from importlib import resources

from lfquiver import fileformat
from lfquiver.decompose import decompose
from lfquiver.exactalg import FieldSpec
from lfquiver.generate import random_matrix
from lfquiver.quiver import QuiverShape, TailDecl
from lfquiver.repn import Representation, is_flei
from lfquiver.tailreduce import check_tail, double, flei_theorem_check

###############################################################################
# Two leaves meet at x0, which continues as a tail x0, x1, x2, ...  The
# representation is F and F into F^2, then F^2 onto F, then zero.

with resources.as_file(resources.files("lfquiver") / "fixtures" / "dinfty.rep") as p:
    v = fileformat.parse(p)
print(v.dimension_vector())

d = double(v)
print("doubled window dims:", d.doubled.dims)
print(decompose(d.doubled).barcode)

# no tail arrow fails, and the whole thing is indecomposable and FLEI
print("tail report ok:", check_tail(v).ok)
fc = flei_theorem_check(v)
print(fc.detail)
print("non-isomorphisms:", is_flei(v).non_iso_arrows)

###############################################################################
# Growing dimensions along a tail can never happen in an indecomposable.
# The check finds the offending arrows and hands back a splitting.

fs = FieldSpec.gf(3)
rng = random.Random(1)
q = QuiverShape((0, 1, 2), ((0, 1), (1, 2)), (TailDecl(2),))
grow = Representation.build(q, fs, {0: 1, 1: 2, 2: 3}, {(0, 1): random_matrix(fs, 2, 1, rng), (1, 2): random_matrix(fs, 3, 2, rng)})
for viol in check_tail(grow).violations:
    U, W = viol.witness
    print(viol.arrow, viol.reason)
    print("   U dims", {x: s.dim for x, s in U.items()}, " W dims", {x: s.dim for x, s in W.items()})

fc = flei_theorem_check(grow, rng=rng)
print(fc.detail)
print("pieces:", [p.rep.dimension_vector() for p in fc.certified])
