"""
Two indecomposables, one dimension vector
=========================================

Off the Dynkin list, some dimension vector always carries two
non-isomorphic indecomposables.  We build such pairs and print the
certificates that back them.
"""

from lfquiver.exactalg import FieldSpec
from lfquiver.roots import non_dynkin_witness


def show(name, fs):
    w = non_dynkin_witness(name, fs)
    print(f"{name} over {fs}: {w.obstruction} on {list(w.support)}")
    for label, r in (("  W1", w.rep1), ("  W2", w.rep2)):
        maps = {a: m.data for a, m in r.maps.items() if m.rows and m.cols}
        print(label, r.dimension_vector(), maps)
    for cert, ok in w.certificates.items():
        print("   ", "ok " if ok else "FAIL", cert)


###############################################################################
# Around a triangle, one arrow scaled by 2 changes the product of the maps,
# which no change of basis can undo.

show("C3", FieldSpec.gf(5))

###############################################################################
# Four lines in a plane, arranged two ways, over the smallest field.

show("Dt4", FieldSpec.gf(2))

###############################################################################
# Extended E6: a random search with exact certificates.

show("Et6", FieldSpec.gf(3))
