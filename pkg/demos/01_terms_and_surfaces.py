"""Terms and the surfaces they denote.

A two-cell term is a movie of local events on a 1-manifold: disks are born
and die, saddles split and merge, cusp cells bend strips, crossing cells
interchange strands.  This walk-through builds the classic closed surfaces
and reads off their invariants from the reconstructed complexes.

Run:  python3 demos/01_terms_and_surfaces.py
"""

from bordcalc import presentations as pr
from bordcalc import standard_terms as stt
from bordcalc import surface as sf
from bordcalc import termcore as tc

UNO = pr.bord2_unoriented()

print("The unoriented presentation has:")
print("  objects:", UNO.data.objects)
print("  1-generators:", sorted(UNO.data.one_gens))
print("  2-generators:", sorted(UNO.data.two_gens))
print()

print("The sphere is a birth followed by a death:")
sphere = stt.sphere(UNO)
print(" ", tc.print_two_cell(sphere))
print("  invariants:", sf.invariants(sf.reconstruct(sphere, UNO)))
print()

print("A handle is a saddle pair spliced into the circle; genus g uses 2g"
      " saddles:")
for g in range(4):
    t = stt.genus(UNO, g)
    inv = sf.invariants(sf.reconstruct(t, UNO))
    chi = sf.euler_by_events(t, UNO)
    print("  genus %d: %s  (event count chi = %d)" % (g, inv, chi))
print()

print("Crossing one leg of the saddle pair glues the handle with a flip:")
klein = stt.klein_bottle(UNO)
print("  Klein bottle:", sf.invariants(sf.reconstruct(klein, UNO)))
print()

print("The cusp pair is invisible to the surface: a bent strip is a strip:")
zig = stt.cusp_zigzag_strip(UNO)
print("  cusp pair:", sf.invariants(sf.reconstruct(zig, UNO)))
strip = tc.vcompose([tc.Id2(tc.Id1(tc.ObjGen("pt")))], UNO.data)
print("  plain strip:", sf.invariants(sf.reconstruct(strip, UNO)))
