"""Rewriting terms by the presentation relations.

Relations are boundary-balanced pairs of two-cell terms; the engine finds
every subterm occurrence (modulo flattening of vertical chains) and the
bounded search connects terms by rewrite paths.  Surface invariants and
algebra values never change along the way.

Run:  python3 demos/03_rewriting.py
"""

from bordcalc import build
from bordcalc import frobenius as fr
from bordcalc import presentations as pr
from bordcalc import standard_terms as stt
from bordcalc import surface as sf
from bordcalc import termcore as tc

UNO = pr.bord2_unoriented()

print("The cusp zigzag cancels to the identity strip in one step:")
zig = stt.cusp_zigzag_strip(UNO)
strip = tc.vcompose([tc.Id2(tc.Id1(tc.ObjGen("pt")))], UNO.data)
res = pr.equivalent_bounded(zig, strip, UNO, depth=1)
print("  equivalent:", res.equivalent, "via",
      [s.relation for s in res.steps])
print()

print("The sphere and the torus stay apart (and their invariants explain"
      " why):")
res = pr.equivalent_bounded(stt.sphere(UNO), stt.torus(UNO), UNO,
                            depth=2, max_visited=2000)
print("  bounded search:", "equivalent" if res.equivalent else "UNKNOWN")
print("  sphere:", sf.invariants(sf.reconstruct(stt.sphere(UNO), UNO)))
print("  torus: ", sf.invariants(sf.reconstruct(stt.torus(UNO), UNO)))
print()

print("Every relation match on random terms preserves the surface:")
checked = 0
for seed in range(8):
    t = build.random_term(UNO, seed, events=5)
    before = sf.invariants(sf.reconstruct(t, UNO))
    for step in pr.find_matches(t, UNO)[:5]:
        after = sf.invariants(sf.reconstruct(pr.apply(t, step), UNO))
        assert before == after
        checked += 1
print("  %d rewrites, all invariant" % checked)
print()

ORI = pr.bord2_oriented()
A = fr.algebra_m2q()
asg = fr.standard_assignment(A, ORI)
print("...and the exact M2(Q) value of oriented terms:")
checked = 0
for seed in range(6):
    t = build.random_term(ORI, seed, events=4)
    base = fr.evaluate(t, asg)
    for step in pr.find_matches(t, ORI)[:4]:
        assert fr.evaluate(pr.apply(t, step), asg) == base
        checked += 1
print("  %d rewrites, all values unchanged" % checked)
