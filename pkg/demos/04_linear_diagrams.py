"""The one-dimensional warm-up: linear diagrams.

A linear diagram encodes a Morse function on a 1-manifold: regions carry
sheet counts and birth/death events for the top sheet pair, separators
permute the sheet labels.  Tracing reconstructs the manifold; the five
moves never change it.

Run:  python3 demos/04_linear_diagrams.py
"""

import random

from bordcalc import linear as ln

text = "(5 cap) [24][35] (5 cup) [] (3 cup) [] (3 cap) [123] (3 cup)"
d = ln.parse_diagram(text)
print("The worked diagram:")
print(" ", ln.print_diagram(d))
print("  traces to:", ln.reconstruct_1manifold(d))
print("  (one circle and two intervals, matching the picture it encodes)")
print()

print("Moves at work:")
d2 = ln.apply_linear_move(d, "isotopy", 2)
print("  isotopy inserts a plain region:  ", ln.print_diagram(d2))
d3 = ln.apply_linear_move(d2, "merge_permutations", 2)
print("  merging removes it again:        ", ln.print_diagram(d3))
d4 = ln.apply_linear_move(d, "absorb_transposition", 0)
print("  the cap absorbs its transposition:", ln.print_diagram(d4))
cancel = ln.parse_diagram("(2) [] (4 cap) [234] (4 cup) [] (2)")
print("  a cancelling pair:", ln.print_diagram(cancel))
print("   -> ", ln.print_diagram(
    ln.apply_linear_move(cancel, "cancel_cup_cap", 1)))
print()

def random_diagram(rng):
    regions, seps = [], []
    width = rng.randint(0, 4)
    for _ in range(rng.randint(1, 7)):
        kind = rng.choice(["plain", "cap", "cup", "plain"])
        if kind == "cap":
            width += 2
            regions.append(ln.Region(width, "cap"))
        elif kind == "cup" and width >= 2:
            regions.append(ln.Region(width, "cup"))
            width -= 2
        elif width == 0:
            width = 2
            regions.append(ln.Region(2, "cap"))
        else:
            regions.append(ln.Region(width, None))
        images = list(range(width))
        rng.shuffle(images)
        seps.append(ln.Perm(tuple(images)))
    return ln.LinearDiagram(tuple(regions), tuple(seps[:-1]))


rng = random.Random(0)
total = 0
for _ in range(100):
    dd = random_diagram(rng)
    census = ln.reconstruct_1manifold(dd)
    for move in ln.MOVES:
        for pos in range(len(dd.regions) + 1):
            try:
                d5 = ln.apply_linear_move(dd, move, pos)
            except ln.LinearError:
                continue
            assert ln.reconstruct_1manifold(d5) == census
            total += 1
print("checked %d random move applications: the census never changed"
      % total)
