"""Linear diagrams: combinatorial Morse data for 1-manifolds.

A linear diagram is a sequence of regions, each carrying a sheet count and
optionally a critical event, separated by permutations.  A `cap` region
creates the sheet pair {N-1, N} (N-2 sheets on its left, N on its right);
a `cup` region destroys that pair (N on the left, N-2 on the right); a
plain region carries N sheets through.  Separators map the sheet labels on
their left to those on their right.

`reconstruct_1manifold` traces the sheets and counts circles and
intervals; the five moves rewrite diagrams without changing that census.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple


class LinearError(Exception):
    pass


# ---------------------------------------------------------------------------
# permutations (1-based labels, stored as 0-based image tuples)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Perm:
    images: tuple

    @property
    def size(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def then(self, other: "Perm") -> "Perm":
        if self.size != other.size:
            raise LinearError("permutation size mismatch")
        return Perm(tuple(other.images[self.images[i]]
                          for i in range(self.size)))

    def inverse(self) -> "Perm":
        inv = [0] * self.size
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def fixes_top_pair(self):
        n = self.size
        return n >= 2 and self.images[n - 1] == n - 1 \
            and self.images[n - 2] == n - 2

    def restrict(self, k) -> "Perm":
        if any(self.images[i] >= k for i in range(k)):
            raise LinearError("permutation does not restrict")
        return Perm(tuple(self.images[:k]))

    def extend(self, n) -> "Perm":
        if n < self.size:
            raise LinearError("cannot shrink a permutation")
        return Perm(tuple(self.images) + tuple(range(self.size, n)))

    def cycles(self):
        seen, out = set(), []
        for i in range(self.size):
            if i in seen or self.images[i] == i:
                seen.add(i)
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cs = self.cycles()
        if not cs:
            return "[]"
        return "".join("[%s]" % " ".join(str(i + 1) for i in c) for c in cs)


def identity_perm(n):
    return Perm(tuple(range(n)))


def perm_from_cycles(n, cycles) -> Perm:
    images = list(range(n))
    for cyc in cycles:
        for pos in range(len(cyc)):
            a = cyc[pos] - 1
            b = cyc[(pos + 1) % len(cyc)] - 1
            if not 0 <= a < n:
                raise LinearError("cycle entry %d out of range" % (a + 1))
            images[a] = b
    seen = set()
    for i in images:
        if i in seen:
            raise LinearError("overlapping cycles")
        seen.add(i)
    return Perm(tuple(images))


# ---------------------------------------------------------------------------
# diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    count: int                 # N: the larger sheet count of the region
    event: Optional[str]       # None | "cap" | "cup"

    @property
    def left_count(self):
        return self.count - 2 if self.event == "cap" else self.count

    @property
    def right_count(self):
        return self.count - 2 if self.event == "cup" else self.count

    def __str__(self):
        if self.event:
            return "(%d %s)" % (self.count, self.event)
        return "(%d)" % self.count


@dataclass(frozen=True)
class LinearDiagram:
    regions: tuple
    separators: tuple          # len(regions) - 1 permutations

    def __post_init__(self):
        if not self.regions:
            raise LinearError("diagram must have at least one region")
        if len(self.separators) != len(self.regions) - 1:
            raise LinearError("need one separator between adjacent regions")
        for i, sep in enumerate(self.separators):
            left = self.regions[i].right_count
            right = self.regions[i + 1].left_count
            if left != right or sep.size != left:
                raise LinearError(
                    "separator %d has size %d between counts %d and %d"
                    % (i, sep.size, left, right))
        for r in self.regions:
            if r.event and r.count < 2:
                raise LinearError("critical region needs at least two sheets")
            if r.count < 0:
                raise LinearError("negative sheet count")

    def __str__(self):
        parts = [str(self.regions[0])]
        for sep, reg in zip(self.separators, self.regions[1:]):
            parts.append(str(sep))
            parts.append(str(reg))
        return " ".join(parts)


def parse_diagram(text: str) -> LinearDiagram:
    """Parse the textual format `(5 cap) [24][35] (5 cup) [] (3 cup)`."""
    tokens = re.findall(r"\(([^)]*)\)|(\[[^\]]*\](?:\s*\[[^\]]*\])*)", text)
    regions, separators = [], []
    expect_region = True
    for reg_body, sep_body in tokens:
        if reg_body:
            parts = reg_body.split()
            if not parts:
                raise LinearError("empty region")
            count = int(parts[0])
            event = parts[1] if len(parts) > 1 else None
            if event not in (None, "cap", "cup"):
                raise LinearError("unknown region event %r" % event)
            if not expect_region:
                raise LinearError("two adjacent regions without separator")
            regions.append(Region(count, event))
            expect_region = False
        else:
            if expect_region:
                raise LinearError("separator before any region")
            cycles = []
            for cyc in re.findall(r"\[([^\]]*)\]", sep_body):
                body = cyc.strip()
                if not body:
                    continue
                if re.search(r"[\s,]", body):
                    entries = [int(x) for x in re.findall(r"\d+", body)]
                else:
                    # compact form: each character is a single-digit label
                    if not body.isdigit():
                        raise LinearError("bad cycle %r" % cyc)
                    entries = [int(ch) for ch in body]
                if not entries:
                    raise LinearError("bad cycle %r" % cyc)
                if any(e < 1 for e in entries):
                    raise LinearError("labels are 1-based")
                cycles.append(entries)
            n = regions[-1].right_count
            separators.append(perm_from_cycles(n, cycles))
            expect_region = True
    if expect_region and regions:
        raise LinearError("diagram ends with a separator")
    return LinearDiagram(tuple(regions), tuple(separators))


def print_diagram(d: LinearDiagram) -> str:
    return str(d)


# ---------------------------------------------------------------------------
# sheet tracing
# ---------------------------------------------------------------------------

def reconstruct_1manifold(d: LinearDiagram) -> dict:
    """Count circles and intervals of the 1-manifold a diagram denotes.

    Brute-force sheet tracing: nodes live on region boundaries, caps and
    cups pair the top two sheets, separators rename labels.
    """
    regs = d.regions
    k = len(regs)
    # distinct node namespaces: ("L", i, s) and ("R", i, s) per region i
    pairs = []

    def join(a, b):
        pairs.append((a, b))

    for i, r in enumerate(regs):
        n = r.count
        if r.event == "cap":
            for s in range(n - 2):
                join(("L", i, s), ("R", i, s))
            join(("R", i, n - 2), ("R", i, n - 1))
        elif r.event == "cup":
            for s in range(n - 2):
                join(("L", i, s), ("R", i, s))
            join(("L", i, n - 2), ("L", i, n - 1))
        else:
            for s in range(n):
                join(("L", i, s), ("R", i, s))
    for i, sep in enumerate(d.separators):
        for s in range(sep.size):
            join(("R", i, s), ("L", i + 1, sep(s)))
    adj = {}
    for a, b in pairs:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    open_ends = set()
    for s in range(regs[0].left_count):
        open_ends.add(("L", 0, s))
    for s in range(regs[-1].right_count):
        open_ends.add(("R", k - 1, s))
    seen = set()
    circles = intervals = 0
    for node in sorted(adj):
        if node in seen:
            continue
        comp, stack = set(), [node]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x])
        seen |= comp
        ends = sum(1 for x in comp if x in open_ends)
        if ends == 0:
            circles += 1
        elif ends == 2:
            intervals += 1
        else:
            raise LinearError("component with %d open ends" % ends)
    return {"circles": circles, "intervals": intervals}


# ---------------------------------------------------------------------------
# moves
# ---------------------------------------------------------------------------

MOVES = ("isotopy", "commute_small_sigma", "absorb_transposition",
         "merge_permutations", "cancel_cup_cap")


def apply_linear_move(d: LinearDiagram, move: str, position: int,
                      side: str = "left") -> LinearDiagram:
    """Apply one of the five moves at a region position.

    * isotopy: insert a plain region (with identity separators) at
      `position` (0..len(regions)).
    * commute_small_sigma: at a cap/cup region, move the part of the
      adjacent big-side separator fixing the top pair across the region
      (side = "left"/"right" names the separator to consume).
    * absorb_transposition: toggle the transposition (N-1 N) on the big
      side of a cap/cup region.
    * merge_permutations: delete the plain region at `position`, composing
      its separators.
    * cancel_cup_cap: replace the cap-sep-cup triple starting at
      `position`, whose separator is the cycle (N-2 N-1 N), by a plain
      region.
    """
    regs, seps = list(d.regions), list(d.separators)
    if move != "isotopy" and not 0 <= position < len(regs):
        raise LinearError("position out of range")
    if move == "isotopy":
        if not 0 <= position <= len(regs):
            raise LinearError("position out of range")
        if position == 0:
            n = regs[0].left_count
            regs.insert(0, Region(n, None))
            seps.insert(0, identity_perm(n))
        else:
            n = regs[position - 1].right_count
            regs.insert(position, Region(n, None))
            seps.insert(position - 1, identity_perm(n))
        return LinearDiagram(tuple(regs), tuple(seps))
    if move == "merge_permutations":
        r = regs[position]
        if r.event is not None:
            raise LinearError("can only merge across a plain region")
        if len(regs) == 1:
            raise LinearError("cannot remove the only region")
        left = seps[position - 1] if position > 0 else None
        right = seps[position] if position < len(seps) else None
        if left is not None and right is not None:
            combined = left.then(right)
            del regs[position]
            del seps[position]
            seps[position - 1] = combined
        elif left is not None:
            del regs[position]
            del seps[position - 1]
        elif right is not None:
            del regs[position]
            del seps[position]
        return LinearDiagram(tuple(regs), tuple(seps))
    if move == "absorb_transposition":
        r = regs[position]
        if r.event not in ("cap", "cup"):
            raise LinearError("absorb applies at a critical region")
        n = r.count
        swap = perm_from_cycles(n, [[n - 1, n]])
        if r.event == "cap":
            if position == len(seps):
                raise LinearError("cap has no right separator")
            seps[position] = swap.then(seps[position])
        else:
            if position == 0:
                raise LinearError("cup has no left separator")
            seps[position - 1] = seps[position - 1].then(swap)
        return LinearDiagram(tuple(regs), tuple(seps))
    if move == "commute_small_sigma":
        r = regs[position]
        if r.event not in ("cap", "cup"):
            raise LinearError("commute applies at a critical region")
        n = r.count
        has_left = position > 0
        has_right = position < len(seps)
        if not (has_left and has_right):
            raise LinearError("region needs separators on both sides")
        big_on_right = (r.event == "cap")
        if (side == "right") == big_on_right:
            # consume the big-side separator; it must fix the critical pair
            idx = position if big_on_right else position - 1
            sigma = seps[idx]
            if not sigma.fixes_top_pair():
                raise LinearError("separator moves the critical pair")
            small = sigma.restrict(n - 2)
            seps[idx] = identity_perm(n)
            other = position - 1 if big_on_right else position
            seps[other] = (seps[other].then(small) if big_on_right
                           else small.then(seps[other]))
        else:
            # consume the small-side separator and extend it across
            idx = position - 1 if big_on_right else position
            small = seps[idx]
            seps[idx] = identity_perm(n - 2)
            other = position if big_on_right else position - 1
            seps[other] = (small.extend(n).then(seps[other]) if big_on_right
                           else seps[other].then(small.extend(n)))
        return LinearDiagram(tuple(regs), tuple(seps))
    if move == "cancel_cup_cap":
        if position + 1 >= len(regs):
            raise LinearError("need two regions from the position")
        r1, r2 = regs[position], regs[position + 1]
        if r1.event != "cap" or r2.event != "cup" or r1.count != r2.count:
            raise LinearError("cancel applies to a cap-cup pair")
        n = r1.count
        sigma = seps[position]
        want = perm_from_cycles(n, [[n - 2, n - 1, n]])
        if sigma != want:
            raise LinearError("separator is not the canonical 3-cycle")
        plain = Region(n - 2, None)
        regs[position:position + 2] = [plain]
        del seps[position]
        return LinearDiagram(tuple(regs), tuple(seps))
    raise LinearError("unknown move %r" % move)
