"""Free symmetric monoidal bicategory term language.

Three layers of terms over a generating datum:

* object words -- binary trees of object generators and the unit,
* morphism terms -- binary sentences built from 1-generators and the
  structural 1-symbols (identities, associators, unitors, symmetries),
* two-cell terms -- paragraphs built from 2-generators and the structural
  2-symbols, combined by vertical chains, horizontal composition and tensor.

Terms are immutable; equality is exact tree equality (no implicit
rebracketing).  Boundaries are computed leaf-up from the structural symbol
tables.  A small DSL (`parse_*` / `print_*`) gives a textual form with a
parse/print round-trip guarantee.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple, Union


class TermError(Exception):
    """Malformed term: unknown name, bad arity or boundary mismatch."""

    def __init__(self, message, path=()):
        self.path = tuple(path)
        if self.path:
            message = "%s (at %s)" % (message, "/".join(map(str, self.path)))
        super().__init__(message)


class ParseError(Exception):
    """Syntax error in the term DSL, with a character position."""

    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


# ---------------------------------------------------------------------------
# object words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Unit:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class ObjGen:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ObjTensor:
    left: "ObjectWord"
    right: "ObjectWord"

    def __str__(self):
        return "(%s ⊗ %s)" % (self.left, self.right)


ObjectWord = Union[Unit, ObjGen, ObjTensor]

UNIT = Unit()


def obj_tensor(*words: ObjectWord) -> ObjectWord:
    """Left-bracketed tensor of one or more object words."""
    out = words[0]
    for w in words[1:]:
        out = ObjTensor(out, w)
    return out


def obj_points(w: ObjectWord) -> Tuple[str, ...]:
    """Left-to-right object-generator leaves of `w` (unit leaves vanish)."""
    if isinstance(w, Unit):
        return ()
    if isinstance(w, ObjGen):
        return (w.name,)
    return obj_points(w.left) + obj_points(w.right)


# ---------------------------------------------------------------------------
# morphism terms (binary sentences)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gen1:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Id1:
    word: ObjectWord

    def __str__(self):
        return "I[%s]" % (self.word,)


@dataclass(frozen=True)
class Assoc1:
    u: ObjectWord
    v: ObjectWord
    w: ObjectWord

    def __str__(self):
        return "alpha[%s,%s,%s]" % (self.u, self.v, self.w)


@dataclass(frozen=True)
class LeftUnitor1:
    word: ObjectWord

    def __str__(self):
        return "l[%s]" % (self.word,)


@dataclass(frozen=True)
class RightUnitor1:
    word: ObjectWord

    def __str__(self):
        return "r[%s]" % (self.word,)


@dataclass(frozen=True)
class Braid1:
    u: ObjectWord
    v: ObjectWord

    def __str__(self):
        return "beta[%s,%s]" % (self.u, self.v)


@dataclass(frozen=True)
class Adj1:
    """Formal adjoint-inverse x* of a structural 1-symbol."""

    inner: "MorphismTerm"

    def __str__(self):
        return "inv(%s)" % (self.inner,)


@dataclass(frozen=True)
class Comp1:
    """Composite after ∘ first: ``Comp1(f, g)`` is f∘g, applying g then f."""

    after: "MorphismTerm"
    first: "MorphismTerm"

    def __str__(self):
        # DSL reads left-to-right in application order: (first ; after)
        return "(%s ; %s)" % (self.first, self.after)


@dataclass(frozen=True)
class Tensor1:
    left: "MorphismTerm"
    right: "MorphismTerm"

    def __str__(self):
        return "(%s (*) %s)" % (self.left, self.right)


MorphismTerm = Union[Gen1, Id1, Assoc1, LeftUnitor1, RightUnitor1, Braid1,
                     Adj1, Comp1, Tensor1]

STRUCTURAL_1 = (Id1, Assoc1, LeftUnitor1, RightUnitor1, Braid1)


def comp1(*fs: MorphismTerm) -> MorphismTerm:
    """Left-bracketed composite of morphisms listed in application order."""
    out = fs[0]
    for f in fs[1:]:
        out = Comp1(f, out)
    return out


def formal_adjoint(t: MorphismTerm) -> MorphismTerm:
    """The formal adjoint t*.

    Defined on terms built from structural symbols only; 1-generators have
    no formal adjoint (their duality data lives in presentation 2-cells).
    """
    if isinstance(t, Gen1):
        raise TermError("1-generator %r has no formal adjoint" % t.name)
    if isinstance(t, Adj1):
        return t.inner
    if isinstance(t, STRUCTURAL_1):
        return Adj1(t)
    if isinstance(t, Comp1):
        return Comp1(formal_adjoint(t.first), formal_adjoint(t.after))
    if isinstance(t, Tensor1):
        return Tensor1(formal_adjoint(t.left), formal_adjoint(t.right))
    raise TermError("cannot take formal adjoint of %r" % (t,))


# ---------------------------------------------------------------------------
# two-cell terms (paragraphs)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gen2:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Id2:
    f: MorphismTerm

    def __str__(self):
        return "id[%s]" % (self.f,)


@dataclass(frozen=True)
class AssocC:
    """a^c: ((f∘f')∘f'') ⇒ (f∘(f'∘f''));  fields in application order."""

    f2: MorphismTerm  # applied first
    f1: MorphismTerm
    f0: MorphismTerm  # applied last

    def __str__(self):
        return "assoc2[%s,%s,%s]" % (self.f2, self.f1, self.f0)


@dataclass(frozen=True)
class RC:
    """r^c: f∘I_a ⇒ f."""

    f: MorphismTerm

    def __str__(self):
        return "rc[%s]" % (self.f,)


@dataclass(frozen=True)
class LC:
    """l^c: I_b∘f ⇒ f."""

    f: MorphismTerm

    def __str__(self):
        return "lc[%s]" % (self.f,)


@dataclass(frozen=True)
class Eta:
    """eta_f: I_a ⇒ f*∘f (f structural-only)."""

    f: MorphismTerm

    def __str__(self):
        return "eta[%s]" % (self.f,)


@dataclass(frozen=True)
class Eps:
    """eps_f: f∘f* ⇒ I_b (f structural-only)."""

    f: MorphismTerm

    def __str__(self):
        return "eps[%s]" % (self.f,)


@dataclass(frozen=True)
class PhiTensor:
    """phi: (f⊗g)∘(f'⊗g') ⇒ (f∘f')⊗(g∘g')."""

    f: MorphismTerm
    g: MorphismTerm
    f1: MorphismTerm
    g1: MorphismTerm

    def __str__(self):
        return "phi[(%s,%s),(%s,%s)]" % (self.f, self.g, self.f1, self.g1)


@dataclass(frozen=True)
class Phi0:
    """phi0: I_{a⊗a'} ⇒ I_a ⊗ I_{a'}."""

    a: ObjectWord
    a1: ObjectWord

    def __str__(self):
        return "phi0[%s,%s]" % (self.a, self.a1)


@dataclass(frozen=True)
class AssocF:
    """Pseudo-naturality filler of alpha at (f,g,h)."""

    f: MorphismTerm
    g: MorphismTerm
    h: MorphismTerm

    def __str__(self):
        return "alphaf[%s,%s,%s]" % (self.f, self.g, self.h)


@dataclass(frozen=True)
class LeftUnitorF:
    f: MorphismTerm

    def __str__(self):
        return "lf[%s]" % (self.f,)


@dataclass(frozen=True)
class RightUnitorF:
    f: MorphismTerm

    def __str__(self):
        return "rf[%s]" % (self.f,)


@dataclass(frozen=True)
class BraidF:
    """Pseudo-naturality filler of beta at (f,g)."""

    f: MorphismTerm
    g: MorphismTerm

    def __str__(self):
        return "betaf[%s,%s]" % (self.f, self.g)


@dataclass(frozen=True)
class Pi:
    a: ObjectWord
    b: ObjectWord
    c: ObjectWord
    d: ObjectWord

    def __str__(self):
        return "pi[%s,%s,%s,%s]" % (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class MuCell:
    a: ObjectWord
    b: ObjectWord

    def __str__(self):
        return "mu[%s,%s]" % (self.a, self.b)


@dataclass(frozen=True)
class LamCell:
    a: ObjectWord
    b: ObjectWord

    def __str__(self):
        return "lam[%s,%s]" % (self.a, self.b)


@dataclass(frozen=True)
class RhoCell:
    a: ObjectWord
    b: ObjectWord

    def __str__(self):
        return "rho[%s,%s]" % (self.a, self.b)


@dataclass(frozen=True)
class RCell:
    a: ObjectWord
    b: ObjectWord
    c: ObjectWord

    def __str__(self):
        return "RR[%s,%s,%s]" % (self.a, self.b, self.c)


@dataclass(frozen=True)
class SCell:
    a: ObjectWord
    b: ObjectWord
    c: ObjectWord

    def __str__(self):
        return "SS[%s,%s,%s]" % (self.a, self.b, self.c)


@dataclass(frozen=True)
class SigmaCell:
    """sigma: I_{a⊗b} ⇒ beta_{b,a}∘beta_{a,b} (syllepsis)."""

    a: ObjectWord
    b: ObjectWord

    def __str__(self):
        return "sig[%s,%s]" % (self.a, self.b)


@dataclass(frozen=True)
class Inv2:
    """Formal inverse of an invertible structural 2-cell."""

    inner: "TwoCellTerm"

    def __str__(self):
        return "inv2(%s)" % (self.inner,)


@dataclass(frozen=True)
class VComp:
    """Vertical chain, children listed in application order (first acts first)."""

    children: Tuple["TwoCellTerm", ...]

    def __str__(self):
        return "(%s)" % " . ".join(str(c) for c in self.children)


@dataclass(frozen=True)
class HComp:
    """Horizontal composite ``HComp(outer, inner)`` = outer * inner."""

    outer: "TwoCellTerm"
    inner: "TwoCellTerm"

    def __str__(self):
        return "(%s # %s)" % (self.outer, self.inner)


@dataclass(frozen=True)
class Tensor2:
    left: "TwoCellTerm"
    right: "TwoCellTerm"

    def __str__(self):
        return "(%s (*) %s)" % (self.left, self.right)


TwoCellTerm = Union[Gen2, Id2, AssocC, RC, LC, Eta, Eps, PhiTensor, Phi0,
                    AssocF, LeftUnitorF, RightUnitorF, BraidF, Pi, MuCell,
                    LamCell, RhoCell, RCell, SCell, SigmaCell, Inv2, VComp,
                    HComp, Tensor2]

STRUCTURAL_2 = (Id2, AssocC, RC, LC, Eta, Eps, PhiTensor, Phi0, AssocF,
                LeftUnitorF, RightUnitorF, BraidF, Pi, MuCell, LamCell,
                RhoCell, RCell, SCell, SigmaCell)


def vcompose(ps: Sequence[TwoCellTerm], data=None) -> TwoCellTerm:
    """Vertical chain of two-cells in application order.

    Nested chains are flattened.  Boundary mismatches raise TermError; with
    free generator names and no `data` the check is deferred to validate().
    """
    if not ps:
        raise TermError("vertical chain must be non-empty")
    flat = []
    for p in ps:
        if isinstance(p, VComp):
            flat.extend(p.children)
        else:
            flat.append(p)
    try:
        for i in range(len(flat) - 1):
            if two_cell_target(flat[i], data) != two_cell_source(flat[i + 1],
                                                                 data):
                raise TermError("non-composable vertical chain", path=(i,))
    except TermError as e:
        if "without generating data" not in str(e):
            raise
    if len(flat) == 1:
        return VComp((flat[0],))
    return VComp(tuple(flat))


def tensor(p: TwoCellTerm, q: TwoCellTerm) -> TwoCellTerm:
    return Tensor2(p, q)


def hcompose(p: TwoCellTerm, q: TwoCellTerm, data=None) -> TwoCellTerm:
    """Horizontal composite p * q (q on the inner/source-object side)."""
    try:
        sp = morphism_source(two_cell_source(p, data), data)
        tq = morphism_target(two_cell_source(q, data), data)
        if sp != tq:
            raise TermError("horizontal boundary mismatch: %s vs %s"
                            % (tq, sp))
    except TermError as e:
        if "without generating data" not in str(e):
            raise
    return HComp(p, q)


# ---------------------------------------------------------------------------
# boundaries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratingData:
    """A generating datum: objects, 1-generators and 2-generators.

    ``one_gens`` maps a name to (source, target) object words; ``two_gens``
    maps a name to (source, target) morphism terms.  Globularity of every
    2-generator is checked on construction.
    """

    objects: Tuple[str, ...]
    one_gens: dict
    two_gens: dict

    def __post_init__(self):
        names = list(self.objects) + list(self.one_gens) + list(self.two_gens)
        if len(set(names)) != len(names):
            raise TermError("generator names must be distinct across levels")
        for name in names:
            if name in _RESERVED:
                raise TermError("name %r is a reserved structural symbol" % name)
        for name, (src, tgt) in self.two_gens.items():
            if (morphism_source(src, self) != morphism_source(tgt, self)
                    or morphism_target(src, self) != morphism_target(tgt, self)):
                raise TermError("2-generator %r is not globular" % name)

    def one_gen_boundary(self, name):
        if name not in self.one_gens:
            raise TermError("unknown 1-generator %r" % name)
        return self.one_gens[name]

    def two_gen_boundary(self, name):
        if name not in self.two_gens:
            raise TermError("unknown 2-generator %r" % name)
        return self.two_gens[name]


_RESERVED = {"I", "alpha", "l", "r", "beta", "inv", "id", "eta", "eps",
             "assoc2", "rc", "lc", "phi", "phi0", "alphaf", "lf", "rf",
             "betaf", "pi", "mu", "lam", "rho", "RR", "SS", "sig", "inv2",
             "1"}


def morphism_boundary(t: MorphismTerm, data: Optional[GeneratingData] = None,
                      path=()) -> Tuple[ObjectWord, ObjectWord]:
    """(source, target) object words of a morphism term.

    With `data` the 1-generator names are resolved against it; without it,
    generator leaves are rejected.
    """
    if isinstance(t, Gen1):
        if data is None:
            raise TermError("free 1-generator %r without generating data" % t.name,
                            path)
        return data.one_gen_boundary(t.name)
    if isinstance(t, Id1):
        return (t.word, t.word)
    if isinstance(t, Assoc1):
        return (ObjTensor(ObjTensor(t.u, t.v), t.w),
                ObjTensor(t.u, ObjTensor(t.v, t.w)))
    if isinstance(t, LeftUnitor1):
        return (ObjTensor(UNIT, t.word), t.word)
    if isinstance(t, RightUnitor1):
        return (t.word, ObjTensor(t.word, UNIT))
    if isinstance(t, Braid1):
        return (ObjTensor(t.u, t.v), ObjTensor(t.v, t.u))
    if isinstance(t, Adj1):
        s, g = morphism_boundary(t.inner, data, path + ("inv",))
        return (g, s)
    if isinstance(t, Comp1):
        s_first, t_first = morphism_boundary(t.first, data, path + ("first",))
        s_after, t_after = morphism_boundary(t.after, data, path + ("after",))
        if s_after != t_first:
            raise TermError(
                "boundary mismatch in composite: %s then %s" % (t_first, s_after),
                path)
        return (s_first, t_after)
    if isinstance(t, Tensor1):
        sl, tl = morphism_boundary(t.left, data, path + ("left",))
        sr, tr = morphism_boundary(t.right, data, path + ("right",))
        return (ObjTensor(sl, sr), ObjTensor(tl, tr))
    raise TermError("not a morphism term: %r" % (t,), path)


def morphism_source(t, data=None):
    return morphism_boundary(t, data)[0]


def morphism_target(t, data=None):
    return morphism_boundary(t, data)[1]


def _leaf_boundary(p, data):
    """(source, target) morphism terms of a structural or generator 2-leaf."""
    if isinstance(p, Gen2):
        if data is None:
            raise TermError("free 2-generator %r without generating data" % p.name)
        return data.two_gen_boundary(p.name)
    if isinstance(p, Id2):
        return (p.f, p.f)
    if isinstance(p, AssocC):
        return (Comp1(Comp1(p.f0, p.f1), p.f2),
                Comp1(p.f0, Comp1(p.f1, p.f2)))
    if isinstance(p, RC):
        a = morphism_source(p.f, data)
        return (Comp1(p.f, Id1(a)), p.f)
    if isinstance(p, LC):
        b = morphism_target(p.f, data)
        return (Comp1(Id1(b), p.f), p.f)
    if isinstance(p, Eta):
        a = morphism_source(p.f, data)
        return (Id1(a), Comp1(formal_adjoint(p.f), p.f))
    if isinstance(p, Eps):
        b = morphism_target(p.f, data)
        return (Comp1(p.f, formal_adjoint(p.f)), Id1(b))
    if isinstance(p, PhiTensor):
        return (Comp1(Tensor1(p.f, p.g), Tensor1(p.f1, p.g1)),
                Tensor1(Comp1(p.f, p.f1), Comp1(p.g, p.g1)))
    if isinstance(p, Phi0):
        return (Id1(ObjTensor(p.a, p.a1)), Tensor1(Id1(p.a), Id1(p.a1)))
    if isinstance(p, AssocF):
        (a, b) = morphism_boundary(p.f, data)
        (c, d) = morphism_boundary(p.g, data)
        (x, y) = morphism_boundary(p.h, data)
        return (Comp1(Assoc1(b, d, y), Tensor1(Tensor1(p.f, p.g), p.h)),
                Comp1(Tensor1(p.f, Tensor1(p.g, p.h)), Assoc1(a, c, x)))
    if isinstance(p, LeftUnitorF):
        (a, b) = morphism_boundary(p.f, data)
        return (Comp1(LeftUnitor1(b), Tensor1(Id1(UNIT), p.f)),
                Comp1(p.f, LeftUnitor1(a)))
    if isinstance(p, RightUnitorF):
        (a, b) = morphism_boundary(p.f, data)
        return (Comp1(RightUnitor1(b), p.f),
                Comp1(Tensor1(p.f, Id1(UNIT)), RightUnitor1(a)))
    if isinstance(p, BraidF):
        (a, b) = morphism_boundary(p.f, data)
        (c, d) = morphism_boundary(p.g, data)
        return (Comp1(Braid1(b, d), Tensor1(p.f, p.g)),
                Comp1(Tensor1(p.g, p.f), Braid1(a, c)))
    if isinstance(p, Pi):
        a, b, c, d = p.a, p.b, p.c, p.d
        lhs = Comp1(Comp1(Tensor1(Id1(a), Assoc1(b, c, d)),
                          Assoc1(a, ObjTensor(b, c), d)),
                    Tensor1(Assoc1(a, b, c), Id1(d)))
        rhs = Comp1(Assoc1(a, b, ObjTensor(c, d)), Assoc1(ObjTensor(a, b), c, d))
        return (lhs, rhs)
    if isinstance(p, MuCell):
        a, b = p.a, p.b
        lhs = Comp1(Comp1(Tensor1(Id1(a), LeftUnitor1(b)), Assoc1(a, UNIT, b)),
                    Tensor1(RightUnitor1(a), Id1(b)))
        return (lhs, Id1(ObjTensor(a, b)))
    if isinstance(p, LamCell):
        a, b = p.a, p.b
        return (Tensor1(LeftUnitor1(a), Id1(b)),
                Comp1(LeftUnitor1(ObjTensor(a, b)), Assoc1(UNIT, a, b)))
    if isinstance(p, RhoCell):
        a, b = p.a, p.b
        return (Tensor1(Id1(a), RightUnitor1(b)),
                Comp1(Assoc1(a, b, UNIT), RightUnitor1(ObjTensor(a, b))))
    if isinstance(p, RCell):
        a, b, c = p.a, p.b, p.c
        lhs = Comp1(Comp1(Assoc1(b, c, a), Braid1(a, ObjTensor(b, c))),
                    Assoc1(a, b, c))
        rhs = Comp1(Comp1(Tensor1(Id1(b), Braid1(a, c)), Assoc1(b, a, c)),
                    Tensor1(Braid1(a, b), Id1(c)))
        return (lhs, rhs)
    if isinstance(p, SCell):
        a, b, c = p.a, p.b, p.c
        lhs = Comp1(Comp1(Adj1(Assoc1(c, a, b)), Braid1(ObjTensor(a, b), c)),
                    Adj1(Assoc1(a, b, c)))
        rhs = Comp1(Comp1(Tensor1(Braid1(a, c), Id1(b)), Adj1(Assoc1(a, c, b))),
                    Tensor1(Id1(a), Braid1(b, c)))
        return (lhs, rhs)
    if isinstance(p, SigmaCell):
        a, b = p.a, p.b
        return (Id1(ObjTensor(a, b)), Comp1(Braid1(b, a), Braid1(a, b)))
    raise TermError("not a 2-cell leaf: %r" % (p,))


def two_cell_boundary(p: TwoCellTerm, data: Optional[GeneratingData] = None,
                      path=()) -> Tuple[MorphismTerm, MorphismTerm]:
    """(source, target) morphism terms of a two-cell term."""
    if isinstance(p, Inv2):
        if not isinstance(p.inner, STRUCTURAL_2):
            raise TermError("inv2 only applies to structural 2-cells", path)
        s, t = two_cell_boundary(p.inner, data, path + ("inv2",))
        return (t, s)
    if isinstance(p, VComp):
        if not p.children:
            raise TermError("empty vertical chain", path)
        bounds = [two_cell_boundary(c, data, path + (i,))
                  for i, c in enumerate(p.children)]
        for i in range(len(bounds) - 1):
            if bounds[i][1] != bounds[i + 1][0]:
                raise TermError("non-composable vertical chain", path + (i,))
        return (bounds[0][0], bounds[-1][1])
    if isinstance(p, HComp):
        so, to = two_cell_boundary(p.outer, data, path + ("outer",))
        si, ti = two_cell_boundary(p.inner, data, path + ("inner",))
        if morphism_source(so, data) != morphism_target(si, data):
            raise TermError("horizontal mismatch", path)
        return (Comp1(so, si), Comp1(to, ti))
    if isinstance(p, Tensor2):
        sl, tl = two_cell_boundary(p.left, data, path + ("left",))
        sr, tr = two_cell_boundary(p.right, data, path + ("right",))
        return (Tensor1(sl, sr), Tensor1(tl, tr))
    return _leaf_boundary(p, data)


def two_cell_source(p, data=None):
    return two_cell_boundary(p, data)[0]


def two_cell_target(p, data=None):
    return two_cell_boundary(p, data)[1]


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    """List of constraint violations; empty means the term is valid."""

    entries: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.entries

    def add(self, path, message):
        self.entries.append((tuple(path), message))

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join("%s: %s" % ("/".join(map(str, p)) or "<root>", m)
                         for p, m in self.entries)


def _validate_object(w, data, report, path):
    if isinstance(w, Unit):
        return
    if isinstance(w, ObjGen):
        if w.name not in data.objects:
            report.add(path, "unknown object generator %r" % w.name)
        return
    if isinstance(w, ObjTensor):
        _validate_object(w.left, data, report, path + ("left",))
        _validate_object(w.right, data, report, path + ("right",))
        return
    report.add(path, "not an object word: %r" % (w,))


def _validate_morphism(t, data, report, path):
    if isinstance(t, Gen1):
        if t.name not in data.one_gens:
            report.add(path, "unknown 1-generator %r" % t.name)
        return
    if isinstance(t, Id1):
        _validate_object(t.word, data, report, path)
        return
    if isinstance(t, Assoc1):
        for i, w in enumerate((t.u, t.v, t.w)):
            _validate_object(w, data, report, path + (i,))
        return
    if isinstance(t, (LeftUnitor1, RightUnitor1)):
        _validate_object(t.word, data, report, path)
        return
    if isinstance(t, Braid1):
        _validate_object(t.u, data, report, path + (0,))
        _validate_object(t.v, data, report, path + (1,))
        return
    if isinstance(t, Adj1):
        if not isinstance(t.inner, STRUCTURAL_1):
            report.add(path, "formal adjoint of a non-structural symbol")
        else:
            _validate_morphism(t.inner, data, report, path + ("inv",))
        return
    if isinstance(t, Comp1):
        _validate_morphism(t.first, data, report, path + ("first",))
        _validate_morphism(t.after, data, report, path + ("after",))
        try:
            morphism_boundary(t, data)
        except TermError as e:
            report.add(path, str(e))
        return
    if isinstance(t, Tensor1):
        _validate_morphism(t.left, data, report, path + ("left",))
        _validate_morphism(t.right, data, report, path + ("right",))
        return
    report.add(path, "not a morphism term: %r" % (t,))


def _validate_two_cell(p, data, report, path):
    if isinstance(p, Gen2):
        if p.name not in data.two_gens:
            report.add(path, "unknown 2-generator %r" % p.name)
        return
    if isinstance(p, Inv2):
        if not isinstance(p.inner, STRUCTURAL_2):
            report.add(path, "inv2 of a non-invertible cell")
            return
        _validate_two_cell(p.inner, data, report, path + ("inv2",))
        return
    if isinstance(p, VComp):
        if not p.children:
            report.add(path, "empty vertical chain")
            return
        for i, c in enumerate(p.children):
            _validate_two_cell(c, data, report, path + (i,))
        if report.ok:
            try:
                two_cell_boundary(p, data)
            except TermError as e:
                report.add(path, str(e))
        return
    if isinstance(p, HComp):
        _validate_two_cell(p.outer, data, report, path + ("outer",))
        _validate_two_cell(p.inner, data, report, path + ("inner",))
        if report.ok:
            try:
                two_cell_boundary(p, data)
            except TermError as e:
                report.add(path, str(e))
        return
    if isinstance(p, Tensor2):
        _validate_two_cell(p.left, data, report, path + ("left",))
        _validate_two_cell(p.right, data, report, path + ("right",))
        return
    # structural leaf: validate parameters, then boundary formation
    try:
        for sub in _leaf_params(p):
            if isinstance(sub, (Unit, ObjGen, ObjTensor)):
                _validate_object(sub, data, report, path)
            else:
                _validate_morphism(sub, data, report, path)
        if report.ok:
            _leaf_boundary(p, data)
    except TermError as e:
        report.add(path, str(e))


def _leaf_params(p):
    if isinstance(p, Id2):
        return (p.f,)
    if isinstance(p, AssocC):
        return (p.f2, p.f1, p.f0)
    if isinstance(p, (RC, LC, Eta, Eps)):
        return (p.f,)
    if isinstance(p, PhiTensor):
        return (p.f, p.g, p.f1, p.g1)
    if isinstance(p, Phi0):
        return (p.a, p.a1)
    if isinstance(p, AssocF):
        return (p.f, p.g, p.h)
    if isinstance(p, (LeftUnitorF, RightUnitorF)):
        return (p.f,)
    if isinstance(p, BraidF):
        return (p.f, p.g)
    if isinstance(p, Pi):
        return (p.a, p.b, p.c, p.d)
    if isinstance(p, (MuCell, LamCell, RhoCell, SigmaCell)):
        return (p.a, p.b)
    if isinstance(p, (RCell, SCell)):
        return (p.a, p.b, p.c)
    raise TermError("not a 2-cell leaf: %r" % (p,))


def validate(term: TwoCellTerm, data: GeneratingData) -> ValidationReport:
    """Check that `term` is a paragraph over `data`; report all violations."""
    report = ValidationReport()
    _validate_two_cell(term, data, report, ())
    return report


# ---------------------------------------------------------------------------
# DSL lexer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<TENSOR>\(\*\)|⊗)
  | (?P<LPAR>\()
  | (?P<RPAR>\))
  | (?P<LBRACK>\[)
  | (?P<RBRACK>\])
  | (?P<COMMA>,)
  | (?P<SEMI>;)
  | (?P<DOT>\.)
  | (?P<HASH>\#)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_'+-]*|\d+)
  | (?P<WS>\s+)
""", re.VERBOSE)


def _lex(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r" % text[pos], pos)
        if m.lastgroup != "WS":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _lex(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError("expected %s, got %r" % (kind, tok[1]), tok[2])
        return tok

    def at_end(self):
        return self.peek()[0] == "EOF"

    # object words -----------------------------------------------------

    def object_word(self):
        kind, text, pos = self.peek()
        if kind == "NAME":
            self.next()
            if text == "1":
                return UNIT
            return ObjGen(text)
        if kind == "LPAR":
            self.next()
            left = self.object_word()
            self.expect("TENSOR")
            right = self.object_word()
            self.expect("RPAR")
            return ObjTensor(left, right)
        raise ParseError("expected object word, got %r" % text, pos)

    # morphism terms ---------------------------------------------------

    def _obj_args(self, n):
        self.expect("LBRACK")
        args = [self.object_word()]
        while len(args) < n:
            self.expect("COMMA")
            args.append(self.object_word())
        self.expect("RBRACK")
        return args

    def morphism(self):
        kind, text, pos = self.peek()
        if kind == "NAME":
            self.next()
            if text == "I":
                (w,) = self._obj_args(1)
                return Id1(w)
            if text == "alpha":
                u, v, w = self._obj_args(3)
                return Assoc1(u, v, w)
            if text == "l":
                (w,) = self._obj_args(1)
                return LeftUnitor1(w)
            if text == "r":
                (w,) = self._obj_args(1)
                return RightUnitor1(w)
            if text == "beta":
                u, v = self._obj_args(2)
                return Braid1(u, v)
            if text == "inv":
                self.expect("LPAR")
                inner = self.morphism()
                self.expect("RPAR")
                return formal_adjoint(inner)
            if text == "1" or text in _RESERVED:
                raise ParseError("reserved name %r in morphism position" % text, pos)
            return Gen1(text)
        if kind == "LPAR":
            self.next()
            first = self.morphism()
            kind2, text2, pos2 = self.next()
            if kind2 == "SEMI":
                after = self.morphism()
                self.expect("RPAR")
                return Comp1(after, first)
            if kind2 == "TENSOR":
                right = self.morphism()
                self.expect("RPAR")
                return Tensor1(first, right)
            raise ParseError("expected ';' or tensor, got %r" % text2, pos2)
        raise ParseError("expected morphism term, got %r" % text, pos)

    # two-cell terms ---------------------------------------------------

    def _mor_args(self, n):
        self.expect("LBRACK")
        args = [self.morphism()]
        while len(args) < n:
            self.expect("COMMA")
            args.append(self.morphism())
        self.expect("RBRACK")
        return args

    def two_cell(self):
        kind, text, pos = self.peek()
        if kind == "NAME":
            self.next()
            if text == "id":
                (f,) = self._mor_args(1)
                return Id2(f)
            if text == "assoc2":
                f2, f1, f0 = self._mor_args(3)
                return AssocC(f2, f1, f0)
            if text == "rc":
                (f,) = self._mor_args(1)
                return RC(f)
            if text == "lc":
                (f,) = self._mor_args(1)
                return LC(f)
            if text == "eta":
                (f,) = self._mor_args(1)
                return Eta(f)
            if text == "eps":
                (f,) = self._mor_args(1)
                return Eps(f)
            if text == "phi":
                self.expect("LBRACK")
                self.expect("LPAR")
                f = self.morphism()
                self.expect("COMMA")
                g = self.morphism()
                self.expect("RPAR")
                self.expect("COMMA")
                self.expect("LPAR")
                f1 = self.morphism()
                self.expect("COMMA")
                g1 = self.morphism()
                self.expect("RPAR")
                self.expect("RBRACK")
                return PhiTensor(f, g, f1, g1)
            if text == "phi0":
                a, a1 = self._obj_args(2)
                return Phi0(a, a1)
            if text == "alphaf":
                f, g, h = self._mor_args(3)
                return AssocF(f, g, h)
            if text == "lf":
                (f,) = self._mor_args(1)
                return LeftUnitorF(f)
            if text == "rf":
                (f,) = self._mor_args(1)
                return RightUnitorF(f)
            if text == "betaf":
                f, g = self._mor_args(2)
                return BraidF(f, g)
            if text == "pi":
                a, b, c, d = self._obj_args(4)
                return Pi(a, b, c, d)
            if text == "mu":
                a, b = self._obj_args(2)
                return MuCell(a, b)
            if text == "lam":
                a, b = self._obj_args(2)
                return LamCell(a, b)
            if text == "rho":
                a, b = self._obj_args(2)
                return RhoCell(a, b)
            if text == "RR":
                a, b, c = self._obj_args(3)
                return RCell(a, b, c)
            if text == "SS":
                a, b, c = self._obj_args(3)
                return SCell(a, b, c)
            if text == "sig":
                a, b = self._obj_args(2)
                return SigmaCell(a, b)
            if text == "inv2":
                self.expect("LPAR")
                inner = self.two_cell()
                self.expect("RPAR")
                return Inv2(inner)
            if text == "1" or text in _RESERVED:
                raise ParseError("reserved name %r in 2-cell position" % text, pos)
            return Gen2(text)
        if kind == "LPAR":
            self.next()
            first = self.two_cell()
            kind2, text2, pos2 = self.next()
            if kind2 == "DOT":
                children = [first, self.two_cell()]
                while self.peek()[0] == "DOT":
                    self.next()
                    children.append(self.two_cell())
                self.expect("RPAR")
                return VComp(tuple(children))
            if kind2 == "HASH":
                inner = self.two_cell()
                self.expect("RPAR")
                return HComp(first, inner)
            if kind2 == "TENSOR":
                right = self.two_cell()
                self.expect("RPAR")
                return Tensor2(first, right)
            if kind2 == "RPAR":
                # unary vertical chain ( P )
                return VComp((first,))
            raise ParseError("expected '.', '#', tensor or ')', got %r" % text2,
                             pos2)
        raise ParseError("expected 2-cell term, got %r" % text, pos)


def _check_names_object(w, data):
    report = ValidationReport()
    _validate_object(w, data, report, ())
    if not report.ok:
        raise TermError(str(report))


def parse_object_word(text: str, data: Optional[GeneratingData] = None) -> ObjectWord:
    p = _Parser(text)
    w = p.object_word()
    if not p.at_end():
        raise ParseError("trailing input", p.peek()[2])
    if data is not None:
        _check_names_object(w, data)
    return w


def parse_morphism(text: str, data: Optional[GeneratingData] = None) -> MorphismTerm:
    p = _Parser(text)
    t = p.morphism()
    if not p.at_end():
        raise ParseError("trailing input", p.peek()[2])
    if data is not None:
        report = ValidationReport()
        _validate_morphism(t, data, report, ())
        if not report.ok:
            raise TermError(str(report))
        morphism_boundary(t, data)
    return t


def parse_two_cell(text: str, data: Optional[GeneratingData] = None) -> TwoCellTerm:
    p = _Parser(text)
    t = p.two_cell()
    if not p.at_end():
        raise ParseError("trailing input", p.peek()[2])
    if data is not None:
        report = validate(t, data)
        if not report.ok:
            raise TermError(str(report))
    return t


def print_object_word(w: ObjectWord) -> str:
    return str(w)


def print_morphism(t: MorphismTerm) -> str:
    return str(t)


def print_two_cell(p: TwoCellTerm) -> str:
    return str(p)


# ---------------------------------------------------------------------------
# structural plumbing: normalizers and positioned insertions
# ---------------------------------------------------------------------------

def object_normal_form(w: ObjectWord) -> ObjectWord:
    """Left-associated tensor of the non-unit leaves (UNIT if none)."""
    pts = obj_points(w)
    if not pts:
        return UNIT
    out: ObjectWord = ObjGen(pts[0])
    for name in pts[1:]:
        out = ObjTensor(out, ObjGen(name))
    return out


def _merge_left(a: ObjectWord, b: ObjectWord) -> MorphismTerm:
    """a (x) b -> left-associated concatenation, for normal-form a and b."""
    if isinstance(b, ObjTensor):
        # b is left-associated, so b.right is a leaf
        inner = Adj1(Assoc1(a, b.left, b.right))
        sub = _merge_left(a, b.left)
        if isinstance(sub, Id1):
            return inner
        return Comp1(Tensor1(sub, Id1(b.right)), inner)
    return Id1(ObjTensor(a, b))


def normalizer(w: ObjectWord) -> MorphismTerm:
    """Structural 1-cell w -> object_normal_form(w)."""
    if isinstance(w, (Unit, ObjGen)):
        return Id1(w)
    na, nb = object_normal_form(w.left), object_normal_form(w.right)
    base = Tensor1(normalizer(w.left), normalizer(w.right))
    if isinstance(na, Unit):
        step: MorphismTerm = LeftUnitor1(nb)
        return Comp1(step, base)
    if isinstance(nb, Unit):
        step = Adj1(RightUnitor1(na))
        return Comp1(step, base)
    merge = _merge_left(na, nb)
    if isinstance(merge, Id1):
        return base
    return Comp1(merge, base)


def shape_iso(src: ObjectWord, dst: ObjectWord) -> MorphismTerm:
    """Canonical structural 1-cell src -> dst for words with equal points."""
    if obj_points(src) != obj_points(dst):
        raise TermError("shape_iso between different point sequences")
    if src == dst:
        return Id1(src)
    return Comp1(formal_adjoint(normalizer(dst)), normalizer(src))


def _split_points(w: ObjectWord, k: int):
    """Left/right normal-form words around position k of w's points."""
    pts = obj_points(w)
    left = pts[:k]
    right = pts[k:]
    lw = object_normal_form(obj_tensor(*[ObjGen(n) for n in left])) \
        if left else UNIT
    rw = object_normal_form(obj_tensor(*[ObjGen(n) for n in right])) \
        if right else UNIT
    return lw, rw


def insert_pair(w: ObjectWord, k: int, pair: MorphismTerm,
                data=None) -> MorphismTerm:
    """1-cell w -> nf(w with pair's target points inserted at position k).

    `pair` must be a 1-cell out of the unit (e.g. a coevaluation); its
    points appear at positions k, k+1 of the target normal form.
    """
    pair_target = morphism_boundary(pair, data)[1]
    lw, rw = _split_points(w, k)
    if isinstance(lw, Unit) and isinstance(rw, Unit):
        return Comp1(pair, shape_iso(w, UNIT)) if w != UNIT else pair
    if isinstance(rw, Unit):
        pre = shape_iso(w, lw)
        chain = Comp1(Tensor1(Id1(lw), pair), Comp1(RightUnitor1(lw), pre))
        out_word = ObjTensor(lw, pair_target)
    elif isinstance(lw, Unit):
        pre = shape_iso(w, rw)
        chain = Comp1(Tensor1(pair, Id1(rw)),
                      Comp1(Adj1(LeftUnitor1(rw)), pre))
        out_word = ObjTensor(pair_target, rw)
    else:
        pre = shape_iso(w, ObjTensor(lw, rw))
        chain = Comp1(
            Tensor1(Id1(lw), Tensor1(pair, Id1(rw))),
            Comp1(Tensor1(Id1(lw), Adj1(LeftUnitor1(rw))), pre))
        out_word = ObjTensor(lw, ObjTensor(pair_target, rw))
    return Comp1(shape_iso(out_word, object_normal_form(out_word)), chain)


def remove_pair(w: ObjectWord, k: int, pair: MorphismTerm,
                data=None) -> MorphismTerm:
    """1-cell w -> nf(w minus points k, k+1), applying `pair` (an
    evaluation-type 1-cell into the unit) at those positions."""
    pts = obj_points(w)
    if k + 1 >= len(pts):
        raise TermError("remove_pair out of range")
    lw, rw = _split_points(w, k)
    # rw starts with the two points to be consumed
    pair_src = morphism_boundary(pair, data)[0]
    rest = pts[k + 2:]
    rest_w = object_normal_form(obj_tensor(*[ObjGen(n) for n in rest])) \
        if rest else UNIT
    if isinstance(rest_w, Unit):
        mid = pair_src
    else:
        mid = ObjTensor(pair_src, rest_w)
    if isinstance(lw, Unit):
        pre = shape_iso(w, mid)
        if isinstance(rest_w, Unit):
            return Comp1(pair, pre)
        step = Tensor1(pair, Id1(rest_w))
        post = LeftUnitor1(rest_w)
        return Comp1(post, Comp1(step, pre))
    shape = ObjTensor(lw, mid)
    pre = shape_iso(w, shape)
    if isinstance(rest_w, Unit):
        step = Tensor1(Id1(lw), pair)
        post = Adj1(RightUnitor1(lw))
        return Comp1(post, Comp1(step, pre))
    step = Tensor1(Id1(lw), Tensor1(pair, Id1(rest_w)))
    post = Comp1(shape_iso(ObjTensor(lw, rest_w),
                           object_normal_form(ObjTensor(lw, rest_w))),
                 Tensor1(Id1(lw), LeftUnitor1(rest_w)))
    return Comp1(post, Comp1(step, pre))


def swap_pair(w: ObjectWord, k: int) -> MorphismTerm:
    """1-cell w -> nf(w with points k, k+1 braided past each other)."""
    pts = obj_points(w)
    if k + 1 >= len(pts):
        raise TermError("swap_pair out of range")
    lw, _ = _split_points(w, k)
    a, b = ObjGen(pts[k]), ObjGen(pts[k + 1])
    rest = pts[k + 2:]
    rest_w = object_normal_form(obj_tensor(*[ObjGen(n) for n in rest])) \
        if rest else UNIT
    core: MorphismTerm = Braid1(a, b)
    shape = ObjTensor(a, b)
    out_shape = ObjTensor(b, a)
    if not isinstance(rest_w, Unit):
        core = Tensor1(core, Id1(rest_w))
        shape = ObjTensor(shape, rest_w)
        out_shape = ObjTensor(out_shape, rest_w)
    if not isinstance(lw, Unit):
        core = Tensor1(Id1(lw), core)
        shape = ObjTensor(lw, shape)
        out_shape = ObjTensor(lw, out_shape)
    pre = shape_iso(w, shape)
    post = shape_iso(out_shape, object_normal_form(out_shape))
    return Comp1(post, Comp1(core, pre))


# ---------------------------------------------------------------------------
# traversal helpers shared by the rewrite and surface machinery
# ---------------------------------------------------------------------------

def two_cell_children(p: TwoCellTerm):
    """(child terms, rebuild function) for congruence traversal."""
    if isinstance(p, VComp):
        return list(p.children), lambda cs: VComp(tuple(cs))
    if isinstance(p, HComp):
        return [p.outer, p.inner], lambda cs: HComp(cs[0], cs[1])
    if isinstance(p, Tensor2):
        return [p.left, p.right], lambda cs: Tensor2(cs[0], cs[1])
    return [], lambda cs: p


def iter_two_cell_leaves(p: TwoCellTerm):
    """Yield every non-node leaf of a two-cell term, depth first."""
    children, _ = two_cell_children(p)
    if not children:
        yield p
        return
    for c in children:
        yield from iter_two_cell_leaves(c)


def count_leaves(p: TwoCellTerm) -> int:
    return sum(1 for _ in iter_two_cell_leaves(p))


def morphism_leaves(t: MorphismTerm):
    """Left-to-right 1-cell leaves of a morphism term."""
    if isinstance(t, Comp1):
        return morphism_leaves(t.first) + morphism_leaves(t.after)
    if isinstance(t, Tensor1):
        return morphism_leaves(t.left) + morphism_leaves(t.right)
    return [t]
