"""Generators, relations and rewriting for the 2D bordism presentations.

`bord2_unoriented` and `bord2_oriented` build the concrete presentations:
point objects, the evaluation/coevaluation elbows, four Morse cells (birth
and death disks, the two saddles), cusp cells, and (unoriented only) the
four elbow/crossing interchange cells; the relation list holds the
saddle/disk cancellation rows expanded over their placement variants, the
cusp inversion rows and the crossing cancellation rows, each balanced on
both sides by construction.

`find_matches`/`apply` rewrite by the relations (exact subterm matching
modulo vertical-chain flattening) and `equivalent_bounded` searches the
rewrite graph breadth-first within a budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

from . import termcore as tc
from .termcore import (Adj1, Assoc1, AssocC, Braid1, Comp1, Gen1, Gen2, Id1,
                       Id2, Inv2, LC, LeftUnitor1, ObjGen, RC, RightUnitor1,
                       Tensor1, Tensor2, HComp, VComp, UNIT, comp1, hcompose,
                       vcompose)


class PresentationError(Exception):
    pass


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: tc.TwoCellTerm
    rhs: tc.TwoCellTerm


@dataclass
class Presentation:
    """Generating datum plus relations and evaluation metadata.

    ``arc_patterns`` gives the strand wiring of each 1-generator and
    ``two_gen_tags`` the semantic class of each 2-generator (cap, cup,
    split, merge, cusp, sym); both feed the surface and evaluation engines.
    """

    name: str
    data: tc.GeneratingData
    relations: List[Relation]
    arc_patterns: Dict[str, tuple]
    two_gen_tags: Dict[str, str]

    def __post_init__(self):
        for rel in self.relations:
            lb = tc.two_cell_boundary(rel.lhs, self.data)
            rb = tc.two_cell_boundary(rel.rhs, self.data)
            if lb != rb:
                raise PresentationError(
                    "relation %r is not boundary-balanced" % rel.name)

    def relation(self, name: str) -> Relation:
        for rel in self.relations:
            if rel.name == name:
                return rel
        raise KeyError(name)

    def manifest(self) -> str:
        lines = ["presentation %s" % self.name]
        for o in self.data.objects:
            lines.append("object %s" % o)
        for n in sorted(self.data.one_gens):
            s, t = self.data.one_gens[n]
            lines.append("1-gen %s : %s -> %s" % (n, s, t))
        for n in sorted(self.data.two_gens):
            s, t = self.data.two_gens[n]
            lines.append("2-gen %s [%s] : %s => %s"
                         % (n, self.two_gen_tags.get(n, "?"), s, t))
        lines.append("cusp-generators %d"
                     % sum(1 for t in self.two_gen_tags.values()
                           if t == "cusp"))
        lines.append("relations %d" % len(self.relations))
        for rel in self.relations:
            lines.append("relation %s : %s == %s" % (rel.name, rel.lhs, rel.rhs))
        lines.append("note both cusp-inversion directions are kept although "
                     "one follows from the other")
        lines.append("structural-rewrites assoc2 rc lc phi phi0 alphaf lf rf "
                     "betaf pi mu lam rho RR SS sig (invertible cells usable "
                     "as directed rewrites; not part of the relation list)")
        return "\n".join(lines) + "\n"


# Expanded relation counts; the source figures only say "+ permutations",
# so the chosen enumeration is recorded here and in the manifest.
UNORIENTED_RELATION_COUNT = 14   # 8 disk/saddle cancels + 2 cusp + 4 crossing
ORIENTED_RELATION_COUNT = 12     # 8 disk/saddle cancels + 4 cusp
ORIENTED_CUSP_GENERATOR_COUNT = 4


def invert_structural(p: tc.TwoCellTerm) -> tc.TwoCellTerm:
    """Formal inverse of a 2-cell built from structural cells only."""
    if isinstance(p, tc.VComp):
        return VComp(tuple(invert_structural(c) for c in reversed(p.children)))
    if isinstance(p, tc.HComp):
        return HComp(invert_structural(p.outer), invert_structural(p.inner))
    if isinstance(p, tc.Tensor2):
        return Tensor2(invert_structural(p.left), invert_structural(p.right))
    if isinstance(p, tc.Id2):
        return p
    if isinstance(p, tc.Inv2):
        return p.inner
    if isinstance(p, tc.STRUCTURAL_2):
        return Inv2(p)
    raise PresentationError("cannot invert non-structural cell %r" % (p,))


# ---------------------------------------------------------------------------
# shared constructions
# ---------------------------------------------------------------------------

def _zigzag(ev, coev, a, b, incoming):
    """l*-led snake through the elbows ev: a(x)b -> 1, coev: 1 -> a(x)b.

    The incoming strand is braided past b so that ev consumes (b, incoming);
    requires ev's source to end in a point braidable with `incoming`.
    """
    return comp1(
        Adj1(LeftUnitor1(incoming)),
        Tensor1(coev, Id1(incoming)),
        Assoc1(a, b, incoming),
        Tensor1(Id1(a), Braid1(b, incoming)),
        Tensor1(Id1(a), ev),
        Adj1(RightUnitor1(a)),
    )


def _zigzag_mirror(ev, coev, a, b, incoming):
    """r-led mirror snake: coev is attached on the right of the strand."""
    return comp1(
        RightUnitor1(incoming),
        Tensor1(Id1(incoming), coev),
        Adj1(Assoc1(incoming, a, b)),
        Tensor1(Braid1(incoming, a), Id1(b)),
        Tensor1(ev, Id1(b)),
        LeftUnitor1(b),
    )


def _morse_cancel_rows(ev, coev):
    """Disk/saddle cancellation rows on the circle D = ev o coev.

    Eight rows: {split then cup, cap then merge} x {outer, inner circle}
    x {pinch dressed at the ev side, at the coev side}.
    """
    D = Comp1(ev, coev)
    pinch = Comp1(coev, ev)

    # rebracketing (ev o pinch) o coev => D o D
    to_dd_a = [AssocC(coev, pinch, ev),
               hcompose(Id2(ev), AssocC(coev, ev, coev)),
               Inv2(AssocC(D, coev, ev))]
    # rebracketing ev o (pinch o coev) => D o D
    to_dd_b = [hcompose(Id2(ev), AssocC(coev, ev, coev)),
               Inv2(AssocC(D, coev, ev))]

    pinch_in_a = [hcompose(Inv2(RC(ev)), Id2(coev)),
                  hcompose(hcompose(Id2(ev), Gen2("split")), Id2(coev))]
    pinch_in_b = [hcompose(Id2(ev), Inv2(LC(coev))),
                  hcompose(Id2(ev), hcompose(Gen2("split"), Id2(coev)))]
    pinch_out_a = [hcompose(hcompose(Id2(ev), Gen2("merge")), Id2(coev)),
                   hcompose(RC(ev), Id2(coev))]
    pinch_out_b = [hcompose(Id2(ev), hcompose(Gen2("merge"), Id2(coev))),
                   hcompose(Id2(ev), LC(coev))]

    def inv_chain(cells):
        return [invert_structural(c) for c in reversed(cells)]

    rows = []
    for dress, to_dd, pin, pout in (
            ("a", to_dd_a, pinch_in_a, pinch_out_a),
            ("b", to_dd_b, pinch_in_b, pinch_out_b)):
        from_dd = inv_chain(to_dd)
        rows.append(Relation(
            "morse-cancel-split-cup-outer-" + dress,
            vcompose(pin + to_dd + [hcompose(Gen2("cup"), Id2(D)), LC(D)]),
            vcompose([Id2(D)])))
        rows.append(Relation(
            "morse-cancel-split-cup-inner-" + dress,
            vcompose(pin + to_dd + [hcompose(Id2(D), Gen2("cup")), RC(D)]),
            vcompose([Id2(D)])))
        rows.append(Relation(
            "morse-cancel-cap-merge-outer-" + dress,
            vcompose([Inv2(LC(D)), hcompose(Gen2("cap"), Id2(D))]
                     + from_dd + pout),
            vcompose([Id2(D)])))
        rows.append(Relation(
            "morse-cancel-cap-merge-inner-" + dress,
            vcompose([Inv2(RC(D)), hcompose(Id2(D), Gen2("cap"))]
                     + from_dd + pout),
            vcompose([Id2(D)])))
    return rows


def _cusp_rows(updown_pairs):
    rows = []
    for name, up, down, strip, zig in updown_pairs:
        rows.append(Relation("cusp-inversion-%s-strip" % name,
                             vcompose([Gen2(up), Gen2(down)]),
                             vcompose([Id2(strip)])))
        rows.append(Relation("cusp-inversion-%s-zigzag" % name,
                             vcompose([Gen2(down), Gen2(up)]),
                             vcompose([Id2(zig)])))
    return rows


# ---------------------------------------------------------------------------
# the two presentations
# ---------------------------------------------------------------------------

def bord2_unoriented() -> Presentation:
    """Generators and relations of the unoriented 2D bordism bicategory."""
    P = ObjGen("pt")
    PP = tc.ObjTensor(P, P)
    ev, coev = Gen1("ev"), Gen1("coev")
    beta = Braid1(P, P)
    D = Comp1(ev, coev)            # the circle, as a 1 -> 1 sentence
    pinch = Comp1(coev, ev)        # two strips pinched, pt(x)pt -> pt(x)pt
    Z = _zigzag(ev, coev, P, P, P)

    two_gens = {
        "cap": (Id1(UNIT), D),
        "cup": (D, Id1(UNIT)),
        "split": (Id1(PP), pinch),
        "merge": (pinch, Id1(PP)),
        "cusp_up": (Id1(P), Z),
        "cusp_down": (Z, Id1(P)),
        "sym_ev_in": (ev, Comp1(ev, beta)),
        "sym_ev_out": (Comp1(ev, beta), ev),
        "sym_coev_in": (coev, Comp1(beta, coev)),
        "sym_coev_out": (Comp1(beta, coev), coev),
    }
    data = tc.GeneratingData(
        objects=("pt",),
        one_gens={"ev": (PP, UNIT), "coev": (UNIT, PP)},
        two_gens=two_gens)

    relations = _morse_cancel_rows(ev, coev)
    relations += _cusp_rows([("pt", "cusp_up", "cusp_down", Id1(P), Z)])
    relations += [
        Relation("sym-cancel-ev-strip",
                 vcompose([Gen2("sym_ev_in"), Gen2("sym_ev_out")]),
                 vcompose([Id2(ev)])),
        Relation("sym-cancel-ev-crossed",
                 vcompose([Gen2("sym_ev_out"), Gen2("sym_ev_in")]),
                 vcompose([Id2(Comp1(ev, beta))])),
        Relation("sym-cancel-coev-strip",
                 vcompose([Gen2("sym_coev_in"), Gen2("sym_coev_out")]),
                 vcompose([Id2(coev)])),
        Relation("sym-cancel-coev-crossed",
                 vcompose([Gen2("sym_coev_out"), Gen2("sym_coev_in")]),
                 vcompose([Id2(Comp1(beta, coev))])),
    ]

    arc_patterns = {
        "ev": (2, 0, [(("s", 0), ("s", 1), ("gen", "ev"))]),
        "coev": (0, 2, [(("t", 0), ("t", 1), ("gen", "coev"))]),
    }
    tags = {"cap": "cap", "cup": "cup", "split": "split", "merge": "merge",
            "cusp_up": "cusp", "cusp_down": "cusp",
            "sym_ev_in": "sym", "sym_ev_out": "sym",
            "sym_coev_in": "sym", "sym_coev_out": "sym"}
    return Presentation("unoriented", data, relations, arc_patterns, tags)


def bord2_oriented() -> Presentation:
    """Generators and relations of the oriented 2D bordism bicategory.

    No crossing cells; cusp cells come in the two orientation labelings of
    each of the two cusp shapes (four cells, recorded in the manifest).
    """
    Pp, Pm = ObjGen("pt+"), ObjGen("pt-")
    PP = tc.ObjTensor(Pp, Pm)
    ev, coev = Gen1("ev"), Gen1("coev")
    D = Comp1(ev, coev)
    pinch = Comp1(coev, ev)
    Zp = _zigzag(ev, coev, Pp, Pm, Pp)          # snake on the positive point
    Zm = _zigzag_mirror(ev, coev, Pp, Pm, Pm)   # mirror snake on the negative

    two_gens = {
        "cap": (Id1(UNIT), D),
        "cup": (D, Id1(UNIT)),
        "split": (Id1(PP), pinch),
        "merge": (pinch, Id1(PP)),
        "cusp_up_pos": (Id1(Pp), Zp),
        "cusp_down_pos": (Zp, Id1(Pp)),
        "cusp_up_neg": (Id1(Pm), Zm),
        "cusp_down_neg": (Zm, Id1(Pm)),
    }
    data = tc.GeneratingData(
        objects=("pt+", "pt-"),
        one_gens={"ev": (PP, UNIT), "coev": (UNIT, PP)},
        two_gens=two_gens)

    relations = _morse_cancel_rows(ev, coev)
    relations += _cusp_rows([
        ("pos", "cusp_up_pos", "cusp_down_pos", Id1(Pp), Zp),
        ("neg", "cusp_up_neg", "cusp_down_neg", Id1(Pm), Zm),
    ])

    arc_patterns = {
        "ev": (2, 0, [(("s", 0), ("s", 1), ("gen", "ev"))]),
        "coev": (0, 2, [(("t", 0), ("t", 1), ("gen", "coev"))]),
    }
    tags = {"cap": "cap", "cup": "cup", "split": "split", "merge": "merge",
            "cusp_up_pos": "cusp", "cusp_down_pos": "cusp",
            "cusp_up_neg": "cusp", "cusp_down_neg": "cusp"}
    return Presentation("oriented", data, relations, arc_patterns, tags)


# ---------------------------------------------------------------------------
# orientation forgetting
# ---------------------------------------------------------------------------

_POINT_MAP = {"pt+": "pt", "pt-": "pt"}
_GEN2_MAP = {"cap": "cap", "cup": "cup", "split": "split", "merge": "merge",
             "cusp_up_pos": "cusp_up", "cusp_down_pos": "cusp_down"}


def _forget_object(w):
    if isinstance(w, tc.Unit):
        return w
    if isinstance(w, tc.ObjGen):
        return ObjGen(_POINT_MAP.get(w.name, w.name))
    return tc.ObjTensor(_forget_object(w.left), _forget_object(w.right))


def _forget_morphism(t):
    if isinstance(t, tc.Gen1):
        return t
    if isinstance(t, tc.Id1):
        return Id1(_forget_object(t.word))
    if isinstance(t, tc.Assoc1):
        return Assoc1(_forget_object(t.u), _forget_object(t.v),
                      _forget_object(t.w))
    if isinstance(t, tc.LeftUnitor1):
        return LeftUnitor1(_forget_object(t.word))
    if isinstance(t, tc.RightUnitor1):
        return RightUnitor1(_forget_object(t.word))
    if isinstance(t, tc.Braid1):
        return Braid1(_forget_object(t.u), _forget_object(t.v))
    if isinstance(t, tc.Adj1):
        return Adj1(_forget_morphism(t.inner))
    if isinstance(t, tc.Comp1):
        return Comp1(_forget_morphism(t.after), _forget_morphism(t.first))
    if isinstance(t, tc.Tensor1):
        return Tensor1(_forget_morphism(t.left), _forget_morphism(t.right))
    raise PresentationError("cannot forget %r" % (t,))


def forget_orientation(p: tc.TwoCellTerm) -> tc.TwoCellTerm:
    """Image of an oriented term under the orientation-forgetting map.

    Point labels collapse, every oriented generator maps to its unoriented
    counterpart.  The negative cusp cells denote the mirror zigzag, which
    the unoriented presentation reaches through its own cusp cells only up
    to a crossing isotopy; mapping them is not supported and raises.
    """
    if isinstance(p, tc.Gen2):
        if p.name in ("cusp_up_neg", "cusp_down_neg"):
            raise PresentationError(
                "forgetting the mirror cusp cells is not supported")
        if p.name not in _GEN2_MAP:
            raise PresentationError("unknown oriented generator %r" % p.name)
        return Gen2(_GEN2_MAP[p.name])
    if isinstance(p, tc.VComp):
        return VComp(tuple(forget_orientation(c) for c in p.children))
    if isinstance(p, tc.HComp):
        return HComp(forget_orientation(p.outer), forget_orientation(p.inner))
    if isinstance(p, tc.Tensor2):
        return Tensor2(forget_orientation(p.left), forget_orientation(p.right))
    if isinstance(p, tc.Inv2):
        return Inv2(forget_orientation(p.inner))
    if isinstance(p, tc.Id2):
        return Id2(_forget_morphism(p.f))
    if isinstance(p, tc.AssocC):
        return AssocC(_forget_morphism(p.f2), _forget_morphism(p.f1),
                      _forget_morphism(p.f0))
    if isinstance(p, tc.RC):
        return RC(_forget_morphism(p.f))
    if isinstance(p, tc.LC):
        return LC(_forget_morphism(p.f))
    if isinstance(p, tc.Eta):
        return tc.Eta(_forget_morphism(p.f))
    if isinstance(p, tc.Eps):
        return tc.Eps(_forget_morphism(p.f))
    if isinstance(p, tc.PhiTensor):
        return tc.PhiTensor(_forget_morphism(p.f), _forget_morphism(p.g),
                            _forget_morphism(p.f1), _forget_morphism(p.g1))
    if isinstance(p, tc.Phi0):
        return tc.Phi0(_forget_object(p.a), _forget_object(p.a1))
    if isinstance(p, tc.AssocF):
        return tc.AssocF(_forget_morphism(p.f), _forget_morphism(p.g),
                         _forget_morphism(p.h))
    if isinstance(p, tc.LeftUnitorF):
        return tc.LeftUnitorF(_forget_morphism(p.f))
    if isinstance(p, tc.RightUnitorF):
        return tc.RightUnitorF(_forget_morphism(p.f))
    if isinstance(p, tc.BraidF):
        return tc.BraidF(_forget_morphism(p.f), _forget_morphism(p.g))
    if isinstance(p, tc.Pi):
        return tc.Pi(*(map(_forget_object, (p.a, p.b, p.c, p.d))))
    if isinstance(p, tc.MuCell):
        return tc.MuCell(_forget_object(p.a), _forget_object(p.b))
    if isinstance(p, tc.LamCell):
        return tc.LamCell(_forget_object(p.a), _forget_object(p.b))
    if isinstance(p, tc.RhoCell):
        return tc.RhoCell(_forget_object(p.a), _forget_object(p.b))
    if isinstance(p, tc.RCell):
        return tc.RCell(*(map(_forget_object, (p.a, p.b, p.c))))
    if isinstance(p, tc.SCell):
        return tc.SCell(*(map(_forget_object, (p.a, p.b, p.c))))
    if isinstance(p, tc.SigmaCell):
        return tc.SigmaCell(_forget_object(p.a), _forget_object(p.b))
    raise PresentationError("cannot forget %r" % (p,))


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RewriteStep:
    relation: str
    direction: str          # "lr" or "rl"
    path: tuple             # node path within the canonical term
    window: tuple           # (start, length) in the flattened chain there
    matched: tuple          # the cells replaced
    replacement: tuple      # the cells substituted
    result: tc.TwoCellTerm


def canonical(p: tc.TwoCellTerm) -> tc.TwoCellTerm:
    """Flatten nested vertical chains and drop unary chain wrappers."""
    if isinstance(p, tc.VComp):
        flat = []
        for c in p.children:
            cc = canonical(c)
            if isinstance(cc, tc.VComp):
                flat.extend(cc.children)
            else:
                flat.append(cc)
        if len(flat) == 1:
            return flat[0]
        return VComp(tuple(flat))
    if isinstance(p, tc.HComp):
        return HComp(canonical(p.outer), canonical(p.inner))
    if isinstance(p, tc.Tensor2):
        return Tensor2(canonical(p.left), canonical(p.right))
    if isinstance(p, tc.Inv2):
        return Inv2(canonical(p.inner))
    return p


def _chain(p):
    if isinstance(p, tc.VComp):
        return list(p.children)
    return [p]


def _subnodes(p, path=()):
    """All addressable nodes: the node itself, then children recursively."""
    yield path, p
    if isinstance(p, tc.VComp):
        for i, c in enumerate(p.children):
            yield from _subnodes(c, path + (i,))
    elif isinstance(p, tc.HComp):
        yield from _subnodes(p.outer, path + ("outer",))
        yield from _subnodes(p.inner, path + ("inner",))
    elif isinstance(p, tc.Tensor2):
        yield from _subnodes(p.left, path + ("left",))
        yield from _subnodes(p.right, path + ("right",))
    elif isinstance(p, tc.Inv2):
        yield from _subnodes(p.inner, path + ("inv2",))


def _replace_at(p, path, new):
    if not path:
        return new
    step, rest = path[0], path[1:]
    if isinstance(p, tc.VComp):
        cs = list(p.children)
        cs[step] = _replace_at(cs[step], rest, new)
        return VComp(tuple(cs))
    if isinstance(p, tc.HComp):
        if step == "outer":
            return HComp(_replace_at(p.outer, rest, new), p.inner)
        return HComp(p.outer, _replace_at(p.inner, rest, new))
    if isinstance(p, tc.Tensor2):
        if step == "left":
            return Tensor2(_replace_at(p.left, rest, new), p.right)
        return Tensor2(p.left, _replace_at(p.right, rest, new))
    if isinstance(p, tc.Inv2):
        return Inv2(_replace_at(p.inner, rest, new))
    raise PresentationError("bad path")


def find_matches(t: tc.TwoCellTerm, p: Presentation) -> List[RewriteStep]:
    """All occurrences of any relation side in `t`, both directions.

    Matching is exact tree matching modulo vertical-chain flattening: a
    side whose chain is [c1..ck] matches any window of k consecutive cells
    in a flattened chain of `t`.
    """
    t = canonical(t)
    steps = []
    for path, node in _subnodes(t):
        chain = _chain(node)
        for rel in p.relations:
            for direction, src, dst in (("lr", rel.lhs, rel.rhs),
                                        ("rl", rel.rhs, rel.lhs)):
                pat = _chain(canonical(src))
                k = len(pat)
                for i in range(len(chain) - k + 1):
                    if chain[i:i + k] != pat:
                        continue
                    rep = _chain(canonical(dst))
                    if k == len(chain) and i == 0:
                        new_node = canonical(dst)
                    else:
                        cs = chain[:i] + rep + chain[i + k:]
                        new_node = canonical(VComp(tuple(cs)))
                    result = canonical(_replace_at(t, path, new_node))
                    steps.append(RewriteStep(rel.name, direction, path,
                                             (i, k), tuple(pat), tuple(rep),
                                             result))
    return steps


def apply(t: tc.TwoCellTerm, step: RewriteStep) -> tc.TwoCellTerm:
    """Apply a step produced by `find_matches` on the same term.

    Raises if the step is stale, i.e. the window no longer matches.
    """
    t = canonical(t)
    try:
        node = t
        for s in step.path:
            if isinstance(node, tc.VComp):
                node = node.children[s]
            elif isinstance(node, tc.HComp):
                node = node.outer if s == "outer" else node.inner
            elif isinstance(node, tc.Tensor2):
                node = node.left if s == "left" else node.right
            elif isinstance(node, tc.Inv2):
                node = node.inner
            else:
                raise PresentationError("stale step: path vanished")
    except (IndexError, AttributeError):
        raise PresentationError("stale step: path vanished")
    chain = _chain(node)
    i, k = step.window
    if tuple(chain[i:i + k]) != step.matched:
        raise PresentationError("stale step: window no longer matches")
    rep = list(step.replacement)
    if k == len(chain) and i == 0 and len(rep) == 1:
        new_node = rep[0]
    else:
        new_node = canonical(VComp(tuple(chain[:i] + rep + chain[i + k:])))
    return canonical(_replace_at(t, step.path, new_node))


@dataclass(frozen=True)
class SearchResult:
    equivalent: bool
    steps: tuple = ()

    def __bool__(self):
        return self.equivalent


def equivalent_bounded(t1, t2, p: Presentation, depth: int = 6,
                       max_visited: int = 100000) -> SearchResult:
    """Breadth-first search for a rewrite path from t1 to t2.

    `equivalent` implies genuine equivalence in the presented bicategory;
    a negative result is only "unknown within the budget".
    """
    b1 = tc.two_cell_boundary(t1, p.data)
    b2 = tc.two_cell_boundary(t2, p.data)
    if b1 != b2:
        raise PresentationError("boundary mismatch between search endpoints")
    start, goal = canonical(t1), canonical(t2)
    if start == goal:
        return SearchResult(True, ())
    frontier = [(start, ())]
    seen = {start}
    for _ in range(depth):
        nxt = []
        for term, trail in frontier:
            for step in find_matches(term, p):
                res = step.result
                if res in seen:
                    continue
                new_trail = trail + (step,)
                if res == goal:
                    return SearchResult(True, new_trail)
                seen.add(res)
                if len(seen) > max_visited:
                    return SearchResult(False, ())
                nxt.append((res, new_trail))
        frontier = nxt
        if not frontier:
            break
    return SearchResult(False, ())
