"""Term language: boundaries, validation, parsing and printing."""

import random

import pytest

from bordcalc import termcore as tc
from bordcalc.termcore import (Adj1, Assoc1, AssocC, Braid1, Comp1, Eps, Eta,
                               Gen1, Gen2, Id1, Id2, Inv2, LC, LeftUnitor1,
                               ObjGen, ObjTensor, RC, RightUnitor1, Tensor1,
                               UNIT, comp1, hcompose, obj_tensor, tensor,
                               vcompose)
from bordcalc import presentations as pr

P = ObjGen("pt")
PP = ObjTensor(P, P)


@pytest.fixture(scope="module")
def uno():
    return pr.bord2_unoriented()


def test_object_parse_trivia(uno):
    w = tc.parse_object_word("(pt ⊗ pt)", uno.data)
    assert w == PP
    assert tc.parse_object_word("1") == UNIT
    with pytest.raises(tc.TermError):
        tc.parse_object_word("(pt (*) bad)", uno.data)


def test_braid_boundary_row():
    # beta_{u,v}: u(x)v -> v(x)u
    s, t = tc.morphism_boundary(Braid1(P, PP))
    assert s == ObjTensor(P, PP)
    assert t == ObjTensor(PP, P)


def test_identity_row():
    s, t = tc.morphism_boundary(Id1(PP))
    assert s == t == PP


def test_composite_boundary(uno):
    ev = Gen1("ev")
    t = Comp1(ev, Id1(PP))  # ev after I
    s, tt = tc.morphism_boundary(t, uno.data)
    assert s == PP and tt == UNIT


def test_bad_composite_reports_path(uno):
    ev = Gen1("ev")
    bad = Comp1(ev, Gen1("coev"))  # coev: 1 -> pt pt, then ev: ok actually
    s, t = tc.morphism_boundary(bad, uno.data)
    assert (s, t) == (UNIT, UNIT)
    really_bad = Comp1(Gen1("coev"), Gen1("coev"))
    with pytest.raises(tc.TermError):
        tc.morphism_boundary(really_bad, uno.data)


def test_eta_eps_rows():
    # eta_f: I_a => f* . f for structural f
    f = Assoc1(P, P, P)
    s, t = tc.two_cell_boundary(Eta(f))
    assert s == Id1(ObjTensor(PP, P))
    assert t == Comp1(Adj1(f), f)
    s, t = tc.two_cell_boundary(Eps(f))
    assert s == Comp1(f, Adj1(f))
    assert t == Id1(ObjTensor(P, PP))


def test_eta_rejects_generators(uno):
    with pytest.raises(tc.TermError):
        tc.two_cell_boundary(Eta(Gen1("ev")), uno.data)


def test_sigma_row():
    s, t = tc.two_cell_boundary(tc.SigmaCell(P, P))
    assert s == Id1(PP)
    assert t == Comp1(Braid1(P, P), Braid1(P, P))


def test_globularity_of_valid_terms(uno):
    term = vcompose([Gen2("cap"), Gen2("cup")], uno.data)
    src, tgt = tc.two_cell_boundary(term, uno.data)
    assert tc.morphism_source(src, uno.data) == tc.morphism_source(tgt, uno.data)
    assert tc.morphism_target(src, uno.data) == tc.morphism_target(tgt, uno.data)


def test_vcompose_rejects_gaps(uno):
    with pytest.raises(tc.TermError):
        vcompose([Gen2("cap"), Gen2("cap")], uno.data)


def test_hcompose_checks_middle_object(uno):
    # cup # cup: t(t(inner)) = 1 = s(s(outer)): composable
    t = hcompose(Gen2("cup"), Gen2("cup"), uno.data)
    src, _ = tc.two_cell_boundary(t, uno.data)
    assert isinstance(src, Comp1)
    with pytest.raises(tc.TermError):
        # split: boundaries live on pt(x)pt; cup's source object is 1
        hcompose(Gen2("split"), Gen2("cup"), uno.data)


def test_tensor_boundary(uno):
    t = tensor(Id2(Id1(UNIT)), Gen2("cap"))
    src, tgt = tc.two_cell_boundary(t, uno.data)
    assert src == Tensor1(Id1(UNIT), Id1(UNIT))
    assert isinstance(tgt, Tensor1)


def test_validate_flags_unknown_and_mismatch(uno):
    rep = tc.validate(Gen2("nonsense"), uno.data)
    assert not rep.ok
    bad_chain = tc.VComp((Gen2("cap"), Gen2("cap")))
    rep = tc.validate(bad_chain, uno.data)
    assert not rep.ok
    good = vcompose([Gen2("cap"), Gen2("cup")], uno.data)
    assert tc.validate(good, uno.data).ok


# ---------------------------------------------------------------------------
# parse / print round trips over every leaf constructor
# ---------------------------------------------------------------------------

def _leaf_zoo(uno):
    ev, coev = Gen1("ev"), Gen1("coev")
    f = Id1(P)
    alpha = Assoc1(P, P, P)
    return [
        Id2(ev),
        AssocC(coev, ev, Id1(UNIT)),
        RC(ev),
        LC(ev),
        Eta(alpha),
        Eps(alpha),
        tc.PhiTensor(Id1(P), Id1(P), Id1(P), Id1(P)),
        tc.Phi0(P, P),
        tc.AssocF(f, f, f),
        tc.LeftUnitorF(f),
        tc.RightUnitorF(f),
        tc.BraidF(f, f),
        tc.Pi(P, P, P, P),
        tc.MuCell(P, P),
        tc.LamCell(P, P),
        tc.RhoCell(P, P),
        tc.RCell(P, P, P),
        tc.SCell(P, P, P),
        tc.SigmaCell(P, P),
        Inv2(RC(ev)),
        Gen2("cap"),
        vcompose([Gen2("cap"), Gen2("cup")], uno.data),
        hcompose(Gen2("cup"), Gen2("cup"), uno.data),
        tensor(Gen2("cap"), Gen2("cap")),
    ]


def test_round_trip_two_cells(uno):
    for term in _leaf_zoo(uno):
        text = tc.print_two_cell(term)
        back = tc.parse_two_cell(text)
        assert back == term, text


def test_round_trip_morphisms(uno):
    zoo = [
        Gen1("ev"),
        Id1(PP),
        Assoc1(P, PP, P),
        LeftUnitor1(P),
        RightUnitor1(PP),
        Braid1(P, PP),
        Adj1(Assoc1(P, P, P)),
        Comp1(Gen1("ev"), Gen1("coev")),
        Tensor1(Gen1("ev"), Id1(P)),
        pr._zigzag(Gen1("ev"), Gen1("coev"), P, P, P),
    ]
    for t in zoo:
        text = tc.print_morphism(t)
        assert tc.parse_morphism(text) == t, text


def test_round_trip_objects():
    for w in [UNIT, P, PP, ObjTensor(PP, ObjTensor(P, UNIT))]:
        assert tc.parse_object_word(tc.print_object_word(w)) == w


def test_round_trip_corpus_50(uno):
    """Fifty generated terms covering every leaf constructor round-trip."""
    rng = random.Random(2024)
    zoo = _leaf_zoo(uno)
    corpus = list(zoo)
    while len(corpus) < 50:
        a = rng.choice(zoo)
        corpus.append(tensor(a, rng.choice(zoo)))
    assert len(corpus) >= 50
    for term in corpus:
        assert tc.parse_two_cell(tc.print_two_cell(term)) == term


def test_parse_error_positions():
    with pytest.raises(tc.ParseError):
        tc.parse_two_cell("(cap . ")
    with pytest.raises(tc.ParseError):
        tc.parse_object_word("(pt @ pt)")


# ---------------------------------------------------------------------------
# structural plumbing helpers
# ---------------------------------------------------------------------------

def test_normalizer_boundaries():
    w = ObjTensor(ObjTensor(UNIT, P), ObjTensor(P, ObjTensor(P, UNIT)))
    n = tc.normalizer(w)
    s, t = tc.morphism_boundary(n)
    assert s == w
    assert t == tc.object_normal_form(w)
    assert tc.obj_points(t) == ("pt", "pt", "pt")


def test_shape_iso_roundtrip():
    a = ObjTensor(P, ObjTensor(P, P))
    b = ObjTensor(ObjTensor(P, P), P)
    iso = tc.shape_iso(a, b)
    s, t = tc.morphism_boundary(iso)
    assert (s, t) == (a, b)


def test_insert_remove_pair(uno):
    ev, coev = Gen1("ev"), Gen1("coev")
    w2 = tc.object_normal_form(obj_tensor(P, P))
    ins = tc.insert_pair(w2, 1, coev, uno.data)
    s, t = tc.morphism_boundary(ins, uno.data)
    assert tc.obj_points(s) == ("pt", "pt")
    assert tc.obj_points(t) == ("pt",) * 4
    w4 = t
    rem = tc.remove_pair(w4, 1, ev, uno.data)
    s2, t2 = tc.morphism_boundary(rem, uno.data)
    assert s2 == w4 and tc.obj_points(t2) == ("pt", "pt")


def test_validate_rejects_mutations(uno):
    """Constructor-generated terms validate; mutations of them do not."""
    import random as _random
    from bordcalc import build as _build

    rng = _random.Random(7)
    for seed in range(15):
        t = _build.random_term(uno, seed, events=4)
        assert tc.validate(t, uno.data).ok
        leaves = [l for l in tc.iter_two_cell_leaves(t)
                  if isinstance(l, tc.Gen2)]
        if not leaves:
            continue
        victim = rng.choice(leaves)
        others = [n for n, (s, _t) in uno.data.two_gens.items()
                  if n != victim.name
                  and uno.data.two_gens[n][0] != uno.data.two_gens[victim.name][0]]
        if not others:
            continue
        mutated = _mutate_leaf(t, victim, tc.Gen2(rng.choice(others)))
        assert not tc.validate(mutated, uno.data).ok


def _mutate_leaf(term, old, new):
    if term == old:
        return new
    if isinstance(term, tc.VComp):
        return tc.VComp(tuple(_mutate_leaf(c, old, new) for c in term.children))
    if isinstance(term, tc.HComp):
        return tc.HComp(_mutate_leaf(term.outer, old, new),
                        _mutate_leaf(term.inner, old, new))
    if isinstance(term, tc.Tensor2):
        return tc.Tensor2(_mutate_leaf(term.left, old, new),
                          _mutate_leaf(term.right, old, new))
    if isinstance(term, tc.Inv2):
        return tc.Inv2(_mutate_leaf(term.inner, old, new))
    return term


def test_boundary_compositional_over_tensor(uno):
    from bordcalc import build as _build
    for seed in range(8):
        p = _build.random_term(uno, seed, events=3)
        q = _build.random_term(uno, seed + 100, events=3)
        sp, tp = tc.two_cell_boundary(p, uno.data)
        sq, tq = tc.two_cell_boundary(q, uno.data)
        st, tt = tc.two_cell_boundary(tc.tensor(p, q), uno.data)
        assert st == tc.Tensor1(sp, sq)
        assert tt == tc.Tensor1(tp, tq)
