"""Presentations: generator counts, relation balance, rewriting, search."""

import pytest

from bordcalc import presentations as pr
from bordcalc import termcore as tc
from bordcalc import build
from bordcalc.termcore import Gen2, Id1, Id2, ObjGen, vcompose


@pytest.fixture(scope="module")
def uno():
    return pr.bord2_unoriented()


@pytest.fixture(scope="module")
def ori():
    return pr.bord2_oriented()


def test_unoriented_generator_counts(uno):
    assert len(uno.data.objects) == 1
    assert len(uno.data.one_gens) == 2
    assert len(uno.data.two_gens) == 10
    tags = list(uno.two_gen_tags.values())
    assert tags.count("sym") == 4
    assert tags.count("cusp") == 2
    assert sorted(t for t in tags if t in ("cap", "cup", "split", "merge")) \
        == ["cap", "cup", "merge", "split"]


def test_oriented_generator_counts(ori):
    assert len(ori.data.objects) == 2
    assert len(ori.data.one_gens) == 2
    assert "sym" not in ori.two_gen_tags.values()
    assert list(ori.two_gen_tags.values()).count("cusp") == 4


def test_relations_boundary_balanced(uno, ori):
    for p in (uno, ori):
        for rel in p.relations:
            assert tc.two_cell_boundary(rel.lhs, p.data) \
                == tc.two_cell_boundary(rel.rhs, p.data), rel.name


def test_manifest_stable(uno):
    m1 = uno.manifest()
    m2 = pr.bord2_unoriented().manifest()
    assert m1 == m2
    assert "relations %d" % len(uno.relations) in m1


def test_find_matches_self_match(uno):
    rel = uno.relation("cusp-inversion-pt-strip")
    steps = pr.find_matches(rel.lhs, uno)
    assert any(s.relation == rel.name and s.direction == "lr"
               and s.path == () for s in steps)


def test_find_matches_id_trivial(uno):
    t = vcompose([Id2(Id1(tc.UNIT))], uno.data)
    steps = pr.find_matches(t, uno)
    # no relation side is syntactically id_{I_1}
    assert steps == []


def test_match_inside_tensor_context(uno):
    rel = uno.relation("cusp-inversion-pt-strip")
    t = pr.canonical(tc.Tensor2(rel.lhs, Id2(Id1(ObjGen("pt")))))
    steps = pr.find_matches(t, uno)
    inner = [s for s in steps if s.relation == rel.name
             and s.direction == "lr" and s.path == ("left",)]
    assert inner


def test_apply_and_stale(uno):
    rel = uno.relation("cusp-inversion-pt-strip")
    steps = [s for s in pr.find_matches(rel.lhs, uno)
             if s.relation == rel.name and s.direction == "lr"]
    res = pr.apply(rel.lhs, steps[0])
    assert res == pr.canonical(rel.rhs)
    other = vcompose([Gen2("cap"), Gen2("cup")], uno.data)
    with pytest.raises(pr.PresentationError):
        pr.apply(other, steps[0])


def test_apply_inverse_restores(uno):
    rel = uno.relation("morse-cancel-split-cup-outer-a")
    steps = [s for s in pr.find_matches(rel.lhs, uno)
             if s.relation == rel.name and s.direction == "lr"
             and s.path == () and s.window[1] == len(pr._chain(pr.canonical(rel.lhs)))]
    t2 = pr.apply(rel.lhs, steps[0])
    back = [s for s in pr.find_matches(t2, uno)
            if s.relation == rel.name and s.direction == "rl"]
    t3 = pr.apply(t2, back[0])
    assert t3 == pr.canonical(rel.lhs)


def test_apply_preserves_validity_and_boundary(uno):
    for seed in range(25):
        t = build.random_term(uno, seed)
        bounds = tc.two_cell_boundary(t, uno.data)
        for step in pr.find_matches(t, uno)[:8]:
            res = pr.apply(t, step)
            assert tc.validate(res, uno.data).ok
            assert tc.two_cell_boundary(res, uno.data) == bounds


def test_equivalent_bounded_cusp_zigzag(uno):
    rel = uno.relation("cusp-inversion-pt-strip")
    res = pr.equivalent_bounded(rel.lhs, rel.rhs, uno, depth=1)
    assert res.equivalent
    assert len(res.steps) == 1
    assert res.steps[0].relation == rel.name


def test_equivalent_bounded_reflexive(uno):
    t = vcompose([Gen2("cap"), Gen2("cup")], uno.data)
    res = pr.equivalent_bounded(t, t, uno, depth=0)
    assert res.equivalent and res.steps == ()


def test_equivalent_bounded_unknown_for_distinct_surfaces(uno):
    from bordcalc import surface as sf
    from bordcalc.termcore import Comp1, Gen1, hcompose, Inv2, RC
    ev, coev = Gen1("ev"), Gen1("coev")
    sphere = vcompose([Gen2("cap"), Gen2("cup")], uno.data)
    torus = vcompose([
        Gen2("cap"),
        hcompose(Inv2(RC(ev)), Id2(coev), uno.data),
        hcompose(hcompose(Id2(ev), Gen2("split"), uno.data), Id2(coev), uno.data),
        hcompose(hcompose(Id2(ev), Gen2("merge"), uno.data), Id2(coev), uno.data),
        hcompose(RC(ev), Id2(coev), uno.data),
        Gen2("cup")], uno.data)
    res = pr.equivalent_bounded(sphere, torus, uno, depth=2, max_visited=3000)
    assert not res.equivalent
    i1 = sf.invariants(sf.reconstruct(sphere, uno))
    i2 = sf.invariants(sf.reconstruct(torus, uno))
    assert i1 != i2  # the invariants separate them for good reason


def test_forget_orientation_generators(ori, uno):
    assert pr.forget_orientation(Gen2("cap")) == Gen2("cap")
    t = vcompose([Gen2("cap"), Gen2("cup")], ori.data)
    image = pr.forget_orientation(t)
    assert tc.validate(image, uno.data).ok


def test_forget_orientation_torus(ori, uno):
    from bordcalc import surface as sf
    from bordcalc.termcore import Comp1, Gen1, hcompose, Inv2, RC
    ev, coev = Gen1("ev"), Gen1("coev")
    torus = vcompose([
        Gen2("cap"),
        hcompose(Inv2(RC(ev)), Id2(coev), ori.data),
        hcompose(hcompose(Id2(ev), Gen2("split"), ori.data), Id2(coev), ori.data),
        hcompose(hcompose(Id2(ev), Gen2("merge"), ori.data), Id2(coev), ori.data),
        hcompose(RC(ev), Id2(coev), ori.data),
        Gen2("cup")], ori.data)
    image = pr.forget_orientation(torus)
    assert tc.validate(image, uno.data).ok
    assert sf.invariants(sf.reconstruct(image, uno)) \
        == sf.invariants(sf.reconstruct(torus, ori))


def test_forget_orientation_rejects_mirror_cusps(ori):
    with pytest.raises(pr.PresentationError):
        pr.forget_orientation(Gen2("cusp_up_neg"))


def test_forget_orientation_invalid_input(uno, ori):
    with pytest.raises(pr.PresentationError):
        pr.forget_orientation(tc.Gen1("ev"))  # not a 2-cell


def test_relation_count_constants(uno, ori):
    assert len(uno.relations) == pr.UNORIENTED_RELATION_COUNT
    assert len(ori.relations) == pr.ORIENTED_RELATION_COUNT
    assert sum(1 for t in ori.two_gen_tags.values() if t == "cusp") \
        == pr.ORIENTED_CUSP_GENERATOR_COUNT
    assert "cusp-generators 4" in ori.manifest()
