import time
from itertools import chain, combinations, product

import pytest

from helpers import onto
from ontolint import fixtures
from ontolint.meta import Dependence, Rigidity
from ontolint.syntax import parse_onto
from ontolint.worlds import (
    MicroModel, UnknownIndividual, UnknownProperty, WorldsError, check_dependence, class_dependence,
    cross_validate, generic_dependence, infer_profile, is_anti_rigid, is_degenerate, is_rigid,
    rigid_dependence,
)


def subsets(items):
    items = sorted(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


def world_choices(individuals, props):
    """Every (exists, {prop: ext}) pair over the given individuals."""
    out = []
    for exists in subsets(individuals):
        for exts in product(subsets(exists), repeat=len(props)):
            out.append((exists, dict(zip(props, exts))))
    return out


def enumerate_models(max_ind=2, max_worlds=2, max_props=2):
    for n_ind in range(1, max_ind + 1):
        inds = ["a", "b", "c"][:n_ind]
        for n_props in range(1, max_props + 1):
            props = ["P", "Q", "R"][:n_props]
            choices = world_choices(inds, props)
            for n_worlds in range(1, max_worlds + 1):
                for worlds in product(choices, repeat=n_worlds):
                    raw = [(f"w{i}", ex, ext) for i, (ex, ext) in enumerate(worlds)]
                    yield raw, inds, props


# hand truth tables, written directly over the raw world tuples

def tt_rigid(raw, p):
    holds = [ext[p] for _, _, ext in raw]
    return all(x in e for x in set().union(*holds) for e in holds)


def tt_anti_rigid(raw, p):
    holds = [ext[p] for _, _, ext in raw]
    inst = set().union(*holds)
    return bool(inst) and all(any(x not in e for e in holds) for x in inst)


def tt_class(raw, p, q):
    return all(any(y != x for y in ext[q]) for _, _, ext in raw for x in ext[p])


def tt_profile(raw, props, p):
    if tt_rigid(raw, p):
        r = Rigidity.RIGID
    elif tt_anti_rigid(raw, p):
        r = Rigidity.ANTI_RIGID
    else:
        r = Rigidity.NON_RIGID
    d = any(tt_class(raw, p, q) for q in props if q != p)
    return r, Dependence.DEPENDENT if d else Dependence.INDEPENDENT


def model(raw, inds, props):
    return MicroModel.of(raw, vocabulary=props, individuals=inds)


# examples

def test_constant_extension_is_rigid():
    m = MicroModel.of([(w, {"a"}, {"P": {"a"}}) for w in ("w1", "w2", "w3")])
    assert is_rigid(m, "P") and not is_anti_rigid(m, "P")


def test_vanishing_extension():
    m = MicroModel.of([("w1", {"a"}, {"P": {"a"}}), ("w2", {"a"}, {"P": set()})])
    assert not is_rigid(m, "P")
    assert is_anti_rigid(m, "P")


def test_single_world_always_rigid():
    for raw, inds, props in enumerate_models(2, 1, 1):
        assert is_rigid(model(raw, inds, props), "P")


def test_empty_property_is_degenerate():
    m = MicroModel.of([("w1", {"a"}, {"P": set()}), ("w2", {"a"}, {})], vocabulary={"P"})
    assert is_degenerate(m, "P")
    assert is_rigid(m, "P") and not is_anti_rigid(m, "P")


def _fixture_models():
    lowered = parse_onto(fixtures.read("dependence")).lower()
    return lowered.models


def test_brain_is_rigid_dependence():
    m = _fixture_models()["brain"]
    assert check_dependence(m, "rigid", ("ann", "b1"))
    assert check_dependence(m, "rigid", ("b1", "ann"))
    assert not check_dependence(m, "rigid", ("ann", "b2"))


def test_heart_is_generic_dependence():
    m = _fixture_models()["heart"]
    assert check_dependence(m, "generic", ("ann", "Heart"))
    assert not check_dependence(m, "rigid", ("ann", "h1"))


def test_father_child_class_dependence():
    m = _fixture_models()["family"]
    assert check_dependence(m, "class", ("Father", "Child"))
    lonely = MicroModel.of([("w1", {"a"}, {"Father": {"a"}, "Child": set()})])
    assert not check_dependence(lonely, "class", ("Father", "Child"))


def test_unknown_mode_and_names():
    m = _fixture_models()["family"]
    with pytest.raises(ValueError, match="mode"):
        check_dependence(m, "modal", ("Father", "Child"))
    with pytest.raises(UnknownProperty):
        class_dependence(m, "Father", "Ghost")
    with pytest.raises(UnknownIndividual):
        rigid_dependence(m, "tom", "nobody")
    with pytest.raises(UnknownIndividual):
        generic_dependence(m, "nobody", "Person")


def test_person_student_profiles():
    m = MicroModel.of([
        ("w1", {"a", "b"}, {"Person": {"a", "b"}, "Student": {"a"}}),
        ("w2", {"a", "b"}, {"Person": {"a", "b"}, "Student": {"b"}}),
    ])
    assert infer_profile(m, "Person").rigidity is Rigidity.RIGID
    assert infer_profile(m, "Student").rigidity is Rigidity.ANTI_RIGID
    assert infer_profile(m, "Student").identity is None


def test_one_world_infers_rigid():
    for raw, inds, props in enumerate_models(2, 1, 2):
        m = model(raw, inds, props)
        assert all(infer_profile(m, p).rigidity is Rigidity.RIGID for p in props)


def test_father_is_dependent():
    m = _fixture_models()["family"]
    assert infer_profile(m, "Father").dependence is Dependence.DEPENDENT
    assert infer_profile(m, "Person").dependence is Dependence.INDEPENDENT


# validation

def test_model_validation():
    with pytest.raises(WorldsError):
        MicroModel.of([])
    with pytest.raises(WorldsError):
        MicroModel.of([("w1", {"a"}, {}), ("w1", {"a"}, {})])
    with pytest.raises(WorldsError, match="non-existent"):
        MicroModel.of([("w1", {"a"}, {"P": {"b"}})])
    with pytest.raises(UnknownProperty):
        MicroModel.of([("w1", {"a"}, {"P": {"a"}})], vocabulary={"Q"})


# cross validation

PERSON = """
    prop Person meta=+I+R-D
    prop Student meta=+I~R+D
    isa Student Person
"""


def test_rigid_declaration_refuted():
    m = MicroModel.of([("w1", {"a"}, {"P": {"a"}}), ("w2", {"a"}, {"P": set()})])
    [d] = cross_validate(onto(PERSON), m, {"Person": "P"})
    assert d.code == "W207" and d.nodes == ("Person",)


def test_empty_binding():
    m = MicroModel.of([("w1", {"a"}, {"P": {"a"}})])
    assert cross_validate(onto(PERSON), m, {}) == []


def test_matching_person_student_model():
    m = MicroModel.of([
        ("w1", {"a", "b"}, {"Person": {"a", "b"}, "Student": {"a"}}),
        ("w2", {"a", "b"}, {"Person": {"a", "b"}, "Student": {"b"}}),
    ])
    assert cross_validate(onto(PERSON), m, {"Person": "Person", "Student": "Student"}) == []


def test_family_fixture_agrees_with_declared_tags():
    lowered = parse_onto(fixtures.read("dependence")).lower()
    assert cross_validate(lowered.taxonomy, lowered.models["family"], lowered.bindings["family"]) == []


# exhaustive invariants

def test_rigid_and_anti_rigid_exclusive():
    for raw, inds, props in enumerate_models():
        m = model(raw, inds, props)
        for p in props:
            if not is_degenerate(m, p):
                assert not (is_rigid(m, p) and is_anti_rigid(m, p))


def test_mere_non_rigidity_exists():
    m = MicroModel.of([
        ("w1", {"a", "b"}, {"P": {"a", "b"}}),
        ("w2", {"a", "b"}, {"P": {"a"}}),
    ])
    assert not is_rigid(m, "P") and not is_anti_rigid(m, "P")
    assert infer_profile(m, "P").rigidity is Rigidity.NON_RIGID


def test_infer_profile_matches_truth_tables():
    count = 0
    for raw, inds, props in enumerate_models():
        m = model(raw, inds, props)
        for p in props:
            got = infer_profile(m, p)
            assert (got.rigidity, got.dependence) == tt_profile(raw, props, p)
            count += 1
    assert count > 1000


def test_adding_a_world_never_creates_rigidity():
    for raw, inds, props in enumerate_models(2, 2, 1):
        m = model(raw, inds, props)
        if is_rigid(m, "P"):
            continue
        for ex, ext in world_choices(inds, props):
            bigger = model(raw + [("extra", ex, ext)], inds, props)
            assert not is_rigid(bigger, "P")


def test_self_class_dependence_needs_two_instances():
    seen = 0
    for raw, inds, props in enumerate_models(3, 3, 1):
        if any(len(ext["P"]) == 1 for _, _, ext in raw):
            seen += 1
            assert not class_dependence(model(raw, inds, props), "P", "P")
    assert seen > 0
