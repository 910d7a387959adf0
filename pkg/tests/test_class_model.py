import random

import pytest

from moodkit import (
    AttributeDecl, ClassDecl, ClassModel, MethodDecl, MethodKind,
    UnknownClassError, Visibility, descendants, tallies, validate,
)
from moodkit.class_model import (
    BAD_OVERRIDE, CYCLE, DUPLICATE_ATTRIBUTE, DUPLICATE_METHOD, EMPTY_MODEL,
    SELF_REFERENCE, SHADOWING, UNRESOLVED_NAME,
)

from tests.modelgen import make_model


def cls(name, parents=(), methods=(), attributes=(), uses=()):
    return ClassDecl(name=name, parents=parents, methods=methods,
                     attributes=attributes, uses=uses)


def m(name, vis=Visibility.VISIBLE, target=None):
    kind = MethodKind.OVERRIDE if target else MethodKind.NEW
    return MethodDecl(name=name, visibility=vis, kind=kind,
                      override_target=target)


def a(name, vis=Visibility.VISIBLE):
    return AttributeDecl(name=name, visibility=vis)


def codes(model):
    return sorted(d.code for d in validate(model))


def test_method_decl_rejects_inconsistent_override():
    with pytest.raises(ValueError):
        MethodDecl(name="x", kind=MethodKind.OVERRIDE)
    with pytest.raises(ValueError):
        MethodDecl(name="x", kind=MethodKind.NEW, override_target=("A", "x"))


def test_duplicate_class_names_rejected():
    with pytest.raises(ValueError, match="duplicate class name"):
        ClassModel([cls("A"), cls("A")])


def test_get_unknown_class():
    model = ClassModel([cls("A")])
    with pytest.raises(UnknownClassError):
        model.get("B")


def test_empty_model_diagnostic():
    assert codes(ClassModel([])) == [EMPTY_MODEL]


def test_valid_two_class_model_is_clean():
    model = ClassModel([
        cls("Base", methods=(m("run"), m("init", Visibility.HIDDEN)),
            attributes=(a("size"),)),
        cls("Derived", parents=("Base",),
            methods=(m("run", target=("Base", "run")), m("extra"))),
    ])
    assert validate(model) == []


def test_unresolved_parent_and_use():
    model = ClassModel([cls("A", parents=("Ghost",), uses=("Phantom",))])
    assert codes(model) == [UNRESOLVED_NAME, UNRESOLVED_NAME]


def test_self_reference_parent_and_use():
    model = ClassModel([cls("A", parents=("A",)), cls("B", uses=("B",))])
    got = codes(model)
    assert got.count(SELF_REFERENCE) == 2


def test_cycle_detected_once_per_component():
    model = ClassModel([
        cls("A", parents=("B",)),
        cls("B", parents=("C",)),
        cls("C", parents=("A",)),
        cls("D"),
    ])
    diags = [d for d in validate(model) if d.code == CYCLE]
    assert len(diags) == 1
    assert diags[0].class_name == "A"


def test_two_independent_cycles():
    model = ClassModel([
        cls("A", parents=("B",)), cls("B", parents=("A",)),
        cls("X", parents=("Y",)), cls("Y", parents=("X",)),
    ])
    diags = [d for d in validate(model) if d.code == CYCLE]
    assert len(diags) == 2
    assert sorted(d.class_name for d in diags) == ["A", "X"]


def test_duplicate_features():
    model = ClassModel([
        cls("A", methods=(m("f"), m("f")), attributes=(a("x"), a("x"))),
    ])
    got = codes(model)
    assert DUPLICATE_METHOD in got and DUPLICATE_ATTRIBUTE in got


def test_shadowing_method_without_override():
    model = ClassModel([
        cls("Base", methods=(m("f"),)),
        cls("Derived", parents=("Base",), methods=(m("f"),)),
    ])
    assert SHADOWING in codes(model)


def test_shadowing_attribute():
    model = ClassModel([
        cls("Base", attributes=(a("x"),)),
        cls("Derived", parents=("Base",), attributes=(a("x"),)),
    ])
    assert SHADOWING in codes(model)


def test_override_of_non_ancestor_rejected():
    model = ClassModel([
        cls("Base", methods=(m("f"),)),
        cls("Other", methods=(m("f"),)),
        cls("Derived", parents=("Base",),
            methods=(m("f", target=("Other", "f")),)),
    ])
    assert BAD_OVERRIDE in codes(model)


def test_override_of_missing_method_rejected():
    model = ClassModel([
        cls("Base", methods=(m("f"),)),
        cls("Derived", parents=("Base",),
            methods=(m("g", target=("Base", "g")),)),
    ])
    assert BAD_OVERRIDE in codes(model)


def test_override_name_mismatch_rejected():
    model = ClassModel([
        cls("Base", methods=(m("f"),)),
        cls("Derived", parents=("Base",),
            methods=(m("g", target=("Base", "f")),)),
    ])
    assert BAD_OVERRIDE in codes(model)


def test_override_through_grandparent_allowed():
    model = ClassModel([
        cls("A", methods=(m("f"),)),
        cls("B", parents=("A",)),
        cls("C", parents=("B",), methods=(m("f", target=("A", "f")),)),
    ])
    assert validate(model) == []


def test_inheritance_checks_gated_on_broken_graph():
    # With a cycle present, no shadowing/override diagnostics are attempted.
    model = ClassModel([
        cls("A", parents=("B",), methods=(m("f"),)),
        cls("B", parents=("A",), methods=(m("f"),)),
    ])
    got = codes(model)
    assert CYCLE in got
    assert SHADOWING not in got and BAD_OVERRIDE not in got


def test_tallies_basic_counts():
    model = ClassModel([
        cls("Base", methods=(m("run"), m("init", Visibility.HIDDEN)),
            attributes=(a("size"), a("cap", Visibility.HIDDEN))),
        cls("Derived", parents=("Base",),
            methods=(m("run", target=("Base", "run")), m("extra")),
            attributes=(a("extra_attr"),)),
    ])
    base = tallies(model, "Base")
    assert (base.m_v, base.m_h, base.m_d, base.m_i, base.m_a) == (1, 1, 2, 0, 2)
    assert (base.m_n, base.m_o) == (2, 0)
    assert (base.a_v, base.a_h, base.a_d, base.a_i, base.a_a) == (1, 1, 2, 0, 2)
    assert base.dc == 1
    der = tallies(model, "Derived")
    # run is redefined locally, so only init is inherited
    assert (der.m_d, der.m_i, der.m_a) == (2, 1, 3)
    assert (der.m_n, der.m_o) == (1, 1)
    assert (der.a_d, der.a_i, der.a_a) == (1, 2, 3)
    assert der.dc == 0


def test_diamond_counts_once():
    model = ClassModel([
        cls("Top", methods=(m("f"),), attributes=(a("x"),)),
        cls("L", parents=("Top",)),
        cls("R", parents=("Top",)),
        cls("Bottom", parents=("L", "R")),
    ])
    assert validate(model) == []
    bottom = tallies(model, "Bottom")
    assert bottom.m_i == 1
    assert bottom.a_i == 1
    assert descendants(model, "Top") == 3


def test_override_blocks_transitive_inheritance():
    # Mid redefines f; Leaf inherits Mid's f, not Top's.
    model = ClassModel([
        cls("Top", methods=(m("f"), m("g"))),
        cls("Mid", parents=("Top",), methods=(m("f", target=("Top", "f")),)),
        cls("Leaf", parents=("Mid",)),
    ])
    assert validate(model) == []
    leaf = tallies(model, "Leaf")
    # f (from Mid) and g (from Top): two distinct inherited features
    assert leaf.m_i == 2
    assert leaf.m_a == 2


def test_diamond_with_one_side_overriding_yields_two_features():
    # L redefines f, R passes Top's f through: Bottom sees both identities.
    model = ClassModel([
        cls("Top", methods=(m("f"),)),
        cls("L", parents=("Top",), methods=(m("f", target=("Top", "f")),)),
        cls("R", parents=("Top",)),
        cls("Bottom", parents=("L", "R")),
    ])
    assert validate(model) == []
    assert tallies(model, "Bottom").m_i == 2


def test_descendants_chain():
    model = ClassModel([
        cls("A"), cls("B", parents=("A",)), cls("C", parents=("B",)),
    ])
    assert descendants(model, "A") == 2
    assert descendants(model, "B") == 1
    assert descendants(model, "C") == 0
    with pytest.raises(UnknownClassError):
        descendants(model, "Z")


def test_generated_models_validate_clean():
    rng = random.Random(1234)
    for _ in range(300):
        model = make_model(rng)
        assert validate(model) == [], f"dirty model: {validate(model)}"


def test_tallies_m_a_identity_on_generated_models():
    rng = random.Random(99)
    for _ in range(200):
        model = make_model(rng)
        for decl in model:
            t = tallies(model, decl.name)
            assert t.m_a == t.m_d + t.m_i
            assert t.a_a == t.a_d + t.a_i
            assert t.m_d == t.m_n + t.m_o
            assert t.m_d == t.m_v + t.m_h
            assert t.a_d == t.a_v + t.a_h
