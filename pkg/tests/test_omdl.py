import random

import pytest

from moodkit import (
    ClassModel, MethodKind, ParseError, Visibility, parse, render, validate,
)

from tests.modelgen import make_model


def test_minimal_class():
    doc = parse("class A { }")
    assert len(doc.model) == 1
    decl = doc.model.get("A")
    assert decl.methods == () and decl.attributes == () and decl.parents == ()


def test_hidden_method():
    doc = parse("class A { hidden method m; }")
    decl = doc.model.get("A")
    assert len(decl.methods) == 1
    assert decl.methods[0].visibility is Visibility.HIDDEN


def test_default_visibility_is_visible():
    doc = parse("class A { method m; attribute x; }")
    decl = doc.model.get("A")
    assert decl.methods[0].visibility is Visibility.VISIBLE
    assert decl.attributes[0].visibility is Visibility.VISIBLE


def test_truncated_extends():
    with pytest.raises(ParseError) as exc:
        parse("class A extends")
    assert exc.value.expected == "identifier"
    assert exc.value.found == "end of input"


def test_full_grammar_corpus():
    src = """
    // every production in one file
    class Top {
        visible method run;
        hidden method helper;
        attribute size;
        hidden attribute cache;
    }
    class Left extends Top {
        method run overrides Top.run;
    }
    class Right extends Top { }
    class Bottom extends Left, Right {
        method own;
        uses Top, Left;
    }
    class Loner { uses Bottom; }
    """
    doc = parse(src)
    model = doc.model
    assert validate(model) == []
    assert [c.name for c in model] == ["Top", "Left", "Right", "Bottom", "Loner"]
    assert model.get("Bottom").parents == ("Left", "Right")
    left_run = model.get("Left").methods[0]
    assert left_run.kind is MethodKind.OVERRIDE
    assert left_run.override_target == ("Top", "run")
    assert model.get("Bottom").uses == ("Top", "Left")


def test_comments_and_whitespace_do_not_matter():
    a = parse("class A { method m; }").model
    b = parse("// lead\nclass  A\n{\n  method   m ; // trail\n}\n").model
    assert a == b


def test_spans_recorded():
    doc = parse("class A {\n    method m;\n    attribute x;\n}")
    assert doc.spans[("class", "A")] == (1, 7)
    assert doc.spans[("method", "A", "m")] == (2, 12)
    assert doc.spans[("attribute", "A", "x")] == (3, 15)


def test_parse_error_positions():
    with pytest.raises(ParseError) as exc:
        parse("class A {\n  method ;\n}")
    assert exc.value.position == (2, 10)


def test_duplicate_class_name_is_parse_error():
    with pytest.raises(ParseError):
        parse("class A { } class A { }")


def test_keywords_not_identifiers():
    with pytest.raises(ParseError):
        parse("class class { }")
    with pytest.raises(ParseError):
        parse("class A { method hidden; }")


def test_missing_semicolon():
    with pytest.raises(ParseError) as exc:
        parse("class A { method m }")
    assert exc.value.expected in ("';'",)


def test_stray_token_after_visibility():
    with pytest.raises(ParseError):
        parse("class A { hidden uses B; }")


def test_unknown_character():
    with pytest.raises(ParseError):
        parse("class A ! { }")


def test_bytes_input_and_bad_utf8():
    doc = parse(b"class A { }")
    assert len(doc.model) == 1
    with pytest.raises(ParseError):
        parse(b"class A { \xff }")


def test_no_partial_model_on_error():
    # error in the second class: nothing from the first leaks out
    with pytest.raises(ParseError):
        parse("class A { method m; } class B {")


def test_render_deterministic():
    model = parse("class A extends B { method m; } class B { }").model
    assert render(model) == render(model)


def test_render_empty_class_form():
    model = ClassModel([])
    assert render(model) == ""


def test_round_trip_on_generated_models():
    rng = random.Random(4242)
    for _ in range(200):
        model = make_model(rng)
        text = render(model)
        again = parse(text)
        assert again.model == model


def test_round_trip_diamond():
    src = ("class T { method f; attribute x; }\n"
           "class L extends T { method f overrides T.f; }\n"
           "class R extends T { }\n"
           "class B extends L, R { uses T; }\n")
    model = parse(src).model
    assert parse(render(model)).model == model


def test_fuzz_never_crashes():
    rng = random.Random(777)
    outcomes = {"parsed": 0, "error": 0}
    for _ in range(10_000):
        length = rng.randint(0, 60)
        blob = bytes(rng.randrange(256) for _ in range(length))
        try:
            parse(blob)
            outcomes["parsed"] += 1
        except ParseError:
            outcomes["error"] += 1
    # a sanity check that the fuzzer actually exercised the error path
    assert outcomes["error"] > 0


def test_fuzz_structured_snippets():
    # byte soup rarely reaches deep productions; fuzz token shuffles too
    rng = random.Random(778)
    vocab = ["class", "extends", "method", "attribute", "uses", "overrides",
             "visible", "hidden", "A", "B", "m", "{", "}", ";", ",", ".",
             "//x", "\n"]
    for _ in range(2_000):
        text = " ".join(rng.choice(vocab)
                        for _ in range(rng.randint(0, 25)))
        try:
            parse(text)
        except ParseError:
            pass
