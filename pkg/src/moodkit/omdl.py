"""OMDL: a small declarative language for describing class models.

Grammar (EBNF):

    document   := { class_decl } ;
    class_decl := "class" IDENT [ "extends" ident_list ] "{" { member } "}" ;
    ident_list := IDENT { "," IDENT } ;
    member     := method_decl | attr_decl | uses_decl ;
    method_decl:= [ visibility ] "method" IDENT [ "overrides" IDENT "." IDENT ] ";" ;
    attr_decl  := [ visibility ] "attribute" IDENT ";" ;
    uses_decl  := "uses" ident_list ";" ;
    visibility := "visible" | "hidden" ;

Identifiers are ASCII ``[A-Za-z_][A-Za-z0-9_]*``; ``//`` starts a comment
running to end of line; input is UTF-8.  Omitted visibility means visible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .class_model import (
    AttributeDecl, ClassDecl, ClassModel, MethodDecl, MethodKind, Visibility,
)
from .errors import MoodkitError

KEYWORDS = frozenset(
    {"class", "extends", "method", "attribute", "uses", "overrides",
     "visible", "hidden"})

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>//[^\n]*)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<punct>[{};,.])
    """,
    re.VERBOSE,
)


class ParseError(MoodkitError):
    """Raised at the first offending token; carries position and expectation."""

    code = "PARSE"

    def __init__(self, position: tuple[int, int], expected: str, found: str):
        self.position = position
        self.expected = expected
        self.found = found
        line, col = position
        super().__init__(f"{line}:{col}: expected {expected}, found {found}")


@dataclass(frozen=True)
class OmdlDocument:
    """A parsed model plus the source position of each declaration.

    ``spans`` maps ("class", name), ("method", class, name) and
    ("attribute", class, name) keys to (line, column) of the declaring token.
    """

    model: ClassModel
    spans: dict


@dataclass(frozen=True)
class _Token:
    kind: str        # "ident", "keyword", "punct", "eof"
    text: str
    line: int
    col: int

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        return repr(self.text)


def _lex(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError((line, col), "a token", repr(source[pos]))
        text = m.group(0)
        if m.lastgroup == "ident":
            kind = "keyword" if text in KEYWORDS else "ident"
            tokens.append(_Token(kind, text, line, col))
        elif m.lastgroup == "punct":
            tokens.append(_Token("punct", text, line, col))
        # Whitespace and comments advance position only.
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._i = 0

    @property
    def cur(self) -> _Token:
        return self._tokens[self._i]

    def advance(self) -> _Token:
        tok = self.cur
        if tok.kind != "eof":
            self._i += 1
        return tok

    def fail(self, expected: str):
        tok = self.cur
        raise ParseError((tok.line, tok.col), expected, tok.describe())

    def expect_keyword(self, word: str) -> _Token:
        if self.cur.kind == "keyword" and self.cur.text == word:
            return self.advance()
        self.fail(f"'{word}'")

    def expect_punct(self, ch: str) -> _Token:
        if self.cur.kind == "punct" and self.cur.text == ch:
            return self.advance()
        self.fail(f"'{ch}'")

    def expect_ident(self) -> _Token:
        if self.cur.kind == "ident":
            return self.advance()
        self.fail("identifier")

    def at_keyword(self, *words: str) -> bool:
        return self.cur.kind == "keyword" and self.cur.text in words

    def ident_list(self) -> list[str]:
        names = [self.expect_ident().text]
        while self.cur.kind == "punct" and self.cur.text == ",":
            self.advance()
            names.append(self.expect_ident().text)
        return names

    def document(self) -> OmdlDocument:
        classes: list[ClassDecl] = []
        spans: dict = {}
        declared: set[str] = set()
        while self.cur.kind != "eof":
            if not self.at_keyword("class"):
                self.fail("'class'")
            self.advance()
            name_tok = self.expect_ident()
            if name_tok.text in declared:
                raise ParseError(
                    (name_tok.line, name_tok.col),
                    "a class name not declared before",
                    repr(name_tok.text))
            declared.add(name_tok.text)
            spans[("class", name_tok.text)] = (name_tok.line, name_tok.col)
            parents: list[str] = []
            if self.at_keyword("extends"):
                self.advance()
                parents = self.ident_list()
            self.expect_punct("{")
            methods: list[MethodDecl] = []
            attributes: list[AttributeDecl] = []
            uses: list[str] = []
            while not (self.cur.kind == "punct" and self.cur.text == "}"):
                self._member(name_tok.text, methods, attributes, uses, spans)
            self.expect_punct("}")
            classes.append(ClassDecl(
                name=name_tok.text, parents=tuple(parents),
                methods=tuple(methods), attributes=tuple(attributes),
                uses=tuple(uses)))
        return OmdlDocument(model=ClassModel(classes), spans=spans)

    def _member(self, cls: str, methods: list, attributes: list,
                uses: list, spans: dict):
        visibility = Visibility.VISIBLE
        if self.at_keyword("visible", "hidden"):
            visibility = Visibility(self.advance().text)
            if not self.at_keyword("method", "attribute"):
                self.fail("'method' or 'attribute'")
        if self.at_keyword("method"):
            self.advance()
            name_tok = self.expect_ident()
            kind = MethodKind.NEW
            target: Optional[tuple[str, str]] = None
            if self.at_keyword("overrides"):
                self.advance()
                target_cls = self.expect_ident().text
                self.expect_punct(".")
                target_meth = self.expect_ident().text
                kind = MethodKind.OVERRIDE
                target = (target_cls, target_meth)
            self.expect_punct(";")
            methods.append(MethodDecl(
                name=name_tok.text, visibility=visibility, kind=kind,
                override_target=target))
            spans[("method", cls, name_tok.text)] = (name_tok.line, name_tok.col)
        elif self.at_keyword("attribute"):
            self.advance()
            name_tok = self.expect_ident()
            self.expect_punct(";")
            attributes.append(AttributeDecl(name=name_tok.text, visibility=visibility))
            spans[("attribute", cls, name_tok.text)] = (name_tok.line, name_tok.col)
        elif self.at_keyword("uses"):
            self.advance()
            uses.extend(self.ident_list())
            self.expect_punct(";")
        else:
            self.fail("'method', 'attribute', 'uses', or '}'")


def parse(source: Union[str, bytes]) -> OmdlDocument:
    """Parse OMDL source into a document; ParseError on the first bad token.

    No partial model is ever returned.  Bytes are decoded as UTF-8; a
    decoding failure is reported as a ParseError at the offending line.
    """
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = source[:exc.start]
            line = prefix.count(b"\n") + 1
            col = exc.start - prefix.rfind(b"\n")
            raise ParseError((line, col), "valid UTF-8",
                             f"byte 0x{source[exc.start]:02x}") from None
    return _Parser(_lex(source)).document()


def render(model: ClassModel) -> str:
    """Deterministic textual form of a model; parse(render(m)).model == m.

    Members are emitted methods first, then attributes, then one ``uses``
    line, in declaration order; default visibility is left implicit.
    """
    out: list[str] = []
    for decl in model:
        header = f"class {decl.name}"
        if decl.parents:
            header += " extends " + ", ".join(decl.parents)
        if not (decl.methods or decl.attributes or decl.uses):
            out.append(header + " { }")
            continue
        out.append(header + " {")
        for m in decl.methods:
            parts = []
            if m.visibility is Visibility.HIDDEN:
                parts.append("hidden")
            parts.append(f"method {m.name}")
            if m.override_target is not None:
                parts.append(f"overrides {m.override_target[0]}.{m.override_target[1]}")
            out.append("    " + " ".join(parts) + ";")
        for a in decl.attributes:
            prefix = "hidden " if a.visibility is Visibility.HIDDEN else ""
            out.append(f"    {prefix}attribute {a.name};")
        if decl.uses:
            out.append("    uses " + ", ".join(decl.uses) + ";")
        out.append("}")
    return "\n".join(out) + "\n" if out else ""
