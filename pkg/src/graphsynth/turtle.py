"""Parser and serializer for the Turtle-subset ontology interchange format.

Supported surface: ``@prefix`` and ``@base`` directives, IRIs in angle
brackets, prefixed names, the ``a`` keyword, ``;`` and ``,`` lists,
string/integer/decimal/boolean literals, ``^^`` datatypes, ``@lang`` tags
passed through, and ``#`` comments. Deliberately out: blank-node property
lists, collections, and multiline strings. Every malformed input raises a
TurtleParseError carrying line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from graphsynth import vocab
from graphsynth.errors import TurtleParseError
from graphsynth.quadstore import Quad, QuadStore
from graphsynth.terms import (
    OWL,
    RDF,
    RDFS,
    RDF_LANG_STRING,
    RDF_TYPE,
    XSD,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_INTEGER,
    XSD_STRING,
    Blank,
    Iri,
    Literal,
    Term,
    sort_key,
)

DEFAULT_GRAPH = vocab.DEFAULT_GRAPH

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")

_INTEGER = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL = re.compile(r"^[+-]?[0-9]*\.[0-9]+$")

# Token kinds
_IRIREF = "IRIREF"
_PNAME = "PNAME"
_BLANK = "BLANK"
_STRING = "STRING"
_NUMBER = "NUMBER"
_IDENT = "IDENT"
_PUNCT = "PUNCT"
_DIRECTIVE = "DIRECTIVE"
_LANGTAG = "LANGTAG"
_EOF = "EOF"

_ESCAPES = {"t": "\t", "n": "\n", "r": "\r", '"': '"', "'": "'", "\\": "\\"}
_TOKEN_PATTERNS = [
    (_IRIREF, re.compile(r"<([^<>\"{}|^`\\\x00-\x20]*)>")),
    (_DIRECTIVE, re.compile(r"@(prefix|base)\b")),
    (_LANGTAG, re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")),
    (_BLANK, re.compile(r"_:[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?")),
    (_NUMBER, re.compile(r"[+-]?(?:[0-9]*\.[0-9]+|[0-9]+)")),
    # Prefixed name: prefix part may be empty; local part may be empty but
    # never ends in '.' so the statement terminator stays unambiguous.
    (_PNAME, re.compile(r"(?:[A-Za-z][A-Za-z0-9_.-]*)?:(?:[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?)?")),
    (_IDENT, re.compile(r"[A-Za-z][A-Za-z0-9_-]*")),
    (_PUNCT, re.compile(r"\^\^|[.;,]")),
]


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass
class OntologyDocument:
    """One parsed ontology file: directives plus its statements in document order."""

    base: str | None = None
    prefixes: dict[str, str] = field(default_factory=dict)
    statements: list[Quad] = field(default_factory=list)


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def error(self, message: str) -> TurtleParseError:
        return TurtleParseError(message, self.line, self.column)

    def _advance(self, consumed: str):
        newlines = consumed.count("\n")
        if newlines:
            self.line += newlines
            self.column = len(consumed) - consumed.rfind("\n")
        else:
            self.column += len(consumed)
        self.pos += len(consumed)

    def _skip_trivia(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance(ch)
            elif ch == "#":
                end = self.text.find("\n", self.pos)
                if end == -1:
                    end = len(self.text)
                self._advance(self.text[self.pos:end])
            else:
                return

    def _lex_string(self) -> _Token:
        line, column = self.line, self.column
        quote = self.text[self.pos]
        self._advance(quote)
        out = []
        while True:
            if self.pos >= len(self.text):
                raise TurtleParseError("unterminated string", line, column)
            ch = self.text[self.pos]
            if ch == "\n":
                raise TurtleParseError("newline inside string", self.line, self.column)
            if ch == quote:
                self._advance(ch)
                return _Token(_STRING, "".join(out), line, column)
            if ch == "\\":
                if self.pos + 1 >= len(self.text):
                    raise TurtleParseError("dangling escape", self.line, self.column)
                esc = self.text[self.pos + 1]
                if esc == "u" or esc == "U":
                    width = 4 if esc == "u" else 8
                    hexpart = self.text[self.pos + 2 : self.pos + 2 + width]
                    if len(hexpart) != width or not re.fullmatch(r"[0-9A-Fa-f]+", hexpart):
                        raise TurtleParseError("bad unicode escape", self.line, self.column)
                    out.append(chr(int(hexpart, 16)))
                    self._advance(self.text[self.pos : self.pos + 2 + width])
                elif esc in _ESCAPES:
                    out.append(_ESCAPES[esc])
                    self._advance(self.text[self.pos : self.pos + 2])
                else:
                    raise TurtleParseError(f"unknown escape '\\{esc}'", self.line, self.column)
            else:
                out.append(ch)
                self._advance(ch)

    def next_token(self) -> _Token:
        self._skip_trivia()
        if self.pos >= len(self.text):
            return _Token(_EOF, "", self.line, self.column)
        ch = self.text[self.pos]
        if ch in "\"'":
            return self._lex_string()
        for kind, pattern in _TOKEN_PATTERNS:
            m = pattern.match(self.text, self.pos)
            if m:
                token = _Token(kind, m.group(0), self.line, self.column)
                self._advance(m.group(0))
                return token
        raise self.error(f"unexpected character {ch!r}")


class _Parser:
    def __init__(self, text: str, graph: str):
        self.lexer = _Lexer(text)
        self.graph = graph
        self.doc = OntologyDocument()
        self.token = self.lexer.next_token()

    def _bump(self):
        self.token = self.lexer.next_token()

    def _error(self, message: str) -> TurtleParseError:
        return TurtleParseError(message, self.token.line, self.token.column)

    def _expect_punct(self, text: str):
        if self.token.kind != _PUNCT or self.token.text != text:
            raise self._error(f"expected '{text}', got {self.token.text!r}")
        self._bump()

    def parse(self) -> OntologyDocument:
        while self.token.kind != _EOF:
            if self.token.kind == _DIRECTIVE:
                self._parse_directive()
            else:
                self._parse_triples()
        return self.doc

    def _parse_directive(self):
        which = self.token.text
        self._bump()
        if which == "@prefix":
            if self.token.kind != _PNAME or not self.token.text.endswith(":") or self.token.text.count(":") != 1:
                raise self._error("expected 'prefix:' after @prefix")
            prefix = self.token.text[:-1]
            self._bump()
            if self.token.kind != _IRIREF:
                raise self._error("expected <iri> in @prefix directive")
            self.doc.prefixes[prefix] = self._resolve_iriref(self.token.text)
            self._bump()
        else:
            if self.token.kind != _IRIREF:
                raise self._error("expected <iri> in @base directive")
            self.doc.base = self._resolve_iriref(self.token.text)
            self._bump()
        self._expect_punct(".")

    def _resolve_iriref(self, raw: str) -> str:
        value = raw[1:-1]
        if _SCHEME.match(value):
            return value
        if self.doc.base is None:
            raise self._error(f"relative IRI <{value}> with no @base in scope")
        return self.doc.base + value

    def _parse_term(self, position: str) -> Term:
        token = self.token
        if token.kind == _IRIREF:
            self._bump()
            return Iri(self._resolve_iriref(token.text))
        if token.kind == _PNAME:
            prefix, _, local = token.text.partition(":")
            namespace = self.doc.prefixes.get(prefix)
            if namespace is None:
                raise self._error(f"undeclared prefix '{prefix}:'")
            self._bump()
            return Iri(namespace + local)
        if token.kind == _BLANK:
            if position == "predicate":
                raise self._error("blank node not allowed as predicate")
            self._bump()
            return Blank(token.text[2:])
        if position == "object":
            if token.kind == _STRING:
                self._bump()
                return self._finish_literal(token.text)
            if token.kind == _NUMBER:
                self._bump()
                datatype = XSD_DECIMAL if "." in token.text else XSD_INTEGER
                return Literal(token.text, datatype)
            if token.kind == _IDENT and token.text in ("true", "false"):
                self._bump()
                return Literal(token.text, XSD_BOOLEAN)
        raise self._error(f"expected {position} term, got {token.text!r}")

    def _finish_literal(self, lexical: str) -> Literal:
        if self.token.kind == _LANGTAG:
            tag = self.token.text[1:]
            self._bump()
            return Literal(lexical, RDF_LANG_STRING, tag)
        if self.token.kind == _PUNCT and self.token.text == "^^":
            self._bump()
            datatype = self._parse_term("datatype")
            if not isinstance(datatype, Iri):
                raise self._error("datatype must be an IRI")
            return Literal(lexical, datatype.value)
        return Literal(lexical, XSD_STRING)

    def _parse_verb(self) -> Iri:
        if self.token.kind == _IDENT and self.token.text == "a":
            self._bump()
            return Iri(RDF_TYPE)
        term = self._parse_term("predicate")
        if not isinstance(term, Iri):
            raise self._error("predicate must be an IRI")
        return term

    def _parse_triples(self):
        subject = self._parse_term("subject")
        while True:
            verb = self._parse_verb()
            while True:
                obj = self._parse_term("object")
                self.doc.statements.append(Quad(subject, verb, obj, self.graph))
                if self.token.kind == _PUNCT and self.token.text == ",":
                    self._bump()
                    continue
                break
            if self.token.kind == _PUNCT and self.token.text == ";":
                self._bump()
                # A dangling ';' before '.' is tolerated, as in full Turtle.
                if self.token.kind == _PUNCT and self.token.text == ".":
                    break
                continue
            break
        self._expect_punct(".")


def parse_document(text: str, graph: str = DEFAULT_GRAPH) -> OntologyDocument:
    """Parse subset-Turtle text into quads destined for `graph`.

    Duplicate triples are preserved here; the store deduplicates on insert.
    """
    if not isinstance(text, str):
        raise TurtleParseError("input must be text", 1, 1)
    return _Parser(text, graph).parse()


# Prefixes the serializer will try to compact against, in emission order.
WELL_KNOWN_PREFIXES: tuple[tuple[str, str], ...] = (
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("owl", OWL),
    ("xsd", XSD),
    ("gs", vocab.GS),
    ("kb", vocab.KB),
    ("onto", vocab.ONTOLOGY),
    ("pla", vocab.PLA),
    ("plr", vocab.PLR),
)

_PN_LOCAL_OK = re.compile(r"^(?:[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?)?$")
_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _compact(iri: str) -> str:
    for prefix, namespace in WELL_KNOWN_PREFIXES:
        if iri.startswith(namespace):
            local = iri[len(namespace):]
            if _PN_LOCAL_OK.match(local):
                return f"{prefix}:{local}"
    return f"<{iri}>"


def _quote(lexical: str) -> str:
    return '"' + "".join(_STRING_ESCAPES.get(ch, ch) for ch in lexical) + '"'


def _format_term(term: Term) -> str:
    if isinstance(term, Iri):
        return _compact(term.value)
    if isinstance(term, Blank):
        return f"_:{term.id}"
    if term.language_tag is not None:
        return f"{_quote(term.lexical)}@{term.language_tag}"
    if term.datatype == XSD_STRING:
        return _quote(term.lexical)
    if term.datatype == XSD_INTEGER and _INTEGER.match(term.lexical):
        return term.lexical
    if term.datatype == XSD_DECIMAL and _DECIMAL.match(term.lexical):
        return term.lexical
    if term.datatype == XSD_BOOLEAN and term.lexical in ("true", "false"):
        return term.lexical
    return f"{_quote(term.lexical)}^^{_compact(term.datatype)}"


def serialize(store: QuadStore, graph: str) -> str:
    """Write one graph as subset-Turtle; parse(serialize(g)) yields g's quad set."""
    lines = [f"@prefix {prefix}: <{namespace}> ." for prefix, namespace in WELL_KNOWN_PREFIXES]
    lines.append("")
    quads = sorted(
        store.quads(graph),
        key=lambda q: (sort_key(q.subject), sort_key(q.predicate), sort_key(q.object)),
    )
    for quad in quads:
        subject = _format_term(quad.subject)
        predicate = "a" if quad.predicate.value == RDF_TYPE else _format_term(quad.predicate)
        lines.append(f"{subject} {predicate} {_format_term(quad.object)} .")
    return "\n".join(lines) + "\n"
