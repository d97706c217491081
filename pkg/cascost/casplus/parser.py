"""Recursive descent parser for the CAS+ subset.

The sections must appear in this order::

    protocol <name>
    identifiers        A, B : user; ...
    messages           1. A -> B : payload
    knowledge          A : A, B, Kab; ...
    session-instances  [A: alice, B: bob];      (optional)
    goal               secrecy_of Kab [A, B];   (optional)
"""
from typing import Sequence, Union

from ..errors import MissingSection, ParseError, UsageError
from .ast import (
    DECLARATION_KINDS,
    GOAL_VERBS,
    Apply,
    Atom,
    Declaration,
    Enc,
    GoalRecord,
    KnowledgeEntry,
    Message,
    ProtocolSpec,
    SessionBinding,
    SourceSpan,
    flatten,
    make_tuple,
)
from .lexer import TOKEN_NAMES, Token, tokenize

SOURCE_SUFFIXES = (".cas", ".cas+")
MAX_NESTING = 64


class Parser:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.pos = 0
        self.depth = 0

    # Token stream helpers.

    @property
    def nt(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def peek(self, kind, value=None):
        token = self.nt
        return token is not None and token.kind == kind and (value is None or token.value == value)

    def peek_kw(self, value):
        return self.peek("KEYWORD", value)

    def advance(self):
        token = self.nt
        self.pos += 1
        return token

    def eof_span(self):
        if not self.tokens:
            return SourceSpan(1, 1, 0)
        last = self.tokens[-1].span
        return SourceSpan(last.line, last.column + last.length, 0)

    def found(self):
        return self.nt.describe() if self.nt is not None else "end of input"

    def error(self, expected):
        span = self.nt.span if self.nt is not None else self.eof_span()
        return ParseError(span, expected, self.found())

    def match(self, kind, value=None):
        if not self.peek(kind, value):
            expected = repr(value) if value is not None else TOKEN_NAMES[kind]
            raise self.error(expected)
        return self.advance()

    def match_section(self, name):
        if self.peek_kw(name):
            return self.advance()
        if self.nt is None or self.nt.kind == "KEYWORD":
            span = self.nt.span if self.nt is not None else self.eof_span()
            raise MissingSection(span, name, self.found())
        raise self.error(f"keyword '{name}'")

    def ident_list(self):
        names = [self.match("IDENT")]
        while self.peek("COMMA"):
            self.advance()
            names.append(self.match("IDENT"))
        return names

    # Sections.

    def parse_protocol(self) -> ProtocolSpec:
        self.match_section("protocol")
        if not self.peek("NAME"):
            raise self.error("protocol name")
        name = self.advance().value

        self.match_section("identifiers")
        declarations = self.parse_declarations()
        self.match_section("messages")
        messages = self.parse_messages()
        self.match_section("knowledge")
        knowledge = self.parse_knowledge()

        sessions = ()
        if self.peek_kw("session-instances"):
            self.advance()
            sessions = self.parse_sessions()
        goals = ()
        if self.peek_kw("goal"):
            self.advance()
            goals = self.parse_goals()

        if self.nt is not None:
            raise self.error("end of input")
        return ProtocolSpec(
            name=name,
            declarations=tuple(declarations),
            messages=tuple(messages),
            knowledge=tuple(knowledge),
            session_instances=tuple(sessions),
            goals=tuple(goals),
        )

    def parse_declarations(self):
        declarations = []
        while True:
            names = self.ident_list()
            self.match("COLON")
            kind = self.nt
            if kind is None or kind.kind != "IDENT" or kind.value not in DECLARATION_KINDS:
                raise self.error("declaration kind (" + ", ".join(DECLARATION_KINDS) + ")")
            self.advance()
            self.match("SEMI")
            declarations.extend(Declaration(tok.value, kind.value, tok.span) for tok in names)
            if not self.peek("IDENT"):
                return declarations

    def parse_messages(self):
        messages = []
        while True:
            index = len(messages) + 1
            number = self.nt
            if number is None or number.kind != "INT" or number.value.lstrip("0") != str(index):
                raise self.error(f"message number {index}")
            self.advance()
            self.match("DOT")
            sender = self.match("IDENT")
            self.match("ARROW")
            receiver = self.match("IDENT")
            self.match("COLON")
            payload = self.parse_term_list()
            messages.append(
                Message(
                    index,
                    sender.value,
                    receiver.value,
                    payload,
                    number.span,
                    sender.span,
                    receiver.span,
                )
            )
            if self.nt is None or self.nt.kind == "KEYWORD":
                return messages
            if not self.peek("INT"):
                raise self.error(f"',' or message number {index + 1}")

    def parse_knowledge(self):
        entries = []
        while True:
            role = self.match("IDENT")
            self.match("COLON")
            items = self.ident_list()
            self.match("SEMI")
            entries.append(KnowledgeEntry(role.value, tuple(t.value for t in items), role.span))
            if not self.peek("IDENT"):
                return entries

    def parse_sessions(self):
        sessions = [self.parse_session()]
        while self.peek("COMMA"):
            self.advance()
            sessions.append(self.parse_session())
        self.match("SEMI")
        return sessions

    def parse_session(self):
        self.match("LBRACKET")
        bindings = []
        while True:
            role = self.match("IDENT")
            self.match("COLON")
            instance = self.match("IDENT")
            bindings.append(SessionBinding(role.value, instance.value, role.span))
            if not self.peek("COMMA"):
                break
            self.advance()
        self.match("RBRACKET")
        return tuple(bindings)

    def parse_goals(self):
        goals = [self.parse_goal()]
        while self.peek("IDENT"):
            goals.append(self.parse_goal())
        return goals

    def parse_goal(self):
        # Verbs are infix only: `A authenticates B on X;`.
        if self.nt is not None and self.nt.kind == "IDENT" and self.nt.value in GOAL_VERBS:
            raise self.error("goal role before '" + self.nt.value + "'")
        first = self.match("IDENT")
        if self.nt is not None and self.nt.kind == "IDENT" and self.nt.value in GOAL_VERBS:
            verb = self.advance().value
            peer = self.match("IDENT").value
            self.match("IDENT", "on")
            args = [first.value, peer] + [t.value for t in self.ident_list()]
            self.match("SEMI")
            return GoalRecord(verb, tuple(args), None, first.span)

        args = []
        if self.peek("IDENT"):
            args = [t.value for t in self.ident_list()]
        audience = None
        if self.peek("LBRACKET"):
            self.advance()
            audience = []
            if self.peek("IDENT"):
                audience = [t.value for t in self.ident_list()]
            self.match("RBRACKET")
            audience = tuple(audience)
        self.match("SEMI")
        return GoalRecord(first.value, tuple(args), audience, first.span)

    # Terms. Application binds tighter than encryption, encryption tighter than ','.

    def parse_term_list(self):
        start = self.nt
        items = self.parse_items()
        return make_tuple(items, start.span)

    def parse_items(self):
        items = [self.parse_term()]
        while self.peek("COMMA"):
            self.advance()
            items.append(self.parse_term())
        return items

    def parse_term(self):
        token = self.nt
        if token is None:
            raise self.error("term")
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise ParseError(token.span, f"at most {MAX_NESTING} nested terms", token.describe())
        try:
            if token.kind == "LBRACE":
                self.advance()
                body = self.parse_term_list()
                self.match("RBRACE")
                key = self.nt
                if key is None or key.kind != "IDENT":
                    raise self.error("key identifier after '}'")
                self.advance()
                return Enc(body, key.value, token.span, key.span)
            if token.kind == "LPAREN":
                self.advance()
                term = self.parse_term_list()
                self.match("RPAREN")
                return term
            if token.kind == "IDENT":
                self.advance()
                if self.peek("LPAREN"):
                    self.advance()
                    args = flatten(self.parse_items())
                    self.match("RPAREN")
                    return Apply(token.value, args, token.span)
                return Atom(token.value, token.span)
            raise self.error("term")
        finally:
            self.depth -= 1


def parse(tokens: Sequence[Token]) -> ProtocolSpec:
    """Parse a token list into an unresolved ProtocolSpec."""
    return Parser(tokens).parse_protocol()


def parse_source(source: Union[str, bytes]) -> ProtocolSpec:
    return parse(tokenize(source))


def is_source_file(path) -> bool:
    return str(path).lower().endswith(SOURCE_SUFFIXES)


def parse_file(path) -> ProtocolSpec:
    """Read and parse a ``.cas`` / ``.cas+`` file."""
    if not is_source_file(path):
        raise UsageError(f"{path}: expected a .cas or .cas+ file")
    with open(path, "rb") as f:
        data = f.read()
    return parse_source(data)
