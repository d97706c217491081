"""CAS+ tokenizer."""
import re
from dataclasses import dataclass
from typing import List, Union

from ..errors import LexError
from .ast import SourceSpan

KEYWORDS = frozenset(
    ["protocol", "identifiers", "messages", "knowledge", "session-instances", "goal"]
)

PUNCTUATION = {
    ".": "DOT",
    ":": "COLON",
    ";": "SEMI",
    ",": "COMMA",
    "{": "LBRACE",
    "}": "RBRACE",
    "(": "LPAREN",
    ")": "RPAREN",
    "[": "LBRACKET",
    "]": "RBRACKET",
}

# Human readable token names for diagnostics.
TOKEN_NAMES = {
    "IDENT": "identifier",
    "INT": "integer",
    "NAME": "protocol name",
    "KEYWORD": "keyword",
    "ARROW": "'->'",
    **{kind: repr(char) for char, kind in PUNCTUATION.items()},
}

BLANKS = " \t\r\f\v"
IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
INT_RE = re.compile(r"[0-9]+")
SESSION_INSTANCES_RE = re.compile(r"session[ \t]*-[ \t]*instances(?![A-Za-z0-9_])")
NAME_STOP_RE = re.compile(r"(?<![A-Za-z0-9_])identifiers(?![A-Za-z0-9_])")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    span: SourceSpan

    def describe(self):
        if self.kind in ("IDENT", "INT", "NAME"):
            return f"{TOKEN_NAMES[self.kind]} '{self.value}'"
        if self.kind == "KEYWORD":
            return f"keyword '{self.value}'"
        return TOKEN_NAMES[self.kind]


def decode(source: Union[str, bytes]) -> str:
    """Decode UTF-8 input and normalize line endings."""
    if isinstance(source, (bytes, bytearray)):
        try:
            source = bytes(source).decode("utf-8")
        except UnicodeDecodeError as err:
            head = bytes(source[: err.start])
            line = head.count(b"\n") + 1
            column = err.start - (head.rfind(b"\n") + 1) + 1
            raise LexError(SourceSpan(line, column, 1), source[err.start : err.start + 1])
    if source.startswith("\ufeff"):
        source = source[1:]
    return source.replace("\r\n", "\n")


def tokenize(source: Union[str, bytes]) -> List[Token]:
    """Split CAS+ source into tokens. Lines starting with '%' are comments."""
    text = decode(source)
    tokens = []
    for line_no, line in enumerate(text.split("\n"), start=1):
        if line.lstrip(BLANKS).startswith("%"):
            continue
        tokens.extend(_tokenize_line(line, line_no))
    return tokens


def _tokenize_line(line, line_no):
    pos = 0
    size = len(line)
    while pos < size:
        char = line[pos]
        column = pos + 1
        if char in BLANKS:
            pos += 1
            continue

        if char.isascii() and char.isalpha():
            match = SESSION_INSTANCES_RE.match(line, pos)
            if match is not None:
                yield Token(
                    "KEYWORD", "session-instances", SourceSpan(line_no, column, match.end() - pos)
                )
                pos = match.end()
                continue
            match = IDENT_RE.match(line, pos)
            word = match.group(0)
            kind = "KEYWORD" if word in KEYWORDS else "IDENT"
            yield Token(kind, word, SourceSpan(line_no, column, len(word)))
            pos = match.end()
            if word == "protocol":
                name_token, pos = _protocol_name(line, line_no, pos)
                if name_token is not None:
                    yield name_token
            continue

        if char.isascii() and char.isdigit():
            match = INT_RE.match(line, pos)
            yield Token("INT", match.group(0), SourceSpan(line_no, column, len(match.group(0))))
            pos = match.end()
            continue

        if char == "-" and line.startswith("->", pos):
            yield Token("ARROW", "->", SourceSpan(line_no, column, 2))
            pos += 2
            continue

        if char in PUNCTUATION:
            yield Token(PUNCTUATION[char], char, SourceSpan(line_no, column, 1))
            pos += 1
            continue

        raise LexError(SourceSpan(line_no, column, 1), char)


def _protocol_name(line, line_no, pos):
    """The protocol name runs to end of line, or up to an 'identifiers' keyword."""
    stop = NAME_STOP_RE.search(line, pos)
    end = stop.start() if stop is not None else len(line)
    raw = line[pos:end]
    name = raw.strip(BLANKS)
    if not name:
        return None, end
    start = pos + (len(raw) - len(raw.lstrip(BLANKS)))
    return Token("NAME", name, SourceSpan(line_no, start + 1, len(name))), end
