"""CAS+ front end: tokenizer, parser, resolver and printer."""
from .ast import (
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
    Tuple,
    walk,
)
from .lexer import Token, tokenize
from .parser import is_source_file, parse, parse_file, parse_source
from .printer import format_term, pretty_print
from .resolve import LintWarning, resolve
