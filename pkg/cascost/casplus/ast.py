"""CAS+ syntax tree.

Source spans are excluded from equality so that two trees parsed from differently
formatted sources compare equal when their structure is the same.
"""
from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, Optional, Tuple as TupleT, Union

DECLARATION_KINDS = (
    "user",
    "number",
    "text",
    "symmetric_key",
    "public_key",
    "function",
)
KEY_KINDS = ("symmetric_key", "public_key")
GOAL_VERBS = ("authenticates", "weakly_authenticates")


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 0

    def __post_init__(self):
        assert self.line >= 1 and self.column >= 1, "spans are 1-based"
        assert self.length >= 0

    def __str__(self):
        return f"{self.line}:{self.column}"


NO_SPAN = SourceSpan(1, 1, 0)


@dataclass(frozen=True)
class Declaration:
    name: str
    kind: str
    span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class Atom:
    name: str
    span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class Tuple:
    items: TupleT["Term", ...]
    span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)

    def __post_init__(self):
        assert len(self.items) >= 2, "a tuple has at least two items"
        assert not any(isinstance(item, Tuple) for item in self.items), "tuples are flat"


@dataclass(frozen=True)
class Enc:
    body: "Term"
    key: str
    span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)
    key_span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class Apply:
    function: str
    args: TupleT["Term", ...]
    span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)

    def __post_init__(self):
        assert len(self.args) >= 1, "an application has at least one argument"


Term = Union[Atom, Tuple, Enc, Apply]


def flatten(items):
    """Splice the members of tuple items into the surrounding list."""
    flat = []
    for item in items:
        if isinstance(item, Tuple):
            flat.extend(item.items)
        else:
            flat.append(item)
    return tuple(flat)


def make_tuple(items, span=NO_SPAN):
    """Build a term from a comma list, flattening nested lists."""
    flat = flatten(items)
    if len(flat) == 1:
        return flat[0]
    return Tuple(tuple(flat), span)


def walk(term) -> Iterator[Term]:
    """Pre-order traversal over every sub-term, the term itself included."""
    yield term
    if isinstance(term, Tuple):
        for item in term.items:
            yield from walk(item)
    elif isinstance(term, Enc):
        yield from walk(term.body)
    elif isinstance(term, Apply):
        for arg in term.args:
            yield from walk(arg)


@dataclass(frozen=True)
class Message:
    index: int
    sender: str
    receiver: str
    payload: Term
    span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)
    sender_span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)
    receiver_span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class KnowledgeEntry:
    role: str
    items: TupleT[str, ...]
    span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class SessionBinding:
    role: str
    instance: str
    span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class GoalRecord:
    """A goal kept verbatim; goals carry no cost semantics.

    ``audience`` is None when the goal has no bracket list and an empty tuple for ``[]``.
    """

    kind: str
    args: TupleT[str, ...]
    audience: Optional[TupleT[str, ...]] = None
    span: SourceSpan = field(default=NO_SPAN, compare=False, repr=False)

    @property
    def infix(self):
        """`A verb B on X, ...`: two roles and at least one goal argument."""
        return self.kind in GOAL_VERBS and len(self.args) >= 3


@dataclass(frozen=True)
class ProtocolSpec:
    name: str
    declarations: TupleT[Declaration, ...]
    messages: TupleT[Message, ...]
    knowledge: TupleT[KnowledgeEntry, ...] = ()
    session_instances: TupleT[TupleT[SessionBinding, ...], ...] = ()
    goals: TupleT[GoalRecord, ...] = ()
    resolved: bool = field(default=False, compare=False)

    def declaration(self, name) -> Optional[Declaration]:
        for decl in self.declarations:
            if decl.name == name:
                return decl
        return None

    def kind_of(self, name) -> Optional[str]:
        decl = self.declaration(name)
        return decl.kind if decl is not None else None

    def kinds(self) -> Dict[str, str]:
        return {decl.name: decl.kind for decl in self.declarations}

    def roles(self):
        """Declared users in declaration order."""
        return [decl.name for decl in self.declarations if decl.kind == "user"]

    def knowledge_of(self, role):
        for entry in self.knowledge:
            if entry.role == role:
                return entry
        return None

    def mark_resolved(self):
        return replace(self, resolved=True)
