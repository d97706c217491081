"""Name resolution and lint checks."""
from dataclasses import dataclass
from typing import List, Tuple as TupleT

from ..errors import SemanticError
from ..logger import get_logger
from .ast import KEY_KINDS, Apply, Atom, Enc, ProtocolSpec, SourceSpan, Tuple, walk

logger = get_logger("resolve")


@dataclass(frozen=True)
class LintWarning:
    span: SourceSpan
    message: str

    def __str__(self):
        return f"{self.span.line}:{self.span.column}: warning: {self.message}"

    def render(self, path=None):
        prefix = f"{path}:" if path else ""
        return prefix + str(self)


def resolve(spec: ProtocolSpec, model=None) -> TupleT[ProtocolSpec, List[LintWarning]]:
    """Check names and kinds; return the resolved spec and the lint warnings.

    Raises SemanticError for the first violation in source order. When ``model`` is
    given, applied functions the model does not classify are reported as warnings.
    """
    kinds = check_declarations(spec)
    for message in spec.messages:
        check_message(message, kinds)
    for entry in spec.knowledge:
        require(kinds, entry.role, entry.span, "knowledge role", ("user",))
        for item in entry.items:
            require(kinds, item, entry.span, "knowledge item")
    for session in spec.session_instances:
        for binding in session:
            require(kinds, binding.role, binding.span, "session binding")
    for goal in spec.goals:
        if goal.infix:
            require(kinds, goal.args[0], goal.span, "goal role", ("user",))
            require(kinds, goal.args[1], goal.span, "goal role", ("user",))
            rest = goal.args[2:]
        else:
            rest = goal.args
        for name in tuple(rest) + tuple(goal.audience or ()):
            require(kinds, name, goal.span, "goal argument")

    warnings = lint(spec, model)
    return spec.mark_resolved(), warnings


def check_declarations(spec):
    kinds = {}
    for decl in spec.declarations:
        if decl.name in kinds:
            raise SemanticError(decl.span, f"duplicate declaration of '{decl.name}'")
        kinds[decl.name] = decl.kind
    return kinds


def require(kinds, name, span, what, allowed=None):
    if name not in kinds:
        raise SemanticError(span, f"undeclared identifier '{name}' in {what}")
    if allowed is not None and kinds[name] not in allowed:
        raise SemanticError(
            span,
            f"'{name}' is declared as {kinds[name]} but {what} must be "
            + " or ".join(allowed),
        )


def check_message(message, kinds):
    require(kinds, message.sender, message.sender_span, "message sender", ("user",))
    require(kinds, message.receiver, message.receiver_span, "message receiver", ("user",))
    if message.sender == message.receiver:
        raise SemanticError(
            message.receiver_span,
            f"message {message.index}: '{message.sender}' sends to itself",
        )
    for term in walk(message.payload):
        if isinstance(term, Atom):
            require(kinds, term.name, term.span, "message payload")
        elif isinstance(term, Enc):
            require(kinds, term.key, term.key_span, "key position", KEY_KINDS)
        elif isinstance(term, Apply):
            require(kinds, term.function, term.span, "function application", ("function",))


def lint(spec: ProtocolSpec, model=None) -> List[LintWarning]:
    warnings = []
    endpoints = []
    for message in spec.messages:
        for role, span in (
            (message.sender, message.sender_span),
            (message.receiver, message.receiver_span),
        ):
            if role not in endpoints:
                endpoints.append(role)
                if spec.knowledge_of(role) is None:
                    warnings.append(LintWarning(span, f"role '{role}' has no knowledge entry"))

    known = {
        role: set(spec.knowledge_of(role).items)
        for role in spec.roles()
        if spec.knowledge_of(role) is not None
    }
    for message in spec.messages:
        knowledge = known.setdefault(message.receiver, set())
        for enc in receive(message.payload, knowledge):
            warnings.append(
                LintWarning(
                    enc.key_span,
                    f"message {message.index}: receiver '{message.receiver}' lacks key "
                    f"'{enc.key}' for an encryption it receives",
                )
            )

    if model is not None:
        reported = set()
        for message in spec.messages:
            for term in walk(message.payload):
                if not isinstance(term, Apply) or term.function in reported:
                    continue
                if model.classify_function(term.function) is None:
                    reported.add(term.function)
                    warnings.append(
                        LintWarning(
                            term.span,
                            f"function '{term.function}' has no cost classification "
                            f"in model '{model.name}'; it is priced at 0",
                        )
                    )

    for warning in warnings:
        logger.debug(str(warning))
    return warnings


def receive(payload, knowledge):
    """Add what a receiver can read from ``payload`` to ``knowledge``.

    Returns the outermost encryptions that stay unreadable once everything the message
    reveals has been learned.
    """
    while True:
        before = len(knowledge)
        sealed = _open(payload, knowledge)
        if len(knowledge) == before:
            return sealed


def _open(term, knowledge):
    if isinstance(term, Atom):
        knowledge.add(term.name)
        return []
    if isinstance(term, Tuple):
        sealed = []
        for item in term.items:
            sealed.extend(_open(item, knowledge))
        return sealed
    if isinstance(term, Enc):
        if term.key in knowledge:
            return _open(term.body, knowledge)
        return [term]
    # Function outputs reveal nothing about their arguments.
    return []
