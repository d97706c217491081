"""Canonical CAS+ rendering."""
from itertools import groupby

from .ast import Apply, Atom, Enc, ProtocolSpec, Tuple


def format_term(term) -> str:
    if isinstance(term, Atom):
        return term.name
    if isinstance(term, Tuple):
        return ", ".join(format_term(item) for item in term.items)
    if isinstance(term, Enc):
        return "{" + format_term(term.body) + "}" + term.key
    if isinstance(term, Apply):
        return term.function + "(" + ", ".join(format_term(arg) for arg in term.args) + ")"
    raise TypeError(f"not a CAS+ term: {term!r}")


def format_goal(goal) -> str:
    if goal.infix:
        first, peer, *rest = goal.args
        return f"{first} {goal.kind} {peer} on {', '.join(rest)};"
    text = goal.kind
    if goal.args:
        text += " " + ", ".join(goal.args)
    if goal.audience is not None:
        text += " [" + ", ".join(goal.audience) + "]"
    return text + ";"


def pretty_print(spec: ProtocolSpec) -> str:
    """Emit canonical CAS+ that parses back to a structurally equal spec."""
    lines = [f"protocol {spec.name}", "", "identifiers"]
    for kind, group in groupby(spec.declarations, key=lambda decl: decl.kind):
        lines.append(", ".join(decl.name for decl in group) + f" : {kind};")

    lines += ["", "messages"]
    for index, message in enumerate(spec.messages, start=1):
        lines.append(
            f"{index}. {message.sender} -> {message.receiver} : {format_term(message.payload)}"
        )

    lines += ["", "knowledge"]
    for entry in spec.knowledge:
        lines.append(f"{entry.role} : " + ", ".join(entry.items) + ";")

    if spec.session_instances:
        lines += ["", "session-instances"]
        sessions = [
            "[" + ", ".join(f"{b.role}: {b.instance}" for b in session) + "]"
            for session in spec.session_instances
        ]
        lines.append(", ".join(sessions) + ";")

    if spec.goals:
        lines += ["", "goal"]
        lines.extend(format_goal(goal) for goal in spec.goals)

    return "\n".join(lines) + "\n"
