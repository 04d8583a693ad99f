"""Textual formats for compiled programs.

Two exports: a native canonical text (`:-` and `not`, one rule per line)
and a Prolog-compatible text with per-predicate table directives and
`tnot(...)` negation, loadable by engines with well-founded negation.
`load_compiled` is the restricted reader for exactly these two dialects;
re-importing an export yields a program with the same well-founded model
as the native pipeline.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .syntax import Atom, Term, const, var
from .transform import DoubledProgram, DRule, Provenance, SymbolTable

_IDENT = r"[a-z][A-Za-z0-9_]*"
_TABLE_RE = re.compile(rf"^:-\s*table\s+({_IDENT})/(\d+)\s*\.\s*$")


def export_native(program: DoubledProgram) -> str:
    """One rule per line, in compilation order."""
    return "\n".join(rule.render() for rule in program.rules) + (
        "\n" if program.rules else ""
    )


def _prolog_term(t: Term) -> str:
    if t.is_var:
        return t.name
    if re.fullmatch(_IDENT, t.name):
        return t.name
    escaped = t.name.replace("\\", "\\\\").replace("'", "\\'")
    return f"'{escaped}'"


def _prolog_atom(a: Atom) -> str:
    if not a.args:
        return a.predicate
    return f"{a.predicate}({','.join(_prolog_term(t) for t in a.args)})"


def export_prolog(program: DoubledProgram) -> str:
    """Table directives for every level of every predicate, then the rules
    with tabled negation. Byte-stable: directives sorted, rules in
    compilation order."""
    directives = set()
    for info in program.symbols.preds.values():
        for level in ("a", "d", "n"):
            directives.add((level + info.name, info.arity))
    for rule in program.rules:
        for atom in (rule.head, *rule.positive, *rule.negative):
            directives.add((atom.predicate, atom.arity))
    lines = [f":- table {name}/{arity}." for name, arity in sorted(directives)]
    for rule in program.rules:
        head = _prolog_atom(rule.head)
        if rule.is_fact:
            lines.append(f"{head}.")
        else:
            body = [_prolog_atom(a) for a in rule.positive]
            body += [f"tnot({_prolog_atom(a)})" for a in rule.negative]
            lines.append(f"{head}:- {','.join(body)}.")
    return "\n".join(lines) + "\n"


_LINE_ATOM_RE = re.compile(
    rf"""({_IDENT})            # predicate
         (?:\(([^()]*)\))?     # optional argument list
         \s*\Z""",
    re.VERBOSE,
)


def _parse_term(text: str, lineno: int) -> Term:
    text = text.strip()
    if not text:
        raise ParseError("empty argument", lineno, 1)
    if text[0] == "'" and text[-1] == "'" and len(text) >= 2:
        return const(text[1:-1].replace("\\'", "'").replace("\\\\", "\\"))
    if text[0] == '"' and text[-1] == '"' and len(text) >= 2:
        return const(text[1:-1].replace('\\"', '"').replace("\\\\", "\\"))
    if re.fullmatch(_IDENT, text):
        return const(text)
    if re.fullmatch(r"[A-Z][A-Za-z0-9_]*", text):
        return var(text)
    raise ParseError(f"cannot read term {text!r}", lineno, 1)


def _parse_atom(text: str, lineno: int) -> Atom:
    m = _LINE_ATOM_RE.match(text.strip())
    if m is None:
        raise ParseError(f"cannot read atom {text!r}", lineno, 1)
    pred, argtext = m.group(1), m.group(2)
    args: tuple[Term, ...] = ()
    if argtext is not None:
        args = tuple(_parse_term(part, lineno) for part in _split_args(argtext, lineno))
    return Atom(pred, args)


def _split_args(text: str, lineno: int) -> list[str]:
    parts, depth, current, quote = [], 0, [], None
    for ch in text:
        if quote:
            current.append(ch)
            if ch == quote and (len(current) < 2 or current[-2] != "\\"):
                quote = None
        elif ch in "'\"":
            quote = ch
            current.append(ch)
        elif ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current or parts:
        parts.append("".join(current))
    if quote:
        raise ParseError("unterminated quote in argument list", lineno, 1)
    return parts


def _split_body(text: str) -> list[str]:
    """Split a rule body on top-level commas (arguments stay intact)."""
    parts, depth, current, quote = [], 0, [], None
    for ch in text:
        if quote:
            current.append(ch)
            if ch == quote and (len(current) < 2 or current[-2] != "\\"):
                quote = None
            continue
        if ch in "'\"":
            quote = ch
            current.append(ch)
        elif ch == "(":
            depth += 1
            current.append(ch)
        elif ch == ")":
            depth -= 1
            current.append(ch)
        elif ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        parts.append("".join(current))
    return parts


def load_compiled(text: str) -> DoubledProgram:
    """Restricted reader for the two export dialects.

    Reconstructs the symbol table by stripping level prefixes: a name is a
    source predicate when its a- or d-level form occurs; remaining n-level
    names attach to known sources. Anything unrecognizable is an error.
    """
    rules: list[DRule] = []
    provenance: list[Provenance] = []
    declared: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        m = _TABLE_RE.match(line)
        if m:
            declared[m.group(1)] = int(m.group(2))
            continue
        if not line.endswith("."):
            raise ParseError("rule must end with '.'", lineno, len(raw))
        line = line[:-1]
        if ":-" in line:
            head_text, body_text = line.split(":-", 1)
            head = _parse_atom(head_text, lineno)
            positive: list[Atom] = []
            negative: list[Atom] = []
            for part in _split_body(body_text):
                part = part.strip()
                if part.startswith("tnot(") and part.endswith(")"):
                    negative.append(_parse_atom(part[5:-1], lineno))
                elif part.startswith("not "):
                    negative.append(_parse_atom(part[4:], lineno))
                else:
                    positive.append(_parse_atom(part, lineno))
            rules.append(DRule(head, tuple(positive), tuple(negative)))
        else:
            rules.append(DRule(_parse_atom(line, lineno)))
        provenance.append(Provenance("rule", raw.strip(), lineno))

    occurring: dict[str, int] = dict(declared)
    constants: dict[str, None] = {}
    for rule in rules:
        for atom in (rule.head, *rule.positive, *rule.negative):
            occurring.setdefault(atom.predicate, atom.arity)
            for t in atom.args:
                if not t.is_var:
                    constants.setdefault(t.name)

    symbols = SymbolTable()
    for name, arity in occurring.items():
        for level in ("a", "d"):
            if name.startswith(level) and len(name) > 1:
                symbols.register(name[1:], arity)
    unknown = []
    for name, arity in occurring.items():
        if name[:1] in ("a", "d") and name[1:] in symbols:
            continue
        if name[:1] == "n" and name[1:] in symbols:
            continue
        unknown.append(f"{name}/{arity}")
    if unknown:
        raise ParseError(
            "not a compiled program: unrecognizable predicates "
            + ", ".join(sorted(unknown)),
            1,
            1,
        )
    for name in symbols.source_names():
        if name.startswith("non") and name[3:] in symbols:
            symbols.preds[name].negation_of = name[3:]
    return DoubledProgram(
        tuple(rules), symbols, tuple(constants), tuple(provenance)
    )
