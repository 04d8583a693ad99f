"""Static validation of knowledge bases.

`validate` returns diagnostics rather than raising, so programmatically
constructed knowledge bases can be checked incrementally; the parser
raises on any error-severity diagnostic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    BOT,
    AssertionAxiom,
    Atom,
    EquivalenceAxiom,
    KnowledgeBase,
    SubclassAxiom,
    SubroleAxiom,
    TransitiveAxiom,
    rule_variables,
)

#: predicate names that would collide with generated a/d/n/non level names
RESERVED_PREFIX_RE = re.compile(r"(?:a|d|n|non)[A-Z]")


@dataclass(frozen=True, slots=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str
    line: int | None = None

    def __str__(self) -> str:
        where = f" (line {self.line})" if self.line else ""
        return f"{self.severity}{where}: {self.message}"


def _reserved(name: str) -> bool:
    return bool(RESERVED_PREFIX_RE.match(name))


def validate(kb: KnowledgeBase) -> list[Diagnostic]:
    """Check arity consistency, reserved names, range restriction and
    closed-world warnings. Empty list means every invariant holds."""
    diags: list[Diagnostic] = []
    arities: dict[str, tuple[int, int | None]] = {}  # name -> (arity, first line)
    defined: set[str] = set()
    used: dict[str, int | None] = {}

    def see(name: str, arity: int, line: int | None):
        if name in arities:
            known, first_line = arities[name]
            if known != arity:
                diags.append(
                    Diagnostic(
                        "error",
                        f"arity clash: {name} used with arity {arity} here and "
                        f"arity {known} earlier (line {first_line})",
                        line,
                    )
                )
        else:
            arities[name] = (arity, line)
        if _reserved(name):
            diags.append(
                Diagnostic(
                    "error",
                    f"predicate name {name!r} begins with a reserved level prefix "
                    "(a/d/n/non followed by an uppercase letter)",
                    line,
                )
            )

    def see_atom(atom: Atom, line: int | None, *, use: bool = False, define: bool = False):
        see(atom.predicate, atom.arity, line)
        if use:
            used.setdefault(atom.predicate, line)
        if define:
            defined.add(atom.predicate)

    for ax in kb.ontology:
        if isinstance(ax, SubclassAxiom):
            for conj in ax.lhs:
                see(conj.concept, 1, ax.line)
                used.setdefault(conj.concept, ax.line)
                if conj.role is not None:
                    see(conj.role, 2, ax.line)
                    used.setdefault(conj.role, ax.line)
            if ax.rhs != BOT:
                see(ax.rhs, 1, ax.line)
                defined.add(ax.rhs)
        elif isinstance(ax, EquivalenceAxiom):
            see(ax.a, 1, ax.line)
            see(ax.b, 1, ax.line)
            defined.update((ax.a, ax.b))
            used.setdefault(ax.a, ax.line)
            used.setdefault(ax.b, ax.line)
        elif isinstance(ax, SubroleAxiom):
            see(ax.sub, 2, ax.line)
            see(ax.sup, 2, ax.line)
            defined.add(ax.sup)
            used.setdefault(ax.sub, ax.line)
        elif isinstance(ax, TransitiveAxiom):
            see(ax.role, 2, ax.line)
            defined.add(ax.role)
            used.setdefault(ax.role, ax.line)
        elif isinstance(ax, AssertionAxiom):
            see(ax.predicate, len(ax.args), ax.line)
            defined.add(ax.predicate)

    for rule in kb.rules:
        see_atom(rule.head.atom, rule.line, define=not rule.head.negated)
        for lit in rule.positive:
            see_atom(lit.atom, rule.line, use=not lit.negated)
        for atom in rule.negative:
            see_atom(atom, rule.line, use=True)
        head_vars, pos_vars, neg_vars = rule_variables(rule)
        loose = (head_vars | neg_vars) - pos_vars
        if loose:
            kind = "fact" if rule.is_fact else "rule"
            diags.append(
                Diagnostic(
                    "error",
                    f"unsafe {kind}: variable {sorted(loose)[0]} is not bound by a "
                    "positive body literal",
                    rule.line,
                )
            )

    for ic in kb.constraints:
        if not ic.actions:
            diags.append(Diagnostic("error", "constraint has no actions", ic.line))
        cond_vars: set[str] = set()
        for atom in ic.condition_positive:
            see_atom(atom, ic.line, use=True)
            cond_vars |= atom.variables()
        loose: set[str] = set()
        for atom in ic.condition_negative:
            see_atom(atom, ic.line, use=True)
            loose |= atom.variables() - cond_vars
        for lit in ic.actions:
            see_atom(lit.atom, ic.line)
            loose |= lit.atom.variables() - cond_vars
        if loose:
            diags.append(
                Diagnostic(
                    "error",
                    f"unsafe constraint: variable {sorted(loose)[0]} is not bound by "
                    "a positive condition atom",
                    ic.line,
                )
            )

    for name, line in used.items():
        if name not in defined:
            diags.append(
                Diagnostic(
                    "warning",
                    f"predicate {name} is used but never defined; under the closed "
                    "world it is false everywhere",
                    line,
                )
            )

    diags.sort(key=lambda d: (d.line or 0, d.severity, d.message))
    return diags
