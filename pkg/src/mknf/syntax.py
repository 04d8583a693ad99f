"""Abstract syntax for hybrid knowledge bases.

A knowledge base is a triple: ontology axioms (a Horn description-logic
fragment), rules with default negation `not` and classical negation `-`,
and condition-action integrity constraints. All values are immutable
after construction; `to_source` pretty-prints a KnowledgeBase back into
the surface syntax so that parse/print round-trips structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

IDENT_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")

#: reserved concept-name for the empty concept on subclass right-hand sides
BOT = "bot"


@dataclass(frozen=True, slots=True)
class Term:
    """A constant (lowercase-initial) or a variable (uppercase-initial)."""

    name: str
    is_var: bool = False

    def render(self) -> str:
        if self.is_var or IDENT_RE.match(self.name):
            return self.name
        escaped = self.name.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'

    def __str__(self) -> str:
        return self.render()


def var(name: str) -> Term:
    return Term(name, is_var=True)


def const(name: str) -> Term:
    return Term(name, is_var=False)


@dataclass(frozen=True, slots=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def variables(self) -> set[str]:
        return {t.name for t in self.args if t.is_var}

    def constants(self) -> list[str]:
        return [t.name for t in self.args if not t.is_var]

    def render(self, sep: str = ", ") -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({sep.join(t.render() for t in self.args)})"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, slots=True)
class Literal:
    """An atom, optionally under classical negation.

    Classical negation is only legal in rule heads, rule positive bodies,
    facts and constraint actions; never under `not` (the rule type cannot
    even represent that combination: negative bodies hold plain atoms).
    """

    atom: Atom
    negated: bool = False

    def render(self, sep: str = ", ") -> str:
        return ("-" if self.negated else "") + self.atom.render(sep)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, slots=True)
class MknfRule:
    """H :- A1, ..., Am, not B1, ..., not Bn (facts have an empty body)."""

    head: Literal
    positive: tuple[Literal, ...] = ()
    negative: tuple[Atom, ...] = ()
    line: int | None = field(default=None, compare=False)

    @property
    def is_fact(self) -> bool:
        return not self.positive and not self.negative

    def render(self) -> str:
        if self.is_fact:
            return f"{self.head.render()}."
        body = [lit.render() for lit in self.positive]
        body += [f"not {a.render()}" for a in self.negative]
        return f"{self.head.render()} :- {', '.join(body)}."

    def __str__(self) -> str:
        return self.render()


# --- ontology axioms -------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Conjunct:
    """One conjunct on a subclass left-hand side.

    `role is None` means a plain concept name; otherwise the conjunct is a
    role restriction `some(role, concept)` or, when `universal` is set,
    `all(role, concept)` (parsed but never translated; reported
    unsupported downstream).
    """

    concept: str
    role: str | None = None
    universal: bool = False

    @property
    def is_atomic(self) -> bool:
        return self.role is None

    def render(self) -> str:
        if self.role is None:
            return self.concept
        ctor = "all" if self.universal else "some"
        return f"{ctor}({self.role}, {self.concept})"


@dataclass(frozen=True, slots=True)
class SubclassAxiom:
    lhs: tuple[Conjunct, ...]
    rhs: str  # concept name, or BOT for disjointness
    line: int | None = field(default=None, compare=False)

    def render(self) -> str:
        if len(self.lhs) == 1:
            left = self.lhs[0].render()
        else:
            left = f"and({', '.join(c.render() for c in self.lhs)})"
        return f"subclass({left}, {self.rhs})."


@dataclass(frozen=True, slots=True)
class EquivalenceAxiom:
    a: str
    b: str
    line: int | None = field(default=None, compare=False)

    def render(self) -> str:
        return f"equiv({self.a}, {self.b})."


@dataclass(frozen=True, slots=True)
class SubroleAxiom:
    sub: str
    sup: str
    line: int | None = field(default=None, compare=False)

    def render(self) -> str:
        return f"subrole({self.sub}, {self.sup})."


@dataclass(frozen=True, slots=True)
class TransitiveAxiom:
    role: str
    line: int | None = field(default=None, compare=False)

    def render(self) -> str:
        return f"transitive({self.role})."


@dataclass(frozen=True, slots=True)
class AssertionAxiom:
    """Ground concept (unary) or role (binary) membership assertion."""

    predicate: str
    args: tuple[str, ...]
    line: int | None = field(default=None, compare=False)

    def render(self) -> str:
        rendered = ", ".join(const(a).render() for a in self.args)
        return f"{self.predicate}({rendered})."


DlAxiom = Union[
    SubclassAxiom, EquivalenceAxiom, SubroleAxiom, TransitiveAxiom, AssertionAxiom
]


@dataclass(frozen=True, slots=True)
class IntegrityConstraint:
    """condition => actions; a violated condition derives the actions.

    Condition literals are plain atoms (positives and `not` negatives);
    actions are literals, typically the classical negation of the atoms to
    flag as contradictory.
    """

    condition_positive: tuple[Atom, ...]
    condition_negative: tuple[Atom, ...]
    actions: tuple[Literal, ...]
    line: int | None = field(default=None, compare=False)

    def render(self) -> str:
        cond = [a.render() for a in self.condition_positive]
        cond += [f"not {a.render()}" for a in self.condition_negative]
        acts = ", ".join(lit.render() for lit in self.actions)
        return f"{', '.join(cond)} => {acts}."


@dataclass(frozen=True, slots=True)
class KnowledgeBase:
    ontology: tuple[DlAxiom, ...] = ()
    rules: tuple[MknfRule, ...] = ()
    constraints: tuple[IntegrityConstraint, ...] = ()

    @property
    def constants(self) -> tuple[str, ...]:
        """All constants, in first-occurrence order (ontology, rules, constraints)."""
        seen: dict[str, None] = {}
        for ax in self.ontology:
            if isinstance(ax, AssertionAxiom):
                for a in ax.args:
                    seen.setdefault(a)
        for rule in self.rules:
            for lit in (rule.head, *rule.positive):
                for c in lit.atom.constants():
                    seen.setdefault(c)
            for atom in rule.negative:
                for c in atom.constants():
                    seen.setdefault(c)
        for ic in self.constraints:
            for atom in (*ic.condition_positive, *ic.condition_negative):
                for c in atom.constants():
                    seen.setdefault(c)
            for lit in ic.actions:
                for c in lit.atom.constants():
                    seen.setdefault(c)
        return tuple(seen)


@dataclass(frozen=True, slots=True)
class ConjunctiveQuery:
    """Positive and default-negated conjuncts plus the answer variables."""

    positive: tuple[Atom, ...]
    negative: tuple[Atom, ...] = ()
    answer_vars: tuple[str, ...] = ()

    def render(self) -> str:
        parts = [a.render() for a in self.positive]
        parts += [f"not {a.render()}" for a in self.negative]
        return ", ".join(parts)

    def __str__(self) -> str:
        return self.render()


def rule_variables(rule: MknfRule) -> tuple[set[str], set[str], set[str]]:
    """Variables of (head, positive body, negative body)."""
    head = rule.head.atom.variables()
    pos: set[str] = set()
    for lit in rule.positive:
        pos |= lit.atom.variables()
    neg: set[str] = set()
    for atom in rule.negative:
        neg |= atom.variables()
    return head, pos, neg


def to_source(kb: KnowledgeBase) -> str:
    """Pretty-print a knowledge base in the surface syntax."""
    out: list[str] = []
    if kb.ontology:
        out.append("#ontology")
        out.extend(ax.render() for ax in kb.ontology)
    if kb.rules:
        out.append("#rules")
        out.extend(r.render() for r in kb.rules)
    if kb.constraints:
        out.append("#constraints")
        out.extend(ic.render() for ic in kb.constraints)
    return "\n".join(out) + ("\n" if out else "")
