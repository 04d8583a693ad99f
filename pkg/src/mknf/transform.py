"""Compilation pipeline: constraints -> classical-negation elimination ->
program doubling with blocking guards -> one normal logic program.

Every source predicate p is paired with three generated predicates:

    a<p>   the original truth of p
    d<p>   the non-falsity of p
    n<p>   p is contradicted (its classical negation is derivable)

A classically negated atom -p becomes the fresh complement predicate
non<p>, which then gets its own a/d/n levels. Each ordinary rule
H :- A1..Am, not B1..Bn is doubled into

    aH :- aA1..aAm, not dB1..dBn.
    dH :- dA1..dAm, not aB1..aBn, not nH.

while derived-negation rules (heads written as -q internally, produced by
disjointness axioms and by negation elimination) are emitted once, as
n<q> rules over a-level bodies. A ground atom p(c) is consistently true
when both a and d levels hold; a-true with d-false marks a contradiction.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import CompileError
from .syntax import (
    Atom,
    IntegrityConstraint,
    KnowledgeBase,
    Literal,
    MknfRule,
    var,
)
from .validation import validate

LEVELS = ("a", "d", "n", "non")


def mangle(name: str, level: str) -> str:
    """Prefix a predicate with a level marker, preserving its casing."""
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    return level + name


def strip_level(name: str, level: str) -> str:
    """Inverse of mangle for a known level."""
    if level not in LEVELS or not name.startswith(level):
        raise ValueError(f"{name!r} does not carry level {level!r}")
    return name[len(level):]


@dataclass(slots=True)
class PredInfo:
    name: str
    arity: int
    is_dl: bool = False
    negation_of: str | None = None  # set on non<p> complement predicates


class SymbolTable:
    """Source predicates and their generated level names."""

    def __init__(self):
        self.preds: dict[str, PredInfo] = {}

    def register(self, name: str, arity: int, *, is_dl: bool = False,
                 negation_of: str | None = None):
        info = self.preds.get(name)
        if info is None:
            self.preds[name] = PredInfo(name, arity, is_dl, negation_of)
        else:
            if info.arity != arity:
                raise CompileError(
                    f"arity clash for predicate {name}: {info.arity} vs {arity}"
                )
            info.is_dl = info.is_dl or is_dl

    def __contains__(self, name: str) -> bool:
        return name in self.preds

    def arity(self, name: str) -> int:
        return self.preds[name].arity

    def a(self, name: str) -> str:
        return mangle(name, "a")

    def d(self, name: str) -> str:
        return mangle(name, "d")

    def n(self, name: str) -> str:
        return mangle(name, "n")

    def non(self, name: str) -> str:
        return mangle(name, "non")

    def level_of(self, mangled: str) -> tuple[str, str] | None:
        """Map a generated name back to (level, source predicate)."""
        for level in ("a", "d", "n"):
            base = mangled[len(level):]
            if mangled.startswith(level) and base in self.preds:
                return level, base
        return None

    def check_collisions(self):
        """Reject source predicates that equal a generated level name.

        A complement predicate introduced by negation elimination carries
        `negation_of` and legitimately owns its non-prefixed name.
        """
        for info in self.preds.values():
            for level in LEVELS:
                generated = mangle(info.name, level)
                other = self.preds.get(generated)
                if other is None or other.arity != info.arity:
                    continue
                if level == "non" and other.negation_of == info.name:
                    continue
                raise CompileError(
                    f"predicate {generated!r} collides with the generated "
                    f"{level}-level name of {info.name!r}"
                )

    def source_names(self) -> list[str]:
        return list(self.preds)


@dataclass(frozen=True, slots=True)
class DRule:
    """A rule of the doubled program, over mangled predicate names."""

    head: Atom
    positive: tuple[Atom, ...] = ()
    negative: tuple[Atom, ...] = ()

    @property
    def is_fact(self) -> bool:
        return not self.positive and not self.negative

    def render(self) -> str:
        if self.is_fact:
            return f"{self.head.render(sep=',')}."
        body = [a.render(sep=",") for a in self.positive]
        body += [f"not {a.render(sep=',')}" for a in self.negative]
        return f"{self.head.render(sep=',')} :- {', '.join(body)}."

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, slots=True)
class Provenance:
    kind: str  # "axiom" | "rule" | "fact" | "constraint" | "negation-axiom"
    source: str
    line: int | None = None

    def __str__(self) -> str:
        where = f" (line {self.line})" if self.line else ""
        return f"{self.kind}{where}: {self.source}"


@dataclass(frozen=True, slots=True)
class DoubledProgram:
    rules: tuple[DRule, ...]
    symbols: SymbolTable
    constants: tuple[str, ...]
    provenance: tuple[Provenance, ...] = ()
    unsupported: tuple = ()  # (DlAxiom, reason) pairs from translation

    def rules_of(self, predicate: str) -> list[DRule]:
        return [r for r in self.rules if r.head.predicate == predicate]


def compile_constraints(constraints) -> tuple[MknfRule, ...]:
    """Each condition-action constraint yields one rule per action, all
    sharing the condition as body. Actions may be classically negated;
    that is resolved by the elimination stage."""
    rules: list[MknfRule] = []
    for ic in constraints:
        positive = tuple(Literal(a) for a in ic.condition_positive)
        for action in ic.actions:
            rules.append(MknfRule(action, positive, ic.condition_negative, line=ic.line))
    return tuple(rules)


def eliminate_classical_negation(rules) -> tuple[tuple[MknfRule, ...], tuple[MknfRule, ...]]:
    """Replace every -p literal with the complement predicate non<p>.

    Returns (rewritten rules, negation axioms). For each predicate p that
    occurred under -, two negation axioms link p and non<p>:

        -p(X1..Xk) :- non<p>(X1..Xk)      i.e. n<p> derivable
        -non<p>(X1..Xk) :- p(X1..Xk)      i.e. n<non<p>> derivable

    The negated heads mark these as derived-negation rules for the
    doubling stage; the rewritten rules themselves are negation-free.
    """
    occurring: dict[str, int] = {}
    for rule in rules:
        for lit in (rule.head, *rule.positive):
            occurring.setdefault(lit.atom.predicate, lit.atom.arity)
        for atom in rule.negative:
            occurring.setdefault(atom.predicate, atom.arity)

    touched: dict[str, int] = {}

    def rewrite(lit: Literal) -> Literal:
        if not lit.negated:
            return lit
        pred, arity = lit.atom.predicate, lit.atom.arity
        touched.setdefault(pred, arity)
        for taken in (mangle(pred, "non"), mangle(pred, "n")):
            if occurring.get(taken) == arity:
                raise CompileError(
                    f"predicate {taken!r} collides with the name generated while "
                    f"eliminating -{pred}"
                )
        return Literal(Atom(mangle(pred, "non"), lit.atom.args))

    rewritten = tuple(
        MknfRule(
            rewrite(rule.head),
            tuple(rewrite(lit) for lit in rule.positive),
            rule.negative,
            line=rule.line,
        )
        for rule in rules
    )

    n_axioms: list[MknfRule] = []
    for pred, arity in touched.items():
        args = tuple(var(f"X{i + 1}") for i in range(arity))
        complement = Atom(mangle(pred, "non"), args)
        plain = Atom(pred, args)
        n_axioms.append(MknfRule(Literal(plain, negated=True), (Literal(complement),)))
        n_axioms.append(MknfRule(Literal(complement, negated=True), (Literal(plain),)))
    return rewritten, tuple(n_axioms)


def _level_atom(atom: Atom, level: str) -> Atom:
    return Atom(mangle(atom.predicate, level), atom.args)


def double_program(rules, dl_predicates=frozenset(), symbols: SymbolTable | None = None,
                   provenance=None, constants: tuple[str, ...] | None = None) -> DoubledProgram:
    """Double every ordinary rule into an a-level and a guarded d-level
    copy; emit derived-negation rules (negated heads) once, as n-level
    rules over a-level bodies. Facts follow the same scheme.
    """
    out: list[DRule] = []
    out_prov: list[Provenance] = []
    symbols = symbols if symbols is not None else SymbolTable()
    provs = list(provenance) if provenance is not None else [
        Provenance("fact" if r.is_fact else "rule", r.render(), r.line) for r in rules
    ]
    if len(provs) != len(rules):
        raise ValueError("provenance must align with rules")

    for rule, prov in zip(rules, provs):
        for lit in rule.positive:
            if lit.negated:
                raise CompileError(
                    "classical negation must be eliminated before doubling: "
                    f"{rule.render()}"
                )
        for lit in (rule.head, *rule.positive):
            symbols.register(lit.atom.predicate, lit.atom.arity,
                             is_dl=lit.atom.predicate in dl_predicates)
        for atom in rule.negative:
            symbols.register(atom.predicate, atom.arity,
                             is_dl=atom.predicate in dl_predicates)

        if rule.head.negated:
            # derived negation: single n-level rule with a-level body
            if rule.negative:
                raise CompileError(
                    f"derived-negation rule cannot use 'not': {rule.render()}"
                )
            out.append(
                DRule(
                    _level_atom(rule.head.atom, "n"),
                    tuple(_level_atom(lit.atom, "a") for lit in rule.positive),
                )
            )
            out_prov.append(replace(prov, kind="negation-axiom"))
            continue

        head = rule.head.atom
        out.append(
            DRule(
                _level_atom(head, "a"),
                tuple(_level_atom(lit.atom, "a") for lit in rule.positive),
                tuple(_level_atom(a, "d") for a in rule.negative),
            )
        )
        out_prov.append(prov)
        out.append(
            DRule(
                _level_atom(head, "d"),
                tuple(_level_atom(lit.atom, "d") for lit in rule.positive),
                tuple(_level_atom(a, "a") for a in rule.negative)
                + (_level_atom(head, "n"),),
            )
        )
        out_prov.append(prov)

    if constants is None:
        seen: dict[str, None] = {}
        for r in out:
            for atom in (r.head, *r.positive, *r.negative):
                for c in atom.constants():
                    seen.setdefault(c)
        constants = tuple(seen)
    return DoubledProgram(tuple(out), symbols, constants, tuple(out_prov))


def compile_kb(kb: KnowledgeBase) -> DoubledProgram:
    """Full pipeline: validate, translate the ontology, compile the
    constraints, eliminate classical negation, then double. Deterministic:
    the same knowledge base always yields byte-identical output."""
    from .dl import translate_ontology

    errors = [d for d in validate(kb) if d.severity == "error"]
    if errors:
        raise CompileError("; ".join(str(d) for d in errors))

    translation = translate_ontology(kb.ontology)
    ic_rules = compile_constraints(kb.constraints)
    body_rules, n_axioms = eliminate_classical_negation(tuple(kb.rules) + ic_rules)

    # names the eliminator invented must not already exist in the ontology
    onto_preds: dict[str, int] = {}
    for rule in translation.rules:
        for lit in (rule.head, *rule.positive):
            onto_preds.setdefault(lit.atom.predicate, lit.atom.arity)
    for i in range(0, len(n_axioms), 2):
        plain_atom = n_axioms[i].head.atom
        for taken in (mangle(plain_atom.predicate, "non"), mangle(plain_atom.predicate, "n")):
            if onto_preds.get(taken) == plain_atom.arity:
                raise CompileError(
                    f"ontology predicate {taken!r} collides with the name generated "
                    f"while eliminating -{plain_atom.predicate}"
                )

    all_rules: list[MknfRule] = []
    provenance: list[Provenance] = []
    for rule, origin in zip(translation.rules, translation.origins):
        all_rules.append(rule)
        provenance.append(Provenance("axiom", origin.render(), origin.line))
    n_source_rules = len(kb.rules)
    originals = tuple(kb.rules) + ic_rules
    for idx, rule in enumerate(body_rules):
        kind = "constraint" if idx >= n_source_rules else ("fact" if rule.is_fact else "rule")
        all_rules.append(rule)
        provenance.append(Provenance(kind, originals[idx].render(), rule.line))
    for rule in n_axioms:
        all_rules.append(rule)
        provenance.append(Provenance("negation-axiom", rule.render(), rule.line))

    symbols = SymbolTable()
    for rule in all_rules:
        for lit in (rule.head, *rule.positive):
            symbols.register(lit.atom.predicate, lit.atom.arity,
                             is_dl=lit.atom.predicate in translation.dl_predicates)
        for atom in rule.negative:
            symbols.register(atom.predicate, atom.arity,
                             is_dl=atom.predicate in translation.dl_predicates)
    # negation axioms come in (-p :- non<p>, -non<p> :- p) pairs
    for i in range(0, len(n_axioms), 2):
        plain = n_axioms[i].head.atom.predicate
        complement = n_axioms[i].positive[0].atom.predicate
        if complement in symbols:
            symbols.preds[complement].negation_of = plain
    symbols.check_collisions()

    doubled = double_program(
        all_rules,
        translation.dl_predicates,
        symbols=symbols,
        provenance=provenance,
        constants=kb.constants,
    )
    return replace(doubled, unsupported=translation.unsupported)
