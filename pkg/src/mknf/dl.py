"""Translation of the supported Horn ontology fragment into rules.

Subsumptions, equivalences, role axioms and assertions become definite
rules; disjointness axioms become derived-negation rules whose heads are
classically negated literals (the downstream doubling stage turns those
heads into n-level predicates and leaves the rules single). Anything
outside the fragment is collected in the unsupported report instead of
being dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    BOT,
    AssertionAxiom,
    Atom,
    DlAxiom,
    EquivalenceAxiom,
    Literal,
    MknfRule,
    SubclassAxiom,
    SubroleAxiom,
    TransitiveAxiom,
    const,
    var,
)

_X = var("X")
_Y = var("Y")
_Z = var("Z")


@dataclass(frozen=True, slots=True)
class TranslationResult:
    rules: tuple[MknfRule, ...]
    dl_predicates: frozenset[str]
    unsupported: tuple[tuple[DlAxiom, str], ...]
    #: originating axiom for each rule, aligned with `rules`
    origins: tuple[DlAxiom, ...] = ()


def _definite(head: Atom, body: list[Atom], line: int | None) -> MknfRule:
    return MknfRule(Literal(head), tuple(Literal(a) for a in body), line=line)


def _negated_head(head: Atom, body: list[Atom], line: int | None) -> MknfRule:
    return MknfRule(Literal(head, negated=True), tuple(Literal(a) for a in body), line=line)


def translate_ontology(axioms: list[DlAxiom] | tuple[DlAxiom, ...]) -> TranslationResult:
    """Translate axioms to rules; deterministic and order-preserving."""
    rules: list[MknfRule] = []
    origins: list[DlAxiom] = []
    dl_preds: set[str] = set()
    unsupported: list[tuple[DlAxiom, str]] = []

    def emit(rule: MknfRule, origin: DlAxiom):
        rules.append(rule)
        origins.append(origin)

    for ax in axioms:
        if isinstance(ax, SubclassAxiom):
            if any(c.universal for c in ax.lhs):
                unsupported.append((ax, "non-Horn: universal restriction on the left-hand side"))
                continue
            if ax.rhs == BOT:
                if not all(c.is_atomic for c in ax.lhs):
                    unsupported.append((ax, "disjointness over non-atomic conjuncts"))
                    continue
                # pairwise-style exclusion: each conjunct is negated when all
                # the others hold
                names = [c.concept for c in ax.lhs]
                dl_preds.update(names)
                for i, name in enumerate(names):
                    body = [Atom(other, (_X,)) for j, other in enumerate(names) if j != i]
                    emit(_negated_head(Atom(name, (_X,)), body, ax.line), ax)
                continue
            body: list[Atom] = []
            fresh = 0
            for conj in ax.lhs:
                if conj.is_atomic:
                    dl_preds.add(conj.concept)
                    body.append(Atom(conj.concept, (_X,)))
                else:
                    fresh += 1
                    y = var(f"Y{fresh}")
                    dl_preds.update((conj.role, conj.concept))
                    body.append(Atom(conj.role, (_X, y)))
                    body.append(Atom(conj.concept, (y,)))
            dl_preds.add(ax.rhs)
            emit(_definite(Atom(ax.rhs, (_X,)), body, ax.line), ax)
        elif isinstance(ax, EquivalenceAxiom):
            dl_preds.update((ax.a, ax.b))
            emit(_definite(Atom(ax.a, (_X,)), [Atom(ax.b, (_X,))], ax.line), ax)
            emit(_definite(Atom(ax.b, (_X,)), [Atom(ax.a, (_X,))], ax.line), ax)
        elif isinstance(ax, SubroleAxiom):
            dl_preds.update((ax.sub, ax.sup))
            emit(_definite(Atom(ax.sup, (_X, _Y)), [Atom(ax.sub, (_X, _Y))], ax.line), ax)
        elif isinstance(ax, TransitiveAxiom):
            dl_preds.add(ax.role)
            emit(
                _definite(
                    Atom(ax.role, (_X, _Z)),
                    [Atom(ax.role, (_X, _Y)), Atom(ax.role, (_Y, _Z))],
                    ax.line,
                ),
                ax,
            )
        elif isinstance(ax, AssertionAxiom):
            dl_preds.add(ax.predicate)
            emit(
                MknfRule(
                    Literal(Atom(ax.predicate, tuple(const(a) for a in ax.args))),
                    line=ax.line,
                ),
                ax,
            )
        else:  # pragma: no cover - exhaustiveness guard
            unsupported.append((ax, f"unknown axiom kind {type(ax).__name__}"))

    return TranslationResult(
        tuple(rules), frozenset(dl_preds), tuple(unsupported), tuple(origins)
    )
