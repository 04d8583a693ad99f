"""Paraconsistent query answering over a computed model.

A conjunctive query is doubled into an a-level variant (positives at a,
negatives at d) and a d-level variant (positives at d, negatives at a).
A binding is consistent when both variants are true, contradictory when
the a-variant is true but the d-variant is false, and undefined when
either variant is undefined and neither is false.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MknfError
from .syntax import Atom, ConjunctiveQuery, const
from .transform import SymbolTable
from .wfs import ThreeValuedModel, Truth

CONSISTENT = "consistent"
CONTRADICTORY = "contradictory"
UNDEFINED = "undefined"
FALSE = "false"

MODES = (CONSISTENT, "inconsistent", "all")


@dataclass(frozen=True, slots=True)
class AnswerRow:
    variables: tuple[str, ...]
    values: tuple[str, ...]
    classification: str

    @property
    def binding(self) -> dict[str, str]:
        return dict(zip(self.variables, self.values))

    def render(self) -> str:
        if not self.variables:
            return f"true  {self.classification}"
        pairs = ", ".join(
            f"{v}={const(c).render()}" for v, c in zip(self.variables, self.values)
        )
        return f"{pairs}  {self.classification}"


@dataclass(frozen=True, slots=True)
class AnswerSet:
    query: ConjunctiveQuery
    rows: tuple[AnswerRow, ...]

    def bindings(self, classification: str | None = None) -> list[tuple[str, ...]]:
        return [
            r.values
            for r in self.rows
            if classification is None or r.classification == classification
        ]

    def __len__(self) -> int:
        return len(self.rows)


def _relevel(atoms, level: str, symbols: SymbolTable) -> tuple[Atom, ...]:
    out = []
    for atom in atoms:
        if atom.predicate not in symbols:
            raise MknfError(f"unknown predicate {atom.predicate}/{atom.arity}")
        if symbols.arity(atom.predicate) != atom.arity:
            raise MknfError(
                f"unknown predicate {atom.predicate}/{atom.arity} "
                f"(did you mean arity {symbols.arity(atom.predicate)}?)"
            )
        out.append(Atom(getattr(symbols, level)(atom.predicate), atom.args))
    return tuple(out)


def double_query(q: ConjunctiveQuery, symbols: SymbolTable) -> tuple[ConjunctiveQuery, ConjunctiveQuery]:
    """The a-level variant checks truth, the d-level variant non-falsity."""
    q_a = ConjunctiveQuery(
        _relevel(q.positive, "a", symbols),
        _relevel(q.negative, "d", symbols),
        q.answer_vars,
    )
    q_d = ConjunctiveQuery(
        _relevel(q.positive, "d", symbols),
        _relevel(q.negative, "a", symbols),
        q.answer_vars,
    )
    return q_a, q_d


def evaluate(q: ConjunctiveQuery, model: ThreeValuedModel,
             all_rows: bool = False) -> dict[tuple[str, ...], Truth]:
    """Map each answer-variable binding to the query body's truth value
    (conjunction = min, not = complement, projection = max over the
    projected variables). Only non-false rows are kept unless `all_rows`.
    """
    by_pred = model.atoms_by_predicate()

    bindings: list[tuple[dict[str, str], Truth]] = [({}, Truth.TRUE)]
    for atom in q.positive:
        grown: list[tuple[dict[str, str], Truth]] = []
        for binding, truth in bindings:
            for args, value in by_pred.get(atom.predicate, ()):
                if len(args) != len(atom.args):
                    continue
                trial = dict(binding)
                ok = True
                for t, val in zip(atom.args, args):
                    if t.is_var:
                        prev = trial.get(t.name)
                        if prev is None:
                            trial[t.name] = val
                        elif prev != val:
                            ok = False
                            break
                    elif t.name != val:
                        ok = False
                        break
                if ok:
                    grown.append((trial, min(truth, value)))
        bindings = grown
        if not bindings:
            break

    results: dict[tuple[str, ...], Truth] = {}
    for binding, truth in bindings:
        for atom in q.negative:
            args = tuple(binding[t.name] if t.is_var else t.name for t in atom.args)
            truth = min(truth, model.truth_of((atom.predicate, args)).negate())
            if truth is Truth.FALSE:
                break
        key = tuple(binding.get(v, "") for v in q.answer_vars)
        prev = results.get(key)
        if prev is None or truth > prev:
            results[key] = truth

    if all_rows and q.answer_vars:
        consts = model.program.constants
        from itertools import product

        for combo in product(consts, repeat=len(q.answer_vars)):
            results.setdefault(tuple(combo), Truth.FALSE)
    if not all_rows:
        results = {k: v for k, v in results.items() if v is not Truth.FALSE}
    return _ordered(results, model)


def _ordered(results: dict[tuple[str, ...], Truth], model: ThreeValuedModel):
    rank = {c: i for i, c in enumerate(model.program.constants)}
    return dict(
        sorted(results.items(), key=lambda kv: tuple(rank.get(c, len(rank)) for c in kv[0]))
    )


def _classify(truth_a: Truth, truth_d: Truth) -> str:
    if truth_a is Truth.TRUE and truth_d is Truth.TRUE:
        return CONSISTENT
    if truth_a is Truth.TRUE and truth_d is Truth.FALSE:
        return CONTRADICTORY
    if Truth.FALSE not in (truth_a, truth_d):
        return UNDEFINED
    return FALSE


def _classified_rows(q: ConjunctiveQuery, model: ThreeValuedModel) -> list[AnswerRow]:
    symbols = _symbols_of(model)
    q_a, q_d = double_query(q, symbols)
    truths_a = evaluate(q_a, model)
    truths_d = evaluate(q_d, model)
    rows = []
    for values, truth_a in truths_a.items():
        truth_d = truths_d.get(values, Truth.FALSE)
        label = _classify(truth_a, truth_d)
        if label != FALSE:
            rows.append(AnswerRow(q.answer_vars, values, label))
    return rows


def _symbols_of(model: ThreeValuedModel) -> SymbolTable:
    if model.program.source is None:
        raise MknfError("the model does not carry a compiled program")
    return model.program.source.symbols


def consistent_answers(q: ConjunctiveQuery, model: ThreeValuedModel) -> AnswerSet:
    """Bindings where both query variants hold; near-misses where a variant
    is undefined are reported under their own classification."""
    rows = [r for r in _classified_rows(q, model) if r.classification != CONTRADICTORY]
    return AnswerSet(q, tuple(rows))


def inconsistent_answers(q: ConjunctiveQuery, model: ThreeValuedModel) -> AnswerSet:
    """Bindings that are true but whose non-falsity witness fails."""
    rows = [r for r in _classified_rows(q, model) if r.classification == CONTRADICTORY]
    return AnswerSet(q, tuple(rows))


def answer(q: ConjunctiveQuery, model: ThreeValuedModel, mode: str = "all") -> AnswerSet:
    if mode == CONSISTENT:
        return consistent_answers(q, model)
    if mode == "inconsistent":
        return inconsistent_answers(q, model)
    if mode == "all":
        return AnswerSet(q, tuple(_classified_rows(q, model)))
    raise MknfError(f"unknown answer mode {mode!r}; expected one of {', '.join(MODES)}")
