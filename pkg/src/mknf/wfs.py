"""Well-founded model computation over ground programs.

`alternating_fixed_point` iterates the reduct operator gamma from the
empty interpretation, producing the unique three-valued model: a true
set, an undefined set, and false as the complement. `brute_force_wfs`
independently enumerates every candidate pair (T, U) with its own naive
reduct evaluation and returns the knowledge-least partial stable model;
the two must agree on every program, which the test suite checks on
hundreds of random instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from .errors import EnumerationLimitError
from .ground import GroundProgram
from .syntax import Atom, ConjunctiveQuery, const
from .transform import DoubledProgram, DRule, SymbolTable

BRUTE_FORCE_ATOM_LIMIT = 14


class Truth(IntEnum):
    FALSE = 0
    UNDEFINED = 1
    TRUE = 2

    def negate(self) -> "Truth":
        return Truth(2 - self.value)

    def label(self) -> str:
        return ("false", "undefined", "true")[self.value]


@dataclass(frozen=True)
class ThreeValuedModel:
    program: GroundProgram
    true_atoms: frozenset[int]
    undefined_atoms: frozenset[int]

    def __post_init__(self):
        assert not (self.true_atoms & self.undefined_atoms)

    def truth_of(self, atom: tuple[str, tuple[str, ...]]) -> Truth:
        idx = self.program.lookup(atom)
        if idx is None:
            return Truth.FALSE
        if idx in self.true_atoms:
            return Truth.TRUE
        if idx in self.undefined_atoms:
            return Truth.UNDEFINED
        return Truth.FALSE

    def atoms_by_predicate(self) -> dict[str, list[tuple[tuple[str, ...], Truth]]]:
        """Non-false atoms grouped by predicate, in interning order."""
        table: dict[str, list[tuple[tuple[str, ...], Truth]]] = {}
        for idx, (pred, args) in enumerate(self.program.atoms):
            if idx in self.true_atoms:
                table.setdefault(pred, []).append((args, Truth.TRUE))
            elif idx in self.undefined_atoms:
                table.setdefault(pred, []).append((args, Truth.UNDEFINED))
        return table


def _closure(gp: GroundProgram, blocked_by: set[int] | None) -> set[int]:
    """Least model of the reduct w.r.t. `blocked_by` (None: program must be
    definite). Linear-time propagation with per-rule counters."""
    counts = []
    derived: set[int] = set()
    queue: list[int] = []
    watchers: dict[int, list[int]] = {}
    for ridx, rule in enumerate(gp.rules):
        if blocked_by is not None and any(n in blocked_by for n in rule.negative):
            counts.append(-1)  # dropped by the reduct
            continue
        counts.append(len(rule.positive))
        if counts[ridx] == 0:
            if rule.head not in derived:
                derived.add(rule.head)
                queue.append(rule.head)
        else:
            for a in rule.positive:
                watchers.setdefault(a, []).append(ridx)
    while queue:
        atom = queue.pop()
        for ridx in watchers.get(atom, ()):
            if counts[ridx] <= 0:
                continue
            counts[ridx] -= 1
            if counts[ridx] == 0:
                head = gp.rules[ridx].head
                if head not in derived:
                    derived.add(head)
                    queue.append(head)
    return derived


def least_model(gp: GroundProgram) -> set[int]:
    """Least Herbrand model of a definite ground program."""
    for rule in gp.rules:
        if rule.negative:
            raise ValueError("least_model requires a program without negation")
    return _closure(gp, None)


def gamma(gp: GroundProgram, interpretation: set[int] | frozenset[int]) -> set[int]:
    """Least model of the reduct: drop rules whose negative body meets the
    interpretation, erase remaining negative literals."""
    return _closure(gp, set(interpretation))


def alternating_fixed_point(gp: GroundProgram) -> ThreeValuedModel:
    true_set: set[int] = set()
    undef_over: set[int] = gamma(gp, set())
    while True:
        next_true = gamma(gp, undef_over)
        next_over = gamma(gp, next_true)
        assert true_set <= next_true, "true set must grow monotonically"
        assert next_over <= undef_over, "overestimate must shrink monotonically"
        if next_true == true_set and next_over == undef_over:
            break
        true_set, undef_over = next_true, next_over
    assert true_set <= undef_over
    return ThreeValuedModel(gp, frozenset(true_set), frozenset(undef_over - true_set))


def _naive_gamma_mask(rules: list[tuple[int, int, int]], interp: int) -> int:
    """Reduct + naive fixpoint over bitmask interpretations (oracle path)."""
    model = 0
    changed = True
    while changed:
        changed = False
        for head, pos, neg in rules:
            if neg & interp:
                continue
            if pos & model == pos and model & head != head:
                model |= head
                changed = True
    return model


def brute_force_wfs(gp: GroundProgram) -> ThreeValuedModel:
    """Enumerate all pairs T <= U with gamma(U)=T and gamma(T)=U and return
    the knowledge-least one. Independent of the alternating fixed point."""
    n = len(gp.atoms)
    if n > BRUTE_FORCE_ATOM_LIMIT:
        raise EnumerationLimitError(
            f"{n} atoms exceed the brute-force bound of {BRUTE_FORCE_ATOM_LIMIT}"
        )
    mask_rules = [
        (
            1 << r.head,
            sum(1 << a for a in set(r.positive)),
            sum(1 << a for a in set(r.negative)),
        )
        for r in gp.rules
    ]
    candidates: list[tuple[int, int]] = []
    for u_mask in range(1 << n):
        t_mask = _naive_gamma_mask(mask_rules, u_mask)
        if t_mask | u_mask != u_mask:  # requires T <= U
            continue
        if _naive_gamma_mask(mask_rules, t_mask) == u_mask:
            candidates.append((t_mask, u_mask))
    least = None
    for t_mask, u_mask in candidates:
        if all(t_mask & t == t_mask and u_mask | u == u_mask for t, u in candidates):
            least = (t_mask, u_mask)
            break
    if least is None:  # pragma: no cover - WFS always exists
        raise AssertionError("no knowledge-least partial stable model found")
    t_mask, u_mask = least
    true_atoms = frozenset(i for i in range(n) if t_mask >> i & 1)
    undef = frozenset(i for i in range(n) if u_mask >> i & 1) - true_atoms
    return ThreeValuedModel(gp, true_atoms, undef)


@dataclass(frozen=True, slots=True)
class Inconsistency:
    predicate: str
    args: tuple[str, ...]
    negation_of: str | None  # set when the predicate is a generated complement
    provenance: tuple[str, ...] = ()

    def render(self) -> str:
        base = self.negation_of
        shown = Atom(base, tuple(const(a) for a in self.args)) if base else Atom(
            self.predicate, tuple(const(a) for a in self.args)
        )
        return ("-" if base else "") + shown.render(sep=",")


@dataclass(frozen=True, slots=True)
class InconsistencyReport:
    atoms: tuple[Inconsistency, ...]

    def __bool__(self) -> bool:
        return bool(self.atoms)

    def render(self) -> str:
        if not self.atoms:
            return "consistent: no atom is true without its non-falsity witness"
        lines = ["contradictory atoms (true, but blocked at the d-level):"]
        for entry in self.atoms:
            lines.append(f"  {entry.render()}")
            for src in entry.provenance:
                lines.append(f"      from {src}")
        return "\n".join(lines)


def mknf_consistency_check(model: ThreeValuedModel,
                           symbols: SymbolTable | None = None) -> InconsistencyReport:
    """List source atoms whose a-level is true while the d-level is neither
    true nor undefined: exactly the contradictions introduced by the
    ontology or by classical negation."""
    gp = model.program
    if symbols is None:
        if gp.source is None:
            raise ValueError("a symbol table is required for the consistency check")
        symbols = gp.source.symbols
    prov_by_head: dict[str, list[str]] = {}
    if gp.source is not None and gp.source.provenance:
        for rule, prov in zip(gp.source.rules, gp.source.provenance):
            bucket = prov_by_head.setdefault(rule.head.predicate, [])
            text = str(prov)
            if text not in bucket:
                bucket.append(text)
    found: list[Inconsistency] = []
    for idx in sorted(model.true_atoms):
        pred, args = gp.atoms[idx]
        source = symbols.level_of(pred)
        if source is None or source[0] != "a":
            continue
        base = source[1]
        if symbols.arity(base) != len(args):
            continue
        if model.truth_of((symbols.d(base), args)) is Truth.FALSE:
            info = symbols.preds.get(base)
            found.append(
                Inconsistency(
                    base,
                    args,
                    info.negation_of if info else None,
                    tuple(prov_by_head.get(symbols.a(base), ())[:3]),
                )
            )
    return InconsistencyReport(tuple(found))


def relevance_slice(program: DoubledProgram, query: ConjunctiveQuery) -> DoubledProgram:
    """Subprogram whose head predicates are reachable from the query's
    predicates through positive and negative dependencies, at the a, d and
    n levels. The well-founded model of the slice agrees with the full
    model on every sliced predicate."""
    from dataclasses import replace

    deps: dict[str, set[str]] = {}
    for rule in program.rules:
        bucket = deps.setdefault(rule.head.predicate, set())
        for atom in (*rule.positive, *rule.negative):
            bucket.add(atom.predicate)
    seeds: list[str] = []
    for atom in (*query.positive, *query.negative):
        for level in ("a", "d", "n"):
            seeds.append(level + atom.predicate)
    reachable: set[str] = set()
    stack = seeds
    while stack:
        pred = stack.pop()
        if pred in reachable:
            continue
        reachable.add(pred)
        stack.extend(deps.get(pred, ()))
    kept = [
        (rule, prov)
        for rule, prov in zip(
            program.rules,
            program.provenance or [None] * len(program.rules),
        )
        if rule.head.predicate in reachable
    ]
    rules = tuple(r for r, _ in kept)
    provenance = tuple(p for _, p in kept) if program.provenance else ()
    return replace(program, rules=rules, provenance=provenance)
