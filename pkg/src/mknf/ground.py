"""Herbrand instantiation of a doubled program.

The default mode only emits rule instances whose positive body is
derivable when negation is ignored (a standard possibly-true
overapproximation computed semi-naively); dropped instances can never
fire under the well-founded semantics, so the model over the remaining
atoms is unchanged. `exhaustive=True` instantiates every rule over all
constant substitutions and serves as the oracle in tests.

Atoms are interned as dense integer ids in first-occurrence order, which
makes grounding a deterministic function of the program.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import GroundingLimitError
from .syntax import Atom
from .transform import DoubledProgram, DRule

DEFAULT_RULE_BUDGET = 10_000_000

GroundAtom = tuple[str, tuple[str, ...]]


@dataclass(slots=True)
class GroundRule:
    head: int
    positive: tuple[int, ...]
    negative: tuple[int, ...]


class GroundProgram:
    def __init__(self, constants: tuple[str, ...] = (), source: DoubledProgram | None = None):
        self.atoms: list[GroundAtom] = []
        self.atom_ids: dict[GroundAtom, int] = {}
        self.rules: list[GroundRule] = []
        self.constants = constants
        self.source = source

    def intern(self, atom: GroundAtom) -> int:
        idx = self.atom_ids.get(atom)
        if idx is None:
            idx = len(self.atoms)
            self.atom_ids[atom] = idx
            self.atoms.append(atom)
        return idx

    def add_rule(self, head: GroundAtom, positive, negative):
        self.rules.append(
            GroundRule(
                self.intern(head),
                tuple(self.intern(a) for a in positive),
                tuple(self.intern(a) for a in negative),
            )
        )

    def lookup(self, atom: GroundAtom) -> int | None:
        return self.atom_ids.get(atom)

    def render_atom(self, idx: int) -> str:
        pred, args = self.atoms[idx]
        if not args:
            return pred
        from .syntax import const

        return f"{pred}({','.join(const(a).render() for a in args)})"

    def __len__(self) -> int:
        return len(self.rules)


def _instantiate(rule: DRule, binding: dict[str, str]) -> tuple[GroundAtom, list[GroundAtom], list[GroundAtom]]:
    def ground_atom(atom: Atom) -> GroundAtom:
        return atom.predicate, tuple(
            binding[t.name] if t.is_var else t.name for t in atom.args
        )

    return (
        ground_atom(rule.head),
        [ground_atom(a) for a in rule.positive],
        [ground_atom(a) for a in rule.negative],
    )


def _rule_vars(rule: DRule) -> list[str]:
    seen: dict[str, None] = {}
    for atom in (rule.head, *rule.positive, *rule.negative):
        for t in atom.args:
            if t.is_var:
                seen.setdefault(t.name)
    return list(seen)


def _free_after_body(rule: DRule) -> list[str]:
    bound = {t.name for a in rule.positive for t in a.args if t.is_var}
    free: dict[str, None] = {}
    for atom in (rule.head, *rule.negative):
        for t in atom.args:
            if t.is_var and t.name not in bound:
                free.setdefault(t.name)
    return list(free)


class _Relation:
    """Ground tuples of one predicate with per-position indexes."""

    __slots__ = ("tuples", "members", "index")

    def __init__(self):
        self.tuples: list[tuple[str, ...]] = []
        self.members: set[tuple[str, ...]] = set()
        self.index: dict[int, dict[str, list[tuple[str, ...]]]] = {}

    def add(self, args: tuple[str, ...]) -> bool:
        if args in self.members:
            return False
        self.members.add(args)
        self.tuples.append(args)
        for pos, by_val in self.index.items():
            by_val.setdefault(args[pos], []).append(args)
        return True

    def candidates(self, pattern: list[tuple[int, str]]) -> list[tuple[str, ...]]:
        """Tuples matching (position, value) bindings; indexes built lazily."""
        if not pattern:
            return self.tuples
        pos, val = pattern[0]
        by_val = self.index.get(pos)
        if by_val is None:
            by_val = {}
            for t in self.tuples:
                by_val.setdefault(t[pos], []).append(t)
            self.index[pos] = by_val
        return by_val.get(val, [])


def _join(rule: DRule, pools: list[list[tuple[str, ...]] | None], relations):
    """Yield bindings satisfying the positive body.

    pools[i] overrides the candidate source for body atom i (the delta in
    semi-naive rounds); None means the full current relation. Duplicate
    derivations across delta positions are deduplicated by the caller.
    """

    def extend(i: int, binding: dict[str, str]):
        if i == len(rule.positive):
            yield dict(binding)
            return
        atom = rule.positive[i]
        rel: _Relation | None = relations.get(atom.predicate)
        bound_pattern = []
        for pos, t in enumerate(atom.args):
            if not t.is_var:
                bound_pattern.append((pos, t.name))
            elif t.name in binding:
                bound_pattern.append((pos, binding[t.name]))
        pool = pools[i]
        if pool is None:
            if rel is None:
                return
            pool = rel.candidates(bound_pattern)
        for args in pool:
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
                yield from extend(i + 1, trial)

    yield from extend(0, {})


def ground(program: DoubledProgram, *, exhaustive: bool = False,
           max_ground_rules: int = DEFAULT_RULE_BUDGET) -> GroundProgram:
    """Instantiate `program` over its constants."""
    if exhaustive:
        return _ground_exhaustive(program, max_ground_rules)
    return _ground_relevant(program, max_ground_rules)


def _ground_exhaustive(program: DoubledProgram, budget: int) -> GroundProgram:
    gp = GroundProgram(program.constants, program)
    consts = list(program.constants)
    total = 0
    for rule in program.rules:
        names = _rule_vars(rule)
        count = max(1, len(consts)) ** len(names) if names else 1
        total += count
        if total > budget:
            raise GroundingLimitError(
                f"exhaustive grounding exceeds the budget of {budget} rules"
            )
        if names and not consts:
            continue  # no instance can exist
        for values in product(consts, repeat=len(names)) if names else [()]:
            binding = dict(zip(names, values))
            head, pos, neg = _instantiate(rule, binding)
            gp.add_rule(head, pos, neg)
    return gp


def _ground_relevant(program: DoubledProgram, budget: int) -> GroundProgram:
    gp = GroundProgram(program.constants, program)
    consts = list(program.constants)
    relations: dict[str, _Relation] = {}
    emitted: list[set[tuple[str, ...]]] = [set() for _ in program.rules]
    instances: list[tuple[GroundAtom, list[GroundAtom], list[GroundAtom]]] = []
    rule_vars = [_rule_vars(r) for r in program.rules]
    rule_free = [_free_after_body(r) for r in program.rules]

    def derive(atom: GroundAtom) -> bool:
        rel = relations.setdefault(atom[0], _Relation())
        return rel.add(atom[1])

    def emit(rule_idx: int, rule: DRule, binding: dict[str, str], pending: list[GroundAtom]):
        free = rule_free[rule_idx]
        combos = [()] if not free else product(consts, repeat=len(free))
        for values in combos:
            full = dict(binding)
            full.update(zip(free, values))
            key = tuple(full[v] for v in rule_vars[rule_idx])
            if key in emitted[rule_idx]:
                continue
            emitted[rule_idx].add(key)
            head, pos, neg = _instantiate(rule, full)
            instances.append((head, pos, neg))
            if len(instances) > budget:
                raise GroundingLimitError(
                    f"grounding exceeds the budget of {budget} rules"
                )
            pending.append(head)

    # round 0: rules with an empty positive body (facts and guarded facts)
    pending: list[GroundAtom] = []
    for idx, rule in enumerate(program.rules):
        if not rule.positive:
            emit(idx, rule, {}, pending)

    deltas: dict[str, list[tuple[str, ...]]] = {}
    for atom in pending:
        if derive(atom):
            deltas.setdefault(atom[0], []).append(atom[1])

    body_index: dict[str, list[tuple[int, int]]] = {}
    for idx, rule in enumerate(program.rules):
        for i, atom in enumerate(rule.positive):
            body_index.setdefault(atom.predicate, []).append((idx, i))

    while deltas:
        pending = []
        # restrict each rule evaluation so at least one body atom matches a
        # delta tuple from the previous round
        touched: dict[tuple[int, int], list[tuple[str, ...]]] = {}
        for pred, new_tuples in deltas.items():
            for idx, i in body_index.get(pred, ()):
                touched.setdefault((idx, i), []).extend(new_tuples)
        for (idx, i), delta_pool in sorted(touched.items()):
            rule = program.rules[idx]
            pools: list[list[tuple[str, ...]] | None] = [None] * len(rule.positive)
            pools[i] = delta_pool
            for binding in _join(rule, pools, relations):
                emit(idx, rule, binding, pending)
        deltas = {}
        for atom in pending:
            if derive(atom):
                deltas.setdefault(atom[0], []).append(atom[1])

    for head, pos, neg in instances:
        gp.add_rule(head, pos, neg)
    return gp
