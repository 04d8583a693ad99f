"""Surface-syntax parser for knowledge bases and conjunctive queries.

Grammar (comments run from `%` to end of line; `"..."` quotes a constant):

    program := section*
    section := "#ontology" axiom* | "#rules" rule* | "#constraints" ic*
    axiom   := "subclass(" conj "," (cname | "bot") ")."
             | "equiv(" cname "," cname ")."
             | "subrole(" rname "," rname ")."
             | "transitive(" rname ")."
             | cname "(" const ")."  |  rname "(" const "," const ")."
    conj    := cexpr | "and(" cexpr ("," cexpr)+ ")"
    cexpr   := cname | "some(" rname "," cname ")" | "all(" rname "," cname ")"
    rule    := literal (":-" bodylit ("," bodylit)*)? "."
    literal := ("-")? atom
    bodylit := literal | "not" atom
    ic      := cond ("," cond)* "=>" literal ("," literal)* "."
    cond    := atom | "not" atom
    query   := bodylit ("," bodylit)*        (no classical negation)

Variables are uppercase-initial, constants and predicates lowercase-initial.
`parse_program` validates the result and raises on any error-severity
diagnostic, so a returned KnowledgeBase always satisfies the type invariants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .syntax import (
    BOT,
    AssertionAxiom,
    Atom,
    Conjunct,
    ConjunctiveQuery,
    DlAxiom,
    EquivalenceAxiom,
    IntegrityConstraint,
    KnowledgeBase,
    Literal,
    MknfRule,
    SubclassAxiom,
    SubroleAxiom,
    Term,
    TransitiveAxiom,
    const,
    var,
)

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>%[^\n]*)
      | (?P<section>\#(?:ontology|rules|constraints)\b)
      | (?P<arrow>:-)
      | (?P<implies>=>)
      | (?P<lparen>\()
      | (?P<rparen>\))
      | (?P<comma>,)
      | (?P<dot>\.)
      | (?P<minus>-)
      | (?P<quoted>"(?:[^"\\\n]|\\.)*")
      | (?P<ident>[a-z][A-Za-z0-9_]*)
      | (?P<variable>[A-Z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_ONTOLOGY_KEYWORDS = {"subclass", "equiv", "subrole", "transitive", "and", "some", "all", BOT}


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup or ""
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, value, line, m.start() - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + value.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    # --- token plumbing ---------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, expected: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(f"expected {expected}", tok)
        return self.next()

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        got = tok.value or "end of input"
        raise ParseError(f"{message}, got {got!r}", tok.line, tok.col)

    # --- shared pieces ----------------------------------------------------

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "ident":
            self.next()
            return const(tok.value)
        if tok.kind == "variable":
            self.next()
            return var(tok.value)
        if tok.kind == "quoted":
            self.next()
            raw = tok.value[1:-1]
            return const(raw.replace('\\"', '"').replace("\\\\", "\\"))
        self.fail("expected a constant or variable")
        raise AssertionError  # unreachable

    def atom(self) -> Atom:
        name = self.expect("ident", "a predicate name")
        args: list[Term] = []
        if self.peek().kind == "lparen":
            self.next()
            args.append(self.term())
            while self.peek().kind == "comma":
                self.next()
                args.append(self.term())
            self.expect("rparen", "')'")
        return Atom(name.value, tuple(args))

    def literal(self) -> Literal:
        if self.peek().kind == "minus":
            self.next()
            return Literal(self.atom(), negated=True)
        return Literal(self.atom(), negated=False)

    def body_literal(self) -> Literal | Atom:
        """A positive literal, or a bare Atom standing for `not atom`."""
        tok = self.peek()
        if tok.kind == "ident" and tok.value == "not":
            self.next()
            if self.peek().kind == "minus":
                self.fail("classical negation is not allowed under 'not'")
            return self.atom()
        return self.literal()

    # --- sections ----------------------------------------------------------

    def program(self) -> KnowledgeBase:
        ontology: list[DlAxiom] = []
        rules: list[MknfRule] = []
        constraints: list[IntegrityConstraint] = []
        while self.peek().kind != "eof":
            section = self.expect("section", "'#ontology', '#rules' or '#constraints'")
            while self.peek().kind not in ("section", "eof"):
                if section.value == "#ontology":
                    ontology.append(self.axiom())
                elif section.value == "#rules":
                    rules.append(self.rule())
                else:
                    constraints.append(self.constraint())
        return KnowledgeBase(tuple(ontology), tuple(rules), tuple(constraints))

    def axiom(self) -> DlAxiom:
        tok = self.expect("ident", "an axiom or assertion")
        line = tok.line
        name = tok.value
        if name == "subclass":
            self.expect("lparen", "'('")
            lhs = self.conjunction()
            self.expect("comma", "','")
            rhs_tok = self.expect("ident", f"a concept name or '{BOT}'")
            if rhs_tok.value in _ONTOLOGY_KEYWORDS and rhs_tok.value != BOT:
                self.fail(f"{rhs_tok.value!r} is reserved in the ontology section", rhs_tok)
            self.expect("rparen", "')'")
            self.expect("dot", "'.'")
            return SubclassAxiom(lhs, rhs_tok.value, line=line)
        if name == "equiv":
            a, b = self._two_names("concept")
            return EquivalenceAxiom(a, b, line=line)
        if name == "subrole":
            a, b = self._two_names("role")
            return SubroleAxiom(a, b, line=line)
        if name == "transitive":
            self.expect("lparen", "'('")
            role = self._concept_name("role")
            self.expect("rparen", "')'")
            self.expect("dot", "'.'")
            return TransitiveAxiom(role, line=line)
        if name in _ONTOLOGY_KEYWORDS:
            self.fail(f"{name!r} is reserved in the ontology section", tok)
        # membership assertion: concept(c) or role(c, c)
        self.expect("lparen", "'('")
        args = [self._assertion_constant()]
        if self.peek().kind == "comma":
            self.next()
            args.append(self._assertion_constant())
        self.expect("rparen", "')'")
        self.expect("dot", "'.'")
        return AssertionAxiom(name, tuple(args), line=line)

    def _assertion_constant(self) -> str:
        tok = self.peek()
        if tok.kind == "variable":
            self.fail("variables are not allowed in ontology assertions")
        return self.term().name

    def _concept_name(self, what: str) -> str:
        tok = self.expect("ident", f"a {what} name")
        if tok.value in _ONTOLOGY_KEYWORDS:
            self.fail(f"{tok.value!r} is reserved in the ontology section", tok)
        return tok.value

    def _two_names(self, what: str) -> tuple[str, str]:
        self.expect("lparen", "'('")
        a = self._concept_name(what)
        self.expect("comma", "','")
        b = self._concept_name(what)
        self.expect("rparen", "')'")
        self.expect("dot", "'.'")
        return a, b

    def conjunction(self) -> tuple[Conjunct, ...]:
        tok = self.peek()
        if tok.kind == "ident" and tok.value == "and":
            self.next()
            self.expect("lparen", "'('")
            conjuncts = [self.conjunct()]
            while self.peek().kind == "comma":
                self.next()
                conjuncts.append(self.conjunct())
            self.expect("rparen", "')'")
            if len(conjuncts) < 2:
                self.fail("'and(...)' needs at least two conjuncts")
            return tuple(conjuncts)
        return (self.conjunct(),)

    def conjunct(self) -> Conjunct:
        tok = self.peek()
        if tok.kind == "ident" and tok.value in ("some", "all"):
            self.next()
            self.expect("lparen", "'('")
            role = self._concept_name("role")
            self.expect("comma", "','")
            filler = self._concept_name("concept")
            self.expect("rparen", "')'")
            return Conjunct(filler, role=role, universal=tok.value == "all")
        return Conjunct(self._concept_name("concept"))

    def rule(self) -> MknfRule:
        line = self.peek().line
        head = self.literal()
        positive: list[Literal] = []
        negative: list[Atom] = []
        if self.peek().kind == "arrow":
            self.next()
            self._body_into(positive, negative)
        self.expect("dot", "'.'")
        return MknfRule(head, tuple(positive), tuple(negative), line=line)

    def _body_into(self, positive: list[Literal], negative: list[Atom]):
        while True:
            item = self.body_literal()
            if isinstance(item, Atom):
                negative.append(item)
            else:
                positive.append(item)
            if self.peek().kind != "comma":
                return
            self.next()

    def constraint(self) -> IntegrityConstraint:
        line = self.peek().line
        cond_pos: list[Atom] = []
        cond_neg: list[Atom] = []
        while True:
            tok = self.peek()
            if tok.kind == "minus":
                self.fail("classical negation is not allowed in constraint conditions")
            if tok.kind == "ident" and tok.value == "not":
                self.next()
                if self.peek().kind == "minus":
                    self.fail("classical negation is not allowed under 'not'")
                cond_neg.append(self.atom())
            else:
                cond_pos.append(self.atom())
            if self.peek().kind == "implies":
                self.next()
                break
            self.expect("comma", "',' or '=>'")
        actions = [self.literal()]
        while self.peek().kind == "comma":
            self.next()
            actions.append(self.literal())
        self.expect("dot", "'.'")
        return IntegrityConstraint(tuple(cond_pos), tuple(cond_neg), tuple(actions), line=line)

    def query(self) -> ConjunctiveQuery:
        positive: list[Atom] = []
        negative: list[Atom] = []
        while True:
            tok = self.peek()
            if tok.kind == "minus":
                self.fail("classical negation is not allowed in queries")
            if tok.kind == "ident" and tok.value == "not":
                self.next()
                if self.peek().kind == "minus":
                    self.fail("classical negation is not allowed in queries")
                negative.append(self.atom())
            else:
                positive.append(self.atom())
            if self.peek().kind != "comma":
                break
            self.next()
        if self.peek().kind == "dot":
            self.next()
        self.expect("eof", "end of query")
        answer_vars: dict[str, None] = {}
        for atom in (*positive, *negative):
            for t in atom.args:
                if t.is_var:
                    answer_vars.setdefault(t.name)
        pos_vars = {v for a in positive for v in a.variables()}
        for atom in negative:
            loose = atom.variables() - pos_vars
            if loose:
                raise ParseError(
                    f"unsafe query: variable {sorted(loose)[0]} occurs only under 'not'",
                    self.tokens[0].line,
                    self.tokens[0].col,
                )
        return ConjunctiveQuery(tuple(positive), tuple(negative), tuple(answer_vars))


def parse_program(text: str, check: bool = True) -> KnowledgeBase:
    """Parse a knowledge base; raises ParseError / ValidationError.

    With `check` (the default) the result is validated and any
    error-severity diagnostic raises, so callers can rely on invariants.
    """
    kb = _Parser(text).program()
    if check:
        from .validation import validate

        errors = [d for d in validate(kb) if d.severity == "error"]
        if errors:
            raise ValidationError(errors)
    return kb


def parse_query(text: str) -> ConjunctiveQuery:
    """Parse a comma-separated conjunction of optionally `not`-prefixed atoms."""
    if not text.strip():
        raise ParseError("empty query", 1, 1)
    return _Parser(text).query()
