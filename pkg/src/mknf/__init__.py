"""Compiler and paraconsistent query engine for hybrid MKNF knowledge
bases under the well-founded semantics."""

from .bench import BenchConfig, RunReport, generate_bench, run_bench
from .dl import TranslationResult, translate_ontology
from .errors import (
    CompileError,
    EnumerationLimitError,
    GroundingLimitError,
    MknfError,
    ParseError,
    ValidationError,
)
from .ground import GroundProgram, ground
from .parser import parse_program, parse_query
from .prolog import export_native, export_prolog, load_compiled
from .query import (
    AnswerRow,
    AnswerSet,
    answer,
    consistent_answers,
    double_query,
    evaluate,
    inconsistent_answers,
)
from .syntax import (
    Atom,
    ConjunctiveQuery,
    IntegrityConstraint,
    KnowledgeBase,
    Literal,
    MknfRule,
    Term,
    const,
    to_source,
    var,
)
from .transform import (
    DoubledProgram,
    DRule,
    SymbolTable,
    compile_constraints,
    compile_kb,
    double_program,
    eliminate_classical_negation,
    mangle,
    strip_level,
)
from .validation import Diagnostic, validate
from .wfs import (
    InconsistencyReport,
    ThreeValuedModel,
    Truth,
    alternating_fixed_point,
    brute_force_wfs,
    gamma,
    least_model,
    mknf_consistency_check,
    relevance_slice,
)

__version__ = "0.1.0"

__all__ = [
    "AnswerRow",
    "AnswerSet",
    "Atom",
    "BenchConfig",
    "CompileError",
    "ConjunctiveQuery",
    "Diagnostic",
    "DoubledProgram",
    "DRule",
    "EnumerationLimitError",
    "GroundProgram",
    "GroundingLimitError",
    "InconsistencyReport",
    "IntegrityConstraint",
    "KnowledgeBase",
    "Literal",
    "MknfError",
    "MknfRule",
    "ParseError",
    "RunReport",
    "SymbolTable",
    "Term",
    "ThreeValuedModel",
    "TranslationResult",
    "Truth",
    "ValidationError",
    "alternating_fixed_point",
    "answer",
    "brute_force_wfs",
    "compile_constraints",
    "compile_kb",
    "const",
    "consistent_answers",
    "double_program",
    "double_query",
    "eliminate_classical_negation",
    "evaluate",
    "export_native",
    "export_prolog",
    "gamma",
    "generate_bench",
    "ground",
    "inconsistent_answers",
    "least_model",
    "load_compiled",
    "mangle",
    "mknf_consistency_check",
    "parse_program",
    "parse_query",
    "relevance_slice",
    "run_bench",
    "strip_level",
    "to_source",
    "translate_ontology",
    "validate",
    "var",
]
