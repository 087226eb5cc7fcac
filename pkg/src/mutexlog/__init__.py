"""Horn-clause logic programming with choice-committed clause pairs.

Programs are D-formulas: atoms, implications `head :- body`, clause
conjunctions, universal closures, module references `mod(name)`, and choice
pairs `c1 & c2` whose second member is discarded once the first succeeds.
Goals are G-formulas: atoms, conjunctions, `exists X. G`, and hypothetical
implications `D => G` that extend the program for the subproof.
"""
from .engine import (
    Answer,
    Config,
    DEPTH_EXHAUSTED,
    DepthExhausted,
    backchain,
    call_builtin,
    collect_answers,
    solve,
)
from .errors import (
    CyclicModuleError,
    DuplicateModuleError,
    GoalError,
    HeaderlessModuleError,
    InstantiationError,
    LexError,
    MalformedClauseError,
    MalformedModuleError,
    ModuleError,
    MutexlogError,
    ParseError,
    UnknownModuleError,
)
from .modules import (
    ModuleRegistry,
    load_path,
    paths_from_env,
    register_module,
    registry_with_paths,
    resolve,
)
from .oracle import (
    Instance,
    OracleVerdict,
    canonical_bindings,
    enumerate_answers,
    provable,
    random_instance,
)
from .parser import ModuleFile, parse_goal, parse_program, print_formula, print_module, tokenize
from .terms import (
    Compound,
    Const,
    DAll,
    DAnd,
    DAtom,
    DChoice,
    DImp,
    DModRef,
    FreshSource,
    GAnd,
    GAtom,
    GExists,
    GImp,
    Int,
    Program,
    Var,
    desugar_clause,
    free_vars,
    mk_list,
)
from .unify import EMPTY, Substitution, unify

__all__ = [
    "Answer", "Config", "DEPTH_EXHAUSTED", "DepthExhausted", "backchain",
    "call_builtin", "collect_answers", "solve",
    "CyclicModuleError", "DuplicateModuleError", "GoalError",
    "HeaderlessModuleError", "InstantiationError", "LexError",
    "MalformedClauseError", "MalformedModuleError", "ModuleError",
    "MutexlogError", "ParseError", "UnknownModuleError",
    "ModuleRegistry", "load_path", "paths_from_env", "register_module",
    "registry_with_paths", "resolve",
    "Instance", "OracleVerdict", "canonical_bindings", "enumerate_answers",
    "provable", "random_instance",
    "ModuleFile", "parse_goal", "parse_program", "print_formula",
    "print_module", "tokenize",
    "Compound", "Const", "DAll", "DAnd", "DAtom", "DChoice", "DImp",
    "DModRef", "FreshSource", "GAnd", "GAtom", "GExists", "GImp", "Int",
    "Program", "Var", "desugar_clause", "free_vars", "mk_list",
    "EMPTY", "Substitution", "unify",
]
