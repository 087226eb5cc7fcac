"""Module registry: named, closed clause collections loaded from .mw files.

Registries are values: register/load return a new registry and never touch
the old one.  A module reference is expanded lazily — the engine resolves
`mod(name)` to the conjunction of the module's clauses only when it
backchains on it or hypothesizes it.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DuplicateModuleError,
    HeaderlessModuleError,
    ModuleError,
    UnknownModuleError,
)
from .parser import ModuleFile, parse_program
from .terms import DAnd, DFormula

ENV_PATH = "MUTEXLOG_PATH"


@dataclass(frozen=True)
class ModuleRegistry:
    entries: dict[str, tuple[DFormula, ...]] = field(default_factory=dict)
    load_paths: tuple[Path, ...] = ()

    def has(self, name: str) -> bool:
        return name in self.entries

    def clauses(self, name: str) -> tuple[DFormula, ...]:
        if name not in self.entries:
            raise UnknownModuleError(f"unknown module: {name}")
        return self.entries[name]


def paths_from_env(environ: dict | None = None) -> tuple[Path, ...]:
    env = os.environ if environ is None else environ
    raw = env.get(ENV_PATH, "")
    return tuple(Path(p) for p in raw.split(":") if p)


def registry_with_paths(paths: "list[Path | str]", base: ModuleRegistry | None = None) -> ModuleRegistry:
    base = base or ModuleRegistry()
    return ModuleRegistry(dict(base.entries), base.load_paths + tuple(Path(p) for p in paths))


def register_module(reg: ModuleRegistry, mf: ModuleFile) -> ModuleRegistry:
    if mf.name is None:
        raise HeaderlessModuleError("module file has no mod(name) header")
    if mf.name in reg.entries:
        raise DuplicateModuleError(f"module already registered: {mf.name}")
    entries = dict(reg.entries)
    entries[mf.name] = tuple(mf.clauses)
    return ModuleRegistry(entries, reg.load_paths)


def resolve(reg: ModuleRegistry, name: str) -> DFormula:
    """The module's clauses as one clause: a right-nested conjunction."""
    clauses = reg.clauses(name)
    if not clauses:
        raise ModuleError(f"module {name} has no clauses")
    out = clauses[-1]
    for d in reversed(clauses[:-1]):
        out = DAnd(d, out)
    return out


def find_module_file(reg: ModuleRegistry, path: "Path | str") -> Path:
    p = Path(path)
    candidates = [p] if p.is_absolute() else [p, *(d / p for d in reg.load_paths)]
    for c in candidates:
        if c.is_file():
            return c
    raise ModuleError(f"cannot find module file: {path}")


def load_path(reg: ModuleRegistry, path: "Path | str") -> "tuple[ModuleRegistry, str]":
    """Parse and register the module file at `path`; returns (registry, name).

    Relative paths are tried against the working directory first, then each
    load path (CLI flag or the colon-separated MUTEXLOG_PATH variable).
    """
    p = find_module_file(reg, path)
    mf = parse_program(p.read_text())
    reg2 = register_module(reg, mf)
    assert mf.name is not None
    return reg2, mf.name
