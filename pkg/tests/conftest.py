from pathlib import Path

import pytest

from mutexlog.engine import Config, collect_answers
from mutexlog.modules import load_path, registry_with_paths
from mutexlog.oracle import canonical_bindings, random_instance

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def sort_registry():
    """Registry with all four fixture modules loaded."""
    reg = registry_with_paths([FIXTURES])
    for name in ("lists.mw", "quicksort.mw", "heapsort.mw", "sort.mw"):
        reg, _ = load_path(reg, FIXTURES / name)
    return reg


@pytest.fixture(scope="session")
def corpus():
    """The 200 seeded instances the acceptance criteria run over."""
    return [random_instance(seed) for seed in range(200)]


@pytest.fixture(scope="session")
def answer_set():
    """(program, goal, mode, depth, registry) -> (canonical answer set, hit_limit)."""

    def go(program, goal, mode="off", depth=None, registry=None):
        cfg = Config(commit_mode=mode, depth_limit=depth)
        answers, cut = collect_answers(program, goal, cfg, registry)
        return {canonical_bindings(a.bindings) for a in answers}, cut

    return go
