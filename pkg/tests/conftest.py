import functools

import pytest

from chronokh.complex import assemble, homology
from chronokh.corpus import load, load_corpus
from chronokh.cube import build_cube, solve_sign_assignment

# acceptance results, printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def corpus():
    return load_corpus()


@functools.lru_cache(maxsize=None)
def cube_and_signs(name: str):
    D = corpus()[name] if name in corpus() else load(name)
    cube = build_cube(D)
    return D, cube, solve_sign_assignment(cube)


@functools.lru_cache(maxsize=None)
def full_complex(name: str):
    D, cube, eps = cube_and_signs(name)
    return assemble(D, cube, eps)


@functools.lru_cache(maxsize=None)
def table(name: str, spec, field=0):
    return homology(full_complex(name).specialize(spec), field)


@pytest.fixture(scope="session")
def corpus_names():
    return sorted(corpus())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k:2d}: {msg}")
