"""The invariant sweep behind ``chronokh verify``.

Every diagram in a corpus directory goes through the same list of checks;
the first failure is named on stderr and the exit code is 2.  A handful of
diagram-independent checks on the algebra ``A'`` and the slide map run once.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .complex import (
    assemble,
    check_d_squared,
    diagonal_support,
    euler_characteristic,
    homogeneous,
    homology,
)
from .corpus import corpus_dir
from .cube import build_cube, degree_lemma_holds, solve_sign_assignment, verify_sign_assignment
from .diagram import PlanarDiagram, parse_pd
from .scalars import ALL_SPECIALIZATIONS, EVEN, MINUS_ONE, ODD, Specialization

CheckFn = Callable[[], bool]


@dataclass
class CheckResult:
    name: str
    ok: bool
    seconds: float


@dataclass
class DiagramReport:
    name: str
    crossings: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def first_failure(self) -> str | None:
        for c in self.checks:
            if not c.ok:
                return c.name
        return None


def _timed(name: str, fn: CheckFn) -> CheckResult:
    t = time.perf_counter()
    ok = bool(fn())
    return CheckResult(name, ok, time.perf_counter() - t)


def _mod2_congruent(C) -> bool:
    E, O = C.specialize(EVEN), C.specialize(ODD)
    for i in C.d:
        a, b = E.diff(i), O.diff(i)
        if not (np.array_equal(a.rows, b.rows) and np.array_equal(a.cols, b.cols)):
            return False
        if np.any((a.vals - b.vals) % 2):
            return False
    return True


def _perturb(eps):
    """Negate one sign on an edge that lies in some face."""
    out = eps.copy()
    key = max(out.eps)
    out.eps[key] = out.eps[key] * MINUS_ONE
    return out


def check_diagram(name: str, D: PlanarDiagram, text: str,
                  specs: list[Specialization], inject_fault: bool = False) -> DiagramReport:
    from .modstruct import actions_commute, bimodule_axioms, build_action
    from .oracles import jones_oracle

    rep = DiagramReport(name, D.n)
    cube = build_cube(D)
    eps = solve_sign_assignment(cube)
    if inject_fault and cube.n >= 2:
        eps = _perturb(eps)
    C = assemble(D, cube, eps)

    rep.checks.append(_timed("sign assignment (delta eps = -psi)", lambda: not verify_sign_assignment(cube, eps)))
    rep.checks.append(_timed("d^2 = 0 over the full ring", lambda: bool(check_d_squared(C))))
    rep.checks.append(_timed("degree lemma a+n = b+m", lambda: degree_lemma_holds(cube)))
    rep.checks.append(_timed("bidegree homogeneity", lambda: homogeneous(C)))
    if not rep.ok:
        return rep
    rep.checks.append(_timed("euler characteristic = jones oracle",
                             lambda: euler_characteristic(C).collapsed() == jones_oracle(text)))
    tables: dict = {}

    def diag():
        for s in specs:
            tables[s] = homology(C.specialize(s))
            if not diagonal_support(tables[s]):
                return False
        return True

    rep.checks.append(_timed("diagonal support", diag))
    rep.checks.append(_timed("EVEN and ODD agree mod 2", lambda: _mod2_congruent(C) and
                             homology(C.specialize(EVEN), 2) == homology(C.specialize(ODD), 2)))

    bp = min(D.occurrences) if D.occurrences else D.loopKeys[0]
    rep.checks.append(_timed("bimodule axioms over the full ring", lambda: bimodule_axioms(C, bp).ok))
    if D.componentCount > 1:
        bps = []
        for comp in range(D.componentCount):
            bps.append(min(k for k, c in D.componentMap.items() if c == comp))

        def multi():
            acts = [build_action(C, b, "left") for b in bps]
            return actions_commute(acts) and all(a.chain_map() for a in acts)

        rep.checks.append(_timed("multi-basepoint actions commute", multi))
    return rep


def global_checks() -> list[CheckResult]:
    from .modstruct import algebra_axioms, slide_map

    phi = slide_map()
    out = [
        _timed("A' associative, unital, symmetric (full ring)", lambda: all(algebra_axioms().values())),
        _timed("A' axioms in all eight specializations",
               lambda: all(all(algebra_axioms(s).values()) for s in ALL_SPECIALIZATIONS)),
        _timed("phi invertible", lambda: all(abs(phi.determinant(s)) == 1 for s in ALL_SPECIALIZATIONS)),
        _timed("phi = id in ODD", lambda: phi.is_identity(ODD)),
    ]
    return out


def run_verify(directory: str | None = None, specs: list[Specialization] | None = None,
               inject_fault: bool = False, output: str | None = None, stream=None) -> int:
    stream = stream or sys.stderr
    specs = list(specs) if specs else list(ALL_SPECIALIZATIONS)
    root = Path(directory) if directory else corpus_dir()
    if not root.is_dir():
        print(f"error: {root} is not a directory", file=stream)
        return 1
    files = sorted(root.glob("*.pd"))
    if not files:
        print(f"warning: no .pd files in {root}", file=stream)
        return 0
    t0 = time.perf_counter()
    failures = []
    summary = {"global": [], "diagrams": []}
    for c in global_checks():
        summary["global"].append({"check": c.name, "ok": c.ok})
        print(f"{'ok  ' if c.ok else 'FAIL'} {c.name}", file=stream)
        if not c.ok:
            failures.append(("(global)", c.name))
    for path in files:
        text = path.read_text()
        try:
            D = parse_pd(text)
        except ValueError as exc:
            print(f"error: {path.name}: {exc}", file=stream)
            return 1
        rep = check_diagram(path.stem, D, text, specs, inject_fault)
        secs = sum(c.seconds for c in rep.checks)
        bad = rep.first_failure()
        status = "ok  " if rep.ok else "FAIL"
        print(f"{status} {path.stem} (n={D.n}, {secs:.2f}s)" + (f": {bad}" if bad else ""), file=stream)
        summary["diagrams"].append({"name": path.stem, "crossings": D.n, "ok": rep.ok,
                                    "checks": [{"check": c.name, "ok": c.ok} for c in rep.checks]})
        if bad:
            failures.append((path.stem, bad))
    summary["seconds"] = round(time.perf_counter() - t0, 3)
    summary["ok"] = not failures
    if output:
        Path(output).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    if failures:
        name, check = failures[0]
        print(f"first failing invariant: {check} on {name}", file=stream)
        return 2
    print(f"all checks passed on {len(files)} diagrams in {summary['seconds']:.1f}s", file=stream)
    return 0
