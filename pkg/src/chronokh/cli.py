"""Command line interface.

Exit codes: 0 success, 1 invalid input, 2 an internal verification failed.
All JSON is written with sorted keys so output is byte-stable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .complex import assemble, check_d_squared, euler_characteristic, homology
from .cube import (
    InconsistentObstruction,
    TooLarge,
    UnclassifiableFace,
    build_cube,
    dump,
    solve_sign_assignment,
)
from .diagram import InvalidBasepoint, InvalidDiagram, MalformedInput, PlanarDiagram, parse_pd
from .scalars import ALL_SPECIALIZATIONS, EVEN, ODD, Specialization, UnitMonomial, render_monomial

INVALID = 1
VERIFY_FAILED = 2


class VerificationFailure(RuntimeError):
    def __init__(self, message: str, dump_text: str = ""):
        super().__init__(message)
        self.dump_text = dump_text


# helpers ---------------------------------------------------------------------

def parse_spec(text: str) -> list[Specialization]:
    """``even``, ``odd``, ``all8`` or an explicit triple such as ``1,-1,1``."""
    t = text.strip().lower()
    if t == "even":
        return [EVEN]
    if t == "odd":
        return [ODD]
    if t == "all8":
        return list(ALL_SPECIALIZATIONS)
    try:
        vals = tuple(int(v) for v in t.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad specialization {text!r}") from None
    if len(vals) != 3 or any(v not in (1, -1) for v in vals):
        raise argparse.ArgumentTypeError("explicit specialization needs three values in {1,-1}")
    return [Specialization(*vals)]


def spec_label(s: Specialization):
    if s == EVEN:
        return "even"
    if s == ODD:
        return "odd"
    return list(s)


def read_diagram(path: str) -> PlanarDiagram:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from None
    return parse_pd(text)


def checked_complex(D: PlanarDiagram):
    """Assemble ``Kh(D)`` over the full ring, verifying signs and d^2 = 0."""
    cube = build_cube(D)
    try:
        eps = solve_sign_assignment(cube)
    except InconsistentObstruction as exc:
        raise VerificationFailure(str(exc), dump(cube)) from None
    C = assemble(D, cube, eps)
    rep = check_d_squared(C)
    if not rep:
        raise VerificationFailure(f"d^2 != 0: {rep}", dump(cube, eps))
    return C


def homology_json(D: PlanarDiagram, C, s: Specialization, grading: str) -> dict:
    H = homology(C.specialize(s))
    if grading == "collapsed":
        rows = [{"i": i, "j": j, "rank": r, "torsion": list(t)} for (i, j), (r, t) in sorted(H.collapsed().items())]
    else:
        rows = H.rows()
    chi = euler_characteristic(C).collapsed()
    return {
        "diagram": D.text(),
        "specialization": spec_label(s),
        "grading": grading,
        "homology": rows,
        "euler": {"collapsed": [[j, c] for j, c in chi.items()]},
    }


def emit(obj, output: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _one_or_many(results: list):
    return results[0] if len(results) == 1 else results


def _sparse(M, full: bool) -> list:
    vals = M.vals.tolist()
    if full:
        vals = [render_monomial(UnitMonomial._from_code(v)) for v in vals]
    return sorted([r, c, v] for r, c, v in zip(M.rows.tolist(), M.cols.tolist(), vals))


# commands --------------------------------------------------------------------

def cmd_compute(args) -> int:
    D = read_diagram(args.diagram)
    C = checked_complex(D)
    emit(_one_or_many([homology_json(D, C, s, args.grading) for s in args.spec]), args.output)
    return 0


def cmd_jones(args) -> int:
    from .oracles import jones_oracle

    D = read_diagram(args.diagram)
    C = checked_complex(D)
    chi = euler_characteristic(C).collapsed()
    oracle = jones_oracle(Path(args.diagram).read_text())
    agree = chi == oracle
    emit({"diagram": D.text(), "euler": [[j, c] for j, c in chi.items()],
          "jones": [[j, c] for j, c in sorted(oracle.items())], "agree": agree}, args.output)
    return 0 if agree else VERIFY_FAILED


def cmd_compose(args) -> int:
    from .composite import connected_sum, tensor_over_aprime, union_complex

    D = read_diagram(args.first)
    E = read_diagram(args.second)
    results = []
    passed = True
    if args.op == "union":
        U = union_complex(D, E)
        C = U.complex
        passed = U.bijective() and U.comparison_ok()
        for s in args.spec:
            ok = U.comparison_ok(s)
            passed = passed and ok
            out = homology_json(U.diagram, C, s, args.grading)
            out["comparison"] = "passed" if ok else "failed"
            results.append(out)
    else:
        if not D.basepoints:
            D = D.with_basepoints(_default_bp(D))
        if not E.basepoints:
            E = E.with_basepoints(_default_bp(E))
        S = connected_sum(D, E)
        C = checked_complex(S)
        CD, CE = checked_complex(D), checked_complex(E)
        for s in args.spec:
            HT = homology(tensor_over_aprime(CD.specialize(s), CE.specialize(s)))
            ok = HT == homology(C.specialize(s))
            passed = passed and ok
            out = homology_json(S, C, s, args.grading)
            out["comparison"] = "passed" if ok else "failed"
            results.append(out)
    emit(_one_or_many(results), args.output)
    return 0 if passed else VERIFY_FAILED


def _default_bp(D: PlanarDiagram):
    return min(D.occurrences) if D.occurrences else D.loopKeys[0]


def cmd_module(args) -> int:
    from .modstruct import (
        LETTERS,
        bimodule_axioms,
        build_action,
        module_axioms,
        slide_invariance_check,
        slide_map,
    )

    D = read_diagram(args.diagram)
    bp = args.basepoint
    if bp not in D.componentMap:
        raise InvalidBasepoint(f"basepoint {bp} is not an arc or loop of the diagram")
    D = D.with_basepoints(bp)
    C = checked_complex(D)
    results = []
    ok_all = True
    names = {0: "v+", 1: "v-"}
    for s in args.spec:
        Cs = C.specialize(s)
        L = build_action(Cs, bp, "left")
        rep = module_axioms(L)
        brep = bimodule_axioms(Cs, bp)
        out = {
            "diagram": D.text(),
            "specialization": spec_label(s),
            "basepoint": bp,
            "action": {names[a]: {str(i): _sparse(M, False) for i, M in sorted(L[a].items())} for a in LETTERS},
            "module": rep.as_dict(),
            "bimodule": brep.as_dict(),
            "phi": slide_map().report(s),
        }
        ok_all = ok_all and rep.ok and brep.ok
        if args.slide is not None:
            sr = slide_invariance_check(D, bp, args.slide, s)
            out["slide"] = {"to": args.slide, "literal_equal": sr.literal_equal,
                            "isomorphic": sr.isomorphic, "witness": sr.witness}
            ok_all = ok_all and sr.isomorphic
        results.append(out)
    emit(_one_or_many(results), args.output)
    return 0 if ok_all else VERIFY_FAILED


def cmd_verify(args) -> int:
    from .verify import run_verify

    return run_verify(args.corpus, args.spec if args.spec_given else None,
                      inject_fault=args.inject_fault, output=args.output)


# entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chronokh", description="Unified odd/even Khovanov homology from PD codes.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec_default="even"):
        sp.add_argument("--spec", type=parse_spec, default=parse_spec(spec_default),
                        help="even, odd, all8 or x,y,z with entries in {1,-1}")
        sp.add_argument("--grading", choices=("triple", "collapsed"), default="triple")
        sp.add_argument("--output", "-o", help="write JSON here instead of stdout")

    c = sub.add_parser("compute", help="homology of one diagram")
    c.add_argument("diagram")
    common(c)
    c.set_defaults(func=cmd_compute)

    j = sub.add_parser("jones", help="Euler characteristic against the bracket oracle")
    j.add_argument("diagram")
    j.add_argument("--output", "-o")
    j.set_defaults(func=cmd_jones)

    k = sub.add_parser("compose", help="disjoint union or connected sum of two diagrams")
    k.add_argument("first")
    k.add_argument("second")
    k.add_argument("--op", choices=("union", "connsum"), required=True)
    common(k)
    k.set_defaults(func=cmd_compose)

    m = sub.add_parser("module", help="basepoint action and its checks")
    m.add_argument("--diagram", required=True)
    m.add_argument("--basepoint", type=int, required=True)
    m.add_argument("--slide", type=int)
    common(m)
    m.set_defaults(func=cmd_module)

    v = sub.add_parser("verify", help="run every invariant check over a corpus directory")
    v.add_argument("corpus", nargs="?", help="directory of .pd files (default: bundled corpus)")
    v.add_argument("--spec", type=parse_spec, default=None)
    v.add_argument("--inject-fault", action="store_true",
                   help="perturb one sign per diagram (negative control)")
    v.add_argument("--output", "-o")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else 0
    if args.command == "verify":
        args.spec_given = args.spec is not None
    try:
        return args.func(args)
    except (MalformedInput, InvalidDiagram, InvalidBasepoint, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except (VerificationFailure, UnclassifiableFace) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        text = getattr(exc, "dump_text", "")
        if text:
            sys.stderr.write(text)
        return VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())

