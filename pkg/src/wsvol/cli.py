"""Command-line entry point.

Every subcommand prints one JSON document (or writes it to ``--out``).
Exit status: 0 on success, 1 on invalid input, 2 when an enumeration guard
is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bounds import (BoundsError, KnownFact, compile_report, exceptional_primes_report,
                     feasible_over, load_facts)
from .complex import (ComplexError, DeltaComplex, NonOrientableError,
                      euler_characteristic, orientation, validate)
from .constructions import fixture
from .coverings import CoverError, CoverSpec, cover_summary, stabilize
from .homology import fundamental_class_check, homology_profile
from .linalg import (ExactMatrix, FieldSpec, FieldSpecError, MatrixError,
                     SolutionQuery, elementary_divisor_primes, integer_kernel_basis,
                     smith_normal_form)
from .models import (AugmentedSystem, EnumerationGuardError, ModelComplex,
                     algebraic_min_cycle_size)


class UsageError(ValueError):
    pass


def _read_json(path: str):
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc


def _load_complex(ref: str) -> DeltaComplex:
    if ref.startswith("fixture:"):
        return fixture(ref.split(":", 1)[1])
    return DeltaComplex.from_json(_read_json(ref))


def _fields(values: list[str] | None, default: list[str]) -> list[FieldSpec]:
    out = []
    for v in values or default:
        F = FieldSpec.parse(v)
        if F not in out:
            out.append(F)
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").strip("[]").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from exc


# -- subcommands -------------------------------------------------------------

def cmd_validate(args) -> dict:
    X = _load_complex(args.complex)
    diag = validate(X)
    doc = {"complex": X.name or args.complex, "dimension": X.dimension,
           "cells": list(X.cell_counts), "euler": euler_characteristic(X),
           "validation": diag.to_json()}
    if diag.ok:
        try:
            o = orientation(X)
            doc["orientation"] = list(o.signs)
            doc["fundamental_class"] = fundamental_class_check(X, o)
        except NonOrientableError:
            doc["orientation"] = "non-orientable"
    return doc


def cmd_homology(args) -> dict:
    X = _load_complex(args.complex)
    return {"complex": X.name or args.complex,
            "profiles": [homology_profile(X, F).to_json()
                         for F in _fields(args.field, ["q", "z"])]}


def cmd_bounds(args) -> dict:
    X = _load_complex(args.complex)
    facts: list[KnownFact] = load_facts(args.facts) if args.facts else []
    reports = compile_report(X, _fields(args.field, ["fp:2", "q", "z"]), facts, args.m_max)
    return {"complex": X.name or args.complex,
            "facts": [f.to_json() for f in facts],
            "reports": [r.to_json() for r in reports.values()]}


def cmd_model_search(args) -> dict:
    return {"searches": [algebraic_min_cycle_size(args.dim, F, args.max).to_json()
                         for F in _fields(args.field, ["fp:2", "q"])]}


def _query(args) -> SolutionQuery:
    if args.model:
        Zm = ModelComplex.from_json(_read_json(args.model))
        degrees = _int_list(args.degrees) if args.degrees else [1] * Zm.m
        return AugmentedSystem.for_model(Zm, degrees).query()
    if not args.matrix:
        raise UsageError("exceptional-primes needs --matrix or --model")
    A = ExactMatrix.from_json(_read_json(args.matrix))
    if A.field.kind != "integers":
        raise UsageError("exceptional-primes needs an integer matrix")
    target = _int_list(args.target) if args.target else None
    return SolutionQuery(A, None if target is None else tuple(target))


def cmd_exceptional_primes(args) -> dict:
    q = _query(args)
    primes = sorted(exceptional_primes_report(q))
    check = _int_list(args.primes) if args.primes else [2, 3, 5, 7]
    return {"matrix": q.matrix.to_json(), "target": list(q.target) if q.target else None,
            "exceptional_primes": primes,
            "feasible": {"q": feasible_over(q, FieldSpec.q()),
                         **{f"fp:{p}": feasible_over(q, FieldSpec.fp(p)) for p in check}}}


def cmd_cover(args) -> dict:
    X = _load_complex(args.complex)
    spec = CoverSpec.from_json(_read_json(args.spec), X.cell_counts[1])
    return cover_summary(X, spec)


def cmd_stabilize(args) -> dict:
    return stabilize(args.genus, args.dmax, FieldSpec.parse(args.field)).to_json()


def cmd_snf(args) -> dict:
    A = ExactMatrix.from_json(_read_json(args.matrix))
    if A.field.kind != "integers":
        raise UsageError("snf needs an integer matrix")
    snf = smith_normal_form(A)
    return {"matrix": A.to_json(), "divisors": list(snf.divisors), "rank": snf.rank,
            "S": snf.S.to_json(), "T": snf.T.to_json(),
            "primes": sorted(elementary_divisor_primes(A)),
            "kernel_basis": integer_kernel_basis(A)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wsvol", description="Bounds for weightless simplicial volumes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write JSON here instead of stdout")
        return p

    field_help = "coefficient system: q, z, fp:<p> or fp2:<p>[:<c0>,<c1>] (repeatable)"
    complex_help = "complex JSON path, or fixture:<name>"

    p = add("validate", cmd_validate, "check a Δ-complex and find its orientation")
    p.add_argument("--complex", required=True, help=complex_help)

    p = add("homology", cmd_homology, "Betti numbers and torsion")
    p.add_argument("--complex", required=True, help=complex_help)
    p.add_argument("--field", action="append", help=field_help)

    p = add("bounds", cmd_bounds, "lower/upper bounds per coefficient system")
    p.add_argument("--complex", required=True, help=complex_help)
    p.add_argument("--field", action="append", help=field_help)
    p.add_argument("--facts", help="JSON list of known facts")
    p.add_argument("--m-max", type=int, default=None, dest="m_max",
                   help="cap on the model-search size")

    p = add("model-search", cmd_model_search, "least model size with a totally nonzero cycle")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--field", action="append", help=field_help)
    p.add_argument("--max", type=int, required=True)

    p = add("exceptional-primes", cmd_exceptional_primes,
            "primes where F_p-solvability can differ from Q")
    p.add_argument("--matrix", help="integer matrix JSON")
    p.add_argument("--target", help="right-hand side, e.g. 0,0,1 (default: homogeneous)")
    p.add_argument("--model", help="model complex JSON (uses its augmented system)")
    p.add_argument("--degrees", help="degree row for --model, e.g. 1,-1")
    p.add_argument("--primes", help="primes to test feasibility at (default 2,3,5,7)")

    p = add("cover", cmd_cover, "build and analyse a finite cover")
    p.add_argument("--complex", required=True, help=complex_help)
    p.add_argument("--spec", required=True, help="cover spec JSON")

    p = add("stabilize", cmd_stabilize, "volume ratios along cyclic covers of a surface")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--field", default="fp:2", help="coefficient system (default fp:2)")

    p = add("snf", cmd_snf, "Smith normal form of an integer matrix")
    p.add_argument("--matrix", required=True, help="integer matrix JSON")
    return parser


def _emit(doc: dict, out: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    envelope = {"tool": "wsvol", "version": __version__, "command": args.command}
    try:
        result = args.func(args)
    except EnumerationGuardError as exc:
        _emit({**envelope, "error": {"type": "guard", "message": str(exc)}}, args.out)
        return 2
    except (UsageError, ComplexError, MatrixError, FieldSpecError, BoundsError,
            CoverError, ValueError, KeyError) as exc:
        _emit({**envelope, "error": {"type": type(exc).__name__, "message": str(exc)}},
              args.out)
        return 1
    _emit({**envelope, "result": result}, args.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
