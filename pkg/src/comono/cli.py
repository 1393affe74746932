"""Batch command-line front end.

Commands parse a definition document (or a builtin fixture), run validators
and criteria, and emit human-readable or ``--json`` reports.  Exit statuses
are a stable contract: 0 success (or verdict mono), 1 the checked property
fails, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .builtins import BUILTIN_NAMES, builtin_document
from .coalgebra import (
    format_combination,
    validate_bicomodule,
    validate_coalgebra,
    validate_comodule,
    validate_morphism,
)
from .constructions import (
    algebra_epi_check,
    dual_algebra,
    dual_morphism,
    quotient,
    random_morphism,
    trivial_coextension,
)
from .cotensor import cotensor
from .errors import ComonoError, NotCoidealError, ParseError, TheoremViolationError
from .fields import GF, QQ
from .monocheck import h0, is_monomorphism
from .textfmt import DefinitionDocument, parse_document, serialize_document

EXIT_OK = 0
EXIT_PROPERTY_FAILS = 1
EXIT_INPUT_ERROR = 2


class _CommandError(Exception):
    def __init__(self, message, code=EXIT_INPUT_ERROR):
        super().__init__(message)
        self.code = code


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _load_document(args):
    if args.builtin and args.file:
        raise _CommandError("give either a file or --builtin, not both")
    if args.builtin:
        try:
            return builtin_document(args.builtin)
        except ValueError as exc:
            raise _CommandError(str(exc)) from None
    if not args.file:
        raise _CommandError("a definition file or --builtin is required")
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _CommandError(f"cannot read {path}: {exc}") from None
    return parse_document(text)


def _named(mapping, name, what):
    try:
        return mapping[name]
    except KeyError:
        raise _CommandError(f"no {what} named {name!r} in the document") from None


def _field_tag(field):
    return "Q" if field == QQ else field.name


def _add_source_args(sub):
    sub.add_argument("file", nargs="?", help="definition file (coalg-format 1)")
    sub.add_argument(
        "--builtin",
        choices=BUILTIN_NAMES,
        help="use a builtin fixture instead of a file",
    )
    sub.add_argument("--json", action="store_true", help="machine-readable report")


def _subspace_payload(space, labels, field):
    return [
        format_combination(row, labels, field) for row in space.canonicalize().basis.a
    ]


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    doc = _load_document(args)
    reports = []
    for C in doc.coalgebras.values():
        reports.append(validate_coalgebra(C))
    for M in doc.right_comodules.values():
        reports.append(validate_comodule(M))
    for N in doc.left_comodules.values():
        reports.append(validate_comodule(N))
    for B in doc.bicomodules.values():
        reports.append(validate_bicomodule(B))
    for phi in doc.morphisms.values():
        reports.append(validate_morphism(phi))
    ok = all(r.ok for r in reports)
    payload = {
        "command": "validate",
        "field": _field_tag(doc.field),
        "ok": ok,
        "reports": [
            {
                "subject": r.subject,
                "ok": r.ok,
                "violations": [
                    {"law": v.law, "at": list(v.at), "value": v.detail}
                    for v in r.violations
                ],
            }
            for r in reports
        ],
    }
    _emit(args, payload, [r.summary() for r in reports])
    return EXIT_OK if ok else EXIT_PROPERTY_FAILS


def _verdict_lines(verdict):
    lines = [
        f"morphism: {verdict.morphism.name} "
        f"({verdict.morphism.source.name} -> {verdict.morphism.target.name})",
        f"kernel dim: {verdict.kernel_dim}",
        f"injective: {str(verdict.injective).lower()}",
        f"self-cotensor dim: {verdict.cotensor_dim}",
    ]
    for name, res in verdict.results.items():
        lines.append(f"{name.replace('_', '-')}: {'holds' if res.holds else 'fails'}")
        if res.witness is not None:
            lines.append(f"  witness: {res.witness}")
    if verdict.h0_equal_on_self_cotensor is not None:
        lines.append(
            "h0-equal-on-self-cotensor: "
            + str(verdict.h0_equal_on_self_cotensor).lower()
        )
    lines.append(f"verdict: {'mono' if verdict.is_mono else 'not-mono'}")
    return lines


def cmd_mono_check(args):
    doc = _load_document(args)
    if args.morphism:
        phi = _named(doc.morphisms, args.morphism, "morphism")
    elif len(doc.morphisms) == 1:
        phi = next(iter(doc.morphisms.values()))
    else:
        raise _CommandError(
            "the document defines "
            + (f"{len(doc.morphisms)} morphisms" if doc.morphisms else "no morphism")
            + "; name one explicitly"
        )
    for rep in (
        validate_coalgebra(phi.source),
        validate_coalgebra(phi.target),
        validate_morphism(phi),
    ):
        if not rep.ok:
            raise _CommandError("invalid input:\n" + rep.summary())
    verdict = is_monomorphism(
        phi, crosscheck=not args.skip_crosscheck, attach_h0=not args.skip_crosscheck
    )
    payload = {"command": "mono-check", "field": _field_tag(doc.field)}
    payload.update(verdict.to_dict())
    _emit(args, payload, _verdict_lines(verdict))
    return EXIT_OK if verdict.is_mono else EXIT_PROPERTY_FAILS


def cmd_cotensor(args):
    doc = _load_document(args)
    M = _named(doc.right_comodules, args.right, "right comodule")
    N = _named(doc.left_comodules, args.left, "left comodule")
    X = cotensor(M, N)
    labels = X.ambient_labels()
    basis = _subspace_payload(X.space, labels, doc.field)
    payload = {
        "command": "cotensor",
        "field": _field_tag(doc.field),
        "right_factor": M.name,
        "left_factor": N.name,
        "over": X.over.name,
        "dim": X.dim,
        "basis": basis,
    }
    lines = [f"{M.name} [] {N.name} over {X.over.name}: dim {X.dim}"]
    lines += [f"  {b}" for b in basis]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_h0(args):
    doc = _load_document(args)
    N = _named(doc.bicomodules, args.bicomodule, "bicomodule")
    C = _named(doc.coalgebras, args.coalgebra, "coalgebra")
    if N.left_over != C or N.right_over != C:
        raise _CommandError(
            f"{args.bicomodule!r} is not a bicomodule over {args.coalgebra!r} on both sides"
        )
    space = h0(N)
    dual_labels = [f"{lbl}*" for lbl in N.labels]
    basis = _subspace_payload(space.space, dual_labels, doc.field)
    payload = {
        "command": "h0",
        "field": _field_tag(doc.field),
        "bicomodule": N.name,
        "coalgebra": C.name,
        "dim": space.dim,
        "basis": basis,
    }
    lines = [f"H0({N.name}, {C.name}): dim {space.dim}"] + [f"  {b}" for b in basis]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_quotient(args):
    doc = _load_document(args)
    C = _named(doc.coalgebras, args.coalgebra, "coalgebra")
    decl = _named(doc.subspaces, args.subspace, "subspace")
    if decl.over != args.coalgebra:
        raise _CommandError(f"subspace {args.subspace!r} lives in {decl.over!r}, not in {args.coalgebra!r}")
    try:
        D, pi = quotient(C, decl.space, name=f"{args.coalgebra}_q")
    except NotCoidealError as exc:
        _emit(
            args,
            {"command": "quotient", "ok": False, "certificate": str(exc.certificate)},
            [f"rejected: {exc}"],
        )
        return EXIT_PROPERTY_FAILS
    out = DefinitionDocument(field=doc.field)
    out.coalgebras[C.name] = C
    out.coalgebras[D.name] = D
    out.morphisms["pi"] = pi
    text = serialize_document(out)
    payload = {
        "command": "quotient",
        "ok": True,
        "quotient_dim": D.dim,
        "document": text,
    }
    _emit(args, payload, [text.rstrip()])
    return EXIT_OK


def cmd_coextend(args):
    doc = _load_document(args)
    C = _named(doc.coalgebras, args.coalgebra, "coalgebra")
    N = _named(doc.bicomodules, args.bicomodule, "bicomodule")
    try:
        coext = trivial_coextension(C, N, name=f"{C.name}_x_{N.name}")
    except ComonoError as exc:
        raise _CommandError(str(exc)) from None
    out = DefinitionDocument(field=doc.field)
    out.coalgebras[C.name] = C
    out.coalgebras[coext.coalgebra.name] = coext.coalgebra
    out.morphisms["pi"] = coext.projection
    text = serialize_document(out)
    payload = {
        "command": "coextend",
        "total_dim": coext.coalgebra.dim,
        "document": text,
    }
    _emit(args, payload, [text.rstrip()])
    return EXIT_OK


def cmd_dualize(args):
    doc = _load_document(args)
    C = _named(doc.coalgebras, args.coalgebra, "coalgebra")
    A = dual_algebra(C)
    f = doc.field
    products = {}
    for i, li in enumerate(A.labels):
        for j, lj in enumerate(A.labels):
            col = A.mult.a[:, i * A.dim + j]
            products[f"{li}.{lj}"] = format_combination(col, A.labels, f)
    unit = format_combination(A.unit.a[:, 0], A.labels, f)
    payload = {
        "command": "dualize",
        "field": _field_tag(doc.field),
        "coalgebra": C.name,
        "dim": A.dim,
        "unit": unit,
        "products": products,
    }
    lines = [f"dual algebra of {C.name}: dim {A.dim}", f"unit: {unit}"]
    lines += [f"  {k} = {v}" for k, v in products.items()]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_demo(args):
    if args.name != "paper-example":
        raise _CommandError("the only demo is 'paper-example'")
    doc = builtin_document("paper-example")
    phi = doc.morphisms["pi"]
    verdict = is_monomorphism(phi, crosscheck=True, attach_h0=True)
    dual_check = algebra_epi_check(dual_morphism(phi))
    payload = {"command": "demo", "name": args.name}
    payload.update(verdict.to_dict())
    payload["dual_map_is_ring_epi"] = dual_check.is_epi
    payload["dual_tensor_dim"] = dual_check.tensor_dim
    lines = _verdict_lines(verdict)
    lines.append(
        f"dual-map ring-epi check: {'holds' if dual_check.is_epi else 'fails'} "
        f"(dim B(x)_A B = {dual_check.tensor_dim})"
    )
    _emit(args, payload, lines)
    expected = (
        verdict.is_mono
        and not verdict.injective
        and verdict.kernel_dim == 1
        and verdict.cotensor_dim == 4
        and dual_check.is_epi
    )
    return EXIT_OK if expected else EXIT_PROPERTY_FAILS


def _parse_seed_range(text):
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise _CommandError(f"seed range must read a..b, got {text!r}") from None
    if hi < lo:
        raise _CommandError("empty seed range")
    return lo, hi


def _parse_fields(text):
    out = []
    for tag in text.split(","):
        tag = tag.strip()
        if tag == "Q":
            out.append(QQ)
        elif tag.startswith("F"):
            try:
                out.append(GF(int(tag[1:])))
            except ValueError as exc:
                raise _CommandError(str(exc)) from None
        else:
            raise _CommandError(f"unknown field tag {tag!r}")
    return out


def cmd_fuzz(args):
    lo, hi = _parse_seed_range(args.seeds)
    fields = _parse_fields(args.fields)
    results = []
    disagreements = 0
    for field in fields:
        tag = _field_tag(field)
        for seed in range(lo, hi + 1):
            phi = random_morphism(seed, max_dim=args.max_dim, field=field)
            row = {
                "seed": seed,
                "field": tag,
                "source_dim": phi.source.dim,
                "target_dim": phi.target.dim,
            }
            try:
                verdict = is_monomorphism(phi, crosscheck=not args.skip_crosscheck)
                row["verdict"] = "mono" if verdict.is_mono else "not-mono"
                row["agree"] = True
            except TheoremViolationError as exc:
                disagreements += 1
                row["verdict"] = "disagreement"
                row["agree"] = False
                row["detail"] = str(exc)
            results.append(row)
    mono = sum(1 for r in results if r["verdict"] == "mono")
    payload = {
        "command": "fuzz",
        "seeds": [lo, hi],
        "max_dim": args.max_dim,
        "fields": [_field_tag(f) for f in fields],
        "instances": len(results),
        "mono": mono,
        "disagreements": disagreements,
        "results": results,
    }
    lines = []
    if args.verbose:
        lines += [
            f"seed {r['seed']:>5} [{r['field']}] dims {r['source_dim']}->{r['target_dim']}: {r['verdict']}"
            for r in results
        ]
    lines.append(
        f"{len(results)} instances over {','.join(_field_tag(f) for f in fields)}: "
        f"{mono} mono, {len(results) - mono - disagreements} not mono, "
        f"{disagreements} criteria disagreements"
    )
    _emit(args, payload, lines)
    return EXIT_OK if disagreements == 0 else EXIT_PROPERTY_FAILS


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="comono",
        description="Exact checks for finite-dimensional coalgebras: validation, "
        "cotensor products, zeroth cohomology, and monomorphism verdicts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run all axiom validators over a document")
    _add_source_args(p)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("mono-check", help="decide whether a coalgebra map is a monomorphism")
    _add_source_args(p)
    p.add_argument("morphism", nargs="?", help="morphism name (optional if unique)")
    p.add_argument(
        "--skip-crosscheck",
        action="store_true",
        help="run only the counit-balance criterion",
    )
    p.set_defaults(handler=cmd_mono_check)

    p = sub.add_parser("cotensor", help="compute the cotensor product of two comodules")
    _add_source_args(p)
    p.add_argument("right", help="name of the right comodule (left cotensor factor)")
    p.add_argument("left", help="name of the left comodule (right cotensor factor)")
    p.set_defaults(handler=cmd_cotensor)

    p = sub.add_parser("h0", help="compute H0 of a bicomodule")
    _add_source_args(p)
    p.add_argument("bicomodule", help="bicomodule name")
    p.add_argument("coalgebra", help="its coefficient coalgebra (both sides)")
    p.set_defaults(handler=cmd_h0)

    p = sub.add_parser("quotient", help="quotient a coalgebra by a coideal")
    _add_source_args(p)
    p.add_argument("coalgebra", help="coalgebra name")
    p.add_argument("subspace", help="subspace name (must be a coideal)")
    p.set_defaults(handler=cmd_quotient)

    p = sub.add_parser("coextend", help="build the trivial coextension C x| N")
    _add_source_args(p)
    p.add_argument("coalgebra", help="base coalgebra name")
    p.add_argument("bicomodule", help="(C, C)-bicomodule name")
    p.set_defaults(handler=cmd_coextend)

    p = sub.add_parser("dualize", help="print the convolution algebra of a coalgebra")
    _add_source_args(p)
    p.add_argument("coalgebra", help="coalgebra name")
    p.set_defaults(handler=cmd_dualize)

    p = sub.add_parser("demo", help="run the bundled worked example end to end")
    p.add_argument("name", choices=["paper-example"])
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(handler=cmd_demo)

    p = sub.add_parser("fuzz", help="criteria-equivalence batch over seeded morphisms")
    p.add_argument("--seeds", required=True, help="inclusive seed range a..b")
    p.add_argument("--max-dim", type=int, default=6, help="coalgebra dimension budget")
    p.add_argument("--fields", default="Q,F7", help="comma list of field tags (Q, F<p>)")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--verbose", action="store_true", help="one line per instance")
    p.add_argument(
        "--skip-crosscheck",
        action="store_true",
        help="run only the counit-balance criterion (no equivalence checking)",
    )
    p.set_defaults(handler=cmd_fuzz)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ComonoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
