"""The ``coalg-format 1`` definition-file format: parser and serializer.

A document is line-based.  It opens with the header ``coalg-format 1``,
optionally declares a field (``field Q`` or ``field F <p>``; Q is the
default), and then lists named blocks terminated by ``end``.  Inside a block
the comultiplication, coactions, morphisms and spanning vectors are given
sparsely, one term per line; omitted terms are zero and repeated lines
accumulate.  ``#`` starts a comment.

    coalgebra GH
      basis g h
      delta g g g 1
      counit g 1
      ...
    end

    morphism eps from GH to PT
      map g e 1
    end

    right-comodule M over GH   # coact <element> <module-factor> <coalgebra-factor> <coeff>
    left-comodule N over GH    # coact <element> <coalgebra-factor> <module-factor> <coeff>
    bicomodule B over GH GH    # left <el> <coalg> <module> <coeff>; right <el> <module> <coalg> <coeff>
    subspace I in GH           # span (<label> <coeff>)+

Blocks may only refer to names defined earlier in the document.  Scalars are
integers or fractions ``a/b`` and must be meaningful in the declared field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .coalgebra import (
    Bicomodule,
    Coalgebra,
    CoalgebraMorphism,
    LeftComodule,
    RightComodule,
)
from .errors import ParseError
from .fields import GF, QQ
from .linalg import Matrix, Subspace

HEADER = "coalg-format 1"

_BLOCK_RE = {
    "coalgebra": re.compile(r"^coalgebra\s+(\S+)\s*$"),
    "morphism": re.compile(r"^morphism\s+(\S+)\s+from\s+(\S+)\s+to\s+(\S+)\s*$"),
    "right-comodule": re.compile(r"^right-comodule\s+(\S+)\s+over\s+(\S+)\s*$"),
    "left-comodule": re.compile(r"^left-comodule\s+(\S+)\s+over\s+(\S+)\s*$"),
    "bicomodule": re.compile(r"^bicomodule\s+(\S+)\s+over\s+(\S+)\s+(\S+)\s*$"),
    "subspace": re.compile(r"^subspace\s+(\S+)\s+in\s+(\S+)\s*$"),
}


@dataclass(frozen=True)
class SubspaceDecl:
    name: str
    over: str
    space: Subspace


@dataclass
class DefinitionDocument:
    """Named exact-arithmetic structures parsed from one definition file."""

    field: object = QQ
    coalgebras: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    right_comodules: dict = dc_field(default_factory=dict)
    left_comodules: dict = dc_field(default_factory=dict)
    bicomodules: dict = dc_field(default_factory=dict)
    subspaces: dict = dc_field(default_factory=dict)

    def all_names(self):
        out = []
        for group in (
            self.coalgebras,
            self.morphisms,
            self.right_comodules,
            self.left_comodules,
            self.bicomodules,
            self.subspaces,
        ):
            out.extend(group)
        return out

    def is_empty(self):
        return not self.all_names()


def _tokens(line):
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


class _Parser:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.doc = DefinitionDocument()
        self.field_declared = False

    def fail(self, message, lineno, col=None):
        raise ParseError(message, line=lineno, column=col)

    def scalar(self, text, lineno, col):
        try:
            return self.doc.field.promote(self.doc.field.parse_scalar(text))
        except Exception as exc:
            self.fail(f"bad scalar {text!r}: {exc}", lineno, col)

    def coalgebra_ref(self, name, lineno, col):
        try:
            return self.doc.coalgebras[name]
        except KeyError:
            self.fail(f"unknown coalgebra {name!r}", lineno, col)

    def check_fresh(self, name, lineno):
        if name in set(self.doc.all_names()):
            self.fail(f"duplicate name {name!r}", lineno)

    def parse(self):
        body = []
        for lineno, raw in enumerate(self.lines, start=1):
            line = raw.split("#", 1)[0].rstrip()
            if line.strip():
                body.append((lineno, line.strip()))
        if not body:
            raise ParseError("empty document")
        first_lineno, first = body[0]
        if first != HEADER:
            self.fail(f"expected header {HEADER!r}", first_lineno)
        i = 1
        while i < len(body):
            lineno, line = body[i]
            toks = _tokens(line)
            head = toks[0][0]
            if head == "field":
                self.parse_field(toks, lineno)
                i += 1
                continue
            for kind, rx in _BLOCK_RE.items():
                m = rx.match(line)
                if m:
                    j = i + 1
                    block = []
                    while j < len(body) and body[j][1] != "end":
                        block.append(body[j])
                        j += 1
                    if j == len(body):
                        self.fail(f"block {m.group(1)!r} is never closed with 'end'", lineno)
                    getattr(self, "parse_" + kind.replace("-", "_"))(m, block, lineno)
                    i = j + 1
                    break
            else:
                self.fail(f"unrecognized statement {head!r}", lineno, toks[0][1])
        if self.doc.is_empty():
            raise ParseError("document defines nothing", line=first_lineno)
        return self.doc

    def parse_field(self, toks, lineno):
        if self.field_declared:
            self.fail("field declared twice", lineno)
        if not self.doc.is_empty():
            self.fail("field must be declared before any definitions", lineno)
        args = [t for t, _ in toks[1:]]
        if args == ["Q"]:
            self.doc.field = QQ
        elif len(args) == 2 and args[0] == "F":
            try:
                self.doc.field = GF(int(args[1]))
            except ValueError as exc:
                self.fail(str(exc), lineno, toks[2][1])
        else:
            self.fail(f"unknown field tag {' '.join(args)!r} (expected 'Q' or 'F <p>')", lineno)
        self.field_declared = True

    def _basis_and_rest(self, block, owner, lineno):
        if not block or not block[0][1].startswith("basis"):
            self.fail(f"block {owner!r} must open with a basis line", lineno)
        basis_line, basis_toks = block[0][0], _tokens(block[0][1])
        labels = [t for t, _ in basis_toks[1:]]
        if not labels:
            self.fail("basis line lists no labels", basis_line)
        if len(set(labels)) != len(labels):
            self.fail("duplicate basis labels", basis_line)
        return labels, block[1:]

    def _label_index(self, labels, tok, lineno, col, what="basis element"):
        try:
            return labels.index(tok)
        except ValueError:
            self.fail(f"unknown {what} {tok!r}", lineno, col)

    def parse_coalgebra(self, m, block, lineno):
        name = m.group(1)
        self.check_fresh(name, lineno)
        labels, rest = self._basis_and_rest(block, name, lineno)
        f = self.doc.field
        n = len(labels)
        d = f.zeros(n * n, n)
        eps = f.zeros(1, n)
        for ln, line in rest:
            toks = _tokens(line)
            head = toks[0][0]
            if head == "delta":
                if len(toks) != 5:
                    self.fail("delta lines read: delta <element> <left> <right> <coeff>", ln)
                k = self._label_index(labels, toks[1][0], ln, toks[1][1])
                i = self._label_index(labels, toks[2][0], ln, toks[2][1])
                j = self._label_index(labels, toks[3][0], ln, toks[3][1])
                c = self.scalar(toks[4][0], ln, toks[4][1])
                d[i * n + j, k] = f.post(d[i * n + j, k] + c)
            elif head == "counit":
                if len(toks) != 3:
                    self.fail("counit lines read: counit <element> <coeff>", ln)
                k = self._label_index(labels, toks[1][0], ln, toks[1][1])
                eps[0, k] = f.post(eps[0, k] + self.scalar(toks[2][0], ln, toks[2][1]))
            else:
                self.fail(f"unexpected line {head!r} in coalgebra block", ln, toks[0][1])
        self.doc.coalgebras[name] = Coalgebra(name, labels, Matrix(f, d), Matrix(f, eps))

    def parse_morphism(self, m, block, lineno):
        name, src_name, tgt_name = m.group(1), m.group(2), m.group(3)
        self.check_fresh(name, lineno)
        src = self.coalgebra_ref(src_name, lineno, None)
        tgt = self.coalgebra_ref(tgt_name, lineno, None)
        f = self.doc.field
        a = f.zeros(tgt.dim, src.dim)
        for ln, line in block:
            toks = _tokens(line)
            if toks[0][0] != "map" or len(toks) != 4:
                self.fail("morphism lines read: map <source-element> <target-element> <coeff>", ln)
            j = self._label_index(src.labels, toks[1][0], ln, toks[1][1], "source element")
            i = self._label_index(tgt.labels, toks[2][0], ln, toks[2][1], "target element")
            a[i, j] = f.post(a[i, j] + self.scalar(toks[3][0], ln, toks[3][1]))
        self.doc.morphisms[name] = CoalgebraMorphism(src, tgt, Matrix(f, a), name=name)

    def parse_right_comodule(self, m, block, lineno):
        name, over_name = m.group(1), m.group(2)
        self.check_fresh(name, lineno)
        over = self.coalgebra_ref(over_name, lineno, None)
        labels, rest = self._basis_and_rest(block, name, lineno)
        f = self.doc.field
        mm, n = len(labels), over.dim
        co = f.zeros(mm * n, mm)
        for ln, line in rest:
            toks = _tokens(line)
            if toks[0][0] != "coact" or len(toks) != 5:
                self.fail(
                    "right-comodule lines read: coact <element> <module-factor> "
                    "<coalgebra-factor> <coeff>",
                    ln,
                )
            a = self._label_index(labels, toks[1][0], ln, toks[1][1])
            b = self._label_index(labels, toks[2][0], ln, toks[2][1])
            i = self._label_index(over.labels, toks[3][0], ln, toks[3][1], "coalgebra element")
            c = self.scalar(toks[4][0], ln, toks[4][1])
            co[b * n + i, a] = f.post(co[b * n + i, a] + c)
        self.doc.right_comodules[name] = RightComodule(over, labels, Matrix(f, co), name=name)

    def parse_left_comodule(self, m, block, lineno):
        name, over_name = m.group(1), m.group(2)
        self.check_fresh(name, lineno)
        over = self.coalgebra_ref(over_name, lineno, None)
        labels, rest = self._basis_and_rest(block, name, lineno)
        f = self.doc.field
        mm, n = len(labels), over.dim
        co = f.zeros(n * mm, mm)
        for ln, line in rest:
            toks = _tokens(line)
            if toks[0][0] != "coact" or len(toks) != 5:
                self.fail(
                    "left-comodule lines read: coact <element> <coalgebra-factor> "
                    "<module-factor> <coeff>",
                    ln,
                )
            a = self._label_index(labels, toks[1][0], ln, toks[1][1])
            i = self._label_index(over.labels, toks[2][0], ln, toks[2][1], "coalgebra element")
            b = self._label_index(labels, toks[3][0], ln, toks[3][1])
            c = self.scalar(toks[4][0], ln, toks[4][1])
            co[i * mm + b, a] = f.post(co[i * mm + b, a] + c)
        self.doc.left_comodules[name] = LeftComodule(over, labels, Matrix(f, co), name=name)

    def parse_bicomodule(self, m, block, lineno):
        name, left_name, right_name = m.group(1), m.group(2), m.group(3)
        self.check_fresh(name, lineno)
        left_over = self.coalgebra_ref(left_name, lineno, None)
        right_over = self.coalgebra_ref(right_name, lineno, None)
        labels, rest = self._basis_and_rest(block, name, lineno)
        f = self.doc.field
        mm = len(labels)
        nl, nr = left_over.dim, right_over.dim
        lco = f.zeros(nl * mm, mm)
        rco = f.zeros(mm * nr, mm)
        for ln, line in rest:
            toks = _tokens(line)
            head = toks[0][0]
            if head == "left" and len(toks) == 5:
                a = self._label_index(labels, toks[1][0], ln, toks[1][1])
                i = self._label_index(left_over.labels, toks[2][0], ln, toks[2][1], "coalgebra element")
                b = self._label_index(labels, toks[3][0], ln, toks[3][1])
                c = self.scalar(toks[4][0], ln, toks[4][1])
                lco[i * mm + b, a] = f.post(lco[i * mm + b, a] + c)
            elif head == "right" and len(toks) == 5:
                a = self._label_index(labels, toks[1][0], ln, toks[1][1])
                b = self._label_index(labels, toks[2][0], ln, toks[2][1])
                i = self._label_index(right_over.labels, toks[3][0], ln, toks[3][1], "coalgebra element")
                c = self.scalar(toks[4][0], ln, toks[4][1])
                rco[b * nr + i, a] = f.post(rco[b * nr + i, a] + c)
            else:
                self.fail(
                    "bicomodule lines read: left <el> <coalg> <module> <coeff> or "
                    "right <el> <module> <coalg> <coeff>",
                    ln,
                )
        self.doc.bicomodules[name] = Bicomodule(
            left_over, right_over, labels, Matrix(f, lco), Matrix(f, rco), name=name
        )

    def parse_subspace(self, m, block, lineno):
        name, over_name = m.group(1), m.group(2)
        self.check_fresh(name, lineno)
        over = self.coalgebra_ref(over_name, lineno, None)
        f = self.doc.field
        rows = []
        for ln, line in block:
            toks = _tokens(line)
            if toks[0][0] != "span" or len(toks) < 3 or len(toks) % 2 == 0:
                self.fail("subspace lines read: span (<label> <coeff>)+", ln)
            row = [f.zero] * over.dim
            for t in range(1, len(toks), 2):
                j = self._label_index(over.labels, toks[t][0], ln, toks[t][1])
                row[j] = f.post(row[j] + self.scalar(toks[t + 1][0], ln, toks[t + 1][1]))
            rows.append(row)
        self.doc.subspaces[name] = SubspaceDecl(
            name, over_name, Subspace.from_rows(f, over.dim, rows)
        )


def parse_document(text):
    """Parse definition text into a DefinitionDocument; raises ParseError."""
    return _Parser(text).parse()


def _scalar(field, x):
    return field.scalar_str(x)


def serialize_document(doc):
    """Canonical text for a document; parsing it back gives equal objects."""
    f = doc.field
    out = [HEADER]
    out.append("field Q" if f == QQ else f"field F {f.p}")
    for name, C in doc.coalgebras.items():
        out.append("")
        out.append(f"coalgebra {name}")
        out.append("  basis " + " ".join(C.labels))
        n = C.dim
        for k in range(n):
            for r in range(n * n):
                c = C.delta.a[r, k]
                if c != 0:
                    out.append(
                        f"  delta {C.labels[k]} {C.labels[r // n]} {C.labels[r % n]} "
                        f"{_scalar(f, c)}"
                    )
        for k in range(n):
            c = C.counit.a[0, k]
            if c != 0:
                out.append(f"  counit {C.labels[k]} {_scalar(f, c)}")
        out.append("end")
    for name, decl in doc.subspaces.items():
        out.append("")
        out.append(f"subspace {name} in {decl.over}")
        over = doc.coalgebras[decl.over]
        basis = decl.space.canonicalize().basis
        for row in basis.a:
            terms = " ".join(
                f"{over.labels[j]} {_scalar(f, row[j])}" for j in range(len(row)) if row[j] != 0
            )
            out.append(f"  span {terms}")
        out.append("end")
    for name, M in doc.right_comodules.items():
        out.append("")
        out.append(f"right-comodule {name} over {M.over.name}")
        out.append("  basis " + " ".join(M.labels))
        n = M.over.dim
        for a in range(M.dim):
            for r in range(M.dim * n):
                c = M.coaction.a[r, a]
                if c != 0:
                    out.append(
                        f"  coact {M.labels[a]} {M.labels[r // n]} "
                        f"{M.over.labels[r % n]} {_scalar(f, c)}"
                    )
        out.append("end")
    for name, N in doc.left_comodules.items():
        out.append("")
        out.append(f"left-comodule {name} over {N.over.name}")
        out.append("  basis " + " ".join(N.labels))
        mm = N.dim
        for a in range(mm):
            for r in range(N.over.dim * mm):
                c = N.coaction.a[r, a]
                if c != 0:
                    out.append(
                        f"  coact {N.labels[a]} {N.over.labels[r // mm]} "
                        f"{N.labels[r % mm]} {_scalar(f, c)}"
                    )
        out.append("end")
    for name, B in doc.bicomodules.items():
        out.append("")
        out.append(f"bicomodule {name} over {B.left_over.name} {B.right_over.name}")
        out.append("  basis " + " ".join(B.labels))
        mm = B.dim
        nr = B.right_over.dim
        for a in range(mm):
            for r in range(B.left_over.dim * mm):
                c = B.left_coaction.a[r, a]
                if c != 0:
                    out.append(
                        f"  left {B.labels[a]} {B.left_over.labels[r // mm]} "
                        f"{B.labels[r % mm]} {_scalar(f, c)}"
                    )
            for r in range(mm * nr):
                c = B.right_coaction.a[r, a]
                if c != 0:
                    out.append(
                        f"  right {B.labels[a]} {B.labels[r // nr]} "
                        f"{B.right_over.labels[r % nr]} {_scalar(f, c)}"
                    )
        out.append("end")
    for name, phi in doc.morphisms.items():
        out.append("")
        out.append(f"morphism {name} from {phi.source.name} to {phi.target.name}")
        for j in range(phi.source.dim):
            for i in range(phi.target.dim):
                c = phi.matrix.a[i, j]
                if c != 0:
                    out.append(
                        f"  map {phi.source.labels[j]} {phi.target.labels[i]} "
                        f"{_scalar(f, c)}"
                    )
        out.append("end")
    return "\n".join(out) + "\n"
