"""Built-in fixture documents, available to every CLI command via --builtin.

They are generated from the construction helpers rather than stored as text,
so the shipped fixtures and the library builders can never drift apart.
"""

from __future__ import annotations

from .coalgebra import regular_comodules
from .constructions import comatrix, grouplike, quotient, trivial_coextension
from .coalgebra import Bicomodule
from .fields import QQ
from .linalg import Matrix, Subspace
from .textfmt import DefinitionDocument, SubspaceDecl


def _with_regulars(doc, C):
    right, left, bi = regular_comodules(C)
    right.name, left.name, bi.name = "CR", "CL", "CB"
    doc.right_comodules["CR"] = right
    doc.left_comodules["CL"] = left
    doc.bicomodules["CB"] = bi
    return doc


def _paper_example(field):
    doc = DefinitionDocument(field=field)
    M2 = comatrix(2, field=field, name="M2")
    doc.coalgebras["M2"] = M2
    span = Subspace.from_rows(field, 4, [[0, 0, 1, 0]])
    doc.subspaces["I"] = SubspaceDecl("I", "M2", span)
    D, pi = quotient(M2, span, name="D")
    doc.coalgebras["D"] = D
    doc.morphisms["pi"] = pi
    return _with_regulars(doc, M2)


def _grouplike_counit(field):
    doc = DefinitionDocument(field=field)
    GH = grouplike(["g", "h"], field=field, name="GH")
    PT = grouplike(["e"], field=field, name="PT")
    doc.coalgebras["GH"] = GH
    doc.coalgebras["PT"] = PT
    from .coalgebra import CoalgebraMorphism

    doc.morphisms["eps"] = CoalgebraMorphism.from_columns(
        GH, PT, {"g": [("e", 1)], "h": [("e", 1)]}, name="eps"
    )
    return _with_regulars(doc, GH)


def _comatrix_doc(n, field):
    doc = DefinitionDocument(field=field)
    C = comatrix(n, field=field, name=f"M{n}")
    doc.coalgebras[C.name] = C
    return _with_regulars(doc, C)


def _dual_numbers(field):
    doc = DefinitionDocument(field=field)
    PT = grouplike(["g"], field=field, name="PT")
    doc.coalgebras["PT"] = PT
    one = Matrix.from_rows(field, [[1]])
    X = Bicomodule(PT, PT, ["x"], one, one, name="X")
    doc.bicomodules["X"] = X
    coext = trivial_coextension(PT, X, name="DN")
    doc.coalgebras["DN"] = coext.coalgebra
    doc.morphisms["pi"] = coext.projection
    return doc


_BUILTINS = {
    "paper-example": _paper_example,
    "grouplike-counit": _grouplike_counit,
    "comatrix-2": lambda field: _comatrix_doc(2, field),
    "comatrix-3": lambda field: _comatrix_doc(3, field),
    "dual-numbers": _dual_numbers,
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin_document(name, field=QQ):
    """Materialize a named builtin fixture as a DefinitionDocument."""
    try:
        make = _BUILTINS[name]
    except KeyError:
        raise ValueError(
            f"unknown builtin {name!r}; available: {', '.join(BUILTIN_NAMES)}"
        ) from None
    return make(field)
