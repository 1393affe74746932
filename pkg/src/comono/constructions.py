"""Builders: comatrix and grouplike coalgebras, coideal quotients, trivial
coextensions, dual algebras with the ring-epimorphism oracle, and seeded
random generators for property testing.

The dual-algebra route is an independent cross-check on the cotensor-based
criteria: a coalgebra map is a monomorphism exactly when its dual algebra
map is a ring epimorphism, decided here through the dimension of B (x)_A B.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .coalgebra import (
    Bicomodule,
    Coalgebra,
    CoalgebraMorphism,
    RightComodule,
    ValidationReport,
    _report_cells,
    validate_morphism,
)
from .errors import (
    FieldMismatchError,
    NotAlgebraMapError,
    NotCoidealError,
    ShapeError,
)
from .fields import QQ
from .linalg import (
    Matrix,
    Subspace,
    hstack,
    inverse,
    kernel_basis,
    kron,
    subspace_leq,
    vstack,
)


# ---------------------------------------------------------------------------
# basic coalgebra builders


def comatrix(n, field=QQ, name=None):
    """The comatrix coalgebra on basis c_ij with Delta(c_ij) = sum_k c_ik (x) c_kj
    and eps(c_ij) = delta_ij."""
    if n < 1:
        raise ValueError("comatrix coalgebra needs n >= 1")
    sep = "" if n <= 3 else "_"
    labels = [f"c{i + 1}{sep}{j + 1}" for i in range(n) for j in range(n)]
    dim = n * n
    idx = lambda i, j: i * n + j  # noqa: E731
    d = field.zeros(dim * dim, dim)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                d[idx(i, k) * dim + idx(k, j), idx(i, j)] = field.one
    eps = field.zeros(1, dim)
    for i in range(n):
        eps[0, idx(i, i)] = field.one
    return Coalgebra(name or f"M{n}", labels, Matrix(field, d), Matrix(field, eps))


def grouplike(labels, field=QQ, name=None):
    """A coalgebra with every basis element grouplike: Delta(g) = g (x) g, eps(g) = 1."""
    labels = list(labels)
    if not labels:
        raise ValueError("grouplike coalgebra needs at least one label")
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate basis labels")
    n = len(labels)
    d = field.zeros(n * n, n)
    for i in range(n):
        d[i * n + i, i] = field.one
    eps = field.zeros(1, n)
    eps[0, :] = field.one
    return Coalgebra(name or "G" + str(n), labels, Matrix(field, d), Matrix(field, eps))


def direct_sum(c1, c2, name=None):
    """Block-diagonal comultiplication on the concatenated bases."""
    if c1.field != c2.field:
        raise FieldMismatchError("direct sum of coalgebras over different fields")
    f = c1.field
    n1, n2 = c1.dim, c2.dim
    total = n1 + n2
    labels = list(c1.labels)
    used = set(labels)
    for lbl in c2.labels:
        fresh = lbl
        while fresh in used:
            fresh += "'"
        labels.append(fresh)
        used.add(fresh)
    d = f.zeros(total * total, total)
    a1 = c1.delta.a
    for r, k in zip(*np.nonzero(a1 != 0)):
        i, j = divmod(int(r), n1)
        d[i * total + j, k] = a1[r, k]
    a2 = c2.delta.a
    for r, k in zip(*np.nonzero(a2 != 0)):
        i, j = divmod(int(r), n2)
        d[(n1 + i) * total + (n1 + j), n1 + int(k)] = a2[r, k]
    eps = f.zeros(1, total)
    eps[0, :n1] = c1.counit.a[0]
    eps[0, n1:] = c2.counit.a[0]
    return Coalgebra(name or f"{c1.name}(+){c2.name}", labels, Matrix(f, d), Matrix(f, eps))


# ---------------------------------------------------------------------------
# coideals and quotients


@dataclass(frozen=True)
class CoidealCertificate:
    """Outcome of the coideal test with the violating generators listed."""

    ok: bool
    counit_violations: tuple = ()
    comult_violations: tuple = ()

    def __str__(self):
        if self.ok:
            return "coideal"
        parts = []
        if self.counit_violations:
            parts.append(f"counit nonzero on generators {list(self.counit_violations)}")
        if self.comult_violations:
            parts.append(
                "comultiplication escapes I(x)C + C(x)I on generators "
                f"{list(self.comult_violations)}"
            )
        return "; ".join(parts)


def is_coideal(C, I):
    """Check eps(I) = 0 and Delta(I) <= I (x) C + C (x) I; certify violations."""
    if I.ambient_dim != C.dim:
        raise ShapeError(f"subspace ambient {I.ambient_dim} != dim {C.dim} of {C.name}")
    I = I.canonicalize()
    if I.dim == 0:
        return CoidealCertificate(True)
    f = C.field
    eps_on = C.counit @ I.basis.T
    counit_bad = tuple(int(j) for j in np.flatnonzero(eps_on.a[0] != 0))
    eye = Matrix.identity(f, C.dim)
    target = Subspace.from_matrix(vstack(kron(I.basis, eye), kron(eye, I.basis)))
    images = C.delta @ I.basis.T
    comult_bad = tuple(
        j for j in range(I.dim) if not target.contains(images.col(j))
    )
    return CoidealCertificate(not (counit_bad or comult_bad), counit_bad, comult_bad)


def quotient(C, I, name=None):
    """The quotient coalgebra C/I by a coideal, with the canonical projection.

    The quotient basis consists of the classes of the basis vectors at the
    non-pivot columns of I's canonical basis; the kernel of the projection is
    exactly I.
    """
    cert = is_coideal(C, I)
    if not cert.ok:
        raise NotCoidealError(f"not a coideal of {C.name}: {cert}", certificate=cert)
    I = I.canonicalize()
    f = C.field
    n = C.dim
    _, pivots = I.basis.rref()
    free = [c for c in range(n) if c not in set(pivots)]
    q = len(free)
    proj = f.zeros(q, n)
    section = f.zeros(n, q)
    for r, j in enumerate(free):
        proj[r, j] = f.one
        section[j, r] = f.one
        for t, p in enumerate(pivots):
            proj[r, p] = f.post(-I.basis.a[t, j])
    proj_m = Matrix(f, proj)
    section_m = Matrix(f, section)
    delta_d = kron(proj_m, proj_m) @ C.delta @ section_m
    eps_d = C.counit @ section_m
    labels = [C.labels[j] for j in free]
    D = Coalgebra(name or f"{C.name}/I", labels, delta_d, eps_d)
    return D, CoalgebraMorphism(C, D, proj_m, name="pi")


# ---------------------------------------------------------------------------
# trivial coextension and the correction morphisms


@dataclass(frozen=True)
class CoextensionResult:
    """A trivial coextension C x| N with its projection and bookkeeping."""

    coalgebra: Coalgebra
    projection: CoalgebraMorphism
    base: Coalgebra
    bicomodule: Bicomodule
    base_dim: int
    fiber_dim: int


def trivial_coextension(C, N, name=None):
    """The coalgebra on C (+) N whose comultiplication mixes Delta_C with the
    two coactions of the (C, C)-bicomodule N; eps kills the N summand.

    Projecting onto the C summand is a coalgebra map.
    """
    if N.left_over != C or N.right_over != C:
        raise ShapeError(f"{N.name} is not a (C, C)-bicomodule over {C.name}")
    f = C.field
    n, m = C.dim, N.dim
    total = n + m
    labels = list(C.labels)
    used = set(labels)
    for lbl in N.labels:
        fresh = lbl
        while fresh in used:
            fresh += "'"
        labels.append(fresh)
        used.add(fresh)
    d = f.zeros(total * total, total)
    a = C.delta.a
    for r, k in zip(*np.nonzero(a != 0)):
        i, j = divmod(int(r), n)
        d[i * total + j, k] = a[r, k]
    left = N.left_coaction.a
    for r, col in zip(*np.nonzero(left != 0)):
        i, b = divmod(int(r), m)
        d[i * total + (n + b), n + int(col)] = left[r, col]
    right = N.right_coaction.a
    for r, col in zip(*np.nonzero(right != 0)):
        b, i = divmod(int(r), n)
        d[(n + b) * total + i, n + int(col)] = right[r, col]
    eps = f.zeros(1, total)
    eps[0, :n] = C.counit.a[0]
    coalg = Coalgebra(name or f"{C.name}x|{N.name}", labels, Matrix(f, d), Matrix(f, eps))
    proj = hstack(Matrix.identity(f, n), Matrix.zeros(f, n, m))
    pi = CoalgebraMorphism(coalg, C, proj, name="pi")
    return CoextensionResult(coalg, pi, C, N, n, m)


def beta_map(coext, gamma):
    """The correction of the coextension projection by a functional on N:
    (c, n) maps to c - n_(-1) gamma(n_(0)) + gamma(n_[0]) n_[1].

    Any gamma is accepted; the morphism laws are validated and reported, not
    assumed.  Returns (morphism, validation report).
    """
    C, N = coext.base, coext.bicomodule
    f = C.field
    n, m = coext.base_dim, coext.fiber_dim
    g = Matrix.column_vector(f, list(gamma))
    if g.rows != m:
        raise ShapeError(f"gamma must have {m} components, got {g.rows}")
    if m:
        left = N.left_coaction.a.reshape(n, m, m).transpose(0, 2, 1).reshape(n * m, m)
        left_part = (Matrix(f, left.copy()) @ g).a.reshape(n, m)
        right = N.right_coaction.a.reshape(m, n, m).transpose(1, 2, 0).reshape(n * m, m)
        right_part = (Matrix(f, right.copy()) @ g).a.reshape(n, m)
        correction = Matrix(f, f.post(right_part - left_part))
    else:
        correction = Matrix.zeros(f, n, 0)
    beta = CoalgebraMorphism(
        coext.coalgebra, C, hstack(Matrix.identity(f, n), correction), name="beta"
    )
    return beta, validate_morphism(beta)


# ---------------------------------------------------------------------------
# dual algebras and the ring-epimorphism oracle


class Algebra:
    """A finite-dimensional unital algebra given by structure constants.

    ``mult`` is the (n, n*n) matrix whose column i*n + j holds e_i e_j;
    ``unit`` is the n x 1 coordinate vector of 1.
    """

    def __init__(self, name, labels, mult, unit):
        n = len(labels)
        if mult.shape != (n, n * n):
            raise ShapeError(f"multiplication must be {n} x {n * n}, got {mult.shape}")
        if unit.shape != (n, 1):
            raise ShapeError(f"unit must be {n} x 1, got {unit.shape}")
        self.name = name
        self.labels = list(labels)
        self.mult = mult
        self.unit = unit

    @property
    def dim(self):
        return len(self.labels)

    @property
    def field(self):
        return self.mult.field

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.mult == other.mult
            and self.unit == other.unit
        )

    def __repr__(self):
        return f"Algebra({self.name!r}, dim {self.dim}, {self.field})"


class AlgebraMorphism:
    """A linear map between algebras, (dim target) x (dim source)."""

    def __init__(self, source, target, matrix, name="f"):
        if matrix.shape != (target.dim, source.dim):
            raise ShapeError(f"matrix must be {target.dim} x {source.dim}, got {matrix.shape}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.name = name


def validate_algebra(A):
    """Check associativity and both unit laws on the structure constants."""
    report = ValidationReport(f"algebra {A.name}")
    n = A.dim
    eye = Matrix.identity(A.field, n)
    assoc = A.mult @ kron(A.mult, eye) - A.mult @ kron(eye, A.mult)
    _report_cells(
        report, "associativity", assoc, lambda k, c: (c // (n * n), (c // n) % n, c % n, k)
    )
    _report_cells(
        report, "left unit law", A.mult @ kron(A.unit, eye) - eye, lambda i, j: (i, j)
    )
    _report_cells(
        report, "right unit law", A.mult @ kron(eye, A.unit) - eye, lambda i, j: (i, j)
    )
    return report


def validate_algebra_morphism(f_mor):
    """Check multiplicativity and unit preservation."""
    report = ValidationReport(f"algebra morphism {f_mor.name}")
    A, B, G = f_mor.source, f_mor.target, f_mor.matrix
    mult_diff = G @ A.mult - B.mult @ kron(G, G)
    n = A.dim
    _report_cells(report, "multiplicativity", mult_diff, lambda k, c: (c // n, c % n, k))
    _report_cells(report, "unit preservation", G @ A.unit - B.unit, lambda i, _j: (i,))
    return report


def dual_algebra(C):
    """The convolution algebra on C*: (f g)(c) = f(c_(1)) g(c_(2)), unit eps.

    On structure constants this is the transpose of the comultiplication.
    """
    return Algebra(
        f"{C.name}*",
        [f"{lbl}*" for lbl in C.labels],
        C.delta.T,
        C.counit.T,
    )


def dual_morphism(phi):
    """The dual algebra map of a coalgebra map, i.e. the transposed matrix
    from target-dual to source-dual."""
    return AlgebraMorphism(
        dual_algebra(phi.target), dual_algebra(phi.source), phi.matrix.T, name=f"{phi.name}*"
    )


@dataclass(frozen=True)
class EpiCheckResult:
    is_epi: bool
    tensor_dim: int
    relation_dim: int


def algebra_epi_check(f_mor):
    """Decide whether an algebra map A -> B is a ring epimorphism.

    Builds B (x)_A B as the quotient of B (x) B by the span of
    b f(a) (x) b' - b (x) f(a) b' and tests whether the induced
    multiplication down to B is bijective; since the algebra is unital the
    multiplication is onto, so this is the dimension count
    dim B (x)_A B = dim B.
    """
    report = validate_algebra_morphism(f_mor)
    if not report.ok:
        raise NotAlgebraMapError(f"{f_mor.name} is not an algebra morphism", report)
    A, B, G = f_mor.source, f_mor.target, f_mor.matrix
    na, nb = A.dim, B.dim
    f = B.field
    eye_b = Matrix.identity(f, nb)
    left_acts = (B.mult @ kron(eye_b, G)).a  # column i*na + a holds b_i f(e_a)
    right_acts = (B.mult @ kron(G, eye_b)).a  # column a*nb + j holds f(e_a) b_j
    rel = f.zeros(nb * na * nb, nb * nb)
    for i in range(nb):
        for a in range(na):
            x = left_acts[:, i * na + a]
            for j in range(nb):
                r = (i * na + a) * nb + j
                rel[r, j::nb] = x
                rel[r, i * nb : (i + 1) * nb] = f.post(
                    rel[r, i * nb : (i + 1) * nb] - right_acts[:, a * nb + j]
                )
    relations = Subspace.from_matrix(Matrix(f, rel))
    tensor_dim = nb * nb - relations.dim
    return EpiCheckResult(tensor_dim == nb, tensor_dim, relations.dim)


# ---------------------------------------------------------------------------
# seeded random generators


def _random_unimodular(rng, n, field):
    """A product of unipotent elementary matrices and unit diagonal scalings;
    always invertible, with an exact integer-friendly inverse."""
    a = field.identity(n)
    m = Matrix(field, a)
    for _ in range(rng.randint(1, 3)):
        kind = rng.random()
        if n >= 2 and kind < 0.7:
            i, j = rng.sample(range(n), 2)
            c = rng.choice([-2, -1, 1, 2])
            e = field.identity(n)
            e[i, j] = field.promote(c)
            m = Matrix(field, e) @ m
        else:
            d = field.identity(n)
            i = rng.randrange(n)
            d[i, i] = field.promote(rng.choice([-1, 1, 2]))
            m = Matrix(field, d) @ m
    return m


def _transform_coalgebra(C, q, name=None):
    """The same coalgebra written in the basis carried by the invertible q;
    returns (new coalgebra, iso onto C with matrix q)."""
    qi = inverse(q)
    assert qi is not None
    delta = kron(qi, qi) @ C.delta @ q
    eps = C.counit @ q
    labels = [f"b{i}" for i in range(C.dim)]
    cprime = Coalgebra(name or f"{C.name}~", labels, delta, eps)
    return cprime, CoalgebraMorphism(cprime, C, q, name="chg")


def _subcoalgebra_subsets(C):
    """Proper nonempty basis subsets closed under the comultiplication support."""
    n = C.dim
    if n > 10:
        return []
    support = []
    a = C.delta.a
    for k in range(n):
        rows = np.flatnonzero(a[:, k] != 0)
        support.append({(int(r) // n, int(r) % n) for r in rows})
    out = []
    for mask in range(1, 2**n - 1):
        s = {i for i in range(n) if mask >> i & 1}
        if all(i in s and j in s for k in s for (i, j) in support[k]):
            out.append(sorted(s))
    return out


def _restrict_coalgebra(C, subset, name=None):
    """The subcoalgebra spanned by a support-closed basis subset, plus its
    inclusion morphism."""
    f = C.field
    n, q = C.dim, len(subset)
    pos = {g: t for t, g in enumerate(subset)}
    d = f.zeros(q * q, q)
    a = C.delta.a
    for t, g in enumerate(subset):
        for r in np.flatnonzero(a[:, g] != 0):
            i, j = divmod(int(r), n)
            d[pos[i] * q + pos[j], t] = a[r, g]
    eps = f.zeros(1, q)
    for t, g in enumerate(subset):
        eps[0, t] = C.counit.a[0, g]
    sub = Coalgebra(name or f"{C.name}|sub", [C.labels[g] for g in subset], Matrix(f, d), Matrix(f, eps))
    incl = f.zeros(n, q)
    for t, g in enumerate(subset):
        incl[g, t] = f.one
    return sub, CoalgebraMorphism(sub, C, Matrix(f, incl), name="incl")


def _random_coideal(rng, C, tries=8):
    """Search for a nonzero coideal: spans of counit-killed basis subsets and
    small random combinations, filtered through is_coideal."""
    f = C.field
    n = C.dim
    ker_eps = kernel_basis(C.counit)
    if ker_eps.dim == 0:
        return None
    eps_zero_basis = [j for j in range(n) if C.counit.a[0, j] == 0]
    for _ in range(tries):
        mode = rng.random()
        if mode < 0.35 and eps_zero_basis:
            count = rng.randint(1, min(2, len(eps_zero_basis)))
            picks = rng.sample(eps_zero_basis, count)
            rows = [[f.one if c == j else f.zero for c in range(n)] for j in picks]
            cand = Subspace.from_rows(f, n, rows)
        elif mode < 0.9:
            count = rng.randint(1, min(2, ker_eps.dim))
            combo = []
            for _ in range(count):
                coeffs = [rng.choice([-1, 0, 0, 1, 2]) for _ in range(ker_eps.dim)]
                if not any(coeffs):
                    coeffs[rng.randrange(ker_eps.dim)] = 1
                row = Matrix.row_vector(f, coeffs) @ ker_eps.basis
                combo.append(list(row.a[0]))
            cand = Subspace.from_rows(f, n, combo)
        else:
            cand = ker_eps
        if cand.dim == 0 or cand.dim == n:
            continue
        if is_coideal(C, cand).ok:
            return cand
    return None


def _random_base_coalgebra(rng, max_dim, field):
    roll = rng.random()
    if roll < 0.30:
        k = rng.randint(1, max(1, int(math.isqrt(max_dim))))
        return comatrix(k, field=field)
    if roll < 0.60:
        j = rng.randint(1, min(4, max_dim))
        return grouplike([f"g{t}" for t in range(j)], field=field)
    if roll < 0.80 and max_dim >= 2:
        left_budget = rng.randint(1, max_dim - 1)
        c1 = _random_base_coalgebra(rng, left_budget, field)
        c2 = _random_base_coalgebra(rng, max_dim - c1.dim, field)
        return direct_sum(c1, c2)
    if max_dim >= 2:
        c0 = _random_base_coalgebra(rng, max_dim // 2, field)
        fiber = _draw_bicomodule(rng, c0, max_dim - c0.dim)
        if fiber.dim > 0:
            return trivial_coextension(c0, fiber).coalgebra
        return c0
    return grouplike(["g0"], field=field)


def _draw_bicomodule(rng, C, max_dim):
    """A (C, C)-bicomodule of dimension at most max_dim."""
    n = C.dim
    choices = ["zero"]
    if 0 < n <= max_dim:
        choices += ["regular", "regular", "twist"]
    subsets = [s for s in _subcoalgebra_subsets(C) if len(s) <= max_dim]
    if subsets:
        choices += ["subset", "subset"]
    kind = rng.choice(choices)
    if kind == "zero":
        return Bicomodule(
            C, C, [], Matrix.zeros(C.field, 0, 0), Matrix.zeros(C.field, 0, 0), name="0"
        )
    if kind == "subset":
        subset = rng.choice(subsets)
        sub, incl = _restrict_coalgebra(C, subset)
        f = C.field
        q = len(subset)
        left = kron(incl.matrix, Matrix.identity(f, q)) @ sub.delta
        right = kron(Matrix.identity(f, q), incl.matrix) @ sub.delta
        return Bicomodule(C, C, [f"n{t}" for t in range(q)], left, right, name="Nsub")
    # regular, possibly twisted
    labels = [f"n{t}" for t in range(n)]
    left, right = C.delta, C.delta
    if kind == "twist":
        q = _random_unimodular(rng, n, C.field)
        qi = inverse(q)
        eye = Matrix.identity(C.field, n)
        left = kron(eye, qi) @ C.delta @ q
        right = kron(qi, eye) @ C.delta @ q
    return Bicomodule(C, C, labels, left, right, name="N")


def random_bicomodule(C, seed, max_dim=None):
    """A seeded (C, C)-bicomodule draw; identical seeds give identical data."""
    rng = random.Random(seed)
    return _draw_bicomodule(rng, C, max_dim if max_dim is not None else C.dim)


def _right_subcomodule_subsets(C):
    """Basis subsets S with Delta(e_s) supported in S (x) C (right coideals)."""
    n = C.dim
    if n > 10:
        return []
    a = C.delta.a
    support = []
    for k in range(n):
        rows = np.flatnonzero(a[:, k] != 0)
        support.append({int(r) // n for r in rows})
    out = []
    for mask in range(1, 2**n):
        s = {i for i in range(n) if mask >> i & 1}
        if len(s) < n and all(support[k] <= s for k in s):
            out.append(sorted(s))
    return out


def _draw_right_comodule(rng, C, max_dim):
    """A right C-comodule of dimension at most max_dim."""
    n = C.dim
    f = C.field
    choices = ["zero"]
    if 0 < n <= max_dim:
        choices += ["regular", "regular", "twist"]
    subsets = [s for s in _right_subcomodule_subsets(C) if len(s) <= max_dim]
    if subsets:
        choices += ["subset", "subset"]
    kind = rng.choice(choices)
    if kind == "zero":
        return RightComodule(C, [], Matrix.zeros(f, 0, 0), name="0")
    if kind == "subset":
        subset = rng.choice(subsets)
        q = len(subset)
        pos = {g: t for t, g in enumerate(subset)}
        a = C.delta.a
        co = f.zeros(q * n, q)
        for t, g in enumerate(subset):
            for r in np.flatnonzero(a[:, g] != 0):
                i, j = divmod(int(r), n)
                co[pos[i] * n + j, t] = a[r, g]
        return RightComodule(C, [f"m{t}" for t in range(q)], Matrix(f, co), name="Msub")
    coaction = C.delta
    if kind == "twist":
        q = _random_unimodular(rng, n, f)
        qi = inverse(q)
        coaction = kron(qi, Matrix.identity(f, n)) @ C.delta @ q
    return RightComodule(C, [f"m{t}" for t in range(n)], coaction, name="M")


def random_comodule(C, seed, max_dim=None):
    """A seeded right C-comodule draw; identical seeds give identical data."""
    rng = random.Random(seed)
    return _draw_right_comodule(rng, C, max_dim if max_dim is not None else C.dim)


def random_morphism(seed, max_dim=6, field=QQ):
    """A seeded coalgebra morphism built from the constructions menu.

    Starts from a random base coalgebra and composes up to two of: quotient
    projections by randomly found coideals, subcoalgebra inclusions, and
    change-of-basis isomorphisms on either side.  Deterministic in the seed;
    the output always satisfies the morphism laws by construction.
    """
    if max_dim < 1:
        raise ValueError("max_dim must be at least 1")
    rng = random.Random(seed)
    C = _random_base_coalgebra(rng, max_dim, field)
    phi = CoalgebraMorphism.identity(C)
    for _ in range(rng.randint(0, 2)):
        step = rng.random()
        if step < 0.45:
            ideal = _random_coideal(rng, phi.target)
            if ideal is not None:
                _, pi = quotient(phi.target, ideal)
                phi = phi.then(pi, name="phi")
        elif step < 0.60:
            subsets = _subcoalgebra_subsets(phi.source)
            if subsets:
                _, incl = _restrict_coalgebra(phi.source, rng.choice(subsets))
                phi = incl.then(phi, name="phi")
        elif step < 0.80:
            cprime, iso = _transform_coalgebra(phi.source, _random_unimodular(rng, phi.source.dim, field))
            phi = iso.then(phi, name="phi")
        else:
            q = _random_unimodular(rng, phi.target.dim, field)
            dprime, iso = _transform_coalgebra(phi.target, q)
            phi = phi.then(CoalgebraMorphism(phi.target, dprime, inverse(q), name="chg"), name="phi")
    phi.name = f"phi_{seed}"
    return phi
