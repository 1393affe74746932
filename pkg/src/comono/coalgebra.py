"""Coalgebras, coalgebra morphisms, and (bi)comodules as structure constants.

Conventions (fixed across the package, all indices zero-based, row-major):

* a coalgebra of dimension n stores its comultiplication as the (n*n, n)
  matrix ``delta`` whose column k holds the coordinates of Delta(e_k), the
  coefficient of e_i (x) e_j sitting at row ``pair_index(i, j, n)``; the
  counit is a 1 x n row vector;
* a right comodule of dimension m over an n-dimensional coalgebra stores its
  coaction as the (m*n, m) matrix whose column a holds rho(m_a), with the
  coefficient of m_b (x) e_i at row ``pair_index(b, i, n)``;
* a left comodule stores lambda(m_a) in the (n*m, m) matrix with the
  coefficient of e_i (x) m_b at row ``pair_index(i, b, m)``;
* a coalgebra morphism C -> D is a (dim D) x (dim C) matrix acting on
  column vectors.

Structure constants are the single source of truth; validators check the
axioms cell by cell and report every violation, not just the first.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    CoalgebraMismatchError,
    InternalConsistencyError,
    ShapeError,
)
from .fields import QQ
from .linalg import (
    Matrix,
    Subspace,
    kernel_basis,
    kron,
    solve_kron_identity_left,
    solve_kron_identity_right,
)


def format_combination(coeffs, labels, field):
    """Render a coordinate vector as a signed combination of basis labels."""
    terms = []
    for c, lbl in zip(coeffs, labels):
        if c == 0:
            continue
        s = field.scalar_str(c)
        if s == "1":
            terms.append(("+", lbl))
        elif s == "-1":
            terms.append(("-", lbl))
        elif s.startswith("-"):
            terms.append(("-", f"{s[1:]}*{lbl}"))
        else:
            terms.append(("+", f"{s}*{lbl}"))
    if not terms:
        return "0"
    sign, head = terms[0]
    out = head if sign == "+" else "-" + head
    for sign, part in terms[1:]:
        out += f" {sign} {part}"
    return out


def tensor_labels(labels_a, labels_b):
    return [f"{a}⊗{b}" for a in labels_a for b in labels_b]


@dataclass(frozen=True)
class Violation:
    law: str
    at: tuple
    detail: str


@dataclass
class ValidationReport:
    subject: str
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, law, at, detail):
        self.violations.append(Violation(law, at, detail))

    def summary(self):
        if self.ok:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  {v.law} at {v.at}: {v.detail}" for v in self.violations]
        return "\n".join(lines)

    def require(self):
        if not self.ok:
            raise InternalConsistencyError(self.summary())
        return self


def _default_labels(prefix, n):
    return [f"{prefix}{i}" for i in range(n)]


def _check_labels(labels, n):
    labels = list(labels)
    if len(labels) != n:
        raise ShapeError(f"{len(labels)} labels for dimension {n}")
    if len(set(labels)) != n:
        raise ValueError("basis labels must be distinct")
    return labels


class Coalgebra:
    """A finite-dimensional coalgebra given by structure constants."""

    def __init__(self, name, labels, delta, counit):
        n = len(labels)
        if delta.shape != (n * n, n):
            raise ShapeError(f"comultiplication must be {n * n} x {n}, got {delta.shape}")
        if counit.shape != (1, n):
            raise ShapeError(f"counit must be 1 x {n}, got {counit.shape}")
        if delta.field != counit.field:
            raise ShapeError("comultiplication and counit fields differ")
        self.name = name
        self.labels = _check_labels(labels, n)
        self.delta = delta
        self.counit = counit

    @classmethod
    def from_terms(cls, name, labels, delta_terms, counit_values, field=QQ):
        """Build from sparse data.

        ``delta_terms`` maps a basis label to a list of (left, right, coeff)
        triples; ``counit_values`` maps labels to scalars, missing means 0.
        """
        labels = list(labels)
        n = len(labels)
        index = {lbl: i for i, lbl in enumerate(labels)}
        d = field.zeros(n * n, n)
        for lbl, terms in delta_terms.items():
            k = index[lbl]
            for left, right, coeff in terms:
                r = index[left] * n + index[right]
                d[r, k] = field.post(d[r, k] + field.promote(coeff))
        eps = field.zeros(1, n)
        for lbl, value in counit_values.items():
            eps[0, index[lbl]] = field.promote(value)
        return cls(name, labels, Matrix(field, d), Matrix(field, eps))

    @property
    def dim(self):
        return len(self.labels)

    @property
    def field(self):
        return self.delta.field

    def label_index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element named {label!r} in {self.name}") from None

    def delta_terms(self):
        """Sparse view of the comultiplication: {label: [(left, right, coeff)]}."""
        n = self.dim
        out = {}
        for k, lbl in enumerate(self.labels):
            terms = []
            for r in range(n * n):
                c = self.delta.entry(r, k)
                if c != 0:
                    terms.append((self.labels[r // n], self.labels[r % n], c))
            out[lbl] = terms
        return out

    def format_element(self, coeffs):
        return format_combination(coeffs, self.labels, self.field)

    def __eq__(self, other):
        if not isinstance(other, Coalgebra):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.delta == other.delta
            and self.counit == other.counit
        )

    def __repr__(self):
        return f"Coalgebra({self.name!r}, dim {self.dim}, {self.field})"


class CoalgebraMorphism:
    """A linear map between coalgebras, stored as a (dim target) x (dim source) matrix."""

    def __init__(self, source, target, matrix, name="phi"):
        if source.field != target.field or matrix.field != source.field:
            raise ShapeError("source, target and matrix must share one field")
        if matrix.shape != (target.dim, source.dim):
            raise ShapeError(
                f"matrix must be {target.dim} x {source.dim}, got {matrix.shape}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        self.name = name

    @classmethod
    def from_columns(cls, source, target, columns, name="phi"):
        """Build from {source label: [(target label, coeff), ...]}; missing means 0."""
        f = source.field
        a = f.zeros(target.dim, source.dim)
        for src_lbl, terms in columns.items():
            j = source.label_index(src_lbl)
            for tgt_lbl, coeff in terms:
                i = target.label_index(tgt_lbl)
                a[i, j] = f.post(a[i, j] + f.promote(coeff))
        return cls(source, target, Matrix(f, a), name=name)

    @classmethod
    def identity(cls, C, name="id"):
        return cls(C, C, Matrix.identity(C.field, C.dim), name=name)

    def then(self, other, name=None):
        """The composite ``other after self`` (self: C->D, other: D->E)."""
        if other.source != self.target:
            raise CoalgebraMismatchError("composition target/source mismatch")
        return CoalgebraMorphism(
            self.source,
            other.target,
            other.matrix @ self.matrix,
            name=name or f"{other.name}.{self.name}",
        )

    def kernel(self):
        return kernel_basis(self.matrix)

    def is_injective(self):
        return self.kernel().dim == 0

    def __eq__(self, other):
        if not isinstance(other, CoalgebraMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"CoalgebraMorphism({self.name!r}: {self.source.name} -> {self.target.name})"


identity_morphism = CoalgebraMorphism.identity


class RightComodule:
    """A right comodule: rho(m_a) = sum r_a^{bi} m_b (x) e_i over ``over``."""

    side = "right"

    def __init__(self, over, labels, coaction, name="M"):
        m, n = len(labels), over.dim
        if coaction.shape != (m * n, m):
            raise ShapeError(f"right coaction must be {m * n} x {m}, got {coaction.shape}")
        if coaction.field != over.field:
            raise ShapeError("coaction field differs from coalgebra field")
        self.over = over
        self.labels = _check_labels(labels, m)
        self.coaction = coaction
        self.name = name

    @property
    def dim(self):
        return len(self.labels)

    @property
    def field(self):
        return self.over.field

    def __eq__(self, other):
        if not isinstance(other, RightComodule):
            return NotImplemented
        return (
            self.over == other.over
            and self.labels == other.labels
            and self.coaction == other.coaction
        )

    def __repr__(self):
        return f"RightComodule({self.name!r}, dim {self.dim} over {self.over.name})"


class LeftComodule:
    """A left comodule: lambda(m_a) = sum l_a^{ib} e_i (x) m_b over ``over``."""

    side = "left"

    def __init__(self, over, labels, coaction, name="N"):
        m, n = len(labels), over.dim
        if coaction.shape != (n * m, m):
            raise ShapeError(f"left coaction must be {n * m} x {m}, got {coaction.shape}")
        if coaction.field != over.field:
            raise ShapeError("coaction field differs from coalgebra field")
        self.over = over
        self.labels = _check_labels(labels, m)
        self.coaction = coaction
        self.name = name

    @property
    def dim(self):
        return len(self.labels)

    @property
    def field(self):
        return self.over.field

    def __eq__(self, other):
        if not isinstance(other, LeftComodule):
            return NotImplemented
        return (
            self.over == other.over
            and self.labels == other.labels
            and self.coaction == other.coaction
        )

    def __repr__(self):
        return f"LeftComodule({self.name!r}, dim {self.dim} over {self.over.name})"


class Bicomodule:
    """Compatible left and right coactions over a pair of coalgebras."""

    def __init__(self, left_over, right_over, labels, left_coaction, right_coaction, name="N"):
        m = len(labels)
        nl, nr = left_over.dim, right_over.dim
        if left_coaction.shape != (nl * m, m):
            raise ShapeError(
                f"left coaction must be {nl * m} x {m}, got {left_coaction.shape}"
            )
        if right_coaction.shape != (m * nr, m):
            raise ShapeError(
                f"right coaction must be {m * nr} x {m}, got {right_coaction.shape}"
            )
        if left_over.field != right_over.field or left_coaction.field != left_over.field \
                or right_coaction.field != left_over.field:
            raise ShapeError("bicomodule parts must share one field")
        self.left_over = left_over
        self.right_over = right_over
        self.labels = _check_labels(labels, m)
        self.left_coaction = left_coaction
        self.right_coaction = right_coaction
        self.name = name

    @property
    def dim(self):
        return len(self.labels)

    @property
    def field(self):
        return self.left_over.field

    def left_comodule(self):
        return LeftComodule(self.left_over, self.labels, self.left_coaction, name=self.name)

    def right_comodule(self):
        return RightComodule(self.right_over, self.labels, self.right_coaction, name=self.name)

    def __eq__(self, other):
        if not isinstance(other, Bicomodule):
            return NotImplemented
        return (
            self.left_over == other.left_over
            and self.right_over == other.right_over
            and self.labels == other.labels
            and self.left_coaction == other.left_coaction
            and self.right_coaction == other.right_coaction
        )

    def __repr__(self):
        return (
            f"Bicomodule({self.name!r}, dim {self.dim} over "
            f"({self.left_over.name}, {self.right_over.name}))"
        )


class RightComoduleMorphism:
    """A linear map of right comodules over one coalgebra."""

    def __init__(self, source, target, matrix, name="f"):
        if source.over != target.over:
            raise CoalgebraMismatchError("comodule morphism endpoints over different coalgebras")
        if matrix.shape != (target.dim, source.dim):
            raise ShapeError(f"matrix must be {target.dim} x {source.dim}, got {matrix.shape}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.name = name

    @classmethod
    def identity(cls, M, name="id"):
        return cls(M, M, Matrix.identity(M.field, M.dim), name=name)

    @classmethod
    def zero(cls, source, target, name="0"):
        return cls(source, target, Matrix.zeros(source.field, target.dim, source.dim), name=name)

    def then(self, other, name=None):
        return RightComoduleMorphism(
            self.source, other.target, other.matrix @ self.matrix, name=name or "composite"
        )


class LeftComoduleMorphism:
    """A linear map of left comodules over one coalgebra."""

    def __init__(self, source, target, matrix, name="g"):
        if source.over != target.over:
            raise CoalgebraMismatchError("comodule morphism endpoints over different coalgebras")
        if matrix.shape != (target.dim, source.dim):
            raise ShapeError(f"matrix must be {target.dim} x {source.dim}, got {matrix.shape}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.name = name

    @classmethod
    def identity(cls, N, name="id"):
        return cls(N, N, Matrix.identity(N.field, N.dim), name=name)

    @classmethod
    def zero(cls, source, target, name="0"):
        return cls(source, target, Matrix.zeros(source.field, target.dim, source.dim), name=name)

    def then(self, other, name=None):
        return LeftComoduleMorphism(
            self.source, other.target, other.matrix @ self.matrix, name=name or "composite"
        )


# ---------------------------------------------------------------------------
# validators


def _report_cells(report, law, diff, unflatten):
    a = diff.a
    rows, cols = a.shape
    for r in range(rows):
        for c in range(cols):
            if a[r, c] != 0:
                report.add(law, unflatten(r, c), diff.field.scalar_str(a[r, c]))


def validate_coalgebra(C):
    """Check coassociativity and both counit laws cell by cell."""
    report = ValidationReport(f"coalgebra {C.name}")
    n = C.dim
    f = C.field
    eye = Matrix.identity(f, n)
    lhs = kron(C.delta, eye) @ C.delta
    rhs = kron(eye, C.delta) @ C.delta
    _report_cells(
        report,
        "coassociativity",
        lhs - rhs,
        lambda r, k: (r // (n * n), (r // n) % n, r % n, k),
    )
    left_counit = kron(C.counit, eye) @ C.delta
    _report_cells(report, "left counit law", left_counit - eye, lambda j, k: (k, j))
    right_counit = kron(eye, C.counit) @ C.delta
    _report_cells(report, "right counit law", right_counit - eye, lambda i, k: (k, i))
    return report


def validate_morphism(phi):
    """Check comultiplicativity and counit preservation of a coalgebra map."""
    report = ValidationReport(f"morphism {phi.name}")
    C, D, F = phi.source, phi.target, phi.matrix
    d = D.dim
    lhs = kron(F, F) @ C.delta
    rhs = D.delta @ F
    _report_cells(
        report, "comultiplicativity", lhs - rhs, lambda r, k: (r // d, r % d, k)
    )
    _report_cells(
        report, "counit preservation", D.counit @ F - C.counit, lambda _z, k: (k,)
    )
    return report


def validate_comodule(M):
    """Check coaction coassociativity and the counit law (right or left)."""
    report = ValidationReport(f"{M.side} comodule {M.name}")
    C = M.over
    m, n = M.dim, C.dim
    f = M.field
    eye_m = Matrix.identity(f, m)
    eye_n = Matrix.identity(f, n)
    if M.side == "right":
        lhs = kron(M.coaction, eye_n) @ M.coaction
        rhs = kron(eye_m, C.delta) @ M.coaction
        unflatten = lambda r, a: (r // (n * n), (r // n) % n, r % n, a)  # noqa: E731
        counit = kron(eye_m, C.counit) @ M.coaction
    else:
        lhs = kron(eye_n, M.coaction) @ M.coaction
        rhs = kron(C.delta, eye_m) @ M.coaction
        unflatten = lambda r, a: (r // (n * m), (r // m) % n, r % m, a)  # noqa: E731
        counit = kron(C.counit, eye_m) @ M.coaction
    _report_cells(report, "coaction coassociativity", lhs - rhs, unflatten)
    _report_cells(report, "coaction counit law", counit - eye_m, lambda b, a: (a, b))
    return report


def validate_bicomodule(N):
    """Check both coaction axioms plus left/right compatibility."""
    report = ValidationReport(f"bicomodule {N.name}")
    left = validate_comodule(N.left_comodule())
    right = validate_comodule(N.right_comodule())
    for v in left.violations:
        report.add(f"left {v.law}", v.at, v.detail)
    for v in right.violations:
        report.add(f"right {v.law}", v.at, v.detail)
    f = N.field
    m = N.dim
    nl, nr = N.left_over.dim, N.right_over.dim
    lhs = kron(Matrix.identity(f, nl), N.right_coaction) @ N.left_coaction
    rhs = kron(N.left_coaction, Matrix.identity(f, nr)) @ N.right_coaction
    _report_cells(
        report,
        "coaction compatibility",
        lhs - rhs,
        lambda r, a: (r // (m * nr), (r // nr) % m, r % nr, a),
    )
    return report


def validate_right_comodule_map(f_mor):
    """Check the coaction intertwining law (f (x) id) rho = rho' f."""
    report = ValidationReport(f"right comodule map {f_mor.name}")
    M, Mp, F = f_mor.source, f_mor.target, f_mor.matrix
    n = M.over.dim
    eye = Matrix.identity(M.field, n)
    diff = kron(F, eye) @ M.coaction - Mp.coaction @ F
    _report_cells(report, "coaction intertwining", diff, lambda r, a: (r // n, r % n, a))
    return report


def validate_left_comodule_map(g_mor):
    """Check the coaction intertwining law (id (x) g) lambda = lambda' g."""
    report = ValidationReport(f"left comodule map {g_mor.name}")
    N, Np, G = g_mor.source, g_mor.target, g_mor.matrix
    n = N.over.dim
    eye = Matrix.identity(N.field, n)
    mp = Np.dim
    diff = kron(eye, G) @ N.coaction - Np.coaction @ G
    _report_cells(report, "coaction intertwining", diff, lambda r, a: (r // mp, r % mp, a))
    return report


# ---------------------------------------------------------------------------
# corestriction and regular structures


def corestrict(M, phi):
    """Push a right C-comodule along phi: C -> D to a right D-comodule."""
    if M.over != phi.source:
        raise CoalgebraMismatchError(
            f"comodule {M.name} is not over the source of {phi.name}"
        )
    eye = Matrix.identity(M.field, M.dim)
    coaction = kron(eye, phi.matrix) @ M.coaction
    return RightComodule(phi.target, M.labels, coaction, name=M.name)


def corestrict_left(N, phi):
    """Push a left C-comodule along phi: C -> D to a left D-comodule."""
    if N.over != phi.source:
        raise CoalgebraMismatchError(
            f"comodule {N.name} is not over the source of {phi.name}"
        )
    eye = Matrix.identity(N.field, N.dim)
    coaction = kron(phi.matrix, eye) @ N.coaction
    return LeftComodule(phi.target, N.labels, coaction, name=N.name)


def corestrict_bicomodule(N, phi_left, phi_right=None):
    """Push a (C, C')-bicomodule along coalgebra maps on one or both sides."""
    phi_right = phi_right if phi_right is not None else phi_left
    if N.left_over != phi_left.source or N.right_over != phi_right.source:
        raise CoalgebraMismatchError("bicomodule sides do not match the morphism sources")
    eye = Matrix.identity(N.field, N.dim)
    left = kron(phi_left.matrix, eye) @ N.left_coaction
    right = kron(eye, phi_right.matrix) @ N.right_coaction
    return Bicomodule(phi_left.target, phi_right.target, N.labels, left, right, name=N.name)


def regular_comodules(C):
    """C over itself via its comultiplication: (right, left, bicomodule)."""
    right = RightComodule(C, C.labels, C.delta, name=C.name)
    left = LeftComodule(C, C.labels, C.delta, name=C.name)
    bi = Bicomodule(C, C, C.labels, C.delta, C.delta, name=C.name)
    return right, left, bi


def kernel_bicomodule(phi):
    """Ker(phi) as a (D, D)-bicomodule, plus its inclusion matrix into C.

    The coactions are the corestricted comultiplication solved back into the
    kernel's own basis; solvability certifies that (phi (x) I) Delta and
    (I (x) phi) Delta really land in D (x) Ker and Ker (x) D.
    """
    C, D, F = phi.source, phi.target, phi.matrix
    f = phi.matrix.field
    ker = kernel_basis(F)
    k = ker.dim
    inclusion = ker.basis.T  # C.dim x k
    labels = [f"k{i}" for i in range(k)]
    eye_c = Matrix.identity(f, C.dim)
    into_ambient = C.delta @ inclusion
    left_ambient = kron(F, eye_c) @ into_ambient
    left = solve_kron_identity_left(D.dim, inclusion, left_ambient)
    if left is None:
        raise InternalConsistencyError(
            f"(phi (x) I) Delta does not map Ker({phi.name}) into D (x) Ker"
        )
    right_ambient = kron(eye_c, F) @ into_ambient
    right = solve_kron_identity_right(inclusion, D.dim, right_ambient)
    if right is None:
        raise InternalConsistencyError(
            f"(I (x) phi) Delta does not map Ker({phi.name}) into Ker (x) D"
        )
    bico = Bicomodule(D, D, labels, left, right, name=f"Ker({phi.name})")
    return bico, inclusion


# ---------------------------------------------------------------------------
# field changes (used by the characteristic cross-checks)


def coalgebra_change_field(C, field):
    """Reinterpret structure constants in another exact field."""
    return Coalgebra(
        C.name,
        C.labels,
        Matrix.from_rows(field, C.delta.to_rows()),
        Matrix.from_rows(field, C.counit.to_rows()),
    )


def morphism_change_field(phi, field):
    return CoalgebraMorphism(
        coalgebra_change_field(phi.source, field),
        coalgebra_change_field(phi.target, field),
        Matrix.from_rows(field, phi.matrix.to_rows()),
        name=phi.name,
    )


def has_integer_constants(phi):
    """True when every structure constant of phi and its endpoints is an integer."""

    def ints(mat):
        return all(getattr(x, "denominator", 1) == 1 for x in mat.a.flat)

    return all(
        ints(m)
        for m in (
            phi.matrix,
            phi.source.delta,
            phi.source.counit,
            phi.target.delta,
            phi.target.counit,
        )
    )
