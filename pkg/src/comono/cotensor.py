"""Cotensor products computed as kernels, and the maps living on them.

The cotensor of a right D-comodule M and a left D-comodule N is the kernel
of rho_M (x) I - I (x) lambda_N inside the flattened M (x) N.  Its canonical
basis is the reduced row echelon kernel basis, and every induced map is
re-expressed in that basis by exact solving; a solve that fails signals
corrupt input and raises InternalConsistencyError.
"""

from __future__ import annotations

from .coalgebra import (
    Bicomodule,
    LeftComodule,
    RightComodule,
    corestrict,
    corestrict_left,
    kernel_bicomodule,
    regular_comodules,
    tensor_labels,
    validate_left_comodule_map,
    validate_right_comodule_map,
)
from .errors import (
    CoalgebraMismatchError,
    InternalConsistencyError,
    NotComoduleMapError,
)
from .linalg import (
    Matrix,
    kernel_basis,
    kron,
    solve_kron_identity_left,
    solve_kron_identity_right,
    solve_right,
)


class CotensorSpace:
    """An embedded cotensor product M []_D N.

    ``space`` is the canonical subspace of the flattened M (x) N; when the
    factors carry outer coactions (the C []_D C case) ``bicomodule`` holds
    the induced structure in cotensor coordinates.
    """

    def __init__(self, left_factor, right_factor, space, bicomodule=None):
        self.left_factor = left_factor
        self.right_factor = right_factor
        self.space = space
        self.bicomodule = bicomodule

    @property
    def over(self):
        return self.left_factor.over

    @property
    def dim(self):
        return self.space.dim

    @property
    def field(self):
        return self.space.field

    def basis_columns(self):
        """Basis vectors of the cotensor as columns in the ambient space."""
        return self.space.basis.T

    def ambient_labels(self):
        return tensor_labels(self.left_factor.labels, self.right_factor.labels)

    def __repr__(self):
        return (
            f"CotensorSpace({self.left_factor.name} [] {self.right_factor.name}, "
            f"dim {self.dim})"
        )


def cotensor_defining_matrix(M, N):
    """The map rho_M (x) I - I (x) lambda_N from M (x) N to M (x) D (x) N."""
    if M.over != N.over:
        raise CoalgebraMismatchError(
            f"cotensor factors live over different coalgebras "
            f"({M.over.name} vs {N.over.name})"
        )
    f = M.field
    eye_m = Matrix.identity(f, M.dim)
    eye_n = Matrix.identity(f, N.dim)
    return kron(M.coaction, eye_n) - kron(eye_m, N.coaction)


def cotensor(M, N):
    """The cotensor product of a right and a left D-comodule."""
    space = kernel_basis(cotensor_defining_matrix(M, N))
    return CotensorSpace(M, N, space)


def cotensor_map(f, g, X, target=None):
    """Restrict f (x) g to a cotensor space, landing in the target cotensor.

    f and g must be comodule morphisms (checked); the image is certified to
    lie inside cotensor(f.target, g.target) by exact solving.  Returns the
    matrix in canonical bases together with the target space.
    """
    if X.left_factor != f.source or X.right_factor != g.source:
        raise CoalgebraMismatchError("cotensor space factors do not match the maps")
    rep = validate_right_comodule_map(f)
    if not rep.ok:
        raise NotComoduleMapError(f"{f.name} is not a right comodule map", rep)
    rep = validate_left_comodule_map(g)
    if not rep.ok:
        raise NotComoduleMapError(f"{g.name} is not a left comodule map", rep)
    if target is None:
        target = cotensor(f.target, g.target)
    ambient_image = kron(f.matrix, g.matrix) @ X.basis_columns()
    coords = solve_right(target.basis_columns(), ambient_image)
    if coords is None:
        raise InternalConsistencyError(
            "image of a cotensor map escaped the target cotensor"
        )
    return coords, target


def self_cotensor(phi):
    """C []_D C for phi: C -> D, both factors the corestricted regular C."""
    C = phi.source
    reg_right, reg_left, _ = regular_comodules(C)
    return cotensor(corestrict(reg_right, phi), corestrict_left(reg_left, phi))


def self_cotensor_bicomodule(phi):
    """C []_D C together with its induced (C, C)-bicomodule structure.

    The left coaction sends a (x) b to a_(1) (x) (a_(2) (x) b) and the right
    one sends a (x) b to (a (x) b_(1)) (x) b_(2); both are solved into the
    canonical cotensor basis.
    """
    X = self_cotensor(phi)
    C = phi.source
    f = C.field
    n = C.dim
    eye = Matrix.identity(f, n)
    U = X.basis_columns()  # (n*n) x t
    t = X.dim
    left_ambient = kron(C.delta, eye) @ U  # into C (x) (C (x) C)
    left = solve_kron_identity_left(n, U, left_ambient)
    if left is None:
        raise InternalConsistencyError(
            "left coaction on the self-cotensor escaped C (x) cotensor"
        )
    right_ambient = kron(eye, C.delta) @ U  # into (C (x) C) (x) C
    right = solve_kron_identity_right(U, n, right_ambient)
    if right is None:
        raise InternalConsistencyError(
            "right coaction on the self-cotensor escaped cotensor (x) C"
        )
    labels = [f"t{i}" for i in range(t)]
    name = f"{C.name}[]{C.name}"
    X.bicomodule = Bicomodule(C, C, labels, left, right, name=name)
    return X


def coinduced_space(M, phi):
    """The cotensor of the corestricted M with C as a left D-comodule."""
    C = phi.source
    _, reg_left, _ = regular_comodules(C)
    return cotensor(corestrict(M, phi), corestrict_left(reg_left, phi))


def kernel_bicomodule_cotensor(phi):
    """C []_D Ker(phi), pairing the corestricted regular C with the kernel.

    Returns (the cotensor space, the kernel bicomodule).
    """
    C = phi.source
    reg_right, _, _ = regular_comodules(C)
    ker_bico, _inclusion = kernel_bicomodule(phi)
    return cotensor(corestrict(reg_right, phi), ker_bico.left_comodule()), ker_bico


def unit_map(M, phi, space=None):
    """The adjunction unit on M: m maps to m_[0] (x) m_[1] inside M []_D C.

    Returns (matrix in canonical bases, the cotensor space).  Membership of
    the image in the cotensor is certified, not assumed.  For M = C the
    matrix is the comultiplication written in cotensor coordinates.
    """
    if M.over != phi.source:
        raise CoalgebraMismatchError(f"{M.name} is not a comodule over {phi.source.name}")
    X = space if space is not None else coinduced_space(M, phi)
    coords = solve_right(X.basis_columns(), M.coaction)
    if coords is None:
        raise InternalConsistencyError(
            "the coaction image escaped the cotensor; input data is corrupt"
        )
    return coords, X


def nu_map(M, phi, space=None):
    """The counit-contraction M []_D C -> M sending m (x) c to m eps(c)."""
    if M.over != phi.source:
        raise CoalgebraMismatchError(f"{M.name} is not a comodule over {phi.source.name}")
    X = space if space is not None else coinduced_space(M, phi)
    C = phi.source
    eye_m = Matrix.identity(M.field, M.dim)
    return kron(eye_m, C.counit) @ X.basis_columns()
