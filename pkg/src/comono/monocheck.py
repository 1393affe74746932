"""Monomorphism criteria for coalgebra maps, cross-validated against each other.

Three decision procedures are implemented for phi: C -> D, all provably
equivalent:

* counit balance: eps(a) b = a eps(b) for every a (x) b in C []_D C;
* unit surjectivity: the comultiplication, viewed as C -> C []_D C, is onto
  (it is always injective, so this is a dimension comparison);
* kernel cotensor: C []_D Ker(phi) = 0.

The aggregate verdict comes from the counit-balance check, the cheapest of
the three; the other two run as cross-validation and any disagreement raises
TheoremViolationError, which always signals an implementation bug rather
than a mathematical outcome.  The zeroth cohomology space H0 of a bicomodule
and the product-of-counits functional give further cross-checks used by the
test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .coalgebra import (
    corestrict,
    corestrict_bicomodule,
    corestrict_left,
    format_combination,
    regular_comodules,
)
from .cotensor import (
    cotensor,
    kernel_bicomodule_cotensor,
    self_cotensor,
    self_cotensor_bicomodule,
    unit_map,
)
from .errors import CoalgebraMismatchError, TheoremViolationError
from .linalg import Matrix, Subspace, kernel_basis, kron, subspace_leq


@dataclass(frozen=True)
class TensorWitness:
    """A cotensor basis vector on which the two counit contractions differ."""

    coords: tuple
    ambient: tuple
    display: str
    left_value: tuple
    right_value: tuple
    left_display: str
    right_display: str

    def __str__(self):
        return (
            f"{self.display}: eps-left gives {self.left_display}, "
            f"eps-right gives {self.right_display}"
        )


@dataclass(frozen=True)
class CriterionResult:
    name: str
    holds: bool
    witness: TensorWitness | None = None
    details: dict = dc_field(default_factory=dict)


@dataclass(frozen=True)
class H0Space:
    """Functionals gamma on a bicomodule with matching left/right contractions."""

    bicomodule: object
    coefficients: object
    space: Subspace

    @property
    def dim(self):
        return self.space.dim


@dataclass(frozen=True)
class TFunctionalResult:
    """The product-of-counits functional on C []_D C and its H0 memberships."""

    coords: Matrix
    in_target_h0: bool
    in_source_h0: bool
    cotensor: object


@dataclass
class MonoVerdict:
    """Aggregated outcome of the monomorphism criteria for one morphism."""

    morphism: object
    results: dict
    is_mono: bool
    disagreement: bool
    injective: bool
    kernel_dim: int
    cotensor_dim: int
    h0_equal_on_self_cotensor: bool | None = None

    def witness(self):
        for res in self.results.values():
            if res.witness is not None:
                return res.witness
        return None

    def to_dict(self):
        out = {
            "morphism": self.morphism.name,
            "source": {"name": self.morphism.source.name, "dim": self.morphism.source.dim},
            "target": {"name": self.morphism.target.name, "dim": self.morphism.target.dim},
            "verdict": "mono" if self.is_mono else "not-mono",
            "injective": self.injective,
            "kernel_dim": self.kernel_dim,
            "cotensor_dim": self.cotensor_dim,
            "disagreement": self.disagreement,
            "criteria": {
                name: {
                    "holds": res.holds,
                    "witness": str(res.witness) if res.witness else None,
                    **{k: v for k, v in res.details.items()},
                }
                for name, res in self.results.items()
            },
        }
        if self.h0_equal_on_self_cotensor is not None:
            out["h0_equal_on_self_cotensor"] = self.h0_equal_on_self_cotensor
        return out


def _counit_difference(C):
    """The ambient map C (x) C -> C sending a (x) b to eps(a) b - a eps(b)."""
    eye = Matrix.identity(C.field, C.dim)
    return kron(C.counit, eye) - kron(eye, C.counit)


def counit_balance_criterion(phi, space=None):
    """Decide whether eps(a) b = a eps(b) on all of C []_D C.

    On failure the witness is the first canonical basis vector where the two
    contractions differ, reported in cotensor coordinates and as an expanded
    tensor with basis labels.
    """
    C = phi.source
    X = space if space is not None else self_cotensor(phi)
    U = X.basis_columns()
    values = _counit_difference(C) @ U
    holds = values.is_zero()
    witness = None
    if not holds:
        bad = next(j for j in range(values.cols) if (values.a[:, j] != 0).any())
        ambient = U.a[:, bad]
        coords = np.zeros(X.dim, dtype=U.field.dtype)
        coords[bad] = U.field.one
        eye = Matrix.identity(C.field, C.dim)
        left_val = (kron(C.counit, eye) @ U).a[:, bad]
        right_val = (kron(eye, C.counit) @ U).a[:, bad]
        witness = TensorWitness(
            coords=tuple(coords),
            ambient=tuple(ambient),
            display=format_combination(ambient, X.ambient_labels(), C.field),
            left_value=tuple(left_val),
            right_value=tuple(right_val),
            left_display=C.format_element(left_val),
            right_display=C.format_element(right_val),
        )
    return CriterionResult(
        "counit_balance", holds, witness, details={"cotensor_dim": X.dim}
    )


def unit_surjectivity_criterion(phi, space=None):
    """Decide whether the comultiplication maps C onto C []_D C.

    The unit map is always injective (the counit splits it), so surjectivity
    is equivalent to dim(C []_D C) = dim C; the rank of the solved matrix is
    still computed as a consistency check.
    """
    C = phi.source
    reg_right, _, _ = regular_comodules(C)
    eta, X = unit_map(reg_right, phi, space=space)
    rank = eta.rank()
    if rank != C.dim:
        raise TheoremViolationError(
            f"unit map of {phi.name} is not injective (rank {rank} < {C.dim}); "
            "this contradicts the counit axiom"
        )
    holds = rank == X.dim
    return CriterionResult(
        "unit_surjective",
        holds,
        details={"cotensor_dim": X.dim, "source_dim": C.dim, "unit_rank": rank},
    )


def kernel_cotensor_criterion(phi):
    """Decide whether C []_D Ker(phi) vanishes."""
    X, kernel = kernel_bicomodule_cotensor(phi)
    holds = X.dim == 0
    return CriterionResult(
        "kernel_cotensor_zero",
        holds,
        details={"kernel_dim": kernel.dim, "cotensor_with_kernel_dim": X.dim},
    )


def h0(N):
    """H0 of a bicomodule N over (E, E): all gamma in N* with
    n_(-1) gamma(n_(0)) = gamma(n_[0]) n_[1] on every basis element.
    """
    if N.left_over != N.right_over:
        raise CoalgebraMismatchError(
            "H0 needs matching coefficient coalgebras on both sides"
        )
    E = N.left_over
    m, n = N.dim, E.dim
    f = N.field
    left3 = N.left_coaction.a.reshape(n, m, m)  # [i, b, a]
    right3 = N.right_coaction.a.reshape(m, n, m)  # [b, i, a]
    g = left3.transpose(2, 0, 1) - right3.transpose(2, 1, 0)  # [a, i, b]
    matrix = Matrix(f, f.post(g.reshape(m * n, m).copy()))
    return H0Space(bicomodule=N, coefficients=E, space=kernel_basis(matrix))


def h0_equal_criterion(phi, N):
    """Compare H0 of a (C, C)-bicomodule with H0 of its corestriction to (D, D).

    Both sit inside N*, and the first is always contained in the second; a
    containment failure is a theorem violation.  Returns (equal, details).
    """
    if N.left_over != phi.source or N.right_over != phi.source:
        raise CoalgebraMismatchError(
            f"{N.name} is not a bicomodule over the source of {phi.name}"
        )
    over_c = h0(N)
    over_d = h0(corestrict_bicomodule(N, phi))
    if not subspace_leq(over_c.space, over_d.space):
        raise TheoremViolationError(
            f"H0({N.name}, {phi.source.name}) is not contained in "
            f"H0({N.name}, {phi.target.name})"
        )
    equal = over_c.space == over_d.space
    return equal, {
        "h0_source_dim": over_c.dim,
        "h0_target_dim": over_d.dim,
        "source_h0": over_c,
        "target_h0": over_d,
    }


def t_functional(phi, space=None):
    """The functional sending a (x) b in C []_D C to eps(a) eps(b).

    It always lies in H0 of the self-cotensor corestricted to (D, D); it lies
    in H0 over (C, C) exactly when the criteria hold.
    """
    X = space if space is not None else self_cotensor_bicomodule(phi)
    if X.bicomodule is None:
        raise ValueError("t_functional needs a self-cotensor with bicomodule structure")
    C = phi.source
    coords = kron(C.counit, C.counit) @ X.basis_columns()  # 1 x dim(X)
    over_c = h0(X.bicomodule)
    over_d = h0(corestrict_bicomodule(X.bicomodule, phi))
    in_target = over_d.space.contains(coords)
    if not in_target:
        raise TheoremViolationError(
            "the product-of-counits functional escaped H0 over the target"
        )
    in_source = over_c.space.contains(coords)
    return TFunctionalResult(
        coords=coords, in_target_h0=in_target, in_source_h0=in_source, cotensor=X
    )


def unit_iso_check(phi, M):
    """Per-comodule unit isomorphism check: is the unit map on M bijective?"""
    eta, X = unit_map(M, phi)
    return eta.rows == eta.cols and eta.rank() == X.dim


def is_monomorphism(phi, crosscheck=True, attach_h0=False):
    """Run the criteria on a validated coalgebra map and aggregate a verdict.

    The aggregate verdict is the counit-balance result.  With ``crosscheck``
    the two other criteria run as well and any disagreement raises
    TheoremViolationError (it is a bug, never a mathematical outcome).  With
    ``attach_h0`` the H0 comparison for the self-cotensor bicomodule is
    computed and attached; it is off by default because batch fuzzing does
    not need it.
    """
    if attach_h0:
        X = self_cotensor_bicomodule(phi)
    else:
        X = self_cotensor(phi)
    balance = counit_balance_criterion(phi, space=X)
    results = {"counit_balance": balance}
    disagreement = False
    if crosscheck:
        results["unit_surjective"] = unit_surjectivity_criterion(phi, space=X)
        results["kernel_cotensor_zero"] = kernel_cotensor_criterion(phi)
        outcomes = {res.holds for res in results.values()}
        disagreement = len(outcomes) > 1
    kernel_dim = phi.kernel().dim
    verdict = MonoVerdict(
        morphism=phi,
        results=results,
        is_mono=balance.holds,
        disagreement=disagreement,
        injective=kernel_dim == 0,
        kernel_dim=kernel_dim,
        cotensor_dim=X.dim,
    )
    if disagreement:
        raise TheoremViolationError(
            f"equivalent criteria disagree on {phi.name}: "
            + ", ".join(f"{k}={v.holds}" for k, v in results.items()),
            verdict=verdict,
        )
    if attach_h0:
        equal, _ = h0_equal_criterion(phi, X.bicomodule)
        verdict.h0_equal_on_self_cotensor = equal
    return verdict
