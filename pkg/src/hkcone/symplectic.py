"""Rank of a symplectic form restricted to subspaces, exactly.

The rank of omega restricted to a subspace W with basis rows R is the
rank of R omega R^t; it is even, at most dim W, and at least
dim W - codim W with equality exactly for coisotropic W.  All ranks are
computed by exact elimination; no thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from . import linalg
from .errors import PreconditionError


def _num(c):
    # ints stay ints so integer inputs ride the fraction-free fast paths
    return c if isinstance(c, int) else Fraction(c)


def _qmat(m):
    return tuple(tuple(_num(c) for c in row) for row in m)


@dataclass(frozen=True)
class SymplecticSpace:
    omega: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.omega)
        if n == 0 or n % 2:
            raise PreconditionError("dimension must be even and positive")
        for i in range(n):
            if len(self.omega[i]) != n:
                raise PreconditionError("omega must be square")
            for j in range(n):
                if self.omega[i][j] != -self.omega[j][i]:
                    raise PreconditionError("omega must be antisymmetric")
        if linalg.determinant(self.omega) == 0:
            raise PreconditionError("omega must be nondegenerate")

    @property
    def dim(self) -> int:
        return len(self.omega)


def standard_space(n: int) -> SymplecticSpace:
    """Standard form on dimension 2n: omega(e_i, f_i) = 1."""
    dim = 2 * n
    omega = [[0] * dim for _ in range(dim)]
    for i in range(n):
        omega[i][n + i] = 1
        omega[n + i][i] = -1
    return SymplecticSpace(omega=_qmat(omega))


def symplectic_space(omega) -> SymplecticSpace:
    return SymplecticSpace(omega=_qmat(omega))


@dataclass(frozen=True)
class Subspace:
    basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.basis:
            raise PreconditionError("subspace needs at least one basis vector")
        if linalg.rank(self.basis) != len(self.basis):
            raise PreconditionError("basis vectors must be linearly independent")

    @property
    def dim(self) -> int:
        return len(self.basis)


def subspace(vectors) -> Subspace:
    return Subspace(basis=_qmat(vectors))


def _check_ambient(space: SymplecticSpace, w: Subspace):
    if any(len(v) != space.dim for v in w.basis):
        raise PreconditionError("basis vectors must lie in the ambient space")


def gram_of_restriction(space: SymplecticSpace, w: Subspace):
    _check_ambient(space, w)
    rows = w.basis
    omega_rt = linalg.mat_mul(space.omega, linalg.transpose(rows))
    return linalg.mat_mul(rows, omega_rt)


def restriction_rank(space: SymplecticSpace, w: Subspace) -> int:
    """Rank of omega restricted to W; always even."""
    return linalg.rank(gram_of_restriction(space, w))


def is_isotropic(space: SymplecticSpace, w: Subspace) -> bool:
    return restriction_rank(space, w) == 0


def is_coisotropic(space: SymplecticSpace, w: Subspace) -> bool:
    """True iff W contains its omega-orthogonal complement."""
    _check_ambient(space, w)
    perp = linalg.nullspace(linalg.mat_mul(w.basis, space.omega))
    m = len(w.basis)
    for v in perp:
        denom = 1
        for c in v:
            denom = denom * Fraction(c).denominator // gcd(denom, Fraction(c).denominator)
        vi = tuple(int(c * denom) for c in v)
        if linalg.rank(w.basis + (vi,)) != m:
            return False
    return True


def pullback_rank(space: SymplecticSpace, f) -> int:
    """Rank of f^* omega for a linear map into the space (columns = images)."""
    f = _qmat(f)
    if len(f) != space.dim:
        raise PreconditionError("map must land in the ambient space")
    ft = linalg.transpose(f)
    return linalg.rank(linalg.mat_mul(ft, linalg.mat_mul(space.omega, f)))


class MbmRankCheck(NamedTuple):
    holds: bool
    reason: str | None


def mbm_rank_identity(space: SymplecticSpace, w: Subspace,
                      ambient_codim: int) -> MbmRankCheck:
    """Check rank(omega|_W) = dim - 2 codim for a locus-type subspace.

    Applies when the kernel of omega|_W has dimension exactly
    ambient_codim; otherwise the precondition failure is reported.
    """
    r = restriction_rank(space, w)
    kernel_dim = w.dim - r
    if kernel_dim != ambient_codim:
        return MbmRankCheck(False, f"kernel dimension {kernel_dim} != codimension {ambient_codim}")
    return MbmRankCheck(r == space.dim - 2 * ambient_codim, None)
