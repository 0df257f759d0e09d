"""Closed-form bound-state energies for deformed diatomic models.

Two radial families are covered: a pseudoharmonic well and a Kratzer-type
molecular potential, both placed on a curved background controlled by a
deformation strength ``lam`` (dimension inverse length squared) and a
curvature sign ``kappa`` (+1 open branch, -1 closed branch).  All formulas
take molecule parameters in internal units (see :mod:`eupmol.units`).

Energy references: the pseudoharmonic energies contain the constant well
offset of the potential itself, while the Kratzer energies are measured
from the dissociation threshold, so bound states come out negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .units import HBAR, MoleculeParams

FAMILY_PHO = "pho"
FAMILY_KRATZER = "kratzer"
FAMILIES = (FAMILY_PHO, FAMILY_KRATZER)

KAPPA_DS = +1
KAPPA_ADS = -1


class SpectraDomainError(ValueError):
    """Input lies outside the physical or analytic domain of a formula."""


@dataclass(frozen=True)
class DeformationConfig:
    """Deformation strength and curvature sign of the background.

    Attributes:
        lam: Deformation parameter, nonnegative, units of inverse length
            squared.  Zero recovers flat space.
        kappa: Curvature sign, +1 or -1.
    """

    lam: float
    kappa: int

    def __post_init__(self) -> None:
        if self.lam < 0:
            raise SpectraDomainError(f"deformation strength must be >= 0, got {self.lam}")
        if self.kappa not in (KAPPA_DS, KAPPA_ADS):
            raise SpectraDomainError(f"curvature sign must be +1 or -1, got {self.kappa}")

    @property
    def cosmological_constant(self) -> float:
        """Cosmological constant implied by the deformation strength."""
        return -3.0 * self.lam


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial and orbital quantum numbers of a bound state."""

    n: int
    l: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.l < 0:
            raise SpectraDomainError(f"quantum numbers must be >= 0, got n={self.n}, l={self.l}")


def metric_factor(r, deformation: DeformationConfig):
    """Square root of the radial metric component, sqrt(1 + kappa*lam*r^2)."""
    r_arr = np.asarray(r, dtype=float)
    arg = 1.0 + deformation.kappa * deformation.lam * r_arr * r_arr
    if np.any(arg < 0):
        raise SpectraDomainError(
            "radius outside the closed-branch domain r <= 1/sqrt(lam)"
        )
    return _match_shape(np.sqrt(arg), r)


def arc_length(r, deformation: DeformationConfig):
    """Geodesic radial coordinate: the arc length from the origin to r.

    Reduces to r itself in flat space; on the closed branch it compactifies
    the radial domain, on the open branch it stretches it.
    """
    lam, kappa = deformation.lam, deformation.kappa
    r_arr = np.asarray(r, dtype=float)
    if lam == 0:
        return _match_shape(r_arr.copy(), r)
    root = math.sqrt(lam)
    if kappa == KAPPA_ADS:
        arg = root * r_arr
        if np.any(arg > 1):
            raise SpectraDomainError("radius outside the closed-branch domain r <= 1/sqrt(lam)")
        return _match_shape(np.arcsin(arg) / root, r)
    return _match_shape(np.arcsinh(root * r_arr) / root, r)


def radius_from_arc(x, deformation: DeformationConfig):
    """Invert :func:`arc_length`: radius at a given geodesic distance."""
    lam, kappa = deformation.lam, deformation.kappa
    x_arr = np.asarray(x, dtype=float)
    if lam == 0:
        return _match_shape(x_arr.copy(), x)
    root = math.sqrt(lam)
    if kappa == KAPPA_ADS:
        return _match_shape(np.sin(root * x_arr) / root, x)
    return _match_shape(np.sinh(root * x_arr) / root, x)


def pho_potential(r, mol: MoleculeParams):
    """Pseudoharmonic well D_e*(r/r_e - r_e/r)^2, zero at r = r_e.

    Args:
        r: Radius or array of radii, strictly positive.
        mol: Molecule parameters in internal units.

    Raises:
        SpectraDomainError: If any radius is nonpositive.
    """
    r_arr = _positive_radii(r)
    ratio = r_arr / mol.equilibrium_separation
    return _match_shape(mol.dissociation_energy * (ratio - 1.0 / ratio) ** 2, r)


def kratzer_potential(r, mol: MoleculeParams):
    """Kratzer-type well D_e*((r - r_e)/r)^2, zero at r = r_e, D_e at infinity.

    Args:
        r: Radius or array of radii, strictly positive.
        mol: Molecule parameters in internal units.

    Raises:
        SpectraDomainError: If any radius is nonpositive.
    """
    r_arr = _positive_radii(r)
    return _match_shape(
        mol.dissociation_energy * ((r_arr - mol.equilibrium_separation) / r_arr) ** 2, r
    )


def _positive_radii(r) -> np.ndarray:
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise SpectraDomainError("radius must be strictly positive")
    return r_arr


def _match_shape(values: np.ndarray, original):
    if np.ndim(original) == 0:
        return float(values)
    return values


def _omega(mol: MoleculeParams) -> float:
    """Harmonic frequency of the pseudoharmonic well at its minimum."""
    return math.sqrt(2.0 * mol.dissociation_energy / (mol.mass * mol.equilibrium_separation**2))


def _omega_tilde(mol: MoleculeParams, lam: float) -> float:
    """Deformation-dressed frequency entering the pseudoharmonic ladder."""
    correction = lam * lam * HBAR * HBAR * mol.equilibrium_separation**2 / (
        8.0 * mol.mass * mol.dissociation_energy
    )
    return _omega(mol) * math.sqrt(1.0 + correction)


def _well_strength(mol: MoleculeParams) -> float:
    """Dimensionless well-depth combination 2*m*D_e*r_e^2/hbar^2."""
    return 2.0 * mol.mass * mol.dissociation_energy * mol.equilibrium_separation**2 / HBAR**2


def _s_index(l: int, mol: MoleculeParams) -> float:
    """Effective angular index sqrt((l+1/2)^2 + 2*m*D_e*r_e^2/hbar^2)."""
    return math.sqrt((l + 0.5) ** 2 + _well_strength(mol))


def _kratzer_delta(l: int, mol: MoleculeParams) -> float:
    """Centrifugal-plus-well combination (l+1/2)^2 + 2*m*D_e*r_e^2/hbar^2."""
    return (l + 0.5) ** 2 + _well_strength(mol)


def _kratzer_A(qn: QuantumNumbers, mol: MoleculeParams) -> float:
    """Principal-like combination n + 1/2 + sqrt(delta) of the Kratzer tower."""
    return qn.n + 0.5 + math.sqrt(_kratzer_delta(qn.l, mol))


def _ladder_coefficient(n: int, s: float) -> float:
    """Deformation-term coefficient (n+1/2)*(2n+2s+1) - 1/4 of the pseudoharmonic ladder."""
    return (n + 0.5) * (2.0 * n + 2.0 * s + 1.0) - 0.25


def pho_energy_undeformed(qn: QuantumNumbers, mol: MoleculeParams) -> float:
    """Flat-space pseudoharmonic level: hbar*omega*(2n+S+1) - 2*D_e."""
    s = _s_index(qn.l, mol)
    return HBAR * _omega(mol) * (2 * qn.n + s + 1) - 2.0 * mol.dissociation_energy


def kratzer_energy_undeformed(qn: QuantumNumbers, mol: MoleculeParams) -> float:
    """Flat-space Kratzer level measured from the dissociation threshold."""
    a_n = _kratzer_A(qn, mol)
    return (
        -2.0 * mol.mass * mol.dissociation_energy**2 * mol.equilibrium_separation**2
        / (HBAR**2 * a_n**2)
    )


def pho_energy(qn: QuantumNumbers, mol: MoleculeParams, deformation: DeformationConfig) -> float:
    """Deformed pseudoharmonic level.

    The ladder term uses the dressed frequency and is curvature-blind; the
    curvature enters through a term linear in the deformation strength.
    Setting ``lam = 0`` reproduces :func:`pho_energy_undeformed` exactly.

    Args:
        qn: Radial and orbital quantum numbers.
        mol: Molecule parameters in internal units.
        deformation: Background deformation.

    Returns:
        Level energy in internal units, including the constant well offset.
    """
    lam, kappa = deformation.lam, deformation.kappa
    s = _s_index(qn.l, mol)
    ladder = HBAR * _omega_tilde(mol, lam) * (2 * qn.n + s + 1)
    curvature = (lam * kappa * HBAR**2 / mol.mass) * _ladder_coefficient(qn.n, s)
    return ladder - curvature - 2.0 * mol.dissociation_energy


def kratzer_energy(qn: QuantumNumbers, mol: MoleculeParams, deformation: DeformationConfig) -> float:
    """Deformed Kratzer level, measured from the dissociation threshold.

    Exactly affine in the deformation strength: a flat-space term plus a
    curvature term linear in ``lam``.  Setting ``lam = 0`` reproduces
    :func:`kratzer_energy_undeformed` exactly.

    Args:
        qn: Radial and orbital quantum numbers.
        mol: Molecule parameters in internal units.
        deformation: Background deformation.

    Returns:
        Level energy in internal units; bound states are negative.
    """
    lam, kappa = deformation.lam, deformation.kappa
    delta = _kratzer_delta(qn.l, mol)
    a_n = _kratzer_A(qn, mol)
    curvature = (kappa * lam * HBAR**2 / (2.0 * mol.mass)) * (a_n**2 - delta - 0.75)
    return kratzer_energy_undeformed(qn, mol) - curvature


def energy(
    family: str, qn: QuantumNumbers, mol: MoleculeParams, deformation: DeformationConfig
) -> float:
    """Dispatch to the requested family's deformed energy formula."""
    if family == FAMILY_PHO:
        return pho_energy(qn, mol, deformation)
    if family == FAMILY_KRATZER:
        return kratzer_energy(qn, mol, deformation)
    raise SpectraDomainError(f"unknown family {family!r}; expected one of {FAMILIES}")


def energy_undeformed(family: str, qn: QuantumNumbers, mol: MoleculeParams) -> float:
    """Dispatch to the requested family's flat-space energy formula."""
    if family == FAMILY_PHO:
        return pho_energy_undeformed(qn, mol)
    if family == FAMILY_KRATZER:
        return kratzer_energy_undeformed(qn, mol)
    raise SpectraDomainError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclass(frozen=True)
class PhoAuxiliaries:
    """Intermediate quantities of the pseudoharmonic solution.

    Attributes:
        delta: Centrifugal-plus-well combination l(l+1) + 2*m*D_e*r_e^2/hbar^2.
        eta: Well-curvature strength 2*m*D_e/(hbar^2*r_e^2).
        epsilon_of_E: Maps a level energy to the scaled energy
            2*m*(E + 2*D_e)/hbar^2.
        mu: Positive index root, mu = (1 + sqrt(1 + 4*eta/lam^2))/2, >= 1,
            satisfying mu*(mu-1) = eta/lam^2.
    """

    delta: float
    eta: float
    epsilon_of_E: Callable[[float], float] = field(repr=False)
    mu: float = 0.0


@dataclass(frozen=True)
class KratzerAuxiliaries:
    """Intermediate quantities of the Kratzer solution.

    Attributes:
        delta: Centrifugal-plus-well combination (l+1/2)^2 + 2*m*D_e*r_e^2/hbar^2.
        eta: Magnitude of the linear-term strength, 4*m*D_e*r_e/(sqrt(lam)*hbar^2).
            On the closed branch the algebraic quantity is imaginary; its
            squared value enters :attr:`discriminant_of_E` with the proper
            curvature sign.
        eta_prime: Same magnitude under the name used by the closed-branch
            eigenfunction.
        epsilon_of_E: Maps a threshold-referenced level energy to the scaled
            energy 2*m*E/(kappa*lam*hbar^2) - 1/2.
        zeta1: Bound-state value of the leading index, n + 1/2 + sqrt(delta).
        chi_plus: Eigenfunction exponent 1 - 2*zeta1 + eta/zeta1.
        chi_minus: Eigenfunction exponent 1 - 2*zeta1 - eta/zeta1.
        discriminant_of_E: Maps a threshold-referenced energy to the
            root-classifying discriminant of the index equation.
        flags: Empty when the state sits inside the analytic validity region;
            contains ``"outside analytic validity"`` when the open-branch
            index condition fails and the closed form no longer describes a
            normalizable state.
    """

    delta: float
    eta: float
    eta_prime: float
    epsilon_of_E: Callable[[float], float] = field(repr=False)
    discriminant_of_E: Callable[[float], float] = field(repr=False)
    zeta1: float = 0.0
    chi_plus: float = 0.0
    chi_minus: float = 0.0
    flags: tuple[str, ...] = ()


def pho_auxiliaries(
    qn: QuantumNumbers, mol: MoleculeParams, deformation: DeformationConfig
) -> PhoAuxiliaries:
    """Build the pseudoharmonic auxiliary bundle for a deformed state.

    Raises:
        SpectraDomainError: If ``lam = 0``; the flat-space limit has no
            finite index root, use the undeformed energy branch instead.
    """
    lam = deformation.lam
    if lam == 0:
        raise SpectraDomainError(
            "auxiliaries are defined for lam > 0 only; use the undeformed energy branch"
        )
    m, d_e = mol.mass, mol.dissociation_energy
    delta = qn.l * (qn.l + 1) + _well_strength(mol)
    eta = 2.0 * m * d_e / (HBAR**2 * mol.equilibrium_separation**2)
    mu = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * eta / lam**2))

    def epsilon_of_e(e: float) -> float:
        return 2.0 * m * (e + 2.0 * d_e) / HBAR**2

    return PhoAuxiliaries(delta=delta, eta=eta, epsilon_of_E=epsilon_of_e, mu=mu)


def kratzer_auxiliaries(
    qn: QuantumNumbers, mol: MoleculeParams, deformation: DeformationConfig
) -> KratzerAuxiliaries:
    """Build the Kratzer auxiliary bundle for a deformed state.

    Raises:
        SpectraDomainError: If ``lam = 0``; the scaled-energy map degenerates
            there, use the undeformed energy branch instead.
    """
    lam, kappa = deformation.lam, deformation.kappa
    if lam == 0:
        raise SpectraDomainError(
            "auxiliaries are defined for lam > 0 only; use the undeformed energy branch"
        )
    m = mol.mass
    delta = _kratzer_delta(qn.l, mol)
    eta = 4.0 * m * mol.dissociation_energy * mol.equilibrium_separation / (
        math.sqrt(lam) * HBAR**2
    )
    zeta1 = _kratzer_A(qn, mol)
    chi_plus = 1.0 - 2.0 * zeta1 + eta / zeta1
    chi_minus = 1.0 - 2.0 * zeta1 - eta / zeta1

    def epsilon_of_e(e: float) -> float:
        return 2.0 * m * e / (kappa * lam * HBAR**2) - 0.5

    def discriminant_of_e(e: float) -> float:
        eps = epsilon_of_e(e)
        return (eps - kappa * 0.25 - kappa * delta) ** 2 - kappa * eta * eta

    flags: tuple[str, ...] = ()
    if kappa == KAPPA_DS and zeta1 * zeta1 >= eta / 2.0:
        flags = ("outside analytic validity",)
    return KratzerAuxiliaries(
        delta=delta,
        eta=eta,
        eta_prime=eta,
        epsilon_of_E=epsilon_of_e,
        discriminant_of_E=discriminant_of_e,
        zeta1=zeta1,
        chi_plus=chi_plus,
        chi_minus=chi_minus,
        flags=flags,
    )


def state_exists(
    family: str, qn: QuantumNumbers, mol: MoleculeParams, deformation: DeformationConfig
) -> bool:
    """Whether the requested level is a normalizable bound state.

    Flat space and the closed branch support the full tower.  On the open
    branch the tower terminates: the pseudoharmonic ladder must stay below
    its index root, the Kratzer index must stay below the linear-term
    strength.
    """
    if family not in FAMILIES:
        raise SpectraDomainError(f"unknown family {family!r}; expected one of {FAMILIES}")
    lam, kappa = deformation.lam, deformation.kappa
    if lam == 0 or kappa == KAPPA_ADS:
        return True
    if family == FAMILY_PHO:
        aux = pho_auxiliaries(qn, mol, deformation)
        s = _s_index(qn.l, mol)
        return 2 * qn.n + s + 1.5 < aux.mu
    aux = kratzer_auxiliaries(qn, mol, deformation)
    return aux.zeta1**2 < aux.eta / 2.0


def max_radial_quantum_number(
    family: str, l: int, mol: MoleculeParams, deformation: DeformationConfig
):
    """Largest admissible radial quantum number at fixed l.

    Returns:
        ``None`` when the tower is infinite (flat space or closed branch),
        otherwise the largest admissible ``n`` (-1 when no state exists).
    """
    lam, kappa = deformation.lam, deformation.kappa
    if lam == 0 or kappa == KAPPA_ADS:
        return None
    qn0 = QuantumNumbers(0, l)
    if family == FAMILY_PHO:
        aux = pho_auxiliaries(qn0, mol, deformation)
        s = _s_index(l, mol)
        bound = (aux.mu - s - 1.5) / 2.0
    elif family == FAMILY_KRATZER:
        aux = kratzer_auxiliaries(qn0, mol, deformation)
        bound = math.sqrt(aux.eta / 2.0) - 0.5 - math.sqrt(aux.delta)
    else:
        raise SpectraDomainError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return max(math.ceil(bound) - 1, -1)


def potential_ceiling(
    family: str, l: int, mol: MoleculeParams, deformation: DeformationConfig
) -> float:
    """Limit of the effective radial potential toward the outer boundary.

    On the open branch the deformed potential saturates at a finite ceiling,
    which is what terminates the bound tower; the value shares the energy
    reference of the corresponding energy formula.  The closed branch
    confines, so the ceiling is infinite, and so is the flat pseudoharmonic
    well; the flat Kratzer threshold is zero by construction.
    """
    lam, kappa = deformation.lam, deformation.kappa
    if family not in FAMILIES:
        raise SpectraDomainError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if kappa == KAPPA_ADS and lam > 0:
        return math.inf
    if lam == 0:
        return math.inf if family == FAMILY_PHO else 0.0
    u_limit = 1.0 / math.sqrt(lam)
    centrifugal = HBAR**2 * lam * (l * (l + 1) + 1) / (2.0 * mol.mass)
    if family == FAMILY_PHO:
        return pho_potential(u_limit, mol) + centrifugal
    return kratzer_potential(u_limit, mol) - mol.dissociation_energy + centrifugal


def kappa_even_part(family: str, qn: QuantumNumbers, mol: MoleculeParams, lam: float) -> float:
    """Curvature-even part of the level: the mean over both curvature signs.

    The curvature enters both families through a term odd in the sign, so
    averaging the two branches cancels it exactly.  For the pseudoharmonic
    family the mean keeps the dressed-frequency ladder (which depends on
    ``lam``); for the Kratzer family it equals the flat-space level.
    """
    if family == FAMILY_PHO:
        s = _s_index(qn.l, mol)
        return HBAR * _omega_tilde(mol, lam) * (2 * qn.n + s + 1) - 2.0 * mol.dissociation_energy
    if family == FAMILY_KRATZER:
        return kratzer_energy_undeformed(qn, mol)
    raise SpectraDomainError(f"unknown family {family!r}; expected one of {FAMILIES}")


def hup_bound(dx):
    """Flat-space momentum-spread lower bound hbar/(2*dx)."""
    dx_arr = _positive_radii(dx)
    return _match_shape(HBAR / (2.0 * dx_arr), dx)


def uncertainty_bound(dx, deformation: DeformationConfig):
    """Deformed momentum-spread lower bound (hbar/(2*dx))*(1 - kappa*lam*dx^2).

    On the closed branch the bound lies above the flat one everywhere and
    attains its minimum hbar*sqrt(lam) at dx = 1/sqrt(lam); on the open
    branch it lies below the flat bound and implies no minimum.
    """
    dx_arr = _positive_radii(dx)
    factor = 1.0 - deformation.kappa * deformation.lam * dx_arr * dx_arr
    return _match_shape(HBAR / (2.0 * dx_arr) * factor, dx)
