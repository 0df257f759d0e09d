"""Critical deformation strengths: ionization and level-inversion points.

Two kinds of critical point are located on the closed-form energy curves:

* Ionization: the deformation strength at which a Kratzer level, negative
  in flat space, is lifted to zero on the closed branch (kappa = -1).
* Inversion: the strength at which an excited level's curve, read on the
  open branch (kappa = +1), meets the ground-state curve from above.

Both come with an algebraic closed form and an independent bracketing
root-finder; the two routes are cross-checked against each other whenever
a value is produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from . import spectra
from .reference_data import MOLECULE_COLUMNS, PRINTED_TABLES, SUSPECTED_MISPRINTS
from .spectra import (
    FAMILY_KRATZER,
    FAMILY_PHO,
    KAPPA_ADS,
    KAPPA_DS,
    DeformationConfig,
    QuantumNumbers,
)
from .units import HBAR, MoleculeParams

KIND_IONIZATION = "ionization"
KIND_INVERSION = "inversion"

TABLE_KINDS = ("lambda_c", "lambda_f_pho", "lambda_f_kratzer")

_LAMBDA_MAX = 10.0
_REL_TOL = 1e-14


class CriticalityError(ValueError):
    """Base error for critical-point computations."""


class NoCrossingError(CriticalityError):
    """The level's energy curve never reaches zero."""


class NoInversionError(CriticalityError):
    """The level's curve never meets the ground-state curve."""


class UndefinedCriticalPointError(CriticalityError):
    """The requested critical point is undefined for these quantum numbers."""


@dataclass(frozen=True)
class CriticalPoint:
    """A located critical deformation strength.

    Attributes:
        qn: Quantum numbers of the level.
        molecule: Name of the molecule.
        family: Radial family the curve belongs to.
        kind: ``"ionization"`` or ``"inversion"``.
        lambda_value: The critical deformation strength.
        method: ``"closed-form"`` or ``"root-find"``.
        residual: Magnitude of the defining quantity at the located point
            (the level energy for ionization, the level difference for
            inversion).
    """

    qn: QuantumNumbers
    molecule: str
    family: str
    kind: str
    lambda_value: float
    method: str
    residual: float


def lambda_c_closed(qn: QuantumNumbers, mol: MoleculeParams) -> CriticalPoint:
    """Closed-form ionization strength of a Kratzer level on the closed branch.

    Raises:
        NoCrossingError: If the curvature coefficient of the level vanishes
            or is negative, so the energy curve never reaches zero.
    """
    m, d_e, r_e = mol.mass, mol.dissociation_energy, mol.equilibrium_separation
    delta = spectra._kratzer_delta(qn.l, mol)
    a_n = spectra._kratzer_A(qn, mol)
    slope_factor = a_n**2 - delta - 0.75
    if slope_factor <= 0:
        raise NoCrossingError(
            f"level n={qn.n}, l={qn.l} of {mol.name} has no zero crossing: "
            f"its curvature coefficient {slope_factor} is not positive"
        )
    lam_c = 4.0 * m**2 * d_e**2 * r_e**2 / (HBAR**4 * a_n**2 * slope_factor)
    residual = abs(
        spectra.kratzer_energy(qn, mol, DeformationConfig(lam_c, KAPPA_ADS))
    )
    return CriticalPoint(
        qn=qn,
        molecule=mol.name,
        family=FAMILY_KRATZER,
        kind=KIND_IONIZATION,
        lambda_value=lam_c,
        method="closed-form",
        residual=residual,
    )


def lambda_c_numeric(
    qn: QuantumNumbers, mol: MoleculeParams, lam_max: float = _LAMBDA_MAX
) -> CriticalPoint:
    """Ionization strength found by bracketing the Kratzer energy curve.

    The bracket grows geometrically from a tiny strength until the energy
    changes sign, then a hybrid bracketing root-finder polishes the root.

    Raises:
        NoCrossingError: If no sign change is found up to ``lam_max``.
    """

    def level(lam: float) -> float:
        return spectra.kratzer_energy(qn, mol, DeformationConfig(lam, KAPPA_ADS))

    lo = 1e-12
    if level(lo) >= 0:
        raise NoCrossingError(
            f"level n={qn.n}, l={qn.l} of {mol.name} is not bound at vanishing deformation"
        )
    hi = lo
    while hi < lam_max and level(hi) < 0:
        hi = min(hi * 4.0, lam_max)
    if level(hi) < 0:
        raise NoCrossingError(
            f"no zero crossing of level n={qn.n}, l={qn.l} of {mol.name} "
            f"below deformation strength {lam_max}"
        )
    lam_c = brentq(level, lo, hi, xtol=1e-300, rtol=_REL_TOL)
    return CriticalPoint(
        qn=qn,
        molecule=mol.name,
        family=FAMILY_KRATZER,
        kind=KIND_IONIZATION,
        lambda_value=lam_c,
        method="root-find",
        residual=abs(level(lam_c)),
    )


def _pho_inversion_closed(qn: QuantumNumbers, mol: MoleculeParams) -> float:
    """Closed-form inversion strength for a pseudoharmonic level."""
    s_l = spectra._s_index(qn.l, mol)
    s_0 = spectra._s_index(0, mol)
    gap_index = 2 * qn.n + s_l - s_0
    gap_ladder = spectra._ladder_coefficient(qn.n, s_l) - spectra._ladder_coefficient(0, s_0)
    radicand = gap_ladder**2 - 0.25 * gap_index**2
    if gap_ladder <= 0 or radicand <= 0:
        raise NoInversionError(
            f"pseudoharmonic level n={qn.n}, l={qn.l} of {mol.name} never meets "
            f"the ground-state curve"
        )
    return (mol.mass * spectra._omega(mol) / HBAR) * gap_index / math.sqrt(radicand)


def _kratzer_inversion_closed(qn: QuantumNumbers, mol: MoleculeParams) -> float:
    """Closed-form inversion strength for a Kratzer level."""
    m, d_e, r_e = mol.mass, mol.dissociation_energy, mol.equilibrium_separation
    a_n = spectra._kratzer_A(qn, mol)
    a_0 = spectra._kratzer_A(QuantumNumbers(0, 0), mol)
    spread = a_n**2 - a_0**2
    denominator = a_0**2 * a_n**2 * (spread - qn.l * (qn.l + 1))
    if spread <= 0 or denominator <= 0:
        raise NoInversionError(
            f"Kratzer level n={qn.n}, l={qn.l} of {mol.name} never meets "
            f"the ground-state curve"
        )
    return 4.0 * m**2 * d_e**2 * r_e**2 * spread / (HBAR**4 * denominator)


def lambda_f_closed(qn: QuantumNumbers, mol: MoleculeParams, family: str) -> float:
    """Closed-form inversion strength (open branch) for either family."""
    if qn == QuantumNumbers(0, 0):
        raise UndefinedCriticalPointError(
            "the inversion point of the ground state against itself is undefined"
        )
    if family == FAMILY_PHO:
        return _pho_inversion_closed(qn, mol)
    if family == FAMILY_KRATZER:
        return _kratzer_inversion_closed(qn, mol)
    raise CriticalityError(f"unknown family {family!r}; expected one of {spectra.FAMILIES}")


def lambda_f(
    qn: QuantumNumbers,
    mol: MoleculeParams,
    family: str,
    kappa: int = KAPPA_DS,
    lam_max: float = _LAMBDA_MAX,
) -> CriticalPoint:
    """Inversion strength where a level's curve meets the ground-state curve.

    Inversions occur on the open branch (kappa = +1), where the curvature
    term grows fastest for high levels and eventually drags an excited
    curve below the ground state's.  On the closed branch every term of the
    level difference is positive, so requesting kappa = -1 reports the
    absence honestly instead of searching forever.

    The root is bracketed and polished numerically, then cross-checked
    against the family's closed form to one part in 1e10.

    Raises:
        UndefinedCriticalPointError: For the ground state itself.
        NoInversionError: If the curves never meet below ``lam_max``.
    """
    if qn == QuantumNumbers(0, 0):
        raise UndefinedCriticalPointError(
            "the inversion point of the ground state against itself is undefined"
        )
    ground = QuantumNumbers(0, 0)

    def difference(lam: float) -> float:
        deformation = DeformationConfig(lam, kappa)
        return spectra.energy(family, qn, mol, deformation) - spectra.energy(
            family, ground, mol, deformation
        )

    lo = 1e-12
    if difference(lo) <= 0:
        raise NoInversionError(
            f"level n={qn.n}, l={qn.l} of {mol.name} does not lie above the "
            f"ground state at vanishing deformation"
        )
    hi = lo
    while hi < lam_max and difference(hi) > 0:
        hi = min(hi * 4.0, lam_max)
    if difference(hi) > 0:
        raise NoInversionError(
            f"curves of n={qn.n}, l={qn.l} and the ground state of {mol.name} "
            f"({family}) do not meet below deformation strength {lam_max}"
        )
    lam_f = brentq(difference, lo, hi, xtol=1e-300, rtol=_REL_TOL)
    if kappa == KAPPA_DS:
        closed = lambda_f_closed(qn, mol, family)
        if abs(closed - lam_f) > 1e-10 * closed:
            raise CriticalityError(
                f"closed-form and root-find inversion strengths disagree for "
                f"n={qn.n}, l={qn.l} of {mol.name} ({family}): {closed} vs {lam_f}"
            )
    return CriticalPoint(
        qn=qn,
        molecule=mol.name,
        family=family,
        kind=KIND_INVERSION,
        lambda_value=lam_f,
        method="root-find",
        residual=abs(difference(lam_f)),
    )


@dataclass(frozen=True)
class CriticalTable:
    """A computed critical-strength table plus reasons for empty cells.

    Attributes:
        kind: One of ``"lambda_c"``, ``"lambda_f_pho"``, ``"lambda_f_kratzer"``.
        molecules: Column order of molecule names.
        rows: Row order of (n, l) pairs, n outer, l inner.
        values: Per-row mapping from molecule name to the strength, or
            ``None`` for an empty cell.
        reasons: Explanations for empty cells, keyed by (n, l, molecule).
    """

    kind: str
    molecules: tuple[str, ...]
    rows: tuple[tuple[int, int], ...]
    values: dict[tuple[int, int], dict[str, float | None]]
    reasons: dict[tuple[int, int, str], str]


def default_rows(kind: str, n_max: int = 5) -> tuple[tuple[int, int], ...]:
    """Row layout of each published table: n outer, l inner.

    The ionization table and the pseudoharmonic inversion table list
    l = 0..n-1 for n = 1..n_max; the Kratzer inversion table includes
    l = n and starts from the (empty) ground-state row.
    """
    if kind in ("lambda_c", "lambda_f_pho"):
        return tuple((n, l) for n in range(1, n_max + 1) for l in range(n))
    if kind == "lambda_f_kratzer":
        return tuple((n, l) for n in range(0, n_max + 1) for l in range(n + 1))
    raise CriticalityError(f"unknown table kind {kind!r}; expected one of {TABLE_KINDS}")


def _cell_value(kind: str, qn: QuantumNumbers, mol: MoleculeParams) -> float:
    if kind == "lambda_c":
        return lambda_c_closed(qn, mol).lambda_value
    if kind == "lambda_f_pho":
        return lambda_f(qn, mol, FAMILY_PHO).lambda_value
    if kind == "lambda_f_kratzer":
        return lambda_f(qn, mol, FAMILY_KRATZER).lambda_value
    raise CriticalityError(f"unknown table kind {kind!r}; expected one of {TABLE_KINDS}")


def generate_table(
    kind: str,
    molecules: list[MoleculeParams],
    n_max: int = 5,
    l_rule=None,
) -> CriticalTable:
    """Compute a critical-strength table over the requested molecules.

    Args:
        kind: Which table to compute; see :data:`TABLE_KINDS`.
        molecules: Column molecules, in the order the columns should appear.
        n_max: Largest radial quantum number.
        l_rule: Optional callable mapping n to an iterable of l values,
            overriding the kind's published row layout.

    Returns:
        The computed table; cells whose critical point does not exist are
        ``None`` with a reason recorded per cell.
    """
    if l_rule is None:
        rows = default_rows(kind, n_max)
    else:
        n_start = 0 if kind == "lambda_f_kratzer" else 1
        rows = tuple((n, l) for n in range(n_start, n_max + 1) for l in l_rule(n))
    values: dict[tuple[int, int], dict[str, float | None]] = {}
    reasons: dict[tuple[int, int, str], str] = {}
    for n, l in rows:
        row: dict[str, float | None] = {}
        for mol in molecules:
            try:
                row[mol.name] = _cell_value(kind, QuantumNumbers(n, l), mol)
            except CriticalityError as exc:
                row[mol.name] = None
                reasons[(n, l, mol.name)] = str(exc)
        values[(n, l)] = row
    return CriticalTable(
        kind=kind,
        molecules=tuple(mol.name for mol in molecules),
        rows=rows,
        values=values,
        reasons=reasons,
    )


@dataclass(frozen=True)
class DiscrepancyRow:
    """One cell of the printed-versus-computed comparison."""

    kind: str
    n: int
    l: int
    molecule: str
    printed: float | None
    computed: float | None
    relative_deviation: float | None
    suspected_misprint: bool


def discrepancy_report(kind: str, molecules: list[MoleculeParams]) -> list[DiscrepancyRow]:
    """Compare computed critical strengths against the printed tabulation.

    Every printed cell is compared with the value this tool computes; the
    relative deviation is measured against the printed value.  Cells listed
    as suspected misprints are flagged so agreement statistics can exclude
    them.  Printed tables are reporting targets only; nothing downstream
    consumes them as inputs.
    """
    printed_table = PRINTED_TABLES[kind]
    by_name = {mol.name: mol for mol in molecules}
    report: list[DiscrepancyRow] = []
    for (n, l), printed_row in sorted(printed_table.items()):
        for name in MOLECULE_COLUMNS:
            if name not in by_name:
                continue
            printed = printed_row[name]
            computed: float | None
            try:
                computed = _cell_value(kind, QuantumNumbers(n, l), by_name[name])
            except CriticalityError:
                computed = None
            deviation = None
            if printed is not None and computed is not None:
                deviation = abs(computed - printed) / abs(printed)
            report.append(
                DiscrepancyRow(
                    kind=kind,
                    n=n,
                    l=l,
                    molecule=name,
                    printed=printed,
                    computed=computed,
                    relative_deviation=deviation,
                    suspected_misprint=(kind, name, (n, l)) in SUSPECTED_MISPRINTS,
                )
            )
    return report
