"""Unit conventions and the diatomic molecule registry.

Internal calculations use Hartree energies, Bohr lengths, and hbar = 1.
Molecular masses stay in whatever unit the active convention dictates: the
default convention keeps the tabulated atomic-mass-unit values unconverted,
the alternative rescales them to electron masses.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass

EV_PER_HARTREE = 27.211386
ANGSTROM_PER_BOHR = 0.529177
ELECTRON_MASSES_PER_AMU = 1822.888

#: Reduced Planck constant in internal units.  Formulas reference this
#: constant explicitly instead of silently assuming 1, so the internal
#: system is swappable by editing one number.
HBAR = 1.0


class UnitsError(ValueError):
    """Base error for unit conversion and registry failures."""


class UnknownMoleculeError(UnitsError):
    """Requested molecule is not in the registry."""


class MoleculeFileError(UnitsError):
    """A molecule definition file is missing, malformed, or incomplete."""


@dataclass(frozen=True)
class RawMolecule:
    """Molecule constants exactly as tabulated: eV, angstrom, amu.

    Attributes:
        name: Registry key, e.g. ``"N2"``.
        dissociation_energy_ev: Potential well depth in electronvolt.
        equilibrium_separation_angstrom: Bond length in angstrom.
        mass_amu: Reduced mass in atomic mass units.
    """

    name: str
    dissociation_energy_ev: float
    equilibrium_separation_angstrom: float
    mass_amu: float


@dataclass(frozen=True)
class MoleculeParams:
    """Molecule constants converted to internal units.

    Attributes:
        name: Registry key the values belong to.
        dissociation_energy: Well depth in Hartree.
        equilibrium_separation: Bond length in Bohr.
        mass: Reduced mass in the convention's mass unit.
    """

    name: str
    dissociation_energy: float
    equilibrium_separation: float
    mass: float

    def __post_init__(self) -> None:
        for field in ("dissociation_energy", "equilibrium_separation", "mass"):
            value = getattr(self, field)
            if not value > 0:
                raise UnitsError(
                    f"molecule {self.name!r}: {field} must be positive, got {value!r}"
                )


@dataclass(frozen=True)
class UnitConvention:
    """Multiplicative scales taking tabulated values to internal units.

    Attributes:
        label: Convention name used on the command line and in file headers.
        energy_scale: Multiplier applied to energies given in eV.
        length_scale: Multiplier applied to lengths given in angstrom.
        mass_scale: Multiplier applied to masses given in amu.
    """

    label: str
    energy_scale: float
    length_scale: float
    mass_scale: float


HARTREE_AMU = UnitConvention(
    label="hartree-amu",
    energy_scale=1.0 / EV_PER_HARTREE,
    length_scale=1.0 / ANGSTROM_PER_BOHR,
    mass_scale=1.0,
)

HARTREE_FULL = UnitConvention(
    label="hartree-full",
    energy_scale=1.0 / EV_PER_HARTREE,
    length_scale=1.0 / ANGSTROM_PER_BOHR,
    mass_scale=ELECTRON_MASSES_PER_AMU,
)

CONVENTIONS = {c.label: c for c in (HARTREE_AMU, HARTREE_FULL)}
DEFAULT_CONVENTION = HARTREE_AMU


def get_convention(label: str) -> UnitConvention:
    """Look up a unit convention by its label."""
    try:
        return CONVENTIONS[label]
    except KeyError:
        known = ", ".join(sorted(CONVENTIONS))
        raise UnitsError(f"unknown unit convention {label!r}; known: {known}") from None


def to_internal(raw: RawMolecule, convention: UnitConvention = DEFAULT_CONVENTION) -> MoleculeParams:
    """Convert tabulated molecule constants to internal units.

    The conversion is a plain rescale by the convention factors, so it is
    linear in each input and exactly invertible by :func:`from_internal`.
    """
    return MoleculeParams(
        name=raw.name,
        dissociation_energy=raw.dissociation_energy_ev * convention.energy_scale,
        equilibrium_separation=raw.equilibrium_separation_angstrom * convention.length_scale,
        mass=raw.mass_amu * convention.mass_scale,
    )


def from_internal(mol: MoleculeParams, convention: UnitConvention = DEFAULT_CONVENTION) -> RawMolecule:
    """Recover the tabulated eV/angstrom/amu values from internal units."""
    return RawMolecule(
        name=mol.name,
        dissociation_energy_ev=mol.dissociation_energy / convention.energy_scale,
        equilibrium_separation_angstrom=mol.equilibrium_separation / convention.length_scale,
        mass_amu=mol.mass / convention.mass_scale,
    )


_BUILTIN = (
    RawMolecule("N2", 11.9382, 1.0940, 7.00335),
    RawMolecule("H2", 4.7446, 0.7416, 0.50391),
    RawMolecule("CO", 10.8451, 1.1283, 6.86059),
)


def builtin_molecules() -> dict[str, RawMolecule]:
    """Tabulated constants of the built-in diatomics, keyed by name."""
    return {raw.name: raw for raw in _BUILTIN}


def get_molecule(name: str, convention: UnitConvention = DEFAULT_CONVENTION) -> MoleculeParams:
    """Fetch a built-in molecule by name (case-insensitive) in internal units.

    Raises:
        UnknownMoleculeError: If no registry entry matches; the message lists
            every known name.
    """
    registry = builtin_molecules()
    for key, raw in registry.items():
        if key.lower() == name.lower():
            return to_internal(raw, convention)
    known = ", ".join(sorted(registry))
    raise UnknownMoleculeError(f"unknown molecule {name!r}; known molecules: {known}")


_FILE_KEYS = ("de_ev", "re_angstrom", "m_amu")


def load_molecules(path: str, convention: UnitConvention = DEFAULT_CONVENTION) -> dict[str, MoleculeParams]:
    """Load extra molecules from an INI file, one section per molecule.

    Each section must define the keys ``De_eV``, ``re_angstrom`` and
    ``m_amu`` (key lookup is case-insensitive).  Duplicate sections or keys
    are rejected rather than silently merged.

    Returns:
        Mapping from section name to converted :class:`MoleculeParams`.

    Raises:
        MoleculeFileError: On unreadable files, duplicate definitions,
            missing keys, or values that do not parse as numbers; the
            message names the offending section and key.
    """
    parser = configparser.ConfigParser(strict=True)
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise MoleculeFileError(f"cannot read molecule file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise MoleculeFileError(f"malformed molecule file {path}: {exc}") from exc

    molecules: dict[str, MoleculeParams] = {}
    for section in parser.sections():
        values = {}
        for key in _FILE_KEYS:
            if not parser.has_option(section, key):
                raise MoleculeFileError(
                    f"{path}: section [{section}] is missing key {key!r}"
                )
            try:
                values[key] = parser.getfloat(section, key)
            except ValueError as exc:
                raise MoleculeFileError(
                    f"{path}: section [{section}] key {key!r} is not a number: {exc}"
                ) from exc
        raw = RawMolecule(section, values["de_ev"], values["re_angstrom"], values["m_amu"])
        molecules[section] = to_internal(raw, convention)
    return molecules
