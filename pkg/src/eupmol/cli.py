"""Command-line reports: spectra, critical tables, figures, validation.

Every report writes delimited text (CSV by default, JSON on request)
with full-precision floats plus, where a figure makes sense, an image
next to it.  Outputs embed the tool version, the unit convention, and a
digest of the run configuration; repeated runs with the same
configuration produce byte-identical delimited files.

Exit codes: 0 on success, 1 when a validation run fails its checks, 2 on
usage errors, 3 when a computation cannot be completed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, criticality, oracle, plotting, spectra, wavefunctions
from .criticality import TABLE_KINDS
from .spectra import (
    FAMILIES,
    KAPPA_ADS,
    KAPPA_DS,
    DeformationConfig,
    QuantumNumbers,
)
from .units import (
    CONVENTIONS,
    DEFAULT_CONVENTION,
    UnitConvention,
    UnitsError,
    UnknownMoleculeError,
    builtin_molecules,
    from_internal,
    get_convention,
    get_molecule,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_COMPUTATION = 3

DEFAULT_SWEEP = "0:0.02:41"
FORMATS = ("csv", "json")

_KAPPA_CHOICES = {
    "ads": (KAPPA_ADS,),
    "ds": (KAPPA_DS,),
    "both": (KAPPA_ADS, KAPPA_DS),
}


class _UsageError(Exception):
    """Bad argument values discovered after parsing."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one command invocation.

    The digest over these fields goes into every output header, so two
    files with the same digest came from the same configuration.  Output
    location and format are presentation choices and stay out of the
    digest.
    """

    command: str
    units: str
    family: str | None = None
    molecule: str | None = None
    kappa: str | None = None
    lam: float | None = None
    sweep: tuple[float, float, int] | None = None
    n: int | None = None
    l: int | None = None
    perturb: tuple[str, float] | None = None

    def digest(self) -> str:
        canonical = repr(
            (
                self.command,
                self.units,
                self.family,
                self.molecule,
                self.kappa,
                self.lam,
                self.sweep,
                self.n,
                self.l,
                self.perturb,
            )
        )
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]

    def header_comment(self) -> str:
        return f"# eupmol {__version__} units={self.units} config={self.digest()}"

    def header_object(self) -> dict:
        return {
            "tool": "eupmol",
            "version": __version__,
            "units": self.units,
            "config": self.digest(),
        }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "" if math.isnan(value) else format(value, ".17g")
    return str(value)


def _json_cell(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def _emit(stem: Path, config: RunConfig, columns: tuple[str, ...], rows, fmt: str) -> Path:
    """Write one delimited report as CSV or JSON and return its path."""
    if fmt == "json":
        path = stem.with_suffix(".json")
        payload = {
            "header": config.header_object(),
            "columns": list(columns),
            "rows": [
                {name: _json_cell(value) for name, value in zip(columns, row)}
                for row in rows
            ],
        }
        path.write_text(json.dumps(payload, indent=1, allow_nan=False) + "\n", encoding="utf-8")
        return path
    path = stem.with_suffix(".csv")
    lines = [config.header_comment(), ",".join(columns)]
    lines.extend(",".join(_quote_if_needed(_fmt(v)) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _quote_if_needed(text: str) -> str:
    if "," in text or '"' in text:
        return '"' + text.replace('"', '""') + '"'
    return text


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _parse_sweep(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"sweep must look like min:max:steps, got {text!r}")
    try:
        low, high = float(parts[0]), float(parts[1])
        steps = int(parts[2])
    except ValueError:
        raise _UsageError(f"could not parse sweep {text!r}") from None
    if steps < 2:
        raise _UsageError("a sweep needs at least two steps")
    if low < 0:
        raise _UsageError("deformation strengths must be >= 0")
    if not high > low:
        raise _UsageError("sweep upper end must exceed its lower end")
    return low, high, steps


def _parse_perturb(text: str) -> tuple[str, float]:
    parts = text.split(":")
    if len(parts) != 2 or parts[0] not in FAMILIES:
        raise _UsageError(
            f"perturbation must look like family:percent with family in {FAMILIES}, got {text!r}"
        )
    try:
        percent = float(parts[1])
    except ValueError:
        raise _UsageError(f"could not parse perturbation percentage {parts[1]!r}") from None
    return parts[0], percent


def cmd_spectrum(args) -> int:
    convention = get_convention(args.units)
    mol = get_molecule(args.molecule, convention)
    if args.n < 0 or args.l < 0:
        raise _UsageError("quantum numbers must be >= 0")
    if args.lam is not None and args.lambda_sweep is not None:
        raise _UsageError("give either a single deformation strength or a sweep, not both")
    if args.lam is not None:
        if args.lam < 0:
            raise _UsageError("deformation strength must be >= 0")
        lam_single, sweep = args.lam, None
        lambdas = np.array([args.lam])
    else:
        lam_single = None
        sweep = _parse_sweep(args.lambda_sweep or DEFAULT_SWEEP)
        lambdas = np.linspace(sweep[0], sweep[1], sweep[2])
    kappas = _KAPPA_CHOICES[args.kappa]

    config = RunConfig(
        command="spectrum",
        units=convention.label,
        family=args.family,
        molecule=mol.name,
        kappa=args.kappa,
        lam=lam_single,
        sweep=sweep,
        n=args.n,
        l=args.l,
    )
    series: dict[str, np.ndarray] = {}
    for kappa in kappas:
        for n in range(args.n + 1):
            qn = QuantumNumbers(n, args.l)
            series[f"kappa={kappa:+d}, n={n}"] = np.array(
                [
                    spectra.energy(args.family, qn, mol, DeformationConfig(lam, kappa))
                    for lam in lambdas
                ]
            )
    rows = []
    for i, lam in enumerate(lambdas):
        for kappa in kappas:
            for n in range(args.n + 1):
                rows.append((float(lam), kappa, n, float(series[f"kappa={kappa:+d}, n={n}"][i])))

    out = _out_dir(args)
    data_path = _emit(out / "spectrum", config, ("lambda", "kappa", "n", "E"), rows, args.format)
    figure_path = plotting.save_spectrum_figure(
        out / "spectrum.png",
        lambdas,
        series,
        title=f"{args.family} levels, {mol.name}, l={args.l}",
    )
    print(f"wrote {data_path}")
    print(f"wrote {figure_path}")
    return EXIT_OK


def cmd_tables(args) -> int:
    convention = get_convention(args.units)
    if args.molecule is not None:
        molecules = [get_molecule(args.molecule, convention)]
    else:
        molecules = [get_molecule(name, convention) for name in builtin_molecules()]
    config = RunConfig(command="tables", units=convention.label, molecule=args.molecule)
    out = _out_dir(args)
    written = []
    for kind in TABLE_KINDS:
        table = criticality.generate_table(kind, molecules)
        columns = ("n", "l") + table.molecules
        rows = [
            (n, l) + tuple(table.values[(n, l)][name] for name in table.molecules)
            for n, l in table.rows
        ]
        written.append(_emit(out / kind, config, columns, rows, args.format))
        reason_rows = [
            (n, l, name, reason) for (n, l, name), reason in sorted(table.reasons.items())
        ]
        written.append(
            _emit(
                out / f"{kind}_reasons",
                config,
                ("n", "l", "molecule", "reason"),
                reason_rows,
                args.format,
            )
        )

    # Printed reference values are tabulated in the default convention, so
    # the comparison always runs there regardless of the output units.
    reference_molecules = [get_molecule(name) for name in builtin_molecules()]
    if args.molecule is not None:
        wanted = {m.name for m in molecules}
        reference_molecules = [m for m in reference_molecules if m.name in wanted]
    discrepancy_rows = []
    for kind in TABLE_KINDS:
        for row in criticality.discrepancy_report(kind, reference_molecules):
            discrepancy_rows.append(
                (
                    kind,
                    row.molecule,
                    row.n,
                    row.l,
                    row.printed,
                    row.computed,
                    row.relative_deviation,
                    "yes" if row.suspected_misprint else "no",
                )
            )
    written.append(
        _emit(
            out / "discrepancies",
            config,
            (
                "table",
                "molecule",
                "n",
                "l",
                "printed",
                "computed",
                "relative_deviation",
                "suspected_misprint",
            ),
            discrepancy_rows,
            args.format,
        )
    )
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_figures_uncertainty(args) -> int:
    convention = get_convention(args.units)
    if not args.lam > 0:
        raise _UsageError("the uncertainty figure needs a positive deformation strength")
    if args.n < 0 or args.l < 0:
        raise _UsageError("quantum numbers must be >= 0")
    mol = get_molecule(args.molecule, convention)
    config = RunConfig(
        command="figures",
        units=convention.label,
        family=args.family,
        molecule=mol.name,
        kappa=args.kappa,
        lam=args.lam,
        n=args.n,
        l=args.l,
    )
    root = 1.0 / math.sqrt(args.lam)
    dx = np.geomspace(0.08 * root, 12.0 * root, 241)
    hup = spectra.hup_bound(dx)
    ads = spectra.uncertainty_bound(dx, DeformationConfig(args.lam, KAPPA_ADS))
    ds = spectra.uncertainty_bound(dx, DeformationConfig(args.lam, KAPPA_DS))

    out = _out_dir(args)
    written = [
        _emit(
            out / "uncertainty",
            config,
            ("dx", "dp_hup", "dp_ads", "dp_ds"),
            list(zip(dx, hup, ads, ds)),
            args.format,
        ),
        plotting.save_uncertainty_figure(out / "uncertainty.png", dx, hup, ads, ds, args.lam),
    ]

    kappa = _KAPPA_CHOICES[args.kappa][0]
    state = wavefunctions.normalize(
        wavefunctions.solution(
            args.family,
            QuantumNumbers(args.n, args.l),
            mol,
            DeformationConfig(args.lam, kappa),
        )
    )
    radii = wavefunctions.default_node_grid(state)[::15]
    values = wavefunctions.radial(state, radii)
    written.append(
        _emit(out / "wavefunction", config, ("r", "R"), list(zip(radii, values)), args.format)
    )
    written.append(
        plotting.save_wavefunction_figure(
            out / "wavefunction.png",
            radii,
            values,
            title=(
                f"{args.family} radial state, {mol.name}, n={args.n}, l={args.l}, "
                f"kappa={kappa:+d}, strength {args.lam:g}"
            ),
        )
    )
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_validate(args) -> int:
    convention = get_convention(args.units)
    if args.molecule is not None:
        molecules = [get_molecule(args.molecule, convention)]
    else:
        molecules = [get_molecule(name, convention) for name in builtin_molecules()]
    perturb = _parse_perturb(args.perturb) if args.perturb else None
    config = RunConfig(
        command="validate",
        units=convention.label,
        molecule=args.molecule,
        perturb=perturb,
    )
    result = oracle.full_validation(molecules, perturb=perturb)
    out = _out_dir(args)
    rows = [
        (
            row.family,
            row.molecule,
            row.kappa,
            row.lam,
            row.n,
            row.l,
            row.e_closed,
            row.e_oracle,
            row.rel_residual,
            row.conv_order,
        )
        for row in result.rows
    ]
    columns = tuple(oracle.VALIDATION_CSV_HEADER.split(","))
    path = _emit(out / "validation", config, columns, rows, args.format)
    print(f"wrote {path}")
    verdict = "passed" if result.passed else "FAILED"
    print(
        f"validation {verdict}: worst residual {result.worst_residual:.3e} over "
        f"{len(result.rows)} cells (tolerance {result.tolerance:g})"
    )
    return EXIT_OK if result.passed else EXIT_VALIDATION


def cmd_molecules(args) -> int:
    convention = get_convention(args.units)
    config = RunConfig(command="molecules", units=convention.label)
    print(config.header_comment())
    print("name,De_eV,re_angstrom,mass_amu,De,re,mass")
    for name in builtin_molecules():
        mol = get_molecule(name, convention)
        raw = from_internal(mol, convention)
        print(
            ",".join(
                (
                    mol.name,
                    _fmt(raw.dissociation_energy_ev),
                    _fmt(raw.equilibrium_separation_angstrom),
                    _fmt(raw.mass_amu),
                    _fmt(mol.dissociation_energy),
                    _fmt(mol.equilibrium_separation),
                    _fmt(mol.mass),
                )
            )
        )
    return EXIT_OK


def _add_units(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--units",
        choices=sorted(CONVENTIONS),
        default=DEFAULT_CONVENTION.label,
        help="unit convention for inputs and outputs",
    )


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument(
        "--format", choices=FORMATS, default="csv", help="delimited output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eupmol",
        description=(
            "Bound-state spectra, critical deformation strengths, and "
            "validation reports for diatomic molecules on curved backgrounds."
        ),
    )
    parser.add_argument("--version", action="version", version=f"eupmol {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_spectrum = subparsers.add_parser(
        "spectrum", help="level energies over a deformation sweep"
    )
    p_spectrum.add_argument("--family", choices=FAMILIES, default="pho")
    p_spectrum.add_argument("--molecule", default="N2")
    p_spectrum.add_argument("--kappa", choices=sorted(_KAPPA_CHOICES), default="both")
    p_spectrum.add_argument(
        "--lambda", dest="lam", type=float, default=None, help="single deformation strength"
    )
    p_spectrum.add_argument(
        "--lambda-sweep",
        dest="lambda_sweep",
        default=None,
        metavar="MIN:MAX:STEPS",
        help=f"deformation sweep (default {DEFAULT_SWEEP})",
    )
    p_spectrum.add_argument("--n", type=int, default=3, help="largest radial quantum number")
    p_spectrum.add_argument("--l", type=int, default=0, help="orbital quantum number")
    _add_units(p_spectrum)
    _add_output(p_spectrum)
    p_spectrum.set_defaults(func=cmd_spectrum)

    p_tables = subparsers.add_parser(
        "tables", help="critical-strength tables and the printed-value comparison"
    )
    p_tables.add_argument("--molecule", default=None, help="restrict to one molecule")
    _add_units(p_tables)
    _add_output(p_tables)
    p_tables.set_defaults(func=cmd_tables)

    p_figures = subparsers.add_parser(
        "figures",
        help="uncertainty-bound curves plus one sampled radial eigenfunction",
    )
    p_figures.add_argument(
        "--lambda", dest="lam", type=float, default=0.01, help="deformation strength"
    )
    p_figures.add_argument("--family", choices=FAMILIES, default="pho")
    p_figures.add_argument("--molecule", default="N2")
    p_figures.add_argument("--kappa", choices=("ads", "ds"), default="ads")
    p_figures.add_argument("--n", type=int, default=0, help="radial quantum number")
    p_figures.add_argument("--l", type=int, default=0, help="orbital quantum number")
    _add_units(p_figures)
    _add_output(p_figures)
    p_figures.set_defaults(func=cmd_figures_uncertainty)

    p_validate = subparsers.add_parser(
        "validate", help="cross-check closed formulas against the independent solver"
    )
    p_validate.add_argument("--molecule", default=None, help="restrict to one molecule")
    p_validate.add_argument(
        "--perturb",
        default=None,
        metavar="FAMILY:PERCENT",
        help="self-test: scale one family's closed formulas and expect failure",
    )
    _add_units(p_validate)
    _add_output(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_molecules = subparsers.add_parser("molecules", help="list built-in molecules")
    _add_units(p_molecules)
    p_molecules.set_defaults(func=cmd_molecules)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownMoleculeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        spectra.SpectraDomainError,
        criticality.CriticalityError,
        oracle.OracleError,
        UnitsError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    raise SystemExit(main())
