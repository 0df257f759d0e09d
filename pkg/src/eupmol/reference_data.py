"""Printed reference tables for the critical-deformation reports.

These are the published tabulated values this tool reproduces.  They feed
the discrepancy report only: no computation ever reads them as input, and
the independent eigensolver remains the authoritative check.  Cells whose
printed values are internally inconsistent with their own columns (scale
jumps or broken monotonicity) are listed in :data:`SUSPECTED_MISPRINTS`
and excluded from agreement statistics.
"""

from __future__ import annotations

MOLECULE_COLUMNS = ("N2", "H2", "CO")

#: Ionization thresholds of the Kratzer family on the closed branch,
#: rows keyed by (n, l).
PRINTED_LAMBDA_C = {
    (1, 0): {"N2": 0.19770, "H2": 0.00220, "CO": 0.17762},
    (2, 0): {"N2": 0.08419, "H2": 0.00052, "CO": 0.07507},
    (2, 1): {"N2": 0.01529, "H2": 0.00023, "CO": 0.06919},
    (3, 0): {"N2": 0.043963, "H2": 0.000179, "CO": 0.03897},
    (3, 1): {"N2": 0.04970, "H2": 0.000095, "CO": 0.03621},
    (3, 2): {"N2": 0.03599, "H2": 0.000052, "CO": 0.03164},
    (4, 0): {"N2": 0.022572, "H2": 0.000077, "CO": 0.02269},
    (4, 1): {"N2": 0.02412, "H2": 0.000045, "CO": 0.02122},
    (4, 2): {"N2": 0.021423, "H2": 0.000027, "CO": 0.01876},
    (4, 3): {"N2": 0.018307, "H2": 0.000017, "CO": 0.01595},
    (5, 0): {"N2": 0.016227, "H2": 0.000038, "CO": 0.01426},
    (5, 1): {"N2": 0.015294, "H2": 0.000024, "CO": 0.01341},
    (5, 2): {"N2": 0.013718, "H2": 0.000015, "CO": 0.01197},
    (5, 3): {"N2": 0.011856, "H2": 0.000010, "CO": 0.01030},
    (5, 4): {"N2": 0.01007, "H2": 7.4e-6, "CO": 0.00866},
}

#: Ground-state inversion thresholds of the pseudoharmonic family,
#: rows keyed by (n, l).
PRINTED_LAMBDA_F_PHO = {
    (1, 0): {"N2": 0.0597119, "H2": 0.00162457, "CO": 0.0567986},
    (2, 0): {"N2": 0.0352453, "H2": 0.000503812, "CO": 0.0332321},
    (2, 1): {"N2": 0.0379421, "H2": 0.000300942, "CO": 0.0354058},
    (3, 0): {"N2": 0.0221267, "H2": 0.00020685, "CO": 0.0207211},
    (3, 1): {"N2": 0.0236383, "H2": 0.00012418, "CO": 0.0219046},
    (3, 2): {"N2": 0.0254385, "H2": 0.00009019, "CO": 0.0232438},
    (4, 0): {"N2": 0.0145841, "H2": 0.00010054, "CO": 0.0135836},
    (4, 1): {"N2": 0.0154871, "H2": 0.00006065, "CO": 0.0142719},
    (4, 2): {"N2": 0.0165328, "H2": 0.0000445466, "CO": 0.177242},
    (4, 3): {"N2": 0.0171201, "H2": 0.0000361096, "CO": 0.0153659},
    (5, 0): {"N2": 0.00999948, "H2": 0.0000547581, "CO": 0.0092722},
    (5, 1): {"N2": 0.0105673, "H2": 0.0000331766, "CO": 0.0096943},
    (5, 2): {"N2": 0.0112105, "H2": 0.0000245916, "CO": 0.0101414},
    (5, 3): {"N2": 0.0115529, "H2": 0.0000201296, "CO": 0.0103248},
    (5, 4): {"N2": 0.0115344, "H2": 0.000017249, "CO": 0.0102143},
}

#: Ground-state inversion thresholds of the Kratzer family,
#: rows keyed by (n, l); the published table has an empty (0, 0) row.
PRINTED_LAMBDA_F_KRATZER = {
    (0, 0): {"N2": None, "H2": None, "CO": None},
    (1, 0): {"N2": 0.847672, "H2": 0.211971, "CO": 0.775011},
    (1, 1): {"N2": 0.772393, "H2": 0.159601, "CO": 0.704656},
    (2, 0): {"N2": 0.489404, "H2": 0.122382, "CO": 0.447453},
    (2, 1): {"N2": 0.448771, "H2": 0.0936605, "CO": 0.40947},
    (2, 2): {"N2": 0.399568, "H2": 0.0821475, "CO": 0.364012},
    (3, 0): {"N2": 0.346061, "H2": 0.0865369, "CO": 0.316397},
    (3, 1): {"N2": 0.317836, "H2": 0.0665504, "CO": 0.290011},
    (3, 2): {"N2": 0.283484, "H2": 0.0584089, "CO": 0.25827},
    (3, 3): {"N2": 0.255954, "H2": 0.0543813, "CO": 0.233107},
    (4, 0): {"N2": 0.268058, "H2": 0.0670312, "CO": 0.24508},
    (4, 1): {"N2": 0.246352, "H2": 0.051601, "CO": 0.224788},
    (4, 2): {"N2": 0.219881, "H2": 0.0453442, "CO": 0.200328},
    (4, 3): {"N2": 0.198629, "H2": 0.042228, "CO": 0.180902},
    (4, 4): {"N2": 0.183597, "H2": 0.0403857, "CO": 0.167265},
    (5, 0): {"N2": 0.218868, "H2": 0.0547307, "CO": 0.200107},
    (5, 1): {"N2": 0.20121, "H2": 0.0421667, "CO": 0.183599},
    (5, 2): {"N2": 0.179653, "H2": 0.0370648, "CO": 0.163679},
    (5, 3): {"N2": 0.16233, "H2": 0.0345219, "CO": 0.147844},
    (5, 4): {"N2": 0.1500, "H2": 0.0330181, "CO": 0.136721},
    (5, 5): {"N2": 0.141576, "H2": 0.0320283, "CO": 0.129049},
}

PRINTED_TABLES = {
    "lambda_c": PRINTED_LAMBDA_C,
    "lambda_f_pho": PRINTED_LAMBDA_F_PHO,
    "lambda_f_kratzer": PRINTED_LAMBDA_F_KRATZER,
}

#: (table kind, molecule, (n, l)) cells whose printed values break their own
#: column pattern and are excluded from agreement statistics.
SUSPECTED_MISPRINTS = {
    ("lambda_c", "N2", (2, 1)),
    ("lambda_f_pho", "CO", (4, 2)),
}
