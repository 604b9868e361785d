"""Bundled reference data: measured solvation relaxation, coupling energy scales and timescales."""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import pandas as pd

from src.constants import ENERGY_SCALES_PATH, MEV_CM1, SOLVATION_TABLE_PATH, TIMESCALES_PATH
from src.errors import DatasetFormatError
from src.fitting.multiexp import ExponentialFit

logger = logging.getLogger(__name__)

SOLVATION_COLUMNS = ["chromophore", "protein", "solvent", "E_R_cm1", "A1", "tau1_ps", "A2", "tau2_ps",
                     "A3", "tau3_ps", "source"]
ENERGY_COLUMNS = ["process", "delta_min_meV", "delta_max_meV", "source"]
TIMESCALE_COLUMNS = ["process", "min_ps", "max_ps", "source"]
WEIGHT_SUM_TOLERANCE = 0.02


@dataclass(frozen=True)
class Component:
    amplitude: float
    tau: float  # ps


@dataclass(frozen=True)
class SolvationRecord:
    chromophore: str
    protein: str
    solvent: str
    E_R: Optional[float]  # cm^-1, None where not reported
    components: Tuple[Component, ...]
    source: str
    unresolved_window: bool = False

    @property
    def weight_sum(self):
        return sum(c.amplitude for c in self.components)

    @property
    def label(self):
        return f"{self.chromophore} / {self.protein} / {self.solvent}"

    def as_fit(self):
        """The row's published decay as an ExponentialFit (weights as printed, not renormalised)."""
        components = tuple(sorted(((c.amplitude, c.tau) for c in self.components), key=lambda p: p[1]))
        return ExponentialFit(components, residual_rms=0.0, converged=True)


@dataclass(frozen=True)
class EnergyScale:
    process: str
    delta_min_meV: float
    delta_max_meV: float
    source: str

    @property
    def delta_min_cm1(self):
        return self.delta_min_meV * MEV_CM1

    @property
    def delta_max_cm1(self):
        return self.delta_max_meV * MEV_CM1


@dataclass(frozen=True)
class Timescale:
    process: str
    min_ps: float
    max_ps: float
    source: str


def _read_table(path, columns):
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DatasetFormatError(path, 1, "*", f"unreadable table: {e}")
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise DatasetFormatError(path, 1, missing[0], "missing column")
    return frame


def _number(path, line, field, text, required=True):
    text = text.strip()
    if not text:
        if required:
            raise DatasetFormatError(path, line, field, "value is required")
        return None
    try:
        value = float(text)
    except ValueError:
        raise DatasetFormatError(path, line, field, f"not a number: {text!r}")
    if not value > 0:
        raise DatasetFormatError(path, line, field, f"must be positive, got {value}")
    return value


def _components(path, line, row):
    components = []
    for j in (1, 2, 3):
        a_field, tau_field = f"A{j}", f"tau{j}_ps"
        a = _number(path, line, a_field, row[a_field], required=False)
        tau = _number(path, line, tau_field, row[tau_field], required=False)
        if (a is None) != (tau is None):
            raise DatasetFormatError(path, line, a_field if a is None else tau_field,
                                     "weight and time must both be given or both be blank")
        if a is not None:
            components.append(Component(a, tau))
    return tuple(components)


def load_reference_datasets(path=SOLVATION_TABLE_PATH):
    """Every row of the bundled solvation table as a validated SolvationRecord."""
    frame = _read_table(path, SOLVATION_COLUMNS)
    records = []
    for index, row in frame.iterrows():
        line = int(index) + 2
        components = _components(path, line, row)
        if not components:
            raise DatasetFormatError(path, line, "A1", "row has no relaxation components")
        weight_sum = sum(c.amplitude for c in components)
        if abs(weight_sum - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise DatasetFormatError(path, line, "A1", f"weights sum to {weight_sum:.3f}, expected 1")
        records.append(SolvationRecord(
            chromophore=row["chromophore"].strip(),
            protein=row["protein"].strip(),
            solvent=row["solvent"].strip(),
            E_R=_number(path, line, "E_R_cm1", row["E_R_cm1"], required=False),
            components=components,
            source=row["source"].strip(),
            unresolved_window=not row["A1"].strip(),
        ))
    logger.info("loaded %d solvation records from %s", len(records), path)
    return records


def load_energy_scales(path=ENERGY_SCALES_PATH):
    frame = _read_table(path, ENERGY_COLUMNS)
    scales = []
    for index, row in frame.iterrows():
        line = int(index) + 2
        lo = _number(path, line, "delta_min_meV", row["delta_min_meV"])
        hi = _number(path, line, "delta_max_meV", row["delta_max_meV"])
        if hi < lo:
            raise DatasetFormatError(path, line, "delta_max_meV", "upper bound below lower bound")
        scales.append(EnergyScale(row["process"].strip(), lo, hi, row["source"].strip()))
    return scales


def load_timescales(path=TIMESCALES_PATH):
    frame = _read_table(path, TIMESCALE_COLUMNS)
    rows = []
    for index, row in frame.iterrows():
        line = int(index) + 2
        lo = _number(path, line, "min_ps", row["min_ps"])
        hi = _number(path, line, "max_ps", row["max_ps"])
        if hi < lo:
            raise DatasetFormatError(path, line, "max_ps", "upper bound below lower bound")
        rows.append(Timescale(row["process"].strip(), lo, hi, row["source"].strip()))
    return rows


def records_frame(records):
    """Flat table of solvation records; absent components are left blank."""
    rows = []
    for r in records:
        row = {"chromophore": r.chromophore, "protein": r.protein, "solvent": r.solvent, "E_R_cm1": r.E_R}
        for j, c in enumerate(r.components, start=1 if not r.unresolved_window else 2):
            row[f"A{j}"] = c.amplitude
            row[f"tau{j}_ps"] = c.tau
        row["source"] = r.source
        row["unresolved_window"] = r.unresolved_window
        rows.append(row)
    return pd.DataFrame(rows, columns=SOLVATION_COLUMNS + ["unresolved_window"])
