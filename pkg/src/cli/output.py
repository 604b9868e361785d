"""Comma-delimited output with a '#' provenance header."""
import hashlib
import json
import logging
import sys

import numpy as np

from src.constants import CONSTANTS_VERSION
from src.errors import NumericError
from src.utils.loaders import dump_flow_yaml, ensure_parent

logger = logging.getLogger(__name__)


def config_hash(mapping):
    """SHA-256 of the canonical JSON form of a flat mapping."""
    canonical = json.dumps(mapping, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def check_finite(table, allow_blank=()):
    """Raise if a numeric cell is NaN or infinite; NaN is tolerated in `allow_blank` columns."""
    for column in table.columns:
        if not np.issubdtype(table[column].dtype, np.number):
            continue
        values = table[column].to_numpy(dtype=float)
        bad = ~np.isfinite(values)
        if column in allow_blank:
            bad &= ~np.isnan(values)
        if bad.any():
            raise NumericError(f"non-finite value in column '{column}' (row {int(np.argmax(bad))})")


def provenance_lines(command, mapping, notes=()):
    lines = [f"# command: {command}",
             f"# config_sha256: {config_hash(mapping)}",
             f"# constants_version: {CONSTANTS_VERSION}",
             f"# config: {dump_flow_yaml(mapping)}"]
    lines.extend(f"# note: {note}" for note in notes)
    return lines


def render_table(result, command, mapping, allow_blank=()):
    check_finite(result.table, allow_blank)
    header = "\n".join(provenance_lines(command, mapping, result.notes))
    body = result.table.to_csv(index=False, lineterminator="\n", float_format="%.10g")
    return f"{header}\n{body}"


def write_table(result, command, mapping, out=None, allow_blank=()):
    """Write to `out` (a path) or stdout."""
    text = render_table(result, command, mapping, allow_blank)
    if out is None:
        sys.stdout.write(text)
        return None
    path = ensure_parent(out)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info("wrote %d rows to %s", len(result.table), path)
    return path
