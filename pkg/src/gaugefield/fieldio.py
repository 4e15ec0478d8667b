"""Field files: a JSON header next to a row-major CSV body with re/im columns per field."""
import logging
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.errors import UsageError
from core.io import read_csv_rows, read_json, write_csv, write_json
from .patch import FieldPatch

logger = logging.getLogger(__name__)

HEADER_SUFFIX = '.header.json'


def field_rows(patch: FieldPatch, fields: Dict[str, np.ndarray]) -> Tuple[List[str], List[List[Any]]]:
    names = sorted(fields)
    header = ['ix', 'iy', 'x', 'y']
    for name in names:
        header += [f'{name}_re', f'{name}_im']
    X, Y = patch.coordinates
    arrays = {name: np.broadcast_to(np.asarray(fields[name], dtype=complex), (patch.N, patch.N)) for name in names}
    rows = []
    for iy in range(patch.N):
        for ix in range(patch.N):
            row = [ix, iy, float(X[iy, ix]), float(Y[iy, ix])]
            for name in names:
                value = arrays[name][iy, ix]
                row += [float(value.real), float(value.imag)]
            rows.append(row)
    return header, rows


def write_fields(path: str, patch: FieldPatch, fields: Dict[str, np.ndarray],
                 extra: Optional[Dict[str, Any]] = None) -> List[str]:
    header, rows = field_rows(patch, fields)
    meta = dict(patch.to_dict())
    meta['fields'] = sorted(fields)
    meta.update(extra or {})
    written = [write_csv(path, header, rows), write_json(path + HEADER_SUFFIX, meta)]
    logger.debug("Wrote %d field(s) to %s", len(fields), path)
    return written


def read_fields(path: str) -> Tuple[FieldPatch, Dict[str, np.ndarray]]:
    meta = read_json(path + HEADER_SUFFIX)
    patch = FieldPatch.from_dict(meta)
    rows = read_csv_rows(path)
    if len(rows) != patch.N * patch.N:
        raise UsageError(f"{path} has {len(rows)} rows, expected {patch.N * patch.N}")
    fields = {name: patch.zeros() for name in meta.get('fields', [])}
    try:
        for row in rows:
            ix, iy = int(row['ix']), int(row['iy'])
            for name, data in fields.items():
                data[iy, ix] = complex(float(row[f'{name}_re']), float(row[f'{name}_im']))
    except (KeyError, ValueError) as e:
        raise UsageError(f"{path} is not a field file: {e}")
    return patch, fields


def radial_profile(patch: FieldPatch, field: np.ndarray, center: Optional[complex] = None,
                   bins: int = 16) -> List[List[float]]:
    """Mean of |field| over annuli around ``center``: rows of (r_mid, mean, count)."""
    center = patch.center if center is None else center
    r = np.abs(patch.z - center).ravel()
    values = np.abs(np.asarray(field)).ravel()
    edges = np.linspace(0.0, float(r.max()) + 1e-12, bins + 1)
    index = np.clip(np.digitize(r, edges) - 1, 0, bins - 1)
    rows = []
    for b in range(bins):
        selected = values[index == b]
        mean = float(selected.mean()) if selected.size else float('nan')
        rows.append([0.5 * (edges[b] + edges[b + 1]), mean, int(selected.size)])
    return rows
