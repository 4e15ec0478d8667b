import csv
import io
import json
import os
import tempfile
from typing import Any, Dict, Iterable, List, Sequence

from .errors import UsageError


def atomic_write_text(path: str, text: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.tmp-', suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    return path


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, default=_default)


def _default(value: Any):
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, complex):
        return {'re': repr(value.real), 'im': repr(value.imag)}
    if hasattr(value, 'tolist'):
        return value.tolist()
    if hasattr(value, 'item'):
        return value.item()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def write_json(path: str, data: Any) -> str:
    return atomic_write_text(path, dumps(data) + '\n')


def read_json(path: str) -> Any:
    if not os.path.exists(path):
        raise UsageError(f"input file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise UsageError(f"input file {path} is not valid JSON: {e}")


def format_cell(value: Any) -> str:
    if value is None:
        return 'NA'
    if isinstance(value, float):
        if value != value:
            return 'NA'
        return repr(value)
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    return atomic_write_text(path, csv_text(header, rows))


def read_csv_rows(path: str) -> List[Dict[str, str]]:
    if not os.path.exists(path):
        raise UsageError(f"input file not found: {path}")
    with open(path, 'r', encoding='utf-8', newline='') as f:
        return list(csv.DictReader(f))
