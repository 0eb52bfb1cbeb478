"""File formats: measurements (CSV/JSON), edge-list fixtures, rankings,
activity sequences and event logs."""

from __future__ import annotations

import csv
import json
from datetime import datetime
from pathlib import Path
from typing import Any

from .core import ComparisonMatrix, Dataset, MeasurementSet, QuantileLimits, quantile_value
from .dfg import EventLog, VariantSequence, fold_event_log
from .errors import InputError, TielessError
from .rankers import ArrangedList, PartialRanking


def _read_text(path: str | Path) -> str:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror or exc})") from None
    if not text.strip():
        raise InputError(f"{path}: file is empty")
    return text


def _read_json(path: str | Path) -> Any:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _wrap(path: str | Path, exc: Exception) -> InputError:
    return InputError(f"{path}: {exc}")


def load_measurements_csv(path: str | Path) -> Dataset:
    text = _read_text(path)
    reader = csv.DictReader(text.splitlines())
    if reader.fieldnames is None or not {"id", "value"} <= {f.strip() for f in reader.fieldnames}:
        raise InputError(f"{path}: expected a header with columns 'id,value'")
    values: dict[str, list[float]] = {}
    for line, row in enumerate(reader, start=2):
        row = {k.strip(): (v or "").strip() for k, v in row.items() if k is not None}
        try:
            values.setdefault(row["id"], []).append(float(row["value"]))
        except ValueError:
            raise InputError(f"{path}:{line}: value {row['value']!r} is not a number") from None
    if not values:
        raise InputError(f"{path}: no measurement rows")
    try:
        return Dataset(tuple(MeasurementSet(k, tuple(v)) for k, v in values.items()))
    except TielessError as exc:
        raise _wrap(path, exc) from None


def dataset_to_dict(ds: Dataset) -> dict:
    objects = []
    for m in ds:
        entry: dict[str, Any] = {"id": m.id}
        if m.label is not None:
            entry["label"] = m.label
        entry["values"] = list(m.values)
        objects.append(entry)
    return {"objects": objects}


def dataset_from_dict(data: Any) -> Dataset:
    if not isinstance(data, dict) or not isinstance(data.get("objects"), list):
        raise InputError('expected {"objects": [...]}')
    objects = []
    for entry in data["objects"]:
        if not isinstance(entry, dict) or "id" not in entry or not isinstance(entry.get("values"), list):
            raise InputError(f"malformed object entry: {entry!r}")
        try:
            values = tuple(float(v) for v in entry["values"])
        except (TypeError, ValueError):
            raise InputError(f"object {entry['id']!r}: values must be numbers") from None
        objects.append(MeasurementSet(str(entry["id"]), values, entry.get("label")))
    return Dataset(tuple(objects))


def load_measurements_json(path: str | Path) -> Dataset:
    data = _read_json(path)
    try:
        return dataset_from_dict(data)
    except TielessError as exc:
        raise _wrap(path, exc) from None


def edges_from_dict(data: Any) -> ComparisonMatrix:
    if not isinstance(data, dict) or not isinstance(data.get("ids"), list) or not isinstance(data.get("better"), list):
        raise InputError('expected {"ids": [...], "better": [[a, b], ...]}')
    pairs = []
    for p in data["better"]:
        if not isinstance(p, list) or len(p) != 2:
            raise InputError(f"malformed edge {p!r}")
        pairs.append((str(p[0]), str(p[1])))
    return ComparisonMatrix.from_better_pairs([str(x) for x in data["ids"]], pairs)


def edges_to_dict(cm: ComparisonMatrix) -> dict:
    return {"ids": list(cm.ids), "better": [list(p) for p in cm.better_pairs()]}


def load_edges_json(path: str | Path) -> ComparisonMatrix:
    data = _read_json(path)
    try:
        return edges_from_dict(data)
    except TielessError as exc:
        raise _wrap(path, exc) from None


def ranking_to_dict(pr: PartialRanking, arrangement: ArrangedList | None = None) -> dict:
    out: dict[str, Any] = {"method": pr.method, "ranks": [list(r) for r in pr.ranks]}
    if arrangement is not None:
        out["arrangement"] = list(arrangement.sequence)
    return out


def ranking_from_dict(data: Any) -> PartialRanking:
    if not isinstance(data, dict) or not isinstance(data.get("ranks"), list):
        raise InputError('expected {"method": ..., "ranks": [[...], ...]}')
    ranks = []
    for r in data["ranks"]:
        if not isinstance(r, list) or not all(isinstance(x, str) for x in r):
            raise InputError(f"malformed rank {r!r}; expected a list of id strings")
        ranks.append(tuple(r))
    return PartialRanking(tuple(ranks), str(data.get("method", "external")))


def load_ranking_json(path: str | Path) -> PartialRanking:
    data = _read_json(path)
    try:
        return ranking_from_dict(data)
    except TielessError as exc:
        raise _wrap(path, exc) from None


def load_sequences_json(path: str | Path) -> list[VariantSequence]:
    data = _read_json(path)
    if not isinstance(data, dict) or not isinstance(data.get("variants"), list):
        raise InputError(f'{path}: expected {{"variants": [{{"id": ..., "steps": [...]}}, ...]}}')
    out = []
    try:
        for v in data["variants"]:
            out.append(VariantSequence(str(v["id"]), tuple(v["steps"])))
    except (KeyError, TypeError):
        raise InputError(f"{path}: malformed variant entry") from None
    except InputError as exc:
        raise _wrap(path, exc) from None
    return out


def sequences_to_dict(seqs: list[VariantSequence]) -> dict:
    return {"variants": [{"id": s.id, "steps": list(s.steps)} for s in seqs]}


def _parse_timestamp(text: str) -> datetime:
    text = text.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    return datetime.fromisoformat(text)


def load_event_log_csv(path: str | Path) -> EventLog:
    text = _read_text(path)
    reader = csv.DictReader(text.splitlines())
    need = {"case", "activity", "timestamp"}
    if reader.fieldnames is None or not need <= {f.strip() for f in reader.fieldnames}:
        raise InputError(f"{path}: expected a header with columns 'case,activity,timestamp'")
    rows = []
    for line, row in enumerate(reader, start=2):
        row = {k.strip(): (v or "").strip() for k, v in row.items() if k is not None}
        try:
            ts = _parse_timestamp(row["timestamp"])
        except ValueError:
            raise InputError(f"{path}:{line}: bad ISO-8601 timestamp {row['timestamp']!r}") from None
        rows.append((row["case"], row["activity"], ts))
    if not rows:
        raise InputError(f"{path}: no events")
    try:
        return fold_event_log(rows)
    except TypeError:
        raise InputError(f"{path}: cannot mix timezone-aware and naive timestamps") from None
    except InputError as exc:
        raise _wrap(path, exc) from None


def box_summary(ds: Dataset, limits: QuantileLimits) -> dict:
    """Five numbers per object for external box-plot rendering."""
    return {
        "limits": [limits.lower, limits.upper],
        "objects": [
            {
                "id": m.id,
                "min": min(m.values),
                "lower": quantile_value(m.values, limits.lower),
                "median": quantile_value(m.values, 50),
                "upper": quantile_value(m.values, limits.upper),
                "max": max(m.values),
            }
            for m in ds
        ],
    }


def write_json(path: str | Path, data: Any) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
