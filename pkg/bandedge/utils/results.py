# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from __future__ import annotations
import csv
import dataclasses
import io
import json
import math
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from bandedge.constants import CSV_COMMENT, CSV_FLOAT_FORMAT, OutputFormat
from bandedge.utils.storage._base_storage import BaseStorage, ResultData
from bandedge.utils.storage.local_file import LocalFile
from bandedge.utils.storage.standard_stream import StandardStream
from bandedge.utils.storage.storage_types import StorageType


def build_storage(type_: StorageType, path: Optional[str] = None) -> BaseStorage:
    if type_ == StorageType.LOCAL_FILE:
        if not path:
            raise ValueError("a local file storage needs a path")
        return LocalFile(path)
    return StandardStream()


class Results:
    """Table and summary of one command, written as CSV and/or JSON.

    With neither path given, the `primary` format goes to stdout.
    """

    def __init__(
        self,
        csv_path: Optional[str] = None,
        json_path: Optional[str] = None,
        primary: OutputFormat = OutputFormat.CSV,
    ) -> None:
        self._data: ResultData = ResultData()
        self._sinks: List[Tuple[OutputFormat, BaseStorage]] = []
        if csv_path:
            self._sinks.append((OutputFormat.CSV, build_storage(StorageType.LOCAL_FILE, csv_path)))
        if json_path:
            self._sinks.append((OutputFormat.JSON, build_storage(StorageType.LOCAL_FILE, json_path)))
        if not self._sinks:
            self._sinks.append((primary, build_storage(StorageType.STANDARD_STREAM)))

    @property
    def columns(self) -> List[str]:
        return self._data.columns

    @property
    def rows(self) -> List[Sequence[Any]]:
        return self._data.rows

    @property
    def summary(self) -> Dict[str, Any]:
        return self._data.summary

    def set_columns(self, *names: str) -> None:
        self._data.columns = list(names)
        self._data.rows = []

    def add_row(self, *values: Any) -> None:
        if len(values) != len(self._data.columns):
            raise ValueError(f"row has {len(values)} values for {len(self._data.columns)} columns")
        self._data.rows.append(values)

    def update_summary(self, **items: Any) -> None:
        self._data.summary.update(items)

    def dump(self) -> None:
        for format_, storage in self._sinks:
            if format_ == OutputFormat.CSV:
                storage.put(render_csv(self._data))
            else:
                storage.put(render_json(self._data))


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), CSV_FLOAT_FORMAT)
    return str(value)


def render_csv(data: ResultData) -> str:
    buffer = io.StringIO()
    buffer.write(f"{CSV_COMMENT} {','.join(data.columns)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    for row in data.rows:
        writer.writerow([_format_cell(value) for value in row])
    return buffer.getvalue()


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, "to_dict"):
        return _jsonable(value.to_dict())
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return _jsonable(dataclasses.asdict(value))
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        # JSON has no inf / nan
        return None
    return value


def render_json(data: ResultData) -> str:
    return json.dumps(_jsonable(data.summary), sort_keys=True, indent=2) + "\n"
