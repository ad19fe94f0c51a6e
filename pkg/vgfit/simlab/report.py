# -*- coding: utf-8 -*-
"""
리포트 출력: DataFrame / CSV(17 유효자리) / JSON 미러 / 정렬 텍스트
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, is_dataclass
from typing import Any, Iterable, List, Optional, Sequence

import pandas as pd

CSV_COLUMNS = [
    "a", "b", "N", "k", "estimator",
    "bias_a", "mse_a", "se_a",
    "bias_b", "mse_b", "se_b",
    "bias_m", "mse_m", "se_m",
    "feasibility_rate", "failure_count",
]
FLOAT_FMT = "%.17g"


def _as_dict(row: Any) -> dict:
    return asdict(row) if is_dataclass(row) else dict(row)


def rows_to_frame(rows: Iterable[Any], columns: Optional[Sequence[str]] = None) -> pd.DataFrame:
    df = pd.DataFrame([_as_dict(r) for r in rows])
    if columns is not None:
        df = df.reindex(columns=list(columns))
    return df


def _ensure_dir(path: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)


def write_csv(rows: Iterable[Any], path: str, columns: Optional[Sequence[str]] = CSV_COLUMNS) -> str:
    _ensure_dir(path)
    rows_to_frame(rows, columns).to_csv(path, index=False, float_format=FLOAT_FMT)
    return path


def _jsonable(v: Any) -> Any:
    # NaN/inf → null (표준 JSON)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if is_dataclass(v) and not isinstance(v, type):
        return _jsonable(asdict(v))
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item") and callable(v.item):  # numpy 스칼라
        return _jsonable(v.item())
    return v


def to_json(obj: Any, indent: Optional[int] = 2) -> str:
    """float 은 repr(최단 왕복 표현) 로 직렬화된다."""
    return json.dumps(_jsonable(obj), ensure_ascii=False, indent=indent)


def write_json(rows: Iterable[Any], path: str) -> str:
    _ensure_dir(path)
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_json(list(rows)))
        f.write("\n")
    return path


def json_mirror_path(csv_path: str) -> str:
    stem, _ = os.path.splitext(csv_path)
    return stem + ".json"


def format_text(rows: List[Any], columns: Optional[Sequence[str]] = None) -> str:
    if not rows:
        return "(no rows)"
    df = rows_to_frame(rows, columns)
    return df.to_string(index=False, float_format=lambda v: f"{v:.6g}")
