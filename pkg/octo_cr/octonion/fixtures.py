"""
随包分发的手工转录数据：乘法表与两组显示方程

读取失败或格式不符统一抛出 FixtureError。
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Tuple

from ..core.exceptions import FixtureError, ValidationError
from .algebra import BASIS_LABELS, parse_basis_label, structure_table

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
TABLE_FILE = "multiplication_table.json"
SYSTEMS_FILE = "transcribed_systems.json"


def load_json(name: str) -> Dict[str, Any]:
    path = DATA_DIR / name
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as e:
        raise FixtureError(f"数据文件不存在: {path}", error_code="fixture_missing") from e
    except json.JSONDecodeError as e:
        raise FixtureError(f"数据文件格式错误: {path}: {e}", error_code="fixture_malformed") from e


@lru_cache()
def transcribed_table() -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """转录的乘法表，每项为 (sign, index)"""
    data = load_json(TABLE_FILE)
    rows = data.get("rows")
    if not isinstance(rows, list) or len(rows) != 8 or any(len(r) != 8 for r in rows):
        raise FixtureError("乘法表必须是 8x8", error_code="fixture_malformed")
    try:
        return tuple(tuple(parse_basis_label(cell) for cell in row) for row in rows)
    except ValidationError as e:
        raise FixtureError(f"乘法表条目无法解析: {e.message}", error_code="fixture_malformed") from e


def diff_table() -> List[Dict[str, Any]]:
    """推导出的结构常数与转录表逐项比较，返回不一致的条目"""
    table = structure_table()
    mismatches: List[Dict[str, Any]] = []
    for i, row in enumerate(transcribed_table()):
        for j, printed in enumerate(row):
            derived = table.entry(i, j)
            if derived != printed:
                mismatches.append(
                    {
                        "row": BASIS_LABELS[i],
                        "column": BASIS_LABELS[j],
                        "derived": table.label(i, j),
                        "transcribed": ("-" if printed[0] < 0 else "") + BASIS_LABELS[printed[1]],
                    }
                )
    if mismatches:
        logger.warning(f"乘法表转录存在 {len(mismatches)} 处不一致")
    return mismatches


@lru_cache()
def transcribed_systems_data() -> Dict[str, Any]:
    data = load_json(SYSTEMS_FILE)
    for key in ("real", "complex"):
        if key not in data or "equations" not in data[key]:
            raise FixtureError(f"方程组数据缺少 {key}.equations", error_code="fixture_malformed")
    if len(data["real"]["equations"]) != 8 or len(data["complex"]["equations"]) != 4:
        raise FixtureError("实方程组需要 8 个方程，复方程组需要 4 个", error_code="fixture_malformed")
    data.setdefault("errata", [])
    return data
