"""
乘法表与方程组的文本导出（json / csv / markdown）
"""

import csv
import io
import json
from typing import Any, Dict, List

from ..core.exceptions import ValidationError
from ..octonion.algebra import BASIS_LABELS, structure_table
from ..octonion.systems import diff_systems, generated_complex_system, generated_real_system

TABLE_FORMATS = ("json", "csv", "markdown")
SYSTEM_FORMATS = ("json", "markdown")


def _require_format(fmt: str, allowed: tuple) -> None:
    if fmt not in allowed:
        raise ValidationError(f"不支持的输出格式: {fmt}，可选 {list(allowed)}", error_code="bad_format")


def table_data() -> Dict[str, Any]:
    table = structure_table()
    return {
        "labels": BASIS_LABELS,
        "rows": [[{"sign": table.entry(i, j)[0], "index": table.entry(i, j)[1]} for j in range(8)] for i in range(8)],
    }


def render_table(fmt: str = "json") -> str:
    """行为左因子、列为右因子：第 i 行第 j 列是 e_i e_j"""
    _require_format(fmt, TABLE_FORMATS)
    table = structure_table()
    if fmt == "json":
        return json.dumps(table_data(), indent=2) + "\n"

    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["row", "column", "sign", "index", "label"])
        for i in range(8):
            for j in range(8):
                sign, index = table.entry(i, j)
                writer.writerow([BASIS_LABELS[i], BASIS_LABELS[j], sign, index, table.label(i, j)])
        return buffer.getvalue()

    lines = ["| · | " + " | ".join(BASIS_LABELS) + " |", "|" + "---|" * 9]
    for i in range(8):
        lines.append(f"| {BASIS_LABELS[i]} | " + " | ".join(table.label(i, j) for j in range(8)) + " |")
    return "\n".join(lines) + "\n"


def systems_data(diff_paper: bool = False) -> Dict[str, Any]:
    real, complex_ = generated_real_system(), generated_complex_system()
    data: Dict[str, Any] = {
        "real": {**real.to_dict(), "rendered": real.render()},
        "complex": {**complex_.to_dict(), "rendered": complex_.render()},
    }
    if diff_paper:
        mismatches = diff_systems()
        data["diff"] = {
            "unacknowledged": [m.to_dict() for m in mismatches if not m.acknowledged],
            "acknowledged": [m.to_dict() for m in mismatches if m.acknowledged],
        }
    return data


def render_systems(fmt: str = "json", diff_paper: bool = False) -> str:
    _require_format(fmt, SYSTEM_FORMATS)
    data = systems_data(diff_paper)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"

    lines: List[str] = ["## 实方程组 (8 x 8)", ""]
    lines += [f"{k + 1}. `{eq}`" for k, eq in enumerate(data["real"]["rendered"])]
    lines += ["", "## 复方程组 (4 x 4)", ""]
    lines += [f"{k + 1}. `{eq}`" for k, eq in enumerate(data["complex"]["rendered"])]
    if diff_paper:
        lines += ["", "## 与转录版本的差异", ""]
        items = data["diff"]["unacknowledged"] + data["diff"]["acknowledged"]
        if not items:
            lines.append("无差异")
        for m in items:
            status = "已登记" if m["acknowledged"] else "未登记"
            lines.append(
                f"- [{status}] {m['system']} 方程 {m['equation']} 项 {m['term']}: "
                f"生成 {m['generated']:+d}，转录 {m['transcribed']:+d} {m['note']}".rstrip()
            )
    return "\n".join(lines) + "\n"
