import logging
import os
import platform
from typing import List

from reportlab.lib import colors
from reportlab.lib.colors import HexColor
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import ParagraphStyle, StyleSheet1, getSampleStyleSheet
from reportlab.pdfbase import pdfmetrics
from reportlab.pdfbase.cidfonts import UnicodeCIDFont
from reportlab.pdfbase.ttfonts import TTFont
from reportlab.platypus import Flowable, Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from ..core.exceptions import ReportError
from ..verification.report import CheckRecord, SuiteReport

logger = logging.getLogger(__name__)

SYSTEM_FONTS = {
    "Darwin": [
        "/System/Library/Fonts/STHeiti Light.ttc",
        "/Library/Fonts/Arial Unicode MS.ttf",
    ],
    "Linux": [
        "/usr/share/fonts/truetype/noto/NotoSansCJK-Regular.ttc",
        "/usr/share/fonts/truetype/wqy/wqy-microhei.ttc",
        "/usr/share/fonts/truetype/wqy/wqy-zenhei.ttc",
        "/usr/share/fonts/truetype/arphic/uming.ttc",
    ],
    "Windows": [
        "C:/Windows/Fonts/msyh.ttc",
        "C:/Windows/Fonts/simhei.ttf",
    ],
}


def setup_chinese_fonts() -> str:
    """注册字体：优先使用系统中文字体，回退到内置 STSong-Light，最后是 Helvetica"""
    for font_path in SYSTEM_FONTS.get(platform.system(), []):
        if not os.path.exists(font_path):
            continue
        font_name = f"SystemFont_{os.path.basename(font_path)}"
        try:
            pdfmetrics.registerFont(TTFont(font_name, font_path))
            logger.debug(f"成功注册系统字体: {font_path}")
            return font_name
        except Exception as e:
            logger.debug(f"注册字体失败 {font_path}: {e}")

    try:
        pdfmetrics.registerFont(UnicodeCIDFont("STSong-Light"))
        return "STSong-Light"
    except Exception as e:
        logger.debug(f"内置字体注册失败: {e}")

    logger.warning("无法找到中文字体，使用 Helvetica（中文可能显示为乱码）")
    return "Helvetica"


def create_pdf_styles() -> StyleSheet1:
    styles = getSampleStyleSheet()
    font_name = setup_chinese_fonts()

    styles.add(
        ParagraphStyle(
            name="CustomTitle",
            parent=styles["Heading1"],
            fontName=font_name,
            fontSize=18,
            spaceAfter=20,
            textColor=HexColor("#1a1a1a"),
            alignment=1,  # 居中
            leading=22,
        )
    )
    styles.add(
        ParagraphStyle(
            name="CustomBody",
            parent=styles["Normal"],
            fontName=font_name,
            fontSize=11,
            spaceAfter=6,
            textColor=HexColor("#333333"),
            leading=16,
        )
    )
    styles.add(
        ParagraphStyle(
            name="CustomCell",
            parent=styles["Normal"],
            fontName=font_name,
            fontSize=8,
            leading=10,
            wordWrap="CJK",
        )
    )
    return styles


def _format_value(record: CheckRecord) -> str:
    return "-" if record.max_residual is None else f"{record.max_residual:.3e}"


def _records_table(records: List[CheckRecord], styles: StyleSheet1) -> Table:
    cell = styles["CustomCell"]
    rows = [[Paragraph(text, cell) for text in ("检查项", "最大残差", "期望", "容差", "结果")]]
    for r in records:
        rows.append(
            [
                Paragraph(r.name, cell),
                Paragraph(_format_value(r), cell),
                Paragraph(r.expect, cell),
                Paragraph(f"{r.tolerance:g}", cell),
                Paragraph("通过" if r.passed else "失败", cell),
            ]
        )
    table = Table(rows, colWidths=[200, 80, 50, 60, 50], repeatRows=1)
    style = [
        ("BACKGROUND", (0, 0), (-1, 0), HexColor("#2c3e50")),
        ("TEXTCOLOR", (0, 0), (-1, 0), colors.white),
        ("GRID", (0, 0), (-1, -1), 0.25, colors.grey),
        ("VALIGN", (0, 0), (-1, -1), "MIDDLE"),
    ]
    for k, r in enumerate(records, start=1):
        if not r.passed:
            style.append(("BACKGROUND", (0, k), (-1, k), HexColor("#fdecea")))
    table.setStyle(TableStyle(style))
    return table


def report_to_pdf(report: SuiteReport, path: str) -> str:
    """把验证报告写成 PDF：标题、摘要、每项检查一行"""
    styles = create_pdf_styles()
    summary = report.summary
    story: List[Flowable] = [
        Paragraph(f"octo-cr 验证报告：{report.suite}", styles["CustomTitle"]),
        Paragraph(f"种子: {report.seed}", styles["CustomBody"]),
        Paragraph("样本数: " + ", ".join(f"{k}={v}" for k, v in report.samples.items()), styles["CustomBody"]),
        Paragraph(f"共 {summary.total} 项，通过 {summary.passed} 项，失败 {summary.failed} 项", styles["CustomBody"]),
        Spacer(1, 12),
        _records_table(report.records, styles),
    ]

    directory = os.path.dirname(path)
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        doc = SimpleDocTemplate(path, pagesize=A4, rightMargin=48, leftMargin=48, topMargin=48, bottomMargin=48)
        doc.build(story)
    except OSError as e:
        raise ReportError(f"PDF 写入失败: {path}: {e}", error_code="report_write") from e
    logger.info(f"PDF 报告已生成: {path}")
    return path
