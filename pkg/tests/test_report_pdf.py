import pytest

from octo_cr.core.exceptions import ReportError
from octo_cr.utils.report_pdf import create_pdf_styles, report_to_pdf
from octo_cr.verification.report import CheckRecord, SuiteReport


def make_report() -> SuiteReport:
    records = [
        CheckRecord.evaluate("algebra.composition.octonion", 2e-16, 1e-12),
        CheckRecord.evaluate("algebra.witness.associator_e1_e2_e4", 0.1, 0.5, "above"),
        CheckRecord.evaluate("algebra.non_finite", float("nan"), 1.0),
    ]
    return SuiteReport.build("algebra", 42, {"algebra": 10}, records)


class TestReportPdf:
    def test_styles(self):
        styles = create_pdf_styles()
        for name in ("CustomTitle", "CustomBody", "CustomCell"):
            assert styles[name].name == name

    def test_writes_pdf(self, tmp_path):
        path = tmp_path / "out" / "algebra.pdf"
        assert report_to_pdf(make_report(), str(path)) == str(path)
        assert path.read_bytes().startswith(b"%PDF")

    def test_unwritable_path(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        with pytest.raises(ReportError):
            report_to_pdf(make_report(), str(blocker / "report.pdf"))
