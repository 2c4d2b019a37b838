import json
import os

import pytest

from app.config import Budgets, BudgetExceeded
from app.report import CheckReport, Counterexample, export_report_pdf, merge_reports


def failing_report():
    report = CheckReport("ra")
    report.fail("ra.peirce", {"a": 1, "b": 2}, lhs=3, rhs=1)
    report.fail("ra.asociatividad", {"x": 0})
    report.fail("ra.peirce", {"a": 0, "b": 2})
    report.count("cases", 4)
    report.notes.append("muestreo aleatorio")
    return report


# ============================================================================
# CheckReport
# ============================================================================
def test_empty_report_passes():
    report = CheckReport("vacio")
    assert report.passed
    assert report.first() is None
    assert report.summary() == "vacio: APROBADO"
    assert report.to_dict() == {"name": "vacio", "passed": True, "counterexamples": [], "stats": {}}


def test_failures():
    report = failing_report()
    assert not report.passed
    assert report.failed_checks() == ["ra.asociatividad", "ra.peirce"]
    assert report.first().check == "ra.peirce"
    assert report.summary() == "ra: FALLIDO (3 contraejemplos; ra.asociatividad, ra.peirce)"


def test_sort_is_deterministic():
    report = failing_report().sort()
    assert [c.check for c in report.counterexamples] == ["ra.asociatividad", "ra.peirce", "ra.peirce"]
    assert report.counterexamples[1].witness == {"a": 0, "b": 2}


def test_counterexample_omits_empty_fields():
    assert Counterexample("c", {"x": 1}).to_dict() == {"check": "c", "witness": {"x": 1}}
    data = Counterexample("c", {}, lhs=0, rhs=2, message="m").to_dict()
    assert data["lhs"] == 0
    assert data["message"] == "m"


def test_json_document():
    data = json.loads(failing_report().to_json())
    assert data["passed"] is False
    assert data["stats"] == {"cases": 4}
    assert data["notes"] == ["muestreo aleatorio"]
    assert data["counterexamples"][0] == {"check": "ra.peirce", "witness": {"a": 1, "b": 2}, "lhs": 3, "rhs": 1}


def test_merge_reports():
    first = CheckReport("uno", stats={"cases": 2, "sampled": False})
    second = failing_report()
    merged = merge_reports("todo", [first, second])
    assert merged.name == "todo"
    assert merged.stats["cases"] == 6
    assert merged.stats["uno.sampled"] is False
    assert [c.check for c in merged.counterexamples] == ["ra.asociatividad", "ra.peirce", "ra.peirce"]
    assert merged.notes == ["muestreo aleatorio"]


def test_pdf_export(tmp_path):
    path = str(tmp_path / "informes" / "ra.pdf")
    ok, result = export_report_pdf(failing_report(), path, title="Axiomas RA")
    assert ok, result
    assert result == path
    assert os.path.getsize(path) > 0


# ============================================================================
# Presupuestos
# ============================================================================
def test_budget_overrides():
    budgets = Budgets().with_overrides(max_atoms=5, max_states=None)
    assert budgets.max_atoms == 5
    assert budgets.max_states == Budgets().max_states
    assert budgets.to_dict()["seed"] == 0
    with pytest.raises(ValueError):
        Budgets().with_overrides(max_colours=3)


def test_budget_check():
    budgets = Budgets(max_atoms=5)
    budgets.check("max_atoms", 5)
    with pytest.raises(BudgetExceeded) as info:
        budgets.check("max_atoms", 6)
    assert info.value.budget == "max_atoms"
    assert info.value.limit == 5
    assert info.value.requested == 6
    assert "max_atoms" in str(info.value)
