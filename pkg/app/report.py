"""
Informes de verificación (CheckReport) y su exportación a JSON y PDF
"""
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from reportlab.lib import colors
from reportlab.lib.pagesizes import letter
from reportlab.lib.styles import getSampleStyleSheet, ParagraphStyle
from reportlab.lib.units import inch
from reportlab.platypus import SimpleDocTemplate, Table, TableStyle, Paragraph, Spacer

log = logging.getLogger(__name__)

ACCENT = '#007acc'


@dataclass
class Counterexample:
    """Registro de una falla: qué se violó, con qué testigos y qué valores"""
    check: str
    witness: Dict[str, Any] = field(default_factory=dict)
    lhs: Any = None
    rhs: Any = None
    message: str = ""

    def sort_key(self) -> Tuple[str, str]:
        return (self.check, json.dumps(self.witness, sort_keys=True, default=str))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"check": self.check, "witness": self.witness}
        if self.lhs is not None:
            data["lhs"] = self.lhs
        if self.rhs is not None:
            data["rhs"] = self.rhs
        if self.message:
            data["message"] = self.message
        return data


@dataclass
class CheckReport:
    """Resultado de una verificación; passed si y sólo si no hay contraejemplos"""
    name: str
    counterexamples: List[Counterexample] = field(default_factory=list)
    stats: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.counterexamples) == 0

    def fail(self, check: str, witness: Optional[Dict[str, Any]] = None,
             lhs: Any = None, rhs: Any = None, message: str = "") -> Counterexample:
        cex = Counterexample(check, dict(witness or {}), lhs, rhs, message)
        self.counterexamples.append(cex)
        return cex

    def count(self, key: str, amount: int = 1):
        self.stats[key] = self.stats.get(key, 0) + amount

    def first(self) -> Optional[Counterexample]:
        return self.counterexamples[0] if self.counterexamples else None

    def failed_checks(self) -> List[str]:
        """Identificadores fallidos, sin repetir y en orden"""
        return sorted({c.check for c in self.counterexamples})

    def sort(self) -> "CheckReport":
        self.counterexamples.sort(key=Counterexample.sort_key)
        return self

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "name": self.name,
            "passed": self.passed,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "stats": dict(sorted(self.stats.items())),
        }
        if self.notes:
            data["notes"] = list(self.notes)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False, default=str)

    def summary(self) -> str:
        state = "APROBADO" if self.passed else "FALLIDO"
        text = f"{self.name}: {state}"
        if not self.passed:
            text += f" ({len(self.counterexamples)} contraejemplos; {', '.join(self.failed_checks())})"
        return text


def merge_reports(name: str, reports: Iterable[CheckReport]) -> CheckReport:
    """Fusiona informes de forma determinista: contraejemplos ordenados, estadísticas sumadas"""
    merged = CheckReport(name)
    for rep in reports:
        merged.counterexamples.extend(rep.counterexamples)
        merged.notes.extend(rep.notes)
        for key, value in rep.stats.items():
            if isinstance(value, bool) or not isinstance(value, int):
                merged.stats[f"{rep.name}.{key}"] = value
            else:
                merged.count(key, value)
    return merged.sort()


# ============================================================================
# Exportación a PDF
# ============================================================================
def _table(data: List[List[str]], col_widths: List[float]) -> Table:
    table = Table(data, colWidths=col_widths, repeatRows=1)
    table.setStyle(TableStyle([
        ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor(ACCENT)),
        ('TEXTCOLOR', (0, 0), (-1, 0), colors.white),
        ('ALIGN', (0, 0), (-1, 0), 'CENTER'),
        ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 0), (-1, 0), 11),
        ('FONTNAME', (0, 1), (-1, -1), 'Helvetica'),
        ('FONTSIZE', (0, 1), (-1, -1), 9),
        ('GRID', (0, 0), (-1, -1), 0.5, colors.grey),
        ('BOX', (0, 0), (-1, -1), 2, colors.HexColor(ACCENT)),
        ('BOTTOMPADDING', (0, 0), (-1, -1), 6),
        ('TOPPADDING', (0, 0), (-1, -1), 6),
    ]))
    return table


def export_report_pdf(report: CheckReport, file_path: str, title: Optional[str] = None) -> Tuple[bool, str]:
    """
    Exporta un CheckReport a PDF.
    Retorna (éxito, ruta del archivo o mensaje de error).
    """
    try:
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        doc = SimpleDocTemplate(
            file_path,
            pagesize=letter,
            rightMargin=inch / 2,
            leftMargin=inch / 2,
            topMargin=inch,
            bottomMargin=inch / 2
        )
        styles = getSampleStyleSheet()
        title_style = ParagraphStyle(
            'CustomTitle',
            parent=styles['Heading1'],
            fontSize=22,
            textColor=colors.HexColor(ACCENT),
            spaceAfter=24,
            alignment=1
        )
        subtitle_style = ParagraphStyle(
            'CustomSubtitle',
            parent=styles['Heading2'],
            fontSize=14,
            textColor=colors.HexColor(ACCENT),
            spaceAfter=12,
            spaceBefore=12
        )
        small = ParagraphStyle('Small', parent=styles['Normal'], fontSize=8)

        elements = [Paragraph(title or report.name, title_style), Spacer(1, 12)]
        elements.append(Paragraph(report.summary(), styles['Normal']))
        elements.append(Spacer(1, 12))

        elements.append(Paragraph("Estadísticas", subtitle_style))
        stats = [["Clave", "Valor"]] + [[str(k), str(v)] for k, v in sorted(report.stats.items())]
        elements.append(_table(stats, [3 * inch, 3.5 * inch]))

        if report.counterexamples:
            elements.append(Paragraph("Contraejemplos", subtitle_style))
            rows = [["Verificación", "Testigo", "Izquierda", "Derecha"]]
            for cex in report.counterexamples[:200]:
                rows.append([
                    Paragraph(cex.check, small),
                    Paragraph(json.dumps(cex.witness, default=str)[:300], small),
                    Paragraph(str(cex.lhs)[:120], small),
                    Paragraph(str(cex.rhs)[:120], small),
                ])
            elements.append(_table(rows, [1.2 * inch, 3 * inch, 1.4 * inch, 1.4 * inch]))

        for note in report.notes:
            elements.append(Paragraph(note, small))

        doc.build(elements)
        log.info("PDF exportado: %s", file_path)
        return True, file_path
    except Exception as e:  # reportlab lanza tipos variados
        log.error("No se pudo exportar el PDF: %s", e)
        return False, f"No se pudo exportar el PDF: {e}"
