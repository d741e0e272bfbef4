# report.py
"""
Text and JSON reports for classification verdicts.

The text report is the two-row "class number: fields" summary followed by a
per-candidate detail table; JSON is the machine format and parses back into
the same FieldVerdict records.
"""

import json
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

import pandas as pd

from classify import Candidate, Conclusion, FieldVerdict
from ideals import FracIdeal
from lattice import CoverKind, CoverVerdict
from quadfield import PlanePoint, QuadField, make_field


class ReportFormat(str, Enum):
    TEXT = "Text"
    JSON = "JSON"


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _ideal_json(I: FracIdeal) -> Dict[str, Any]:
    return {"scale": fmt_rational(I.scale), "a": I.a, "b": I.b}


def _candidate_json(c: Candidate) -> Dict[str, Any]:
    w = c.verdict.witness
    return {
        "ideal": _ideal_json(c.ideal),
        "subcase": c.subcase,
        "verdict": c.verdict.kind.value,
        "covering_radius_sq": fmt_rational(c.verdict.covering_radius_sq),
        "disk_radius_sq": fmt_rational(c.verdict.disk_radius_sq),
        "generates": c.generates,
        "witness": None if w is None else [fmt_rational(w.p), fmt_rational(w.q)],
    }


def verdict_to_json(v: FieldVerdict) -> Dict[str, Any]:
    return {
        "D": v.D,
        "class_number": v.class_number,
        "candidates": [_candidate_json(c) for c in v.candidates],
        "conclusion": v.conclusion.value,
        "norm_euclidean": v.norm_euclidean,
    }


def _summary_lines(verdicts: List[FieldVerdict]) -> List[str]:
    by_h: Dict[int, List[int]] = {}
    for v in verdicts:
        if v.conclusion is Conclusion.HAS_EUCLIDEAN_IDEAL:
            by_h.setdefault(v.class_number, []).append(v.D)
    return [f"{h}: {','.join(str(D) for D in ds)}" for h, ds in sorted(by_h.items())]


def detail_table(verdicts: List[FieldVerdict]) -> pd.DataFrame:
    table = {
        "D": [],
        "h": [],
        "ideal": [],
        "subcase": [],
        "verdict": [],
        "mu^2": [],
        "Nm(C)": [],
        "generates": [],
        "conclusion": [],
    }
    for v in verdicts:
        rows = v.candidates or (None,)
        for c in rows:
            table["D"].append(v.D)
            table["h"].append(v.class_number)
            table["ideal"].append(str(c.ideal) if c else "-")
            table["subcase"].append(c.subcase if c else "2, 3 inert")
            table["verdict"].append(c.verdict.kind.value if c else "-")
            table["mu^2"].append(str(c.verdict.covering_radius_sq) if c else "-")
            table["Nm(C)"].append(str(c.verdict.disk_radius_sq) if c else "-")
            table["generates"].append(("yes" if c.generates else "no") if c else "-")
            table["conclusion"].append(v.conclusion.value)
    return pd.DataFrame(table)


def emit_report(verdicts: List[FieldVerdict], fmt: ReportFormat = ReportFormat.TEXT) -> str:
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.JSON:
        return json.dumps([verdict_to_json(v) for v in verdicts], indent=2, ensure_ascii=False) + "\n"

    if not verdicts:
        return ""
    lines = ["class number: fields with a Euclidean ideal"]
    lines += _summary_lines(verdicts)
    lines.append("")
    lines.append(detail_table(verdicts).to_string(index=False))
    return "\n".join(lines) + "\n"


def _parse_ideal(field: QuadField, obj: Dict[str, Any]) -> FracIdeal:
    return FracIdeal(field, Fraction(obj["scale"]), int(obj["a"]), int(obj["b"]))


def _parse_witness(D: int, obj: Optional[List[str]]) -> Optional[PlanePoint]:
    if obj is None:
        return None
    return PlanePoint(Fraction(obj[0]), Fraction(obj[1]), D)


def parse_report(text: str) -> List[FieldVerdict]:
    """Inverse of emit_report(..., ReportFormat.JSON)."""
    out = []
    for rec in json.loads(text):
        D = int(rec["D"])
        field = make_field(D)
        candidates = tuple(
            Candidate(
                ideal=_parse_ideal(field, c["ideal"]),
                verdict=CoverVerdict(
                    kind=CoverKind(c["verdict"]),
                    witness=_parse_witness(D, c["witness"]),
                    covering_radius_sq=Fraction(c["covering_radius_sq"]),
                    disk_radius_sq=Fraction(c["disk_radius_sq"]),
                ),
                generates=bool(c["generates"]),
                subcase=c["subcase"],
            )
            for c in rec["candidates"]
        )
        out.append(
            FieldVerdict(
                D=D,
                class_number=int(rec["class_number"]),
                candidates=candidates,
                conclusion=Conclusion(rec["conclusion"]),
            )
        )
    return out
