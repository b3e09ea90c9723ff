"""Serialisation of coefficients and normal forms (table, json, latex)."""

from __future__ import annotations

import json
from typing import Dict, List, Sequence

from .algebra import NCPolynomial, PlaneSpec, monomial_text
from .coeffring import ParamPoly

FORMATS = ("table", "json", "latex")


def coeff_json(p: ParamPoly) -> List[Dict]:
    # big integers travel as decimal strings
    return [
        {"q": i, "h": j, "num": str(c.numerator), "den": str(c.denominator)}
        for (i, j), c in p.items()
    ]


def plane_json(plane: PlaneSpec) -> Dict[str, str]:
    return {"q": plane.label("q"), "h": plane.label("h")}


def terms_json(p: NCPolynomial) -> List[Dict]:
    return [{"y": a, "x": b, "coeff": coeff_json(c)} for (a, b), c in p.items()]


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2)


def latex_coeff(p: ParamPoly) -> str:
    return p.to_text(latex=True)


def latex_ncpoly(p: NCPolynomial) -> str:
    if not p:
        return "0"
    parts = []
    for (a, b), c in p.items():
        mono = monomial_text(a, b, latex=True)
        if mono == "1":
            body = latex_coeff(c) if len(c) == 1 else rf"\left({latex_coeff(c)}\right)"
        elif c == 1:
            body = mono
        elif len(c) == 1:
            body = rf"{latex_coeff(c)}\, {mono}"
        else:
            body = rf"\left({latex_coeff(c)}\right) {mono}"
        parts.append(body)
    out = parts[0]
    for body in parts[1:]:
        out += " - " + body[1:] if body.startswith("-") else " + " + body
    return out


def text_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines)
