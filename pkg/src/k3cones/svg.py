"""Deterministic SVG rendering of rank-2 small-cone fans.

Exact coordinates are cast to 6-digit decimals (round half even) for drawing
only; nothing here feeds back into any decision.
"""

from __future__ import annotations

import decimal
from decimal import Decimal

from .cones import SmallConeFan
from .numeric import QuadraticSurd

_PREC = decimal.Context(prec=40)
_Q6 = Decimal("0.000001")

_SIZE = 640
_CX, _CY = Decimal(320), Decimal(420)
_R = Decimal(260)
_LABEL_R = Decimal(190)


def _to_decimal(x) -> Decimal:
    if isinstance(x, QuadraticSurd):
        a = Decimal(x.a.numerator) / Decimal(x.a.denominator)
        b = Decimal(x.b.numerator) / Decimal(x.b.denominator)
        return _PREC.add(a, _PREC.multiply(b, _PREC.sqrt(Decimal(x.d))))
    from fractions import Fraction

    f = Fraction(x)
    return _PREC.divide(Decimal(f.numerator), Decimal(f.denominator))


def _q(x: Decimal) -> str:
    return str(x.quantize(_Q6, rounding=decimal.ROUND_HALF_EVEN))


def _unit_point(coords, scale=_R):
    x = coords[0] if isinstance(coords[0], Decimal) else _to_decimal(coords[0])
    y = coords[1] if isinstance(coords[1], Decimal) else _to_decimal(coords[1])
    n = _PREC.sqrt(_PREC.add(_PREC.multiply(x, x), _PREC.multiply(y, y)))
    px = _CX + scale * x / n
    py = _CY - scale * y / n  # svg y grows downward
    return px, py


def render_fan_svg(fan: SmallConeFan, title: str | None = None) -> str:
    """SVG document: boundary rays, wall rays with normal labels, numbered
    cones. Byte-identical for identical fans."""
    rays = fan.rays()
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_SIZE}" height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
    ]
    label = title or (fan.lattice.label or "rank-2 lattice")
    parts.append(
        f'<text x="16" y="28" font-family="monospace" font-size="16">'
        f"small cones of {label}</text>")
    pts = [_unit_point(r["coords"]) for r in rays]
    # cone wedge fill between outer boundary rays
    bx0, by0 = pts[0]
    bx1, by1 = pts[-1]
    parts.append(
        f'<path d="M {_q(_CX)} {_q(_CY)} L {_q(bx0)} {_q(by0)} '
        f'L {_q(bx1)} {_q(by1)} Z" fill="#f5f5f5" stroke="none"/>')
    for i, (r, (px, py)) in enumerate(zip(rays, pts)):
        boundary = r["kind"] == "boundary"
        style = ('stroke="#888" stroke-dasharray="6 4"' if boundary
                 else 'stroke="#003366"')
        parts.append(
            f'<line x1="{_q(_CX)}" y1="{_q(_CY)}" x2="{_q(px)}" y2="{_q(py)}" '
            f'{style} stroke-width="2"/>')
        if not boundary:
            w = fan.walls[i - 1]
            lam = ",".join(str(x) for x in w.lam)
            text = f"lam=({lam}) norm={w.lambda_norm} {w.source[:3]}"
            lx, ly = _unit_point(r["coords"], scale=_R + 8)
            parts.append(
                f'<text x="{_q(lx)}" y="{_q(ly)}" font-family="monospace" '
                f'font-size="11" fill="#003366">{text}</text>')
    for c, (i, j) in enumerate(fan.cones()):
        mid = (tuple(_to_decimal(a) for a in rays[i]["coords"]),
               tuple(_to_decimal(a) for a in rays[j]["coords"]))
        mx = mid[0][0] + mid[1][0]
        my = mid[0][1] + mid[1][1]
        lx, ly = _unit_point((mx, my), scale=_LABEL_R)
        parts.append(
            f'<text x="{_q(lx)}" y="{_q(ly)}" font-family="monospace" '
            f'font-size="14" fill="#333">{c}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
