"""Plain-text serialization of polygonal links.

Format: ``#`` starts a comment; each component is a single line

    component x1 y1 z1  x2 y2 z2  ...

with coordinates written as integers or ``a/b`` fractions.
"""

from __future__ import annotations

import importlib.resources
from fractions import Fraction
from pathlib import Path

from .geometry import PolygonalLink, validate_link, GeometryError


class LinkFileError(ValueError):
    pass


def parse_link(text: str) -> PolygonalLink:
    comps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] != "component":
            raise LinkFileError(f"line {lineno}: expected 'component', got {fields[0]!r}")
        nums = fields[1:]
        if len(nums) % 3 != 0:
            raise LinkFileError(f"line {lineno}: coordinate count not a multiple of 3")
        try:
            vals = [Fraction(tok) for tok in nums]
        except (ValueError, ZeroDivisionError) as exc:
            raise LinkFileError(f"line {lineno}: bad rational: {exc}") from None
        comps.append(tuple(tuple(vals[i:i + 3]) for i in range(0, len(vals), 3)))
    if not comps:
        raise LinkFileError("no components in file")
    return PolygonalLink(tuple(comps))


def load_link(path) -> PolygonalLink:
    """Parse and validate a link file; raises on any invariant violation."""
    link = parse_link(Path(path).read_text())
    problems = validate_link(link)
    if problems:
        raise GeometryError("; ".join(str(p) for p in problems))
    return link


def dump_link(link: PolygonalLink) -> str:
    lines = []
    for comp in link.components:
        toks = []
        for p in comp:
            toks.extend(str(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
                        for c in p)
        lines.append("component " + " ".join(toks))
    return "\n".join(lines) + "\n"


def fixture_path(name: str) -> Path:
    """Path to a bundled example link (``name`` with or without ``.link``)."""
    if not name.endswith(".link"):
        name += ".link"
    return Path(importlib.resources.files("polykh").joinpath("data", name))


def load_fixture(name: str) -> PolygonalLink:
    return load_link(fixture_path(name))
