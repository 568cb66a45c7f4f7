"""JSON file formats for polytopes, matrices, ideals, fixes and reports.

All rationals are strings ``"p/q"`` (or ``"p"``); polynomials use the
canonical text form of :mod:`polyslack.polyring`.  Every artifact written
by :func:`write_artifact` carries a header with the tool version and the
effective configuration, and is serialized with sorted keys so that equal
inputs give byte-identical files.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from . import __version__
from .exactmath import RationalMatrix, format_rational, parse_rational
from .groebner import GroebnerBasis, IdealBasis
from .polyring import GREVLEX, MonomialOrder, format_polynomial, parse_polynomial
from .polytope import HRepresentation, IncidenceStructure, VRepresentation
from .slackideal import ScalingFix


class FormatError(ValueError):
    """Malformed input file."""


def _rat(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return parse_rational(str(x))
    if not isinstance(x, str):
        raise FormatError(f"rationals must be strings 'p/q', got {x!r}")
    return parse_rational(x)


# polytopes


def polytope_from_json(data: Mapping) -> VRepresentation | IncidenceStructure:
    """Coordinates (``"vertices"``) or an abstract facet list (``"facets"``)."""
    try:
        d = int(data["dimension"])
    except (KeyError, TypeError, ValueError):
        raise FormatError("polytope needs an integer 'dimension'") from None
    if "vertices" in data:
        v = VRepresentation([[_rat(x) for x in p] for p in data["vertices"]])
        if v.dimension != d:
            raise FormatError(f"vertices have dimension {v.dimension}, file says {d}")
        return v
    if "facets" in data:
        base = int(data.get("index_base", 0))
        facets = data["facets"]
        if "num_vertices" in data:
            nv = int(data["num_vertices"])
        else:
            nv = max(max(f) for f in facets) + 1 - base
        return IncidenceStructure.from_facets(d, facets, nv, base=base, validate=bool(data.get("validate", False)))
    raise FormatError("polytope needs 'vertices' or 'facets'")


def hrep_from_json(data: Mapping) -> HRepresentation | None:
    if "slack_factor" in data:
        return HRepresentation.from_slack_factor([[_rat(x) for x in r] for r in data["slack_factor"]])
    if "normals" in data:
        return HRepresentation([[_rat(x) for x in r] for r in data["normals"]], [_rat(x) for x in data["rhs"]])
    return None


def incidence_to_json(inc: IncidenceStructure) -> dict:
    return {
        "dimension": inc.d,
        "num_vertices": inc.num_vertices,
        "facets": [sorted(inc.facet_vertices(j)) for j in range(inc.num_facets)],
    }


# matrices


def matrix_to_json(m: RationalMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[format_rational(e) for e in m.row(i)] for i in range(m.rows)]}


def matrix_from_json(data: Any) -> RationalMatrix:
    rows = data["entries"] if isinstance(data, Mapping) else data
    try:
        return RationalMatrix.from_rows([[_rat(x) for x in r] for r in rows])
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad matrix: {exc}") from None


# ideals


def ideal_to_json(ideal: IdealBasis | GroebnerBasis, order: MonomialOrder = GREVLEX) -> dict:
    if isinstance(ideal, GroebnerBasis):
        order = ideal.order
        gens = ideal.elements
    else:
        gens = ideal.generators
    return {"nvars": ideal.nvars, "order": order.descriptor(),
            "generators": [format_polynomial(g, order) for g in gens]}


def ideal_from_json(data: Mapping) -> IdealBasis:
    n = int(data["nvars"])
    try:
        return IdealBasis([parse_polynomial(s, n) for s in data["generators"]], n)
    except ValueError as exc:
        raise FormatError(f"bad polynomial: {exc}") from None


def gb_from_json(data: Mapping) -> GroebnerBasis:
    n = int(data["nvars"])
    order = MonomialOrder.from_descriptor(data["order"])
    return GroebnerBasis(order, [parse_polynomial(s, n) for s in data["generators"]], n)


def fix_from_json(data: Mapping) -> ScalingFix:
    return ScalingFix.from_json(data)


# artifacts


def header(command: str, config: Mapping) -> dict:
    return {"tool": "polyslack", "version": __version__, "command": command, "config": dict(config)}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_artifact(path: str | Path | None, command: str, config: Mapping, body: Mapping) -> str:
    text = dumps({"header": header(command, config), **body})
    if path is not None:
        Path(path).write_text(text)
    return text


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def load_fixture(name: str) -> dict:
    """One of the bundled example files in ``polyslack/data`` (without ``.json``)."""
    text = resources.files("polyslack").joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def fixture_names() -> list[str]:
    d = resources.files("polyslack").joinpath("data")
    return sorted(p.name[:-5] for p in d.iterdir() if p.name.endswith(".json"))
