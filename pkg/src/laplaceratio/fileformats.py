"""JSON and CSV document formats used by the CLI and reusable directly.

Rationals travel as decimal-integer or "p/q" strings so files round-trip
exactly; parse failures name the offending position in the document.
"""

from __future__ import annotations

import csv
import json
import re

import numpy as np

from .algebra import Poly, Rational, Series
from .auction import AuctionModel, DistSpec, Exponential, Lognormal, PointMass, Shifted
from .errors import FormatError
from .identify import IdentifyResult
from .transforms import PiecewisePoly, RatioExpansion, sin_maclaurin, step_example

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(value, where: str) -> Rational:
    """Parse a JSON value holding a rational: an integer or a 'p/q' string."""
    if isinstance(value, bool):
        raise FormatError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value.strip()):
            raise FormatError(
                f"{where}: malformed rational {value!r} (use an integer or 'p/q')"
            )
        num, _, den = value.strip().partition("/")
        if den:
            if int(den) == 0:
                raise FormatError(f"{where}: zero denominator in {value!r}")
            return Rational(int(num), int(den))
        return Rational(int(num))
    raise FormatError(f"{where}: expected a rational string or integer, got {type(value).__name__}")


def format_rational(value: Rational) -> str:
    return str(value)


def _require(doc, key, where, kind=None):
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in doc:
        raise FormatError(f"{where}: missing required key {key!r}")
    value = doc[key]
    bad_bool = kind is int and isinstance(value, bool)
    if kind is not None and (bad_bool or not isinstance(value, kind)):
        raise FormatError(
            f"{where}.{key}: expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}"
        )
    return value


def _rational_list(values, where) -> list[Rational]:
    if not isinstance(values, list):
        raise FormatError(f"{where}: expected a list")
    return [parse_rational(v, f"{where}[{i}]") for i, v in enumerate(values)]


def function_from_document(doc, where: str = "function"):
    """Parse a function description into a Poly or PiecewisePoly.

    Kinds: {"kind": "poly", "coeffs": [...]},
    {"kind": "piecewise", "breakpoints": [...], "pieces": [[...], ...], "tail": [...]},
    {"kind": "builtin", "name": "sin" | "step_example", "order" | "n_max": int}.
    """
    kind = _require(doc, "kind", where, str)
    if kind == "poly":
        return Poly(_rational_list(_require(doc, "coeffs", where), f"{where}.coeffs"))
    if kind == "piecewise":
        breakpoints = _rational_list(
            _require(doc, "breakpoints", where), f"{where}.breakpoints"
        )
        if not breakpoints or breakpoints[0] != 0:
            raise FormatError(f"{where}.breakpoints[0]: must be 0")
        for i in range(1, len(breakpoints)):
            if breakpoints[i] <= breakpoints[i - 1]:
                raise FormatError(f"{where}.breakpoints[{i}]: must be strictly increasing")
        pieces_doc = _require(doc, "pieces", where, list)
        if len(pieces_doc) != len(breakpoints) - 1:
            raise FormatError(
                f"{where}.pieces: expected {len(breakpoints) - 1} pieces for"
                f" {len(breakpoints)} breakpoints, got {len(pieces_doc)}"
            )
        pieces = [
            Poly(_rational_list(p, f"{where}.pieces[{i}]")) for i, p in enumerate(pieces_doc)
        ]
        tail = Poly(_rational_list(_require(doc, "tail", where), f"{where}.tail"))
        try:
            return PiecewisePoly(breakpoints, pieces + [tail], allow_polynomial_tail=True)
        except Exception as exc:  # pragma: no cover - guarded above
            raise FormatError(f"{where}: {exc}") from exc
    if kind == "builtin":
        name = _require(doc, "name", where, str)
        if name == "sin":
            order = _require(doc, "order", where, int)
            if order < 0:
                raise FormatError(f"{where}.order: must be nonnegative")
            return sin_maclaurin(order)
        if name == "step_example":
            n_max = _require(doc, "n_max", where, int)
            if n_max < 1:
                raise FormatError(f"{where}.n_max: must be at least 1")
            return step_example(n_max)
        raise FormatError(f"{where}.name: unknown builtin {name!r}")
    raise FormatError(f"{where}.kind: unknown kind {kind!r}")


def function_to_document(fn) -> dict:
    if isinstance(fn, Poly):
        return {"kind": "poly", "coeffs": [format_rational(c) for c in fn.coeffs]}
    if isinstance(fn, PiecewisePoly):
        return {
            "kind": "piecewise",
            "breakpoints": [format_rational(b) for b in fn.breakpoints],
            "pieces": [
                [format_rational(c) for c in p.coeffs] for p in fn.pieces[:-1]
            ],
            "tail": [format_rational(c) for c in fn.pieces[-1].coeffs],
        }
    raise TypeError(f"cannot serialize {type(fn).__name__}")


def ratio_expansion_from_document(doc, where: str = "expansion") -> RatioExpansion:
    """Parse {"lead": int, "tail": ["r0", "r1", ...]}."""
    lead = _require(doc, "lead", where, int)
    tail = _rational_list(_require(doc, "tail", where), f"{where}.tail")
    if not tail:
        raise FormatError(f"{where}.tail: must be nonempty")
    if not tail[0]:
        raise FormatError(f"{where}.tail[0]: must be nonzero")
    return RatioExpansion(lead, Series(tail, len(tail) - 1))


def ratio_expansion_to_document(H: RatioExpansion) -> dict:
    return {"lead": H.lead, "tail": [format_rational(c) for c in H.tail.coeffs]}


def identify_result_to_document(result: IdentifyResult) -> dict:
    return {
        "coeffs": [format_rational(c) for c in result.poly.coeffs],
        "ambiguous_sign": result.ambiguous_sign,
        "k": result.k,
    }


def _number(doc, key, where):
    value = _require(doc, key, where)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(f"{where}.{key}: expected a number")
    return float(value)


def dist_from_document(doc, where: str) -> DistSpec:
    kind = _require(doc, "kind", where, str)
    try:
        if kind == "exponential":
            return Exponential(_number(doc, "theta", where))
        if kind == "lognormal":
            return Lognormal(
                _number(doc, "mu", where), _number(doc, "sigma", where)
            )
        if kind == "point_mass":
            return PointMass(_number(doc, "v", where))
        if kind == "shifted":
            base = dist_from_document(_require(doc, "base", where, dict), f"{where}.base")
            return Shifted(base, _number(doc, "offset", where))
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(f"{where}: {exc}") from exc
    raise FormatError(f"{where}.kind: unknown distribution kind {kind!r}")


def model_from_document(doc, where: str = "model") -> AuctionModel:
    common = dist_from_document(_require(doc, "common", where, dict), f"{where}.common")
    idio = dist_from_document(
        _require(doc, "idiosyncratic", where, dict), f"{where}.idiosyncratic"
    )
    n = _require(doc, "N", where, int)
    if n < 2:
        raise FormatError(f"{where}.N: must be an integer >= 2")
    return AuctionModel(common, idio, n)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def save_samples(path, table: np.ndarray) -> None:
    """Write a (rows, 2) sample table as CSV with header top,second; floats
    use shortest round-trip decimal form."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["top", "second"])
        for top, second in np.asarray(table, dtype=float):
            writer.writerow([repr(float(top)), repr(float(second))])


def load_samples(path) -> np.ndarray:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != ["top", "second"]:
                raise FormatError(f"{path}:1: expected header 'top,second'")
            rows = []
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 2:
                    raise FormatError(f"{path}:{lineno}: expected two columns")
                try:
                    rows.append((float(row[0]), float(row[1])))
                except ValueError as exc:
                    raise FormatError(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from exc
    if not rows:
        raise FormatError(f"{path}: no sample rows")
    return np.array(rows, dtype=float)
