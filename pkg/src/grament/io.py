"""JSON file formats for states and density matrices.

State file::

    {"d1": 2, "d2": 2, "coeffs": [[re, im], ...]}    # d1*d2 pairs, alpha = (i-1)*d2 + j

Density file::

    {"d": 2, "matrix": [[re, im], ...]}               # d*d pairs, row-major

Floats are written with ``repr`` so a written file parses back bit-exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .bipartite import BipartiteState
from .cholesky import validate_density
from .errors import FileFormatError, InvalidDensityMatrixError


def _load_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: top level must be a JSON object")
    return doc


def _count(doc, key, path):
    if key not in doc:
        raise FileFormatError(f"{path}: missing field '{key}'")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise FileFormatError(f"{path}: field '{key}' must be a positive integer, got {value!r}")
    return value


def _pairs(doc, key, expected, path):
    if key not in doc:
        raise FileFormatError(f"{path}: missing field '{key}'")
    raw = doc[key]
    if not isinstance(raw, list):
        raise FileFormatError(f"{path}: field '{key}' must be a list of [re, im] pairs")
    if len(raw) != expected:
        raise FileFormatError(
            f"{path}: field '{key}' has {len(raw)} entries, expected {expected}"
        )
    out = np.empty(expected, dtype=complex)
    for n, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise FileFormatError(f"{path}: field '{key}'[{n}] must be a [re, im] pair of numbers")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise FileFormatError(f"{path}: field '{key}'[{n}] is not finite")
        out[n] = complex(re, im)
    return out


def parse_state(doc, path="<state>"):
    d1 = _count(doc, "d1", path)
    d2 = _count(doc, "d2", path)
    flat = _pairs(doc, "coeffs", d1 * d2, path)
    return BipartiteState(flat.reshape(d1, d2))


def read_state(path):
    return parse_state(_load_json(path), str(path))


def parse_density(doc, path="<density>"):
    d = _count(doc, "d", path)
    flat = _pairs(doc, "matrix", d * d, path)
    try:
        return validate_density(flat.reshape(d, d))
    except InvalidDensityMatrixError as exc:
        raise FileFormatError(f"{path}: field 'matrix': {exc}") from exc


def read_density(path):
    return parse_density(_load_json(path), str(path))


def complex_pairs(values):
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def _dump_pairs(header, key, pairs):
    body = ",\n".join(f"    [{json.dumps(re)}, {json.dumps(im)}]" for re, im in pairs)
    lines = [f'  "{k}": {json.dumps(v)},' for k, v in header.items()]
    return "{\n" + "\n".join(lines) + f'\n  "{key}": [\n{body}\n  ]\n}}\n'


def dumps_state(psi):
    return _dump_pairs({"d1": psi.d1, "d2": psi.d2}, "coeffs", complex_pairs(psi.flat()))


def dumps_density(rho):
    rho = np.asarray(rho, dtype=complex)
    return _dump_pairs({"d": rho.shape[0]}, "matrix", complex_pairs(rho))


def write_state(psi, path):
    Path(path).write_text(dumps_state(psi), encoding="utf-8")


def write_density(rho, path):
    Path(path).write_text(dumps_density(rho), encoding="utf-8")
