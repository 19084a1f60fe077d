"""Command-line front end: ``grament {analyze,purify,random,align}``.

Exit codes: 0 success, 2 invalid input, 3 mathematical precondition failed.
Text reports print numbers with ``--precision`` significant digits (default
12) and show magnitudes below 1e-13 as 0; ``--json`` reports carry full binary64 values and follow
``schemas/report.json``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import io
from .bipartite import (
    Side,
    gram_operator,
    is_separable,
    random_state,
    schmidt,
    side_frame,
    state_from_equal_grams,
)
from .cholesky import purify
from .errors import FileFormatError, GramMismatchError, GramentError
from .geometry import geometry_report
from .tensor_core import DEFAULT_TOL, eigh, frobenius

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECONDITION = 3
NORM_WARN_TOL = 1e-10
CHOP = 1e-13


class _Matrix(list):
    """Complex matrix held as rows of ``[re, im]`` pairs; rendered as a block in text mode."""


def _cmatrix(m):
    m = np.asarray(m, dtype=complex)
    return _Matrix([io.complex_pairs(row) for row in m])


def _fmt_real(x, precision):
    if abs(x) < CHOP:
        return "0"
    return f"{x:.{precision}g}"


def _fmt_complex(pair, precision):
    re, im = (0.0 if abs(v) < CHOP else v for v in pair)
    sign = "-" if im < 0 else "+"
    return f"{_fmt_real(re, precision)}{sign}{_fmt_real(abs(im), precision)}j"


def _fmt_value(value, precision):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt_real(value, precision)
    if isinstance(value, str):
        return value
    if isinstance(value, list):
        if value and isinstance(value[0], list):  # vector of complex pairs
            return "[" + ", ".join(_fmt_complex(p, precision) for p in value) + "]"
        return "[" + ", ".join(_fmt_value(v, precision) for v in value) + "]"
    raise TypeError(f"cannot format {type(value).__name__}")


def render_text(report, precision=12):
    lines = []

    def emit(key, value, indent):
        pad = "  " * indent
        if isinstance(value, _Matrix):
            lines.append(f"{pad}{key}:")
            for row in value:
                lines.append(f"{pad}  " + "  ".join(_fmt_complex(p, precision) for p in row))
        elif isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 1)
        else:
            lines.append(f"{pad}{key}: {_fmt_value(value, precision)}")

    for key, value in report.items():
        emit(key, value, 0)
    return "\n".join(lines) + "\n"


def render_json(report):
    return json.dumps(report, indent=2) + "\n"


def analyze_report(psi, tol=DEFAULT_TOL, emit_gram=False):
    """Report dictionary for a state (normalized internally); fixed key order."""
    input_norm = psi.norm
    psi = psi.normalized()
    geo = geometry_report(psi, tol)
    sd = schmidt(psi, tol)
    sep = is_separable(psi, tol)
    report = {
        "kind": "analyze",
        "d1": psi.d1,
        "d2": psi.d2,
        "input_norm": input_norm,
        "tolerance": tol,
        "schmidt_coefficients": [float(s) for s in sd.coefficients],
        "schmidt_rank": sd.rank,
        "entropy_nats": geo.entropy,
        "entropy_bits": geo.entropy / math.log(2),
        "volume_right": geo.volume_right,
        "gvol": geo.gvol,
        "separable": bool(sep),
        "witness": (
            {"c": io.complex_pairs(sep.c), "d": io.complex_pairs(sep.d)} if sep else None
        ),
        "max_entangled": geo.max_entangled,
    }
    if emit_gram:
        report["gram"] = {
            "right": _cmatrix(gram_operator(psi, Side.RIGHT)),
            "left": _cmatrix(gram_operator(psi, Side.LEFT)),
        }
    return report


def purify_report(rho, side):
    result = purify(rho, side)
    state = result.state
    residual = frobenius(gram_operator(state, result.side) - rho)
    report = {
        "kind": "purify",
        "d": int(rho.shape[0]),
        "side": result.side.value,
        "density_spectrum": [float(x) for x in eigh(rho).values],
        "factor_rank": int(np.count_nonzero(np.abs(np.diag(result.factor)) > 0)),
        "state_norm": state.norm,
        "residual": residual,
    }
    return result, report


def align_report(psi_a, psi_b, side, tol):
    """Unitary taking ``psi_b`` to ``psi_a`` on ``side``; raises on Gram mismatch."""
    u = state_from_equal_grams(psi_a, psi_b, side, tol)
    fa = side_frame(psi_a, side).vectors
    fb = side_frame(psi_b, side).vectors
    residual = max(float(np.linalg.norm(u @ fb[i] - fa[i])) for i in range(fa.shape[0]))
    return {
        "kind": "align",
        "side": Side.parse(side).value,
        "dim": int(u.shape[0]),
        "max_residual": residual,
        "unitary": _cmatrix(u),
    }


def _emit(report, args):
    if args.json:
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_text(report, args.precision))


def _error(msg):
    print(f"error: {msg}", file=sys.stderr)


def cmd_analyze(args):
    psi = io.read_state(args.state)
    if psi.norm == 0.0:
        raise FileFormatError(f"{args.state}: field 'coeffs': the zero vector is not a state")
    if abs(psi.norm - 1.0) > NORM_WARN_TOL:
        print(f"warning: state norm is {psi.norm:.12g}; normalizing", file=sys.stderr)
    _emit(analyze_report(psi, args.tol, args.emit_gram), args)
    return EXIT_OK


def cmd_purify(args):
    rho = io.read_density(args.density)
    result, report = purify_report(rho, args.side)
    out = args.out or str(Path(args.density).with_suffix("")) + ".purified.json"
    io.write_state(result.state, out)
    _emit(report, args)
    return EXIT_OK


def cmd_random(args):
    if args.d1 < 1 or args.d2 < 1:
        raise FileFormatError(f"dimensions must be >= 1, got d1={args.d1}, d2={args.d2}")
    text = io.dumps_state(random_state(args.d1, args.d2, args.seed))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_align(args):
    psi_a = io.read_state(args.state_a)
    psi_b = io.read_state(args.state_b)
    if (psi_a.d1, psi_a.d2) != (psi_b.d1, psi_b.d2):
        raise FileFormatError(
            f"states have different dimensions: ({psi_a.d1}, {psi_a.d2}) vs ({psi_b.d1}, {psi_b.d2})"
        )
    try:
        report = align_report(psi_a, psi_b, args.side, args.tol)
    except GramMismatchError as exc:
        _error(f"{args.side} Gram operators differ: Frobenius distance {exc.distance:.6e}")
        return EXIT_PRECONDITION
    _emit(report, args)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="grament", description="Gram-matrix entanglement analysis of bipartite pure states."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--precision", type=int, default=12, help="significant digits in text mode")
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("analyze", help="Schmidt data, entropy, gramian volume of a state file")
    p.add_argument("state")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="Schmidt-rank tolerance")
    p.add_argument("--emit-gram", action="store_true", help="include both Gram operators")
    output_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("purify", help="purify a density matrix via zero-extended Cholesky")
    p.add_argument("density")
    p.add_argument("--side", choices=["right", "left"], default="right")
    p.add_argument("--out", help="state file to write (default: <density>.purified.json)")
    output_flags(p)
    p.set_defaults(func=cmd_purify)

    p = sub.add_parser("random", help="write a seeded random state file")
    p.add_argument("d1", type=int)
    p.add_argument("d2", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("align", help="local unitary relating two states with equal Gram operators")
    p.add_argument("state_a")
    p.add_argument("state_b")
    p.add_argument("--side", choices=["right", "left"], default="right")
    p.add_argument("--tol", type=float, default=1e-9)
    output_flags(p)
    p.set_defaults(func=cmd_align)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "precision", 12) < 1:
        _error("--precision must be >= 1")
        return EXIT_INVALID
    try:
        return args.func(args)
    except (GramentError, ValueError) as exc:
        _error(str(exc))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
