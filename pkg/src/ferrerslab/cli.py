"""Command-line front end.

    ferrerslab eval     --nu 2 --mu 0 --x 0.5
    ferrerslab trace    --nu 0.3 --mu 0.25 --theta 1.0 --n-max 4096 -o trace.csv
    ferrerslab classify --mu -1 --theta 0.5pi
    ferrerslab lemma3   --a 0.7 --theta 2.0 --n-max 1000
    ferrerslab lemma4   --a 0.3 --b 1.0 --start 10000 --window 10
    ferrerslab fixtures -o tests/data/oracle_fixtures.jsonl

Output goes to stdout or, with ``--output``, to a file written via a
temporary sibling and an atomic rename.  Domain errors exit with status 2
and a single JSON line on stderr; I/O errors exit with status 1.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass

import mpmath

from . import lemmas
from .errors import DomainError, ParseError
from .ferrers import (
    CutPlanePoint,
    DegreeOrder,
    ThetaPoint,
    classify_order,
    eval_theorem1,
    eval_theta,
    ferrers_p,
    fourier_partial_sum,
)
from .hyp2f1 import DISC_TOL
from .oracle import MIN_DIGITS, reference_ferrers_p

COMMANDS = ("eval", "trace", "classify", "lemma3", "lemma4", "fixtures")
FORMATS = ("csv", "jsonl")
ROUTES = ("auto", "theorem1", "theta", "fourier")
TOLERANCE_ENV = "FERRERS_TOLERANCE"

TRACE_HEADER = ("k", "coeff_re", "coeff_im", "term_re", "term_im", "psum_re", "psum_im", "abs_psum")

# acceptance grid used by the fixtures command
GRID_NU = ("-0.7", "0.3+0.2i", "1.5", "2.0", "-0.25+0.5i")
GRID_MU = ("-1", "-0.5", "0", "0.25", "0.5", "1")
GRID_X = (
    "0.4+0.6i", "-0.3+0.5i", "0.5-0.8i", "-1.2+0.7i", "1.5+0.5i", "-0.8-1.1i",
    "0.1+1.9i", "1.7-0.9i", "-0.8", "-0.3", "0.45", "0.9",
)

_REAL = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


# ---------------------------------------------------------------- parsing

def _real_at(text: str, pos: int) -> tuple[float, int]:
    sign = 1.0
    start = pos
    if pos < len(text) and text[pos] in "+-":
        sign = -1.0 if text[pos] == "-" else 1.0
        pos += 1
    m = _REAL.match(text, pos)
    if m is None:
        raise ParseError(text, pos if pos < len(text) else start, "expected a real number")
    return sign * float(m.group()), m.end()


def parse_complex(text: str) -> complex:
    """Parse ``<real>``, ``<real>i`` or ``<real>(+|-)<real>i``.

    NaN and infinity are rejected (they never match the grammar).
    """
    s = text.strip()
    if not s:
        raise ParseError(text, 0, "empty literal")
    re_part, pos = _real_at(s, 0)
    if pos == len(s):
        return complex(re_part, 0.0)
    if s[pos] == "i" and pos + 1 == len(s):
        return complex(0.0, re_part)
    if s[pos] not in "+-":
        raise ParseError(text, pos, "expected '+' or '-' before the imaginary part")
    im_part, end = _real_at(s, pos)
    if end >= len(s) or s[end] != "i":
        raise ParseError(text, end, "expected 'i' after the imaginary part")
    if end + 1 != len(s):
        raise ParseError(text, end + 1, "trailing characters")
    return complex(re_part, im_part)


def parse_angle(text: str) -> complex:
    """Radians, or a multiple of pi with the suffix ``pi`` (``0.5pi``, ``pi``)."""
    s = text.strip()
    if s.endswith("pi"):
        head = s[:-2]
        if head in ("", "+"):
            return complex(math.pi)
        if head == "-":
            return complex(-math.pi)
        return parse_complex(head) * math.pi
    return parse_complex(s)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_complex(z: complex) -> str:
    """Inverse of :func:`parse_complex` (17 significant digits)."""
    z = complex(z)
    if z.imag == 0:
        return _fmt(z.real)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{_fmt(z.real)}{sign}{_fmt(abs(z.imag))}i"


def _short(z: complex) -> str:
    """Shortest round-trip label, e.g. ``0.3+0.2i``."""
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _json_num(x: float) -> str:
    return _fmt(x) if math.isfinite(x) else "null"


# ---------------------------------------------------------------- config

@dataclass(frozen=True)
class JobConfig:
    command: str
    nu: complex = 0j
    mu: complex = 0j
    x: complex | None = None
    theta: complex | None = None
    n_max: int = 1000
    tolerance: float = DISC_TOL
    output_path: str | None = None
    format: str = "csv"
    route: str = "auto"
    a: complex = 0j
    b: complex = 1 + 0j
    start: int = 1000
    window: int = 10
    digits: int = MIN_DIGITS

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.x is not None and self.theta is not None:
            raise ValueError("x and theta are mutually exclusive")
        if self.window < 1:
            raise ValueError("window must be >= 1")

    @property
    def params(self) -> DegreeOrder:
        return DegreeOrder(self.nu, self.mu)

    def real_theta(self) -> float:
        if self.theta is not None:
            t = complex(self.theta)
        elif self.x is not None:
            x = complex(self.x)
            if x.imag != 0 or not -1 < x.real < 1:
                raise DomainError(f"x = {format_complex(x)} does not correspond to a real angle")
            t = complex(math.acos(x.real))
        else:
            raise DomainError("this command needs --theta or --x")
        if t.imag != 0:
            raise DomainError("this command needs a real angle")
        if not 0 < t.real < math.pi:
            raise DomainError(f"theta = {_fmt(t.real)} is outside (0, pi)")
        return t.real


# ---------------------------------------------------------------- commands

def _point(cfg: JobConfig):
    if cfg.theta is not None:
        return ThetaPoint(cfg.theta), f"theta={format_complex(cfg.theta)}"
    if cfg.x is not None:
        return CutPlanePoint(cfg.x), f"x={format_complex(cfg.x)}"
    raise DomainError("eval needs --x or --theta")


def _rows_out(cfg: JobConfig, header, rows) -> str:
    if cfg.format == "csv":
        lines = [",".join(header)]
        lines += [",".join(r) for r in rows]
    else:
        lines = []
        for r in rows:
            items = []
            for h, v in zip(header, r):
                items.append(f'"{h}": {v}' if _is_number(v) else f'"{h}": {json.dumps(v)}')
            lines.append("{" + ", ".join(items) + "}")
    return "\n".join(lines) + "\n"


def _is_number(v: str) -> bool:
    if v == "null":
        return True
    try:
        float(v)
    except ValueError:
        return False
    return v.lower() not in ("nan", "inf", "-inf", "infinity", "-infinity")


def cmd_eval(cfg: JobConfig) -> str:
    p = cfg.params
    point, label = _point(cfg)
    if cfg.route == "auto":
        res = ferrers_p(p, point, cfg.tolerance)
    elif cfg.route == "theorem1":
        pt = point if isinstance(point, CutPlanePoint) else CutPlanePoint(point.x)
        res = eval_theorem1(p, pt, cfg.tolerance)
    elif cfg.route == "theta":
        if isinstance(point, ThetaPoint):
            tp = point
        else:
            tp = ThetaPoint(complex(cfg.real_theta()))
        res = eval_theta(p, tp, cfg.tolerance)
    else:
        res, _ = fourier_partial_sum(p, cfg.real_theta(), cfg.n_max)
    header = ("nu", "mu", "point", "value_re", "value_im", "error_estimate", "method", "terms_used")
    row = (
        format_complex(p.nu), format_complex(p.mu), label,
        _fmt(res.value.real), _fmt(res.value.imag), _json_num(res.error_estimate),
        res.method.value, str(res.terms_used),
    )
    return _rows_out(cfg, header, [row])


def cmd_trace(cfg: JobConfig) -> str:
    _, trace = fourier_partial_sum(cfg.params, cfg.real_theta(), cfg.n_max)
    rows = []
    for k, c, t, s, a in zip(trace.k, trace.coefficient, trace.term, trace.partial_sum, trace.abs_partial_sum):
        rows.append((
            str(int(k)), _fmt(c.real), _fmt(c.imag), _fmt(t.real), _fmt(t.imag),
            _fmt(s.real), _fmt(s.imag), _fmt(a),
        ))
    return _rows_out(cfg, TRACE_HEADER, rows)


def cmd_classify(cfg: JobConfig) -> str:
    theta = cfg.real_theta()
    cls = classify_order(cfg.mu, theta)
    if cfg.format == "csv":
        return cls.value + "\n"
    row = (format_complex(cfg.nu), format_complex(cfg.mu), _fmt(theta), cls.value)
    return _rows_out(cfg, ("nu", "mu", "theta", "class"), [row])


def cmd_lemma3(cfg: JobConfig) -> str:
    theta = cfg.real_theta()
    trace = lemmas.lemma3_trace(cfg.a, theta, cfg.n_max)
    dirichlet = None
    a = complex(cfg.a)
    if a.imag == 0 and abs(theta - 0.5 * math.pi) > lemmas.HALF_PI_TOL:
        dirichlet = lemmas.dirichlet_cosine_sums(a.real, theta, cfg.n_max)
    rows = []
    for i, rec in enumerate(trace):
        d = _fmt(dirichlet[i]) if dirichlet is not None else "null"
        rows.append((str(rec.n), _fmt(rec.value), _fmt(rec.running_sum), d))
    return _rows_out(cfg, ("n", "value", "running_sum", "dirichlet_sum"), rows)


def cmd_lemma4(cfg: JobConfig) -> str:
    trace = lemmas.lemma4_trace(cfg.a, cfg.b, cfg.start, cfg.window)
    rows = [(str(r.n), _fmt(r.value), _fmt(r.running_sum)) for r in trace]
    return _rows_out(cfg, ("n", "value", "running_max"), rows)


def fixture_record(nu_text: str, mu_text: str, x_text: str, digits: int) -> dict:
    nu, mu, x = parse_complex(nu_text), parse_complex(mu_text), parse_complex(x_text)
    ref = reference_ferrers_p(DegreeOrder(nu, mu), x, digits)
    with mpmath.workdps(digits + 10):
        v = mpmath.mpc(ref.value)
        return {
            "nu": nu_text,
            "mu": mu_text,
            "x_or_theta": f"x={x_text}",
            "value_re": mpmath.nstr(v.real, digits, min_fixed=1, max_fixed=0),
            "value_im": mpmath.nstr(v.imag, digits, min_fixed=1, max_fixed=0),
            "digits": ref.precision_digits,
        }


def acceptance_grid():
    """(nu, mu, x) literals of the acceptance grid, skipping nu + mu in -N."""
    for nu in GRID_NU:
        for mu in GRID_MU:
            try:
                DegreeOrder(parse_complex(nu), parse_complex(mu))
            except DomainError:
                continue
            for x in GRID_X:
                yield nu, mu, x


def cmd_fixtures(cfg: JobConfig) -> str:
    if cfg.theta is not None:
        x = _short(complex(math.cos(cfg.real_theta())))
        cases = [(_short(cfg.nu), _short(cfg.mu), x)]
    elif cfg.x is not None:
        cases = [(_short(cfg.nu), _short(cfg.mu), _short(cfg.x))]
    else:
        cases = list(acceptance_grid())
    lines = [json.dumps(fixture_record(nu, mu, x, cfg.digits)) for nu, mu, x in cases]
    return "\n".join(lines) + "\n"


_DISPATCH = {
    "eval": cmd_eval,
    "trace": cmd_trace,
    "classify": cmd_classify,
    "lemma3": cmd_lemma3,
    "lemma4": cmd_lemma4,
    "fixtures": cmd_fixtures,
}


# ---------------------------------------------------------------- plumbing

def write_atomic(path: str, text: str):
    """Write ``text`` to a temporary file next to ``path``, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ferrerslab-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _error_line(kind: str, message: str) -> str:
    return json.dumps({"error": kind, "message": message})


def run(cfg: JobConfig, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        text = _DISPATCH[cfg.command](cfg)
    except (DomainError, ParseError) as exc:
        print(_error_line(type(exc).__name__, str(exc)), file=stderr)
        return 2
    try:
        if cfg.output_path:
            write_atomic(cfg.output_path, text)
        else:
            stdout.write(text)
    except OSError as exc:
        print(_error_line("IOError", str(exc)), file=stderr)
        return 1
    return 0


def _default_tolerance() -> float:
    env = os.environ.get(TOLERANCE_ENV)
    if env is None or not env.strip():
        return DISC_TOL
    value = parse_complex(env)
    if value.imag != 0 or not value.real > 0:
        raise ParseError(env, 0, "tolerance must be a positive real")
    return value.real


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nu", default="0", help="degree (complex literal, e.g. 0.3+0.2i)")
    common.add_argument("--mu", default="0", help="order (complex literal)")
    where = common.add_mutually_exclusive_group()
    where.add_argument("--x", help="point in the cut plane")
    where.add_argument("--theta", help="angle in radians, or a multiple of pi such as 0.5pi")
    common.add_argument("--n-max", type=int, default=1000, help="number of series terms / trace length")
    common.add_argument("--tolerance", type=float, default=None,
                        help=f"target accuracy (default ${TOLERANCE_ENV} or {DISC_TOL:g})")
    common.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=FORMATS, default="csv")

    parser = argparse.ArgumentParser(prog="ferrerslab", description="Ferrers function experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    ev = sub.add_parser("eval", parents=[common], help="evaluate P_nu^mu at a point")
    ev.add_argument("--route", choices=ROUTES, default="auto")
    sub.add_parser("trace", parents=[common], help="Fourier partial-sum trace (CSV)")
    sub.add_parser("classify", parents=[common], help="convergence regime of the Fourier series")
    l3 = sub.add_parser("lemma3", parents=[common], help="sum |sin((a+2k)theta)|/k trace")
    l3.add_argument("--a", default="0")
    l4 = sub.add_parser("lemma4", parents=[common], help="|sin(a+bn)| over a window")
    l4.add_argument("--a", default="0")
    l4.add_argument("--b", default="1")
    l4.add_argument("--start", type=int, default=1000, help="first index N")
    l4.add_argument("--window", type=int, default=10)
    fx = sub.add_parser("fixtures", parents=[common], help="extended-precision oracle fixtures (JSON lines)")
    fx.add_argument("--digits", type=int, default=MIN_DIGITS)
    return parser


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    tol = ns.tolerance if ns.tolerance is not None else _default_tolerance()
    kwargs = dict(
        command=ns.command,
        nu=parse_complex(ns.nu),
        mu=parse_complex(ns.mu),
        x=parse_complex(ns.x) if ns.x is not None else None,
        theta=parse_angle(ns.theta) if ns.theta is not None else None,
        n_max=ns.n_max,
        tolerance=tol,
        output_path=ns.output,
        format="jsonl" if ns.command == "fixtures" else ns.format,
    )
    if ns.command == "eval":
        kwargs["route"] = ns.route
    if ns.command in ("lemma3", "lemma4"):
        kwargs["a"] = parse_angle(ns.a)
    if ns.command == "lemma4":
        kwargs.update(b=parse_angle(ns.b), start=ns.start, window=ns.window)
    if ns.command == "fixtures":
        kwargs["digits"] = ns.digits
    return JobConfig(**kwargs)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ParseError as exc:
        print(_error_line("ParseError", str(exc)), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(_error_line("ConfigError", str(exc)), file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
