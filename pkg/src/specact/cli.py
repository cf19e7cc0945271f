"""``specact`` command line: thermo, coeff, expand, compare and verify.

Grids use ``start:stop:step`` (stop included) or comma lists; spectra are
``circle:N``, ``torus:D:N`` or ``file:PATH``; heat expansions are
``circle``, ``torus:D`` or ``file:PATH`` (JSON).  Every command prints CSV
with a header row, or JSON with the same field names.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import coeffs
from .asymptotics import ExpansionRequest, compare_exact, expand
from .coeffs import CoeffKind, Representation
from .gibbs import ThermoParams, thermo
from .kernels import Quantity, Statistics, Variant
from .spectra import (
    HeatExpansion,
    Spectrum,
    SpectrumFileError,
    TailPolicy,
    circle_heat_expansion,
    circle_spectrum,
    spectrum_from_file,
    torus_heat_expansion,
    torus_spectrum,
)
from .specfun import ConvergenceError, DomainError, SeriesControl
from .verify import run_all


class ConfigError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


# ----------------------------------------------------------- parsing


def parse_grid(text: str, flag: str) -> list[float]:
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            if step == 0 or (stop - start) / step < 0:
                raise ConfigError(flag, f"empty or endless range {text!r}")
            n = int(math.floor((stop - start) / step + 1e-9))
            return [round(start + i * step, 12) for i in range(n + 1)]
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(flag, f"cannot parse {text!r}") from None


def parse_spectrum(text: str) -> Spectrum:
    kind, _, rest = text.partition(":")
    try:
        if kind == "circle":
            return circle_spectrum(int(rest))
        if kind == "torus":
            d, n = rest.split(":")
            return torus_spectrum(int(d), int(n))
    except (ValueError, DomainError) as exc:
        raise ConfigError("--spectrum", f"{text!r}: {exc}") from None
    if kind == "file":
        try:
            return spectrum_from_file(rest)
        except (OSError, SpectrumFileError, DomainError) as exc:
            raise ConfigError("--spectrum", str(exc)) from None
    raise ConfigError("--spectrum", f"expected circle:N, torus:D:N or file:PATH, got {text!r}")


def parse_geometry(text: str) -> HeatExpansion:
    kind, _, rest = text.partition(":")
    try:
        if kind == "circle":
            return circle_heat_expansion()
        if kind == "torus":
            return torus_heat_expansion(int(rest))
        if kind == "file":
            return HeatExpansion.load(rest)
    except (ValueError, OSError, DomainError) as exc:
        raise ConfigError("--geometry", f"{text!r}: {exc}") from None
    raise ConfigError("--geometry", f"expected circle, torus:D or file:PATH, got {text!r}")


def _geometry_of(spectrum_text: str) -> str:
    kind, _, rest = spectrum_text.partition(":")
    if kind == "torus":
        return "torus:" + rest.split(":")[0]
    return kind


# ------------------------------------------------------------ output


def _plain(x):
    """numpy scalars to their Python counterparts."""
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def fmt(x) -> str:
    x = _plain(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _json_value(x) -> str:
    x = _plain(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g") if math.isfinite(x) else "null"
    if isinstance(x, int):
        return str(x)
    return json.dumps(x)


def render(rows: list[dict], fmt_name: str, single: bool = False) -> str:
    if fmt_name == "json":
        objs = ["{" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in r.items()) + "}"
                for r in rows]
        if single and len(objs) == 1:
            return objs[0] + "\n"
        return "[\n" + ",\n".join("  " + o for o in objs) + "\n]\n"
    buf = io.StringIO()
    if rows:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(rows[0]))
        for r in rows:
            w.writerow([fmt(v) for v in r.values()])
    return buf.getvalue()


def workers() -> int:
    cap = os.environ.get("SPECACT_THREADS", "").strip()
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, min(n, int(cap)))
        except ValueError:
            raise ConfigError("SPECACT_THREADS", f"not an integer: {cap!r}") from None
    return n


def pmap(fn: Callable, items: Sequence) -> list:
    """Map in a thread pool; results come back in input order."""
    n = workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------- commands


def _params(args, beta: float) -> ThermoParams:
    try:
        return ThermoParams(beta, args.mu, Statistics(args.stat), Variant(args.variant))
    except DomainError as exc:
        raise ConfigError("--mu" if "mu" in str(exc) else "--beta", str(exc)) from None


def cmd_thermo(args) -> tuple[list[dict], bool]:
    spectrum = parse_spectrum(args.spectrum)
    betas = parse_grid(args.beta, "--beta")
    params = [_params(args, b) for b in betas]
    tail = TailPolicy(tolerance=args.rel_tol)

    def one(p):
        r = thermo(spectrum, p, tail)
        return {"beta": p.beta, "log_Z": r.log_Z, "entropy": r.entropy, "energy": r.energy,
                "modes_used": r.modes_used, "tail_bound": r.tail_bound, "reliable": r.reliable}

    return pmap(one, params), True


def cmd_coeff(args) -> tuple[list[dict], bool]:
    kind = CoeffKind(args.kind)
    a_grid = parse_grid(args.a, "--a")
    mu_grid = parse_grid(args.mu, "--mu")
    reps = []
    for name in args.rep.split(","):
        name = name.strip()
        try:
            reps.append(None if name == "auto" else Representation(name))
        except ValueError:
            raise ConfigError("--rep", f"unknown representation {name!r}") from None
    sctl = SeriesControl(args.rel_tol, args.abs_tol, args.max_terms)
    points = [(a, mu, rep) for mu in mu_grid for a in a_grid for rep in reps]

    def one(pt):
        a, mu, rep = pt
        r = coeffs.coeff(kind, a, mu, rep, sctl)
        return {"a": a, "mu": mu, "rep": r.rep.value, "value": r.value,
                "est_error": r.est_error, "terms": r.terms_used}

    return pmap(one, points), False


def _request(args, beta: float) -> ExpansionRequest:
    h = parse_geometry(args.geometry)
    return ExpansionRequest(h, _params(args, beta), args.L, args.K, Quantity(args.quantity))


def cmd_expand(args) -> tuple[list[dict], bool]:
    betas = parse_grid(args.beta, "--beta")
    reqs = [_request(args, b) for b in betas]

    def one(req):
        res = expand(req)
        return [{"beta": req.p.beta, **row} for row in res.as_rows()]

    return [row for rows in pmap(one, reqs) for row in rows], False


def cmd_compare(args) -> tuple[list[dict], bool]:
    if args.geometry is None:
        args.geometry = _geometry_of(args.spectrum)
    spectrum = parse_spectrum(args.spectrum)
    betas = parse_grid(args.beta, "--beta")
    req = _request(args, betas[0])
    table = compare_exact(req, spectrum, betas, TailPolicy(tolerance=args.rel_tol))
    rows = [{"beta": r.beta, "exact": r.exact, "expansion": r.expansion, "abs_err": r.abs_err,
             "rel_err": r.rel_err, "slope": table.slope, "last_power": table.last_power}
            for r in table.rows]
    return rows, False


def cmd_verify(args) -> tuple[list[dict], bool]:
    results = run_all()
    rows = [{"check": r.name, "passed": r.passed, "residual": r.residual,
             "tolerance": r.tolerance, "detail": r.detail} for r in results]
    return rows, False


COMMANDS = {"thermo": cmd_thermo, "coeff": cmd_coeff, "expand": cmd_expand,
            "compare": cmd_compare, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="specact", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--rel-tol", type=float, default=1e-10)
    common.add_argument("--abs-tol", type=float, default=1e-12)
    common.add_argument("--max-terms", type=int, default=100_000)

    gas = argparse.ArgumentParser(add_help=False)
    gas.add_argument("--stat", choices=[s.value for s in Statistics], default="fermi")
    gas.add_argument("--variant", choices=[v.value for v in Variant], default="sqrt")
    gas.add_argument("--mu", type=float, required=True)
    gas.add_argument("--beta", required=True, help="value, list or start:stop:step")

    expn = argparse.ArgumentParser(add_help=False)
    expn.add_argument("--quantity", choices=[q.value for q in Quantity], default="entropy")
    expn.add_argument("--L", type=int, default=1)
    expn.add_argument("--K", type=int, default=0)

    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("thermo", parents=[common, gas], help="exact log Z, entropy, energy")
    p.add_argument("--spectrum", required=True)
    p = sub.add_parser("coeff", parents=[common], help="coefficient function grid")
    p.add_argument("--kind", choices=[k.value for k in CoeffKind], required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--rep", default="auto", help="comma list of bessel,poisson,xi,quadrature,auto")
    p = sub.add_parser("expand", parents=[common, gas, expn], help="per-term expansion table")
    p.add_argument("--geometry", default="circle")
    p = sub.add_parser("compare", parents=[common, gas, expn], help="expansion against exact")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--geometry", default=None, help="defaults to the spectrum's geometry")
    sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    return ap


_NEG = re.compile(r"^-(\d|\.\d)")


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse would read "-1:3:0.5" as an option; glue it to its flag
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEG.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def _origin(exc: BaseException) -> str:
    frames = traceback.extract_tb(exc.__traceback__)
    return Path(frames[-1].filename).stem if frames else "specact"


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(argv))
    try:
        rows, single = COMMANDS[args.command](args)
    except ConfigError as exc:
        parser.error(str(exc))
    except (DomainError, ConvergenceError, ArithmeticError, ValueError, LookupError) as exc:
        print(f"specact {args.command}: error in {_origin(exc)}: {exc}", file=sys.stderr)
        return 1
    text = render(rows, args.format, single)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.command == "verify":
        return 0 if all(r["passed"] for r in rows) else 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
