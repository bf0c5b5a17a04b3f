"""Command-line front end.

Exit codes: 0 success (all cases pass), 1 verification failure or domain
error, 2 usage error (including malformed multi-indices).
"""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path

import click

from . import multiindex as mi
from .mzv import zeta_eval
from .nested import PatternMatrix, g_eval, phi_eval, zeta_alpha_eval
from .newton import newton_eval
from .relations import (DEFAULT_TOL, Report, check_duality, check_two_one,
                        check_formula, check_formula_campaign, check_interpolation,
                        check_newton_vs_g_campaign, check_phi_difference)
from .sequences import multi_harmonic

DEFAULT_TERMS = 10**5
DEFAULT_TRUNC = 10**6
NEWTON_ALPHAS = ((2,), (1, 2), (2, 1), (3,), (1, 1, 2))
NEWTON_ZS = (1.5, 0.5, 0.5 + 0.5j)

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(rf"^(?:[+-]?{_NUM}|[+-]?(?:{_NUM})?i|[+-]?{_NUM}[+-](?:{_NUM})?i)$")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` with either part optional: ``0.5``, ``-2i``, ``0.5-0.25i``, ``i``."""
    s = text.replace(" ", "")
    if not _COMPLEX.match(s):
        raise ValueError(f"not a complex number: {text!r}")
    if s.endswith("i"):
        if len(s) == 1 or s[-2] in "+-":
            s = s[:-1] + "1i"
        s = s[:-1] + "j"
    return complex(s)


def format_complex(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.15g}"
    return f"{z.real:.15g}{'+' if z.imag >= 0 else '-'}{abs(z.imag):.15g}i"


class MultiIndexType(click.ParamType):
    name = "multi-index"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return mi.parse_multi_index(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class ComplexType(click.ParamType):
    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return parse_complex(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class ComplexListType(click.ParamType):
    name = "complex-list"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return list(value)
        try:
            return [parse_complex(t) for t in re.split(r"[,;\s]+", value.strip()) if t]
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class IntListType(click.ParamType):
    name = "int-list"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return list(value)
        try:
            return [int(t) for t in re.split(r"[,\s]+", value.strip()) if t]
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


MI = MultiIndexType()
COMPLEX = ComplexType()


def _domain(fn, *args, **kwargs):
    """Run a library call, turning domain errors into exit code 1."""
    try:
        return fn(*args, **kwargs)
    except (ValueError, ZeroDivisionError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


def _echo_estimate(est, as_json: bool):
    if as_json:
        click.echo(json.dumps(est.to_dict(), sort_keys=True))
    else:
        click.echo(f"{format_complex(est.value)}  (err {est.err:.3g})")


trunc_option = click.option("--trunc", "-M", "trunc", type=click.IntRange(16), default=DEFAULT_TRUNC,
                            show_default=True, help="Truncation of the nested sums.")
json_flag = click.option("--json", "as_json", is_flag=True, help="Print JSON.")
# lets negative numbers such as "-0.5" through as positional arguments
NUMERIC = {"ignore_unknown_options": True}


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Multi-index algebra, Newton series, nested sums and MZV identity checks."""


def _unary(name, fn, help_text):
    @main.command(name, help=help_text)
    @click.argument("alpha", type=MI)
    def cmd(alpha):
        result = _domain(fn, alpha)
        if isinstance(result, tuple):
            click.echo(mi.format_multi_index(result))
        else:
            click.echo(mi.format_combo(result))
    return cmd


_unary("dual", mi.dual, "Dual multi-index.")
_unary("reverse", mi.reverse, "Reversed multi-index.")
_unary("backprime", mi.backprime, "Reverse of the dual.")
_unary("u", mi.refine_sum, "Sum of all refinements.")
_unary("d", mi.coarsen_sum, "Sum of all coarsenings.")
_unary("dinv", mi.coarsen_inverse, "Inverse of d on the multi-index.")


@main.command(help="Harmonic (stuffle) product.")
@click.argument("a", type=MI)
@click.argument("b", type=MI)
def stuffle(a, b):
    click.echo(mi.format_combo(mi.stuffle(a, b)))


@main.command(help="Stuffle with the first parts merged.")
@click.argument("a", type=MI)
@click.argument("b", type=MI)
def circledast(a, b):
    click.echo(mi.format_combo(_domain(mi.circledast, a, b)))


@main.command(help="Exact multiple harmonic sum S_alpha(n).")
@click.argument("alpha", type=MI)
@click.argument("n", type=click.IntRange(0))
def harmonic(alpha, n):
    click.echo(mi.format_rational(multi_harmonic(alpha, n)))


@main.command(context_settings=NUMERIC, help="Newton series F_alpha(z).")
@click.argument("alpha", type=MI)
@click.argument("z", type=COMPLEX)
@click.option("--terms", "-N", type=click.IntRange(16), default=DEFAULT_TERMS, show_default=True)
@json_flag
def newton(alpha, z, terms, as_json):
    _echo_estimate(_domain(newton_eval, alpha, z, terms), as_json)


@main.command(context_settings=NUMERIC, help="Nested series G_alpha(z).")
@click.argument("alpha", type=MI)
@click.argument("z", type=COMPLEX)
@trunc_option
@json_flag
def gseries(alpha, z, trunc, as_json):
    _echo_estimate(_domain(g_eval, alpha, z, trunc), as_json)


@main.command(help="Multiple zeta value zeta(mu).")
@click.argument("mu", type=MI)
@trunc_option
@json_flag
def zeta(mu, trunc, as_json):
    _echo_estimate(_domain(zeta_eval, mu, trunc), as_json)


@main.command("zeta-alpha", help="zeta_alpha(mu) with the block comparator layout of alpha.")
@click.argument("alpha", type=MI)
@click.argument("mu", type=MI)
@trunc_option
@json_flag
def zeta_alpha(alpha, mu, trunc, as_json):
    _echo_estimate(_domain(zeta_alpha_eval, alpha, mu, trunc), as_json)


@main.command(help="Phi_n of a pattern matrix read from a JSON file.")
@click.argument("matrix", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("n", type=click.IntRange(0))
@trunc_option
@json_flag
def phi(matrix, n, trunc, as_json):
    try:
        C = PatternMatrix.from_json(matrix.read_text())
    except (ValueError, KeyError, TypeError) as exc:
        raise click.BadParameter(str(exc), param_hint="MATRIX")
    _echo_estimate(_domain(phi_eval, C, n, trunc), as_json)


# "eq435" is another name for "two-one"
CAMPAIGNS = ("interpolation", "theorem", "duality", "formula", "two-one", "eq435",
             "phi-difference")


@main.command(help="Run a verification campaign; exit 0 iff every case passes.")
@click.argument("kind", type=click.Choice(CAMPAIGNS))
@click.option("--max-weight", "-W", type=click.IntRange(1), default=None,
              help="Largest weight enumerated.")
@click.option("--max-n", type=click.IntRange(0), default=None, help="Largest n (interpolation).")
@click.option("--terms", "-N", type=click.IntRange(16), default=DEFAULT_TERMS, show_default=True)
@trunc_option
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--json", "json_path", default=None,
              help="Write the JSON report here ('-' for stdout).")
@click.option("--z", "zs", type=ComplexListType(), default=None,
              help="Comma-separated evaluation points (theorem).")
@click.option("--alpha", "alphas", type=MI, multiple=True,
              help="Restrict to these multi-indices (theorem, formula).")
@click.option("--k", "ks", type=IntListType(), default=None, help="Derivative orders (formula).")
@click.option("--threads", type=click.IntRange(1), default=1, show_default=True)
@click.option("--no-timing", is_flag=True, help="Zero the timing fields for reproducible JSON.")
def verify(kind, max_weight, max_n, terms, trunc, tol, json_path, zs, alphas, ks, threads,
           no_timing):
    report = _domain(_campaign, kind, max_weight, max_n, terms, trunc, tol, zs, alphas, ks,
                     threads)
    data = report.to_dict(timing=not no_timing)
    text = json.dumps(data, indent=2, sort_keys=True)
    if json_path == "-":
        click.echo(text)
    else:
        if json_path:
            Path(json_path).write_text(text + "\n")
        _echo_report(report)
    sys.exit(0 if report.all_pass else 1)


def _campaign(kind, max_weight, max_n, terms, trunc, tol, zs, alphas, ks, threads) -> Report:
    if kind == "interpolation":
        return check_interpolation(max_weight or 5, 25 if max_n is None else max_n, trunc,
                                   numeric_max_weight=min(max_weight or 5, 5), tol=tol,
                                   threads=threads)
    if kind == "theorem":
        return check_newton_vs_g_campaign(alphas or NEWTON_ALPHAS, zs or NEWTON_ZS,
                                           terms, trunc, tol, threads)
    if kind == "duality":
        return check_duality(max_weight or 4, trunc, tol, threads)
    if kind == "formula":
        if alphas:
            cases = []
            for a in alphas:
                for k in ks or (1, 2):
                    cases.extend(check_formula(a, k, trunc, tol).cases)
            return Report("formula", {"alphas": [mi.format_multi_index(a) for a in alphas],
                                      "k": list(ks or (1, 2)), "trunc": trunc, "tol": tol}, cases)
        return check_formula_campaign(max_weight or 3, ks or (1, 2), trunc, tol, threads=threads)
    if kind in ("two-one", "eq435"):
        return check_two_one(max_weight or 4, trunc, tol, threads)
    return check_phi_difference(M=trunc, tol=tol, threads=threads)


def _echo_report(report: Report):
    for c in report.cases:
        mark = "PASS" if c.passed else "FAIL"
        aux = " ".join(f"{k}={v}" for k, v in c.aux.items() if not isinstance(v, (dict, list)))
        click.echo(f"{mark}  {c.alpha:<16} {aux:<40} |diff|={c.abs_diff:.3g}")
    n_fail = len(report.failures())
    click.echo(f"{report.command}: {len(report.cases) - n_fail}/{len(report.cases)} passed")


if __name__ == "__main__":
    main()
