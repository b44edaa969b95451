"""Kubota-Leopoldt p-adic L-functions, Iwasawa data and cohomology predictions.

Structured results are returned as plain dictionaries decoded from the
library's JSON output; exact rationals come back as ``fractions.Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from . import _iwalab
from ._iwalab import IwalabError, suite_names

__all__ = [
    "IwalabError",
    "bernoulli",
    "cli",
    "l_star",
    "lp_value",
    "section6",
    "suite_names",
    "verify",
    "weierstrass",
]


def bernoulli(n: int) -> Fraction:
    return Fraction(_iwalab.bernoulli(n))


def l_star(m: int, chi: str, primes: Sequence[int] = ()) -> dict[str, Any]:
    return json.loads(_iwalab.l_star(m, chi, list(primes)))


def lp_value(chi: str, p: int, s: int | str | Fraction, prec: int = 20, primes: Sequence[int] = ()) -> dict[str, Any]:
    return json.loads(_iwalab.lp_value(chi, p, str(s), prec, list(primes)))


def weierstrass(p: int, coeffs: Sequence[int | str], prec: int = 20, field: str = "Qp") -> dict[str, Any]:
    return json.loads(_iwalab.weierstrass(p, [str(c) for c in coeffs], prec, field))


def section6(path: str, prec: int = 20) -> dict[str, Any]:
    return json.loads(_iwalab.section6(str(path), prec))


def verify(suite: str, primes: Sequence[int] = (), count: int = 0, seed: int = 7) -> dict[str, Any]:
    return json.loads(_iwalab.verify(suite, list(primes), count, seed))


def cli(*args: str) -> tuple[int, str, str]:
    """Runs the command line in-process and returns (exit code, stdout, stderr)."""
    return _iwalab.cli(list(args))
