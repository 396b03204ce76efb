"""Exact multiplicities, volumes and valuations of graded families of monomial ideals."""

import json
from fractions import Fraction

from . import _core
from ._core import InputError, registry_ids

__all__ = [
    "InputError",
    "colength",
    "family_report",
    "mixed_multiplicities",
    "multiplicity",
    "registry_ids",
    "reproduce",
    "run_cli",
    "unload",
]


def _frac(pair):
    num, den = pair
    return Fraction(int(num), int(den))


def multiplicity(vars, gens, quotient=()):
    """e(I) for the monomial ideal generated by exponent vectors `gens`."""
    return _frac(_core.multiplicity(vars, [list(g) for g in gens], [list(q) for q in quotient]))


def colength(vars, gens, quotient=()):
    return int(_core.colength(vars, [list(g) for g in gens], [list(q) for q in quotient]))


def mixed_multiplicities(vars, ideals):
    """Mixed multiplicities keyed by the exponent tuple (d_1, ..., d_r)."""
    return {tuple(a): _frac(v) for a, v in _core.mixed_multiplicities(vars, [[list(g) for g in I] for I in ideals])}


def family_report(text, nmax=64, volume=False):
    """Convergence report for a family description, as a dict."""
    return json.loads(_core.family_report(text, nmax, volume))


def unload(size, prox, targets):
    """Minimal antinef divisor above the targets: (values, multiplicities, colength, multiplicity)."""
    v, m, length, e = _core.unload(size, [tuple(p) for p in prox], [str(t) for t in targets])
    return list(v), list(m), int(length), int(e)


def reproduce(example):
    return json.loads(_core.reproduce(example))


def run_cli(*args):
    """Runs the command-line tool in-process: (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
