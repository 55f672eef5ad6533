"""Exact majorization and catalytic trumping checks.

Entries may be strings ("0.3045", "3/8", "sqrt(0.4)" for amplitudes), ints,
fractions.Fraction, or floats. Floats are read through their shortest repr, so
0.3045 means exactly 3045/10000.
"""

import json
from fractions import Fraction

from . import _catamaj
from ._catamaj import REPORT_SCHEMA, CatamajError

__all__ = [
    "REPORT_SCHEMA",
    "CatamajError",
    "check_coherent_trumping",
    "check_trumping",
    "majorizes",
    "renyi_entropy",
    "run",
    "search_catalyst",
    "verify_catalyst",
]


def _entry(v):
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        raise TypeError("boolean is not a probability")
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    raise TypeError(f"unsupported entry type {type(v).__name__}")


def _vec(values):
    return [_entry(v) for v in values]


def majorizes(y, x, normalize=False):
    """True when x ≺ y."""
    return _catamaj.majorizes(_vec(y), _vec(x), normalize)


def renyi_entropy(x, p):
    """Rényi entropy in bits; float("-inf") where it diverges."""
    return float(_catamaj.renyi_entropy(_vec(x), _entry(p)))


def check_trumping(x, y, normalize=False, degree_cap=4096, oracle=True, summary=True):
    """Report dict for x ≺_T y, same layout as the CLI's verdict body."""
    return json.loads(_catamaj.check_trumping(_vec(x), _vec(y), normalize, degree_cap, oracle, summary))


def check_coherent_trumping(psi, phi, degree_cap=4096, summary=True):
    return json.loads(_catamaj.check_coherent_trumping(_vec(psi), _vec(phi), degree_cap, summary))


def verify_catalyst(x, y, catalyst, normalize=False):
    """Exact check of x⊗c ≺ y⊗c."""
    return _catamaj.verify_catalyst(_vec(x), _vec(y), _vec(catalyst), normalize)


def search_catalyst(x, y, dim, resolution="0.01", normalize=False, threads=1):
    return json.loads(_catamaj.search_catalyst(_vec(x), _vec(y), dim, _entry(resolution), normalize, threads))


def run(args, problem=None):
    """Runs a CLI subcommand. `problem` may be a dict or JSON text.

    Returns (exit_code, stdout, stderr).
    """
    if isinstance(problem, dict):
        problem = json.dumps(problem)
    return _catamaj.run(list(args), problem or "")
