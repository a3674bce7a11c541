"""Finite-field toolkit for primitive-pair existence criteria.

Every function wraps the native core and returns plain dicts decoded from the
same JSON documents the ``primpair`` command-line tool emits.
"""
import json
import os

from . import _primpair as _core

__all__ = [
    "factor",
    "bound",
    "sieve",
    "tables",
    "classify",
    "search",
    "charsum",
    "default_modulus",
    "cli_path",
]

_DEFAULT_GUARD = 1 << 28


def factor(n):
    """Factor a nonnegative integer (int or decimal string)."""
    return json.loads(_core.factor_json(str(n)))


def bound(q, m):
    """Evaluate the base inequality for the pair (q, m)."""
    return json.loads(_core.bound_json(q, m))


def sieve(q, m, core=None):
    """Evaluate a sieve plan; ``core=None`` picks the best core size."""
    return json.loads(_core.sieve_json(q, m, -1 if core is None else core))


def tables(which=None):
    """Recompute the published sieve tables (1, 2, or both when None)."""
    return json.loads(_core.tables_json(0 if which is None else which))


def classify(q, m, guard=_DEFAULT_GUARD, workers=0):
    """Run the full decision pipeline for the pair (q, m)."""
    return json.loads(_core.classify_json(q, m, guard, workers))


def search(
    q,
    m,
    modulus="",
    coeffs="",
    beta="",
    include_inadmissible=False,
    workers=0,
    guard=_DEFAULT_GUARD,
):
    """Exhaustive witness search over F_{q^m} (optionally a single triple)."""
    return json.loads(
        _core.search_json(q, m, modulus, coeffs, beta, include_inadmissible, workers, guard)
    )


def charsum(q, m, full=False, modulus=""):
    """Run the character-sum property checks on F_{q^m}."""
    return json.loads(_core.charsum_json(q, m, full, modulus))


def default_modulus(p, degree):
    """Lexicographically smallest monic primitive polynomial, constant first."""
    return _core.default_modulus(p, degree)


def cli_path():
    """Path of the companion command-line binary, when the environment names one."""
    return os.environ.get("PRIMPAIR_CLI")
