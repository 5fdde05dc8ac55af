"""Stunted sawtooth maps: periods, entropy, kneading, renormalization.

Rationals are passed as strings or ``fractions.Fraction`` and come back as
``Fraction``. Certificates are returned as dictionaries.
"""

import json
from fractions import Fraction

from . import _stunted
from ._stunted import BudgetExceeded, ConstraintViolation, DomainError, Error, PreconditionError

__all__ = [
    "BudgetExceeded",
    "ConstraintViolation",
    "DomainError",
    "Error",
    "PreconditionError",
    "bisect",
    "classify",
    "describe",
    "entropy",
    "evaluate",
    "kneading",
    "period_set",
    "tower",
]


def _rat(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _rats(xs):
    if isinstance(xs, (str, int, Fraction)):
        xs = [xs]
    return [_rat(x) for x in xs]


def describe(shape, w):
    return json.loads(_stunted.describe(shape, _rats(w)))


def evaluate(shape, w, x):
    return Fraction(_stunted.evaluate(shape, _rats(w), _rat(x)))


def period_set(shape, w, bound):
    return json.loads(_stunted.period_set(shape, _rats(w), bound))


def entropy(shape, w, method="markov", n_max=12):
    return json.loads(_stunted.entropy(shape, _rats(w), method, n_max))


def kneading(shape, w, depth):
    return json.loads(_stunted.kneading(shape, _rats(w), depth))


def tower(shape, w, depth):
    return json.loads(_stunted.tower(shape, _rats(w), depth))


def classify(shape, w, max_period_exp=8, tower_depth=6):
    return json.loads(_stunted.classify(shape, _rats(w), max_period_exp, tower_depth))


def bisect(shape, lo, hi, tol):
    return json.loads(_stunted.bisect(shape, _rats(lo), _rats(hi), _rat(tol)))
