# SPDX-License-Identifier: Apache-2.0
#
# Copyright 2026 The nowhereq Authors
"""Python access to the nowhereq core.

Rationals go in as ``int``, ``str`` ("3/7") or ``fractions.Fraction`` and come
back as strings inside plain ``dict`` documents. Truncation depths and
precision are passed as keyword arguments using the config-file key names
(``J``, ``L``, ``D``, ``m``, ``Jg``, ``p``, ``precision``, ``target_width``, ...).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Union

from . import _core
from ._core import BudgetExhausted, DomainError, seq_locate, seq_value

Rational = Union[int, str, Fraction]

__all__ = [
    "BudgetExhausted",
    "DomainError",
    "a_set",
    "cantor_stage",
    "certify_divergence",
    "certify_membership",
    "isometry_check",
    "lemma_chain",
    "left_tail_measure",
    "projection_check",
    "rat",
    "replay_divergence",
    "seq_locate",
    "seq_value",
    "t_n",
]


def _r(x: Rational) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _opts(kw: dict) -> dict:
    return {k: _r(v) for k, v in kw.items()}


def rat(s: str) -> Fraction:
    """Reads a rational string from a document."""
    return Fraction(_core.parse_rat(s))


def t_n(n: int) -> dict:
    return json.loads(_core.t_n(n))


def cantor_stage(n: int, max_listed: int = 4096) -> dict:
    return json.loads(_core.cantor_stage(n, max_listed))


def left_tail_measure(n: int, m: int) -> Fraction:
    return Fraction(_core.left_tail_measure(n, m))


def a_set(n: int, depth: int, stage: int) -> dict:
    return json.loads(_core.a_set(n, depth, stage))


def lemma_chain(p: Rational, q: Rational, n_max: int, j0: int | None = None) -> dict:
    return json.loads(_core.lemma_chain(_r(p), _r(q), n_max, j0))


def certify_divergence(k: int, interval: tuple, q: Rational, target: Rational, **options) -> dict:
    """``q`` may be ``"inf"``."""
    a, b = interval
    return json.loads(_core.certify_divergence(k, _r(a), _r(b), _r(q), _r(target), _opts(options)))


def replay_divergence(certificate: dict | str) -> dict:
    doc = certificate if isinstance(certificate, str) else json.dumps(certificate)
    return json.loads(_core.replay_divergence(doc))


def certify_membership(k: int, **options) -> dict:
    return json.loads(_core.certify_membership(k, _opts(options)))


def isometry_check(a: Iterable[Rational], **options) -> dict:
    return json.loads(_core.isometry_check([_r(x) for x in a], _opts(options)))


def projection_check(K: int, steps: int = 0, seed: int = 20260101, **options) -> dict:
    return json.loads(_core.projection_check(K, steps, seed, _opts(options)))
