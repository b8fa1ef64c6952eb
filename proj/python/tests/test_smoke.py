# SPDX-License-Identifier: Apache-2.0
#
# Copyright 2026 The nowhereq Authors

import json
import os
import pathlib
import shutil
import subprocess
from fractions import Fraction

import pytest

import nowhereq as nq

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMA = json.loads((ROOT / "docs" / "certificate.schema.json").read_text())
FAST = {"precision": 64, "J": 10, "L": 10, "D": 4, "m": 10, "Jg": 10, "target_width": "1/1000"}


def validate(doc):
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.Draft202012Validator(SCHEMA).validate(doc)


def test_exact_values():
    assert nq.t_n(3)["t_n"] == "5/32"
    assert nq.t_n(3)["stated_bound_holds"] is False
    assert nq.cantor_stage(5)["measure"] == "17/32"
    assert nq.left_tail_measure(2, 3) == Fraction(5, 16)
    assert nq.seq_value(3, 2) == 12
    assert nq.seq_locate(12) == (3, 2)
    doc = nq.a_set(2, 2, 4)
    validate(doc)
    hulls = sorted(tuple(nq.rat(x) for x in c["hull"]) for c in doc["components"])
    assert hulls == [
        (Fraction(5, 32), Fraction(7, 32)),
        (Fraction(3, 8), Fraction(5, 8)),
        (Fraction(25, 32), Fraction(27, 32)),
    ]


def test_lemma_chain():
    doc = nq.lemma_chain(1, 2, 5)
    validate(doc)
    assert doc["j0"] == 2 and doc["s"] == "4/3"
    assert [r["stated_step1_holds"] for r in doc["rows"]] == [True, True, False, False, False]
    with pytest.raises(nq.DomainError, match="j0 is 2"):
        nq.lemma_chain(1, 2, 5, j0=1)


def test_divergence_and_replay():
    cert = nq.certify_divergence(1, (Fraction(1, 3), "1/2"), 2, 10000)
    validate(cert)
    assert cert["status"] == "holds"
    assert cert["witness"]["hull"] == ["53/128", "55/128"]
    assert nq.replay_divergence(cert) == cert
    with pytest.raises(nq.DomainError):
        nq.certify_divergence(1, (0, 1), 1, 10)


def test_membership_isometry_projection():
    mem = nq.certify_membership(1, **FAST)
    validate(mem)
    assert mem["contains_one"] == "holds"
    iso = nq.isometry_check([1, "-1/2", Fraction(1, 3)], **FAST)
    validate(iso)
    assert iso["symbolic_identity"] is True
    proj = nq.projection_check(2, steps=2, **FAST)
    validate(proj)
    assert proj["off_diagonal_zero"] is True
    with pytest.raises(nq.DomainError):
        nq.certify_membership(1, J=0)


def _cli():
    path = os.environ.get("NOWHEREQ_CLI") or shutil.which("nowhereq")
    if path is None:
        built = ROOT / "build" / "tools" / "nowhereq"
        path = str(built) if built.exists() else None
    if path is None:
        pytest.skip("nowhereq executable not found")
    return path


@pytest.mark.parametrize(
    "args",
    [
        ["cantor", "stage", "4"],
        ["cantor", "tn", "7"],
        ["lemma-chain", "--p", "1", "--q", "2", "--nmax", "6"],
        ["certify", "divergence", "--g", "2", "--interval", "0,1", "--q", "inf", "--target", "50"],
        ["isometry", "--coeffs", "1,2", "--precision", "64", "--J", "8", "--target-width", "1/100"],
    ],
)
def test_cli_output_matches_schema(args):
    out = subprocess.run([_cli(), *args], capture_output=True, text=True, check=False)
    assert out.returncode in (0, 2), out.stderr
    validate(json.loads(out.stdout))
