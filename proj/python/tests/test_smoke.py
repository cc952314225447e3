# Copyright 2026 The SuperSem Toolkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
from pathlib import Path

import pytest

import supersem

DATA = Path(__file__).resolve().parents[2] / "data"
SAMPLE = str(DATA / "sample" / "sample_corpus.jsonl")


def test_parse_and_canonicalize():
    e = supersem.parse_frame("catch(x, agent=Tom,  THEME=fish)")
    assert e == {"kind": "event", "predicate": "CATCH", "args": [("AGENT", "Tom"), ("THEME", "fish")]}
    assert supersem.canonical_frame("catch(x, agent=Tom,  THEME=fish)") == "CATCH(e, AGENT=Tom, THEME=fish)"
    assert supersem.parse_frame("river LOCATION=Africa")["head"] == "river"
    assert supersem.frames_equivalent("GO(e, A=x, B=y)", "GO(e, B=y, A=x)")


def test_syntax_errors_raise():
    assert not supersem.is_valid_frame("PAY(e, AGENT=x")
    with pytest.raises(supersem.FrameSyntaxError):
        supersem.parse_frame("PAY(e, AGENT=x")
    with pytest.raises(ValueError):
        supersem.canonical_frame("=river")


def test_classifier():
    assert supersem.classify_cs("PUT(e, AGENT=Tom, DESTINATION=table)") == "RelativeSC_Eventive"
    assert supersem.classify_cs("plants") == "PropertySC"
    assert supersem.classify_cs("BE_ANGRY(e, AGENT=party)") == "SubjectBasedSC"


def test_detector():
    text = "He is the tallest. There were at least 5 people."
    cands = supersem.detect(text)
    assert [c["surface"] for c in cands] == ["tallest", "least"]
    assert not cands[0]["filtered"]
    assert cands[1]["filtered"] and cands[1]["reason"] == "proportional-quantifier"
    for c in cands:
        assert text[c["start"]:c["end"]] == c["surface"]
    assert supersem.segment("A. B? C!") == [(0, 2), (3, 5), (6, 8)]


def test_metrics():
    assert supersem.exact_match("popularity", "Popularity ") == 1
    assert supersem.token_iou("the largest fish", "largest fish") == pytest.approx(2 / 3)
    assert supersem.rouge1("the largest fish in the lake", "largest fish") == pytest.approx(0.5)
    assert supersem.role_arg_accuracy("USE(e, AGENT=psychologists)", "USE(e, AGENT=the psychologists)") == 1.0
    assert supersem.cohens_kappa(["a", "b", "a", "b"], ["b", "a", "b", "a"]) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        supersem.cohens_kappa(["a"], [])


def test_entropy():
    beam = ["plants", "plants", "PUT(e, AGENT=Tom)", "PUT(e, AGENT=Tom)", "BE_ANGRY(e, AGENT=x)"]
    assert supersem.beam_entropy(beam) == pytest.approx(1.0549, abs=1e-3)
    four = ["plants", "plant OF=x", "PUT(e, AGENT=Tom)", "BE_ANGRY(e, AGENT=x)"]
    assert supersem.beam_entropy(four, base="bits") == pytest.approx(2.0)
    assert supersem.beam_entropy(four) == pytest.approx(math.log(4))
    with pytest.raises(ValueError):
        supersem.beam_entropy([])


def test_corpus_roundtrip_and_stats():
    instances, issues = supersem.load_corpus(SAMPLE, strict=True)
    assert issues == []
    assert len(instances) >= 40
    stats = supersem.corpus_stats(SAMPLE)
    total = stats["total"]
    assert total["superlatives"] + total["non_superlatives"] == len(instances)
    split = supersem.split_ids(SAMPLE, seed=42)
    ids = split["train"] + split["dev"] + split["test"]
    assert sorted(ids) == sorted(i["id"] for i in instances)
    assert supersem.split_ids(SAMPLE, seed=42) == split
    with pytest.raises(ValueError):
        supersem.load_corpus(str(DATA / "missing.jsonl"))
