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

"""Superlative frame toolkit: notation, detection, corpus tools and metrics."""

from ._core import (
    FrameSyntaxError,
    beam_entropy,
    canonical_frame,
    classify_cs,
    cohens_kappa,
    corpus_stats,
    detect,
    exact_match,
    frames_equivalent,
    is_valid_frame,
    load_corpus,
    parse_frame,
    role_arg_accuracy,
    rouge1,
    segment,
    split_ids,
    token_iou,
)

__all__ = [
    "FrameSyntaxError",
    "beam_entropy",
    "canonical_frame",
    "classify_cs",
    "cohens_kappa",
    "corpus_stats",
    "detect",
    "exact_match",
    "frames_equivalent",
    "is_valid_frame",
    "load_corpus",
    "parse_frame",
    "role_arg_accuracy",
    "rouge1",
    "segment",
    "split_ids",
    "token_iou",
]
