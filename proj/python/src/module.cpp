// Copyright 2026 The SuperSem Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Structured results cross the boundary as plain dicts and
// lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "supersem/analysis.hpp"
#include "supersem/corpus.hpp"
#include "supersem/detector.hpp"
#include "supersem/frame.hpp"
#include "supersem/metrics.hpp"

namespace py = pybind11;
using namespace supersem;

namespace {

py::object to_python(const nlohmann::ordered_json& j) {
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::null: return py::none();
    case nlohmann::ordered_json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::ordered_json::value_t::number_integer: return py::int_(j.get<int64_t>());
    case nlohmann::ordered_json::value_t::number_unsigned: return py::int_(j.get<uint64_t>());
    case nlohmann::ordered_json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::ordered_json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::ordered_json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_python(x));
      return out;
    }
    case nlohmann::ordered_json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
    default: return py::none();
  }
}

py::dict set_expr_dict(const SetExpr& e) {
  py::dict d;
  py::list args;
  for (const auto& a : e.arguments()) args.append(py::make_tuple(a.role, a.value));
  if (e.is_eventive()) {
    d["kind"] = "event";
    d["predicate"] = e.event().predicate;
  } else {
    d["kind"] = "nominal";
    d["head"] = e.noun().head;
  }
  d["args"] = args;
  return d;
}

eval::Normalization normalization(const std::string& name) {
  const auto n = eval::parse_normalization(name);
  if (!n) throw py::value_error("normalization must be default, casefold or verbatim");
  return *n;
}

analysis::LogBase log_base(const std::string& name) {
  if (name == "nats") return analysis::LogBase::kNatural;
  if (name == "bits") return analysis::LogBase::kBits;
  throw py::value_error("base must be 'nats' or 'bits'");
}

LoadResult load(const std::string& path, bool strict) {
  if (!std::ifstream(path)) throw py::value_error("cannot open " + path);
  return load_corpus(std::filesystem::path(path), LoadOptions{strict, nullptr});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Superlative frame parsing, detection, corpus statistics and metrics.";
  // std::invalid_argument maps to ValueError by default.

  py::register_exception<FrameSyntaxError>(m, "FrameSyntaxError", PyExc_ValueError);

  m.def("parse_frame", [](const std::string& s) { return set_expr_dict(parse_frame_notation(s)); },
        py::arg("text"), "Parse frame notation into {kind, predicate|head, args}.");
  m.def("canonical_frame", [](const std::string& s) { return serialize_frame(parse_frame_notation(s)); },
        py::arg("text"), "Canonical serialization of frame notation.");
  m.def("is_valid_frame", [](const std::string& s) { return try_parse_frame_notation(s).has_value(); },
        py::arg("text"));
  m.def("frames_equivalent",
        [](const std::string& a, const std::string& b) {
          return equivalent(parse_frame_notation(a), parse_frame_notation(b));
        },
        py::arg("a"), py::arg("b"), "Structural equality with order-free arguments.");
  m.def("classify_cs", [](const std::string& cs) { return std::string(to_string(analysis::classify_cs_string(cs))); },
        py::arg("cs"), "Semantic type of a comparison-set string.");

  m.def("detect",
        [](const std::string& text, const std::string& doc_id) {
          py::list out;
          for (const auto& c : Detector().detect_document(Document{doc_id, text, ""})) {
            out.append(to_python(candidate_to_json(c)));
          }
          return out;
        },
        py::arg("text"), py::arg("doc_id") = "doc", "Superlative candidates with non-superlative flags.");
  m.def("segment",
        [](const std::string& text) {
          std::vector<std::pair<size_t, size_t>> out;
          for (const auto& s : Detector().segment(text)) out.emplace_back(s.start, s.end);
          return out;
        },
        py::arg("text"), "Sentence spans as (start, end) byte offsets.");

  m.def("exact_match",
        [](const std::string& g, const std::string& p, const std::string& norm) {
          return eval::exact_match(g, p, normalization(norm));
        },
        py::arg("gold"), py::arg("pred"), py::arg("normalization") = "default");
  m.def("token_iou", [](const std::string& g, const std::string& p) { return eval::token_iou(g, p); },
        py::arg("gold"), py::arg("pred"));
  m.def("rouge1",
        [](const std::string& g, const std::string& p, bool recall) {
          return eval::rouge1(g, p, recall ? eval::RougeMode::kRecall : eval::RougeMode::kF1);
        },
        py::arg("gold"), py::arg("pred"), py::arg("recall") = false);
  m.def("role_arg_accuracy",
        [](const std::string& g, const std::string& p, double threshold) {
          return eval::role_arg_iou_accuracy(parse_frame_notation(g), parse_frame_notation(p), threshold);
        },
        py::arg("gold"), py::arg("pred"), py::arg("threshold") = 0.5);
  m.def("cohens_kappa",
        [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
          return eval::cohens_kappa(a, b);
        },
        py::arg("a"), py::arg("b"));

  m.def("beam_entropy",
        [](const std::vector<std::string>& hyps, const std::string& base, size_t top_n) {
          return analysis::beam_entropy({"", hyps}, log_base(base), top_n);
        },
        py::arg("hypotheses"), py::arg("base") = "nats", py::arg("top_n") = 0,
        "Entropy of the semantic-type distribution over a beam.");

  m.def("load_corpus",
        [](const std::string& path, bool strict) {
          const LoadResult r = load(path, strict);
          py::list instances, issues;
          for (const auto& inst : r.corpus) instances.append(to_python(instance_to_json(inst)));
          for (const auto& i : r.report.issues) {
            py::dict d;
            d["line"] = i.line;
            d["severity"] = std::string(to_string(i.severity));
            d["field"] = i.field;
            d["message"] = i.message;
            issues.append(d);
          }
          return py::make_tuple(instances, issues);
        },
        py::arg("path"), py::arg("strict") = false, "Returns (instances, issues).");
  m.def("corpus_stats",
        [](const std::string& path) { return to_python(stats_to_json(compute_stats(load(path, false).corpus))); },
        py::arg("path"));
  m.def("split_ids",
        [](const std::string& path, uint64_t seed, bool superlatives_only) {
          const CorpusSplit s = split_corpus(load(path, false).corpus, seed, {}, superlatives_only);
          py::dict out;
          auto ids = [](const Corpus& c) {
            std::vector<std::string> v;
            for (const auto& i : c) v.push_back(i.id);
            return v;
          };
          out["train"] = ids(s.train);
          out["dev"] = ids(s.dev);
          out["test"] = ids(s.test);
          return out;
        },
        py::arg("path"), py::arg("seed") = 42, py::arg("superlatives_only") = false);
}
