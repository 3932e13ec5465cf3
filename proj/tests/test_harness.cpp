// Copyright 2026 The textalign Authors
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

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "align/benchmark.hpp"
#include "align/dataset.hpp"
#include "align/error.hpp"

using namespace align;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("textalign_harness_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

std::string strip_duration(std::string report) {
  auto parsed = nlohmann::ordered_json::parse(report);
  parsed.erase("duration_ms");
  return parsed.dump(2);
}

}  // namespace

TEST_CASE("load_dataset validates nli rows") {
  std::string good = write_file(
      "good_nli.jsonl",
      R"({"premise":"a b","hypothesis":"a","label":"entail"})" "\n"
      R"({"premise":"a b","hypothesis":"c","label":"neutral"})" "\n"
      R"({"premise":"a b","hypothesis":"z","label":"contradict"})" "\n");
  auto rows = std::get<std::vector<NliRow>>(
      load_dataset(good, DatasetKind::kNli));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].id == "1");
  CHECK(rows[2].label == "contradict");

  std::string missing = write_file(
      "bad_nli.jsonl", R"({"premise":"a b","label":"entail"})" "\n");
  try {
    load_dataset(missing, DatasetKind::kNli);
    FAIL("expected SCHEMA_VIOLATION");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchemaViolation);
    CHECK(std::string(e.what()).find("hypothesis") != std::string::npos);
    CHECK(std::string(e.what()).find(":1") != std::string::npos);
  }

  std::string garbled = write_file("garbled.jsonl", "{not json\n");
  try {
    load_dataset(garbled, DatasetKind::kNli);
    FAIL("expected PARSE_ERROR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
  }

  std::string empty = write_file("empty.jsonl", "\n\n");
  try {
    load_dataset(empty, DatasetKind::kNli);
    FAIL("expected EMPTY");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmpty);
  }
}

TEST_CASE("load_dataset validates qa answerability consistency") {
  std::string bad = write_file(
      "bad_qa.jsonl",
      R"({"context":"c","question":"q","answers":[],"answerable":true})" "\n");
  CHECK_THROWS_AS(load_dataset(bad, DatasetKind::kQa), Error);

  std::string good = write_file(
      "good_qa.jsonl",
      R"({"context":"c d e","question":"q","answers":["c"],"answerable":true,"qa_prediction":"c"})" "\n"
      R"({"context":"c d e","question":"q","answers":[],"answerable":false,"qa_prediction":"x","id":"u7"})" "\n");
  auto rows = std::get<std::vector<QaSample>>(
      load_dataset(good, DatasetKind::kQa));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].id == "u7");
  CHECK(!rows[1].answerable);
}

TEST_CASE("adapt_dataset expands mcq and qa rows") {
  std::string mcq = write_file(
      "adapt_mcq.jsonl",
      R"({"context":"the sky is blue","question":"color?","choices":["blue","green","red"],"answer_index":0})" "\n");
  auto mcq_rows = load_dataset(mcq, DatasetKind::kMcq);
  auto adapted = adapt_dataset(mcq_rows, DatasetKind::kMcq);
  CHECK(adapted.size() == 3);
  CHECK(adapted[0].pair.x2 == "color? blue");

  std::string qa = write_file(
      "adapt_qa.jsonl",
      R"({"context":"paris is in france","question":"where is paris?","answers":["france","in france"],"answerable":true,"qa_prediction":"france"})" "\n");
  auto qa_rows = load_dataset(qa, DatasetKind::kQa);
  auto qa_adapted = adapt_dataset(qa_rows, DatasetKind::kQa);
  // Two gold answers plus the prediction.
  CHECK(qa_adapted.size() == 3);
  int aligned = 0;
  for (const auto& ex : qa_adapted)
    if (std::get<BinaryTarget>(ex.target).label == LabelBin::kAligned)
      ++aligned;
  CHECK(aligned == 3);  // prediction matches a gold answer
}

TEST_CASE("run_benchmark nli accuracy with a crafted lexical fixture") {
  // Lexical argmax of p3 = (r, 0, 1-r): predicts ALIGNED when r > 0.5,
  // NEUTRAL when r < 0.5. Three of four golds match that rule.
  std::string nli = write_file(
      "bench_nli.jsonl",
      R"({"premise":"a b c d","hypothesis":"a b c","label":"entail"})" "\n"
      R"({"premise":"a b c d","hypothesis":"x y z","label":"neutral"})" "\n"
      R"({"premise":"a b c d","hypothesis":"a x y z","label":"neutral"})" "\n"
      R"({"premise":"a b c d","hypothesis":"a b x","label":"neutral"})" "\n");
  RunConfig config;
  config.task = DatasetKind::kNli;
  config.input_path = nli;
  EvalReport report = run_benchmark(config);
  REQUIRE(report.metrics.size() == 1);
  CHECK(report.metrics[0].first == "accuracy");
  CHECK(report.metrics[0].second == 0.75);
  CHECK(report.example_count == 4);
}

TEST_CASE("run_benchmark geneval self-correlation is perfect") {
  // Human scores equal to the lexical scores by construction.
  std::string geneval = write_file(
      "bench_geneval.jsonl",
      R"({"context":"a b c d","output":"a b c d","human_score":1.0})" "\n"
      R"({"context":"a b c d","output":"a b x y","human_score":0.5})" "\n"
      R"({"context":"a b c d","output":"a x y z","human_score":0.25})" "\n"
      R"({"context":"a b c d","output":"x y z w","human_score":0.0})" "\n");
  RunConfig config;
  config.task = DatasetKind::kGeneval;
  config.input_path = geneval;
  EvalReport report = run_benchmark(config);
  CHECK(report.metrics[0].first == "pearson");
  CHECK(report.metrics[0].second == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.metrics[1].second == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.metrics[2].second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_benchmark qa with threshold 1.0 never abstains") {
  std::string qa = write_file(
      "bench_qa.jsonl",
      R"({"context":"the tower is tall","question":"what is tall?","answers":["the tower"],"answerable":true,"qa_prediction":"the tower"})" "\n"
      R"({"context":"the tower is tall","question":"who built it?","answers":[],"answerable":false,"qa_prediction":"qqq zzz"})" "\n");
  RunConfig config;
  config.task = DatasetKind::kQa;
  config.input_path = qa;
  config.threshold = 1.0;
  EvalReport report = run_benchmark(config);

  // Sample 1 passes through correct -> EM 1; sample 2 passes through a wrong
  // guess on an unanswerable question -> EM 0. AUC separates them perfectly.
  REQUIRE(report.metrics.size() == 3);
  CHECK(report.metrics[0].first == "em");
  CHECK(report.metrics[0].second == 0.5);
  CHECK(report.metrics[1].first == "f1");
  CHECK(report.metrics[1].second == 0.5);
  CHECK(report.metrics[2].first == "auc");
  CHECK(report.metrics[2].second == 1.0);
}

TEST_CASE("run_benchmark sts uses the regression head") {
  std::string sts = write_file(
      "bench_sts.jsonl",
      R"({"sentence1":"a b c d","sentence2":"a b c d","score":5.0,"scale_min":0.0,"scale_max":5.0})" "\n"
      R"({"sentence1":"a b c d","sentence2":"a b x y","score":2.5,"scale_min":0.0,"scale_max":5.0})" "\n"
      R"({"sentence1":"a b c d","sentence2":"x y z q","score":0.0,"scale_min":0.0,"scale_max":5.0})" "\n");
  RunConfig config;
  config.task = DatasetKind::kSts;
  config.input_path = sts;
  EvalReport report = run_benchmark(config);
  CHECK(report.metrics[0].second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_benchmark reports are byte-identical minus duration") {
  std::string pair = write_file(
      "bench_pair.jsonl",
      R"({"x1":"a b c d e","x2":"a b c","positive":true,"task":"paraphrase"})" "\n"
      R"({"x1":"a b c d e","x2":"x y z","positive":false,"task":"ir"})" "\n"
      R"({"x1":"a b c d e","x2":"a b x y","positive":true,"task":"summarization"})" "\n");
  RunConfig config;
  config.task = DatasetKind::kPair;
  config.input_path = pair;

  std::string first = strip_duration(report_to_json(run_benchmark(config)));
  std::string second = strip_duration(report_to_json(run_benchmark(config)));
  CHECK(first == second);

  RunConfig parallel = config;
  parallel.jobs = 8;
  std::string threaded = strip_duration(report_to_json(run_benchmark(parallel)));
  CHECK(first == threaded);
}

TEST_CASE("run_benchmark aborts with the failing example id") {
  // Whitespace-only hypothesis survives the loader's non-empty check but
  // tokenizes to nothing, so scoring fails; the error must carry the id.
  std::string nli = write_file(
      "bench_half_bad.jsonl",
      R"({"premise":"a b","hypothesis":"a","label":"entail"})" "\n"
      R"({"premise":"a b","hypothesis":"   ","label":"entail","id":"bad-row"})" "\n");
  RunConfig config;
  config.task = DatasetKind::kNli;
  config.input_path = nli;
  for (std::size_t jobs : {std::size_t{1}, std::size_t{4}}) {
    config.jobs = jobs;
    try {
      run_benchmark(config);
      FAIL("expected EMPTY_TEXT");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmptyText);
      CHECK(std::string(e.what()).find("bad-row") != std::string::npos);
    }
  }
}

TEST_CASE("run_benchmark mcq and coref solver accuracy") {
  std::string mcq = write_file(
      "bench_mcq.jsonl",
      R"({"context":"the sky is blue","question":"what color is the sky?","choices":["blue is the sky color","green is the sky color"],"answer_index":0})" "\n"
      R"({"context":"the cat sat","question":"who sat?","choices":["the cat","a zebra"],"answer_index":0})" "\n");
  RunConfig config;
  config.task = DatasetKind::kMcq;
  config.input_path = mcq;
  EvalReport report = run_benchmark(config);
  CHECK(report.metrics[0].second == 1.0);

  std::string coref = write_file(
      "bench_coref.jsonl",
      R"({"context":"Kirby said she left","pronoun_start":11,"pronoun_end":14,"candidates":["Kirby","Kentucky"],"answer_index":0})" "\n");
  RunConfig coref_config;
  coref_config.task = DatasetKind::kCoref;
  coref_config.input_path = coref;
  EvalReport coref_report = run_benchmark(coref_config);
  CHECK(coref_report.metrics[0].second == 1.0);
}

TEST_CASE("run_config validation") {
  RunConfig config;
  CHECK_THROWS_AS(config.validate(), Error);  // no input path

  config.input_path = "x.jsonl";
  config.threshold = 1.5;
  CHECK_THROWS_AS(config.validate(), Error);

  config.threshold = 0.5;
  config.jobs = 0;
  CHECK_THROWS_AS(config.validate(), Error);

  config.jobs = 1;
  config.scorer.kind = ScorerSpec::Kind::kModel;
  config.scorer.model_path = "m.onnx";
  config.scorer.tokenizer_path = "t.json";
  config.scorer.max_tokens = 8;  // below the minimum model budget
  CHECK_THROWS_AS(config.validate(), Error);
}
