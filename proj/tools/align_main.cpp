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

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "align/benchmark.hpp"
#include "align/contamination.hpp"
#include "align/dataset.hpp"
#include "align/error.hpp"
#include "align/metrics.hpp"
#include "align/model_scorer.hpp"
#include "align/verifier.hpp"

namespace {

using align::Error;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBackend = 3;

struct ScorerFlags {
  std::string scorer = "lexical";  // "lexical" or a model file path
  std::string tokenizer;
  std::size_t max_tokens = 512;

  align::ScorerSpec spec() const {
    align::ScorerSpec out;
    if (scorer == "lexical") {
      out.kind = align::ScorerSpec::Kind::kLexical;
      return out;
    }
    out.kind = align::ScorerSpec::Kind::kModel;
    out.model_path = scorer;
    out.tokenizer_path = tokenizer;
    out.max_tokens = max_tokens;
    return out;
  }
};

void add_scorer_flags(CLI::App* cmd, ScorerFlags* flags) {
  cmd->add_option("--scorer", flags->scorer,
                  "'lexical' or a path to an ONNX alignment checkpoint");
  cmd->add_option("--tokenizer", flags->tokenizer,
                  "tokenizer definition JSON (required with a model scorer)");
  cmd->add_option("--max-tokens", flags->max_tokens,
                  "model token budget per scored pair");
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file)
    throw Error(align::ErrorCode::kParseError, "cannot write to " + path);
  return file;
}

ordered_json score_to_json(const align::AlignmentScore& score) {
  return ordered_json{
      {"p3",
       {{"aligned", score.p3[0]},
        {"contradict", score.p3[1]},
        {"neutral", score.p3[2]}}},
      {"pbin", {{"aligned", score.pbin[0]}, {"not_aligned", score.pbin[1]}}},
      {"reg", score.reg}};
}

ordered_json target_to_json(const align::Target& target) {
  if (const auto* t3 = std::get_if<align::ThreeWayTarget>(&target))
    return ordered_json{{"kind", "3way"}, {"label", align::to_string(t3->label)}};
  if (const auto* tb = std::get_if<align::BinaryTarget>(&target))
    return ordered_json{{"kind", "binary"},
                        {"label", align::to_string(tb->label)}};
  const auto& tr = std::get<align::RegressionTarget>(target);
  return ordered_json{{"kind", "regression"}, {"value", tr.value}};
}

int run_score(const ScorerFlags& scorer_flags, const std::string& x1,
              const std::string& x2, bool aggregate, const std::string& head,
              const std::string& agg) {
  std::unique_ptr<align::PairScorer> scorer =
      align::make_scorer(scorer_flags.spec());
  if (aggregate) {
    align::Head h = align::head_from_string(head);
    align::AggregationMode mode = align::aggregation_mode_from_string(agg);
    double value = align::aggregate_align(*scorer, x1, x2, h, mode);
    ordered_json out{{"value", value}, {"head", head}, {"agg", agg}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  align::AlignmentScore score =
      align::score_pair(*scorer, align::TextPair{x1, x2});
  std::cout << score_to_json(score).dump(2) << "\n";
  return kExitOk;
}

int run_adapt(const std::string& task, const std::string& input,
              const std::string& output) {
  align::DatasetKind kind = align::dataset_kind_from_string(task);
  align::DatasetRows rows = align::load_dataset(input, kind);
  std::vector<align::AdaptedExample> examples = align::adapt_dataset(rows, kind);

  std::ofstream file;
  std::ostream& out = open_output(output, file);
  for (const align::AdaptedExample& example : examples) {
    ordered_json line{{"id", example.id},
                      {"task", align::to_string(example.task)},
                      {"x1", example.pair.x1},
                      {"x2", example.pair.x2},
                      {"target", target_to_json(example.target)}};
    out << line.dump() << "\n";
  }
  return kExitOk;
}

int run_eval(const align::RunConfig& config) {
  align::EvalReport report = align::run_benchmark(config);
  std::ofstream file;
  std::ostream& out = open_output(config.output_path, file);
  out << align::report_to_json(report);
  return kExitOk;
}

int run_verify(const ScorerFlags& scorer_flags, const std::string& dataset,
               std::optional<double> threshold, const std::string& tune_path,
               const std::string& agg, bool baseline,
               const std::string& predictions_path,
               const std::string& output_path, std::size_t jobs,
               std::uint64_t seed) {
  align::AggregationMode mode = align::aggregation_mode_from_string(agg);
  if (baseline && !tune_path.empty())
    throw Error(align::ErrorCode::kParseError,
                "--baseline and --tune cannot be combined");
  auto rows = std::get<std::vector<align::QaSample>>(
      align::load_dataset(dataset, align::DatasetKind::kQa));
  for (const align::QaSample& sample : rows) {
    sample.validate();
    if (!sample.qa_prediction || sample.qa_prediction->empty())
      throw Error(align::ErrorCode::kSchemaViolation,
                  "verify: sample " + sample.id + " has no qa_prediction");
  }

  std::unique_ptr<align::PairScorer> scorer;
  if (!baseline) scorer = align::make_scorer(scorer_flags.spec());

  align::VerifierConfig verifier;
  std::optional<double> dev_f1;
  if (!tune_path.empty()) {
    auto dev_rows = std::get<std::vector<align::QaSample>>(
        align::load_dataset(tune_path, align::DatasetKind::kQa));
    std::vector<align::DevPoint> dev(dev_rows.size());
    align::parallel_for(dev_rows.size(), jobs, [&](std::size_t i) {
      dev[i].sample = dev_rows[i];
      if (!dev_rows[i].qa_prediction || dev_rows[i].qa_prediction->empty())
        throw Error(align::ErrorCode::kSchemaViolation,
                    "verify --tune: sample " + dev_rows[i].id +
                        " has no qa_prediction");
      dev[i].p_unanswerable = align::unanswerable_prob(
          *scorer, dev_rows[i], *dev_rows[i].qa_prediction,
          align::Head::kBinAligned, mode);
    });
    align::ThresholdResult tuned = align::tune_threshold(dev);
    verifier.threshold = tuned.threshold;
    dev_f1 = tuned.f1;
  } else if (threshold) {
    verifier.threshold = *threshold;
  }

  std::vector<align::VerifiedPrediction> verdicts(rows.size());
  std::vector<double> em(rows.size()), f1(rows.size()), scores(rows.size());
  std::vector<int> labels(rows.size());
  align::parallel_for(rows.size(), jobs, [&](std::size_t i) {
    const align::QaSample& sample = rows[i];
    if (baseline) {
      verdicts[i] = align::VerifiedPrediction{
          *sample.qa_prediction,
          align::baseline_unanswerable_score(*sample.qa_prediction)};
    } else {
      verdicts[i] = align::verify_answer(*scorer, sample, *sample.qa_prediction,
                                         verifier, mode);
    }
    align::SquadScore squad = align::squad_scores(
        verdicts[i].answer, sample.gold_answers, verifier.sentinel);
    em[i] = squad.exact_match;
    f1[i] = squad.f1;
    scores[i] = verdicts[i].p_unanswerable;
    labels[i] = sample.answerable ? 0 : 1;
  });

  if (!predictions_path.empty()) {
    std::ofstream pred_file;
    std::ostream& pred_out = open_output(predictions_path, pred_file);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ordered_json line{{"id", rows[i].id},
                        {"answer", verdicts[i].answer},
                        {"p_unanswerable", verdicts[i].p_unanswerable}};
      pred_out << line.dump() << "\n";
    }
  }

  align::EvalReport report;
  report.dataset_id = dataset;
  report.task = "qa";
  report.example_count = rows.size();
  report.config.scorer = scorer_flags.spec();
  report.config.task = align::DatasetKind::kQa;
  report.config.input_path = dataset;
  report.config.agg = mode;
  report.config.seed = seed;
  report.config.threshold = verifier.threshold;

  double em_sum = 0.0, f1_sum = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    em_sum += em[i];
    f1_sum += f1[i];
  }
  report.metrics.emplace_back("em", em_sum / static_cast<double>(rows.size()));
  report.metrics.emplace_back("f1", f1_sum / static_cast<double>(rows.size()));
  bool has_pos = false, has_neg = false;
  for (int label : labels) (label ? has_pos : has_neg) = true;
  if (has_pos && has_neg)
    report.metrics.emplace_back("auc", align::roc_auc(scores, labels));
  if (dev_f1) report.metrics.emplace_back("dev_f1", *dev_f1);

  std::ofstream file;
  std::ostream& out = open_output(output_path, file);
  out << align::report_to_json(report);
  return kExitOk;
}

// Concatenates the top-level string fields (and string-array elements) of one
// JSONL row, in key order.
std::string row_text(const nlohmann::json& row) {
  std::string out;
  auto append = [&](const std::string& text) {
    if (!out.empty()) out += ' ';
    out += text;
  };
  for (const auto& [key, value] : row.items()) {
    (void)key;
    if (value.is_string()) {
      append(value.get<std::string>());
    } else if (value.is_array()) {
      for (const auto& item : value)
        if (item.is_string()) append(item.get<std::string>());
    }
  }
  return out;
}

std::vector<std::string> load_text_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(align::ErrorCode::kParseError, "cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(align::ErrorCode::kParseError,
                  path + ":" + std::to_string(line_number) +
                      ": invalid JSON: " + e.what());
    }
    if (!row.is_object())
      throw Error(align::ErrorCode::kSchemaViolation,
                  path + ":" + std::to_string(line_number) +
                      ": each line must be a JSON object");
    std::string text = row_text(row);
    if (text.empty())
      throw Error(align::ErrorCode::kSchemaViolation,
                  path + ":" + std::to_string(line_number) +
                      ": no text fields found");
    out.push_back(std::move(text));
  }
  if (out.empty())
    throw Error(align::ErrorCode::kEmpty, path + " has no examples");
  return out;
}

int run_contam(const std::string& train_path, const std::string& eval_path,
               std::optional<int> n_override,
               std::optional<double> metric_full,
               std::optional<double> metric_clean,
               std::optional<double> metric_dirty, int min_subset_size,
               const std::string& labels_out, const std::string& output_path) {
  std::vector<std::string> train = load_text_corpus(train_path);
  std::vector<std::string> eval = load_text_corpus(eval_path);

  int n = n_override ? *n_override : align::choose_n(eval);
  if (n < 1)
    throw Error(align::ErrorCode::kOutOfRange, "--n must be at least 1");

  align::NgramIndex index = align::build_ngram_index(train, n);
  align::Partition partition = align::classify_examples(index, eval);

  align::ContaminationReport report = align::contamination_delta(
      metric_full.value_or(0.0), metric_clean, metric_dirty,
      partition.clean.size(), partition.dirty.size(), n, min_subset_size);

  if (!labels_out.empty()) {
    std::ofstream labels_file;
    std::ostream& labels = open_output(labels_out, labels_file);
    std::vector<bool> dirty(eval.size(), false);
    for (std::size_t i : partition.dirty) dirty[i] = true;
    for (std::size_t i = 0; i < eval.size(); ++i) {
      ordered_json line{{"line", i + 1}, {"dirty", dirty[i] ? true : false}};
      labels << line.dump() << "\n";
    }
  }

  ordered_json out;
  out["n"] = report.n;
  out["dirty_fraction"] = report.dirty_fraction;
  out["metric_full"] =
      metric_full ? ordered_json(report.metric_full) : ordered_json(nullptr);
  out["metric_clean"] = report.metric_clean ? ordered_json(*report.metric_clean)
                                            : ordered_json(nullptr);
  out["metric_dirty"] = report.metric_dirty ? ordered_json(*report.metric_dirty)
                                            : ordered_json(nullptr);
  out["delta_clean_vs_full"] =
      report.delta_clean_vs_full && metric_full
          ? ordered_json(*report.delta_clean_vs_full)
          : ordered_json(nullptr);
  out["min_subset_size"] = report.min_subset_size;

  std::ofstream file;
  std::ostream& stream = open_output(output_path, file);
  stream << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"textalign: text pair alignment scoring and evaluation"};
  app.require_subcommand(1);

  // score
  auto* score_cmd = app.add_subcommand("score", "score one text pair");
  ScorerFlags score_scorer;
  std::string score_x1, score_x2, score_head = "bin", score_agg = "mean-max";
  bool score_aggregate = false;
  add_scorer_flags(score_cmd, &score_scorer);
  score_cmd->add_option("--x1", score_x1, "context/premise text")->required();
  score_cmd->add_option("--x2", score_x2, "claim/hypothesis text")->required();
  score_cmd->add_flag("--aggregate", score_aggregate,
                      "chunk + split and emit the aggregated head value");
  score_cmd->add_option("--head", score_head, "bin|3way|reg");
  score_cmd->add_option("--agg", score_agg, "mean-max|min-max");

  // adapt
  auto* adapt_cmd =
      app.add_subcommand("adapt", "convert raw task JSONL to alignment pairs");
  std::string adapt_task, adapt_input, adapt_output;
  adapt_cmd->add_option("--task", adapt_task, "nli|sts|pair|mcq|qa|coref|geneval")
      ->required();
  adapt_cmd->add_option("--input", adapt_input, "input JSONL")->required();
  adapt_cmd->add_option("--output", adapt_output, "output JSONL (default stdout)");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "run a benchmark and report");
  ScorerFlags eval_scorer;
  std::string eval_task, eval_input, eval_output, eval_head, eval_agg = "mean-max";
  std::uint64_t eval_seed = 2022;
  std::size_t eval_jobs = 1;
  std::optional<double> eval_threshold;
  add_scorer_flags(eval_cmd, &eval_scorer);
  eval_cmd->add_option("--task", eval_task, "nli|sts|pair|mcq|qa|coref|geneval")
      ->required();
  eval_cmd->add_option("--input", eval_input, "dataset JSONL")->required();
  eval_cmd->add_option("--output", eval_output, "report path (default stdout)");
  eval_cmd->add_option("--head", eval_head, "bin|3way|reg (task default)");
  eval_cmd->add_option("--agg", eval_agg, "mean-max|min-max");
  eval_cmd->add_option("--threshold", eval_threshold,
                       "binary decision / verifier threshold");
  eval_cmd->add_option("--seed", eval_seed, "random seed echoed in the report");
  eval_cmd->add_option("--jobs", eval_jobs, "worker threads");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "answerability verification over QA JSONL");
  ScorerFlags verify_scorer;
  std::string verify_dataset, verify_tune, verify_agg = "mean-max";
  std::string verify_predictions, verify_output;
  std::optional<double> verify_threshold;
  bool verify_baseline = false;
  std::uint64_t verify_seed = 2022;
  std::size_t verify_jobs = 1;
  add_scorer_flags(verify_cmd, &verify_scorer);
  verify_cmd->add_option("--dataset", verify_dataset, "QA JSONL with predictions")
      ->required();
  verify_cmd->add_option("--threshold", verify_threshold,
                         "unanswerable threshold (default 0.5)");
  verify_cmd->add_option("--tune", verify_tune,
                         "dev QA JSONL; tunes the threshold before verifying");
  verify_cmd->add_option("--agg", verify_agg, "mean-max|min-max");
  verify_cmd->add_flag("--baseline", verify_baseline,
                       "score raw QA predictions without the verifier");
  verify_cmd->add_option("--predictions", verify_predictions,
                         "per-sample VerifiedPrediction JSONL path");
  verify_cmd->add_option("--output", verify_output,
                         "report path (default stdout)");
  verify_cmd->add_option("--seed", verify_seed, "random seed echoed in the report");
  verify_cmd->add_option("--jobs", verify_jobs, "worker threads");

  // contam
  auto* contam_cmd =
      app.add_subcommand("contam", "train/eval n-gram contamination audit");
  std::string contam_train, contam_eval, contam_labels, contam_output;
  std::optional<int> contam_n;
  std::optional<double> contam_full, contam_clean, contam_dirty;
  int contam_min_subset = align::kDefaultMinSubsetSize;
  contam_cmd->add_option("--train", contam_train, "training corpus JSONL")
      ->required();
  contam_cmd->add_option("--eval", contam_eval, "evaluation JSONL")->required();
  contam_cmd->add_option("--n", contam_n,
                         "n-gram order (default: 5th percentile length, "
                         "clamped to [8, 13])");
  contam_cmd->add_option("--metric-full", contam_full,
                         "metric value on the full eval set");
  contam_cmd->add_option("--metric-clean", contam_clean,
                         "metric value on the clean subset");
  contam_cmd->add_option("--metric-dirty", contam_dirty,
                         "metric value on the dirty subset");
  contam_cmd->add_option("--min-subset-size", contam_min_subset,
                         "suppress subset metrics below this size");
  contam_cmd->add_option("--labels-out", contam_labels,
                         "per-example clean/dirty JSONL path");
  contam_cmd->add_option("--output", contam_output, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (score_cmd->parsed())
      return run_score(score_scorer, score_x1, score_x2, score_aggregate,
                       score_head, score_agg);
    if (adapt_cmd->parsed()) return run_adapt(adapt_task, adapt_input, adapt_output);
    if (eval_cmd->parsed()) {
      align::RunConfig config;
      config.scorer = eval_scorer.spec();
      config.task = align::dataset_kind_from_string(eval_task);
      config.input_path = eval_input;
      config.output_path = eval_output;
      if (!eval_head.empty()) config.head = align::head_from_string(eval_head);
      config.agg = align::aggregation_mode_from_string(eval_agg);
      config.threshold = eval_threshold;
      config.seed = eval_seed;
      config.jobs = eval_jobs;
      return run_eval(config);
    }
    if (verify_cmd->parsed())
      return run_verify(verify_scorer, verify_dataset, verify_threshold,
                        verify_tune, verify_agg, verify_baseline,
                        verify_predictions, verify_output, verify_jobs,
                        verify_seed);
    if (contam_cmd->parsed())
      return run_contam(contam_train, contam_eval, contam_n, contam_full,
                        contam_clean, contam_dirty, contam_min_subset,
                        contam_labels, contam_output);
  } catch (const Error& e) {
    std::cerr << "error [" << align::error_code_name(e.code()) << "]: "
              << e.what() << "\n";
    return e.category() == align::ErrorCategory::kBackend ? kExitBackend
                                                          : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
