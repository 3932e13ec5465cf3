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

#include "align/benchmark.hpp"

#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>

#include "align/error.hpp"
#include "align/metrics.hpp"
#include "align/model_scorer.hpp"
#include "align/parallel.hpp"
#include "align/verifier.hpp"

namespace align {

namespace {

using ordered_json = nlohmann::ordered_json;

Head default_head(DatasetKind task) {
  switch (task) {
    case DatasetKind::kSts:
      return Head::kReg;
    case DatasetKind::kGeneval:
      return Head::kThreeWayAligned;
    default:
      return Head::kBinAligned;
  }
}

// Wraps per-example work so failures carry the failing example id. With
// jobs > 1 every example still runs and the lowest-index failure is the one
// reported, keeping errors deterministic.
template <typename Row, typename F>
void for_each_example(const std::vector<Row>& rows, std::size_t jobs, F&& f) {
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    try {
      f(i);
    } catch (const Error& e) {
      throw Error(e.code(),
                  "example " + rows[i].id + ": " + std::string(e.what()));
    }
  });
}

std::size_t argmax3(const std::array<double, 3>& p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (p[i] > p[best]) best = i;
  return best;
}

}  // namespace

std::unique_ptr<PairScorer> make_scorer(const ScorerSpec& spec) {
  if (spec.kind == ScorerSpec::Kind::kLexical)
    return std::make_unique<LexicalScorer>();
  if (spec.max_tokens < kMinModelBudget)
    throw Error(ErrorCode::kOutOfRange,
                "model scorer: token budget must be at least " +
                    std::to_string(kMinModelBudget));
  return std::make_unique<ModelScorer>(spec.model_path, spec.tokenizer_path,
                                       spec.max_tokens);
}

void RunConfig::validate() const {
  if (input_path.empty())
    throw Error(ErrorCode::kParseError, "no input dataset given");
  if (scorer.kind == ScorerSpec::Kind::kModel) {
    if (scorer.model_path.empty() || scorer.tokenizer_path.empty())
      throw Error(ErrorCode::kParseError,
                  "model scorer needs both a model and a tokenizer path");
    if (scorer.max_tokens < kMinModelBudget)
      throw Error(ErrorCode::kOutOfRange,
                  "model scorer: token budget must be at least " +
                      std::to_string(kMinModelBudget));
  }
  if (threshold && (*threshold < 0.0 || *threshold > 1.0))
    throw Error(ErrorCode::kOutOfRange, "threshold outside [0, 1]");
  if (jobs == 0)
    throw Error(ErrorCode::kOutOfRange, "jobs must be at least 1");
}

Head head_from_string(const std::string& name) {
  if (name == "bin") return Head::kBinAligned;
  if (name == "3way") return Head::kThreeWayAligned;
  if (name == "reg") return Head::kReg;
  throw Error(ErrorCode::kParseError,
              "unknown head '" + name + "' (bin|3way|reg)");
}

const char* head_flag_name(Head head) { return to_string(head); }

std::string report_to_json(const EvalReport& report) {
  ordered_json out;
  out["dataset"] = report.dataset_id;
  out["task"] = report.task;
  out["example_count"] = report.example_count;

  ordered_json metrics;
  for (const auto& [name, value] : report.metrics) metrics[name] = value;
  out["metrics"] = metrics;

  // Execution-only settings (jobs, output path) are deliberately not echoed:
  // they may not change any reported value.
  ordered_json config;
  if (report.config.scorer.kind == ScorerSpec::Kind::kLexical) {
    config["scorer"] = "lexical";
  } else {
    config["scorer"] = ordered_json{
        {"model", report.config.scorer.model_path},
        {"tokenizer", report.config.scorer.tokenizer_path},
        {"max_tokens", report.config.scorer.max_tokens}};
  }
  config["head"] = head_flag_name(
      report.config.head.value_or(default_head(report.config.task)));
  config["agg"] = to_string(report.config.agg);
  config["input"] = report.config.input_path;
  config["seed"] = report.config.seed;
  if (report.config.threshold) config["threshold"] = *report.config.threshold;
  out["config"] = config;

  out["duration_ms"] = report.duration_ms;
  return out.dump(2) + "\n";
}

EvalReport run_benchmark(const RunConfig& config) {
  config.validate();
  auto started = std::chrono::steady_clock::now();

  std::unique_ptr<PairScorer> scorer = make_scorer(config.scorer);
  DatasetRows rows = load_dataset(config.input_path, config.task);
  Head head = config.head.value_or(default_head(config.task));

  EvalReport report;
  report.dataset_id = config.input_path;
  report.task = to_string(config.task);
  report.example_count = dataset_size(rows);
  report.config = config;

  switch (config.task) {
    case DatasetKind::kNli: {
      const auto& data = std::get<std::vector<NliRow>>(rows);
      std::vector<int> predicted(data.size()), gold(data.size());
      for_each_example(data, config.jobs, [&](std::size_t i) {
        AlignmentScore score =
            score_pair(*scorer, TextPair{data[i].premise, data[i].hypothesis});
        predicted[i] = static_cast<int>(argmax3(score.p3));
        gold[i] = static_cast<int>(
            std::get<ThreeWayTarget>(
                adapt_three_way(data[i].premise, data[i].hypothesis,
                                data[i].label, TaskTag::kNli, data[i].id)
                    .target)
                .label);
      });
      report.metrics.emplace_back("accuracy", accuracy(predicted, gold));
      break;
    }
    case DatasetKind::kPair: {
      const auto& data = std::get<std::vector<PairRow>>(rows);
      double cut = config.threshold.value_or(0.5);
      std::vector<int> predicted(data.size()), gold(data.size());
      for_each_example(data, config.jobs, [&](std::size_t i) {
        AlignmentScore score =
            score_pair(*scorer, TextPair{data[i].x1, data[i].x2});
        predicted[i] = score.pbin[0] >= cut ? 1 : 0;
        gold[i] = data[i].positive ? 1 : 0;
      });
      report.metrics.emplace_back("accuracy", accuracy(predicted, gold));
      break;
    }
    case DatasetKind::kSts: {
      const auto& data = std::get<std::vector<StsRow>>(rows);
      std::vector<double> predicted(data.size()), gold(data.size());
      for_each_example(data, config.jobs, [&](std::size_t i) {
        AlignmentScore score =
            score_pair(*scorer, TextPair{data[i].sentence1, data[i].sentence2});
        predicted[i] = score.head_value(head);
        gold[i] = data[i].score;
      });
      CorrelationTriple corr = correlations(predicted, gold);
      report.metrics.emplace_back("pearson", corr.pearson);
      report.metrics.emplace_back("spearman", corr.spearman);
      report.metrics.emplace_back("kendall", corr.kendall);
      break;
    }
    case DatasetKind::kMcq: {
      const auto& data = std::get<std::vector<McqSample>>(rows);
      std::vector<int> predicted(data.size()), gold(data.size());
      for_each_example(data, config.jobs, [&](std::size_t i) {
        predicted[i] =
            static_cast<int>(solve_mcq(*scorer, data[i], head, config.agg));
        gold[i] = static_cast<int>(data[i].answer_index);
      });
      report.metrics.emplace_back("accuracy", accuracy(predicted, gold));
      break;
    }
    case DatasetKind::kCoref: {
      const auto& data = std::get<std::vector<CorefSample>>(rows);
      std::vector<int> predicted(data.size()), gold(data.size());
      for_each_example(data, config.jobs, [&](std::size_t i) {
        predicted[i] =
            static_cast<int>(solve_coref(*scorer, data[i], head, config.agg));
        gold[i] = static_cast<int>(data[i].answer_index);
      });
      report.metrics.emplace_back("accuracy", accuracy(predicted, gold));
      break;
    }
    case DatasetKind::kQa: {
      const auto& data = std::get<std::vector<QaSample>>(rows);
      VerifierConfig verifier;
      verifier.threshold = config.threshold.value_or(0.5);
      verifier.head = head;

      std::vector<double> em(data.size()), f1(data.size()),
          p_unanswerable(data.size());
      std::vector<int> unanswerable_label(data.size());
      for_each_example(data, config.jobs, [&](std::size_t i) {
        const QaSample& sample = data[i];
        sample.validate();
        if (!sample.qa_prediction || sample.qa_prediction->empty())
          throw Error(ErrorCode::kSchemaViolation,
                      "qa evaluation requires a qa_prediction per sample");
        VerifiedPrediction verdict = verify_answer(
            *scorer, sample, *sample.qa_prediction, verifier, config.agg);
        SquadScore squad = squad_scores(verdict.answer, sample.gold_answers,
                                        verifier.sentinel);
        em[i] = squad.exact_match;
        f1[i] = squad.f1;
        p_unanswerable[i] = verdict.p_unanswerable;
        unanswerable_label[i] = sample.answerable ? 0 : 1;
      });

      double em_sum = 0.0, f1_sum = 0.0;
      for (std::size_t i = 0; i < data.size(); ++i) {
        em_sum += em[i];
        f1_sum += f1[i];
      }
      report.metrics.emplace_back("em",
                                  em_sum / static_cast<double>(data.size()));
      report.metrics.emplace_back("f1",
                                  f1_sum / static_cast<double>(data.size()));
      bool has_both = false, has_pos = false, has_neg = false;
      for (int label : unanswerable_label) (label ? has_pos : has_neg) = true;
      has_both = has_pos && has_neg;
      if (has_both)
        report.metrics.emplace_back("auc",
                                    roc_auc(p_unanswerable, unanswerable_label));
      break;
    }
    case DatasetKind::kGeneval: {
      const auto& data = std::get<std::vector<GenevalRow>>(rows);
      std::vector<double> predicted(data.size()), human(data.size());
      for_each_example(data, config.jobs, [&](std::size_t i) {
        predicted[i] = aggregate_align(*scorer, data[i].context,
                                       data[i].output, head, config.agg);
        human[i] = data[i].human_score;
      });
      CorrelationTriple corr = correlations(predicted, human);
      report.metrics.emplace_back("pearson", corr.pearson);
      report.metrics.emplace_back("spearman", corr.spearman);
      report.metrics.emplace_back("kendall", corr.kendall);

      bool binary = true, has_pos = false, has_neg = false;
      for (double value : human) {
        if (value == 0.0)
          has_neg = true;
        else if (value == 1.0)
          has_pos = true;
        else
          binary = false;
      }
      if (binary && has_pos && has_neg) {
        std::vector<int> labels(human.size());
        for (std::size_t i = 0; i < human.size(); ++i)
          labels[i] = human[i] == 1.0 ? 1 : 0;
        report.metrics.emplace_back("auc", roc_auc(predicted, labels));
      }
      break;
    }
  }

  for (const auto& [name, value] : report.metrics)
    if (!std::isfinite(value))
      throw Error(ErrorCode::kOutOfRange,
                  "metric " + name + " is not finite");

  auto elapsed = std::chrono::steady_clock::now() - started;
  report.duration_ms =
      std::chrono::duration<double, std::milli>(elapsed).count();
  return report;
}

}  // namespace align
