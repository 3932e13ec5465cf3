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

#include "align/dataset.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "align/error.hpp"

namespace align {

namespace {

using json = nlohmann::json;

struct LineContext {
  const std::string* path;
  std::size_t line_number;
};

[[noreturn]] void schema_fail(const LineContext& ctx, const std::string& what) {
  std::ostringstream msg;
  msg << *ctx.path << ":" << ctx.line_number << ": " << what;
  throw Error(ErrorCode::kSchemaViolation, msg.str());
}

std::string require_string(const json& row, const char* field,
                           const LineContext& ctx) {
  auto it = row.find(field);
  if (it == row.end())
    schema_fail(ctx, std::string("missing field \"") + field + "\"");
  if (!it->is_string())
    schema_fail(ctx, std::string("field \"") + field + "\" must be a string");
  std::string value = it->get<std::string>();
  if (value.empty())
    schema_fail(ctx, std::string("field \"") + field + "\" must be non-empty");
  return value;
}

double require_number(const json& row, const char* field,
                      const LineContext& ctx) {
  auto it = row.find(field);
  if (it == row.end())
    schema_fail(ctx, std::string("missing field \"") + field + "\"");
  if (!it->is_number())
    schema_fail(ctx, std::string("field \"") + field + "\" must be a number");
  return it->get<double>();
}

bool require_bool(const json& row, const char* field, const LineContext& ctx) {
  auto it = row.find(field);
  if (it == row.end())
    schema_fail(ctx, std::string("missing field \"") + field + "\"");
  if (!it->is_boolean())
    schema_fail(ctx, std::string("field \"") + field + "\" must be a boolean");
  return it->get<bool>();
}

std::size_t require_index(const json& row, const char* field,
                          const LineContext& ctx) {
  auto it = row.find(field);
  if (it == row.end())
    schema_fail(ctx, std::string("missing field \"") + field + "\"");
  if (!it->is_number_unsigned())
    schema_fail(ctx, std::string("field \"") + field +
                         "\" must be a non-negative integer");
  return it->get<std::size_t>();
}

std::vector<std::string> require_string_array(const json& row,
                                              const char* field,
                                              const LineContext& ctx) {
  auto it = row.find(field);
  if (it == row.end())
    schema_fail(ctx, std::string("missing field \"") + field + "\"");
  if (!it->is_array())
    schema_fail(ctx, std::string("field \"") + field + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& item : *it) {
    if (!item.is_string())
      schema_fail(ctx, std::string("field \"") + field +
                           "\" must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string row_id(const json& row, const LineContext& ctx) {
  auto it = row.find("id");
  if (it == row.end()) return std::to_string(ctx.line_number);
  if (!it->is_string())
    schema_fail(ctx, "field \"id\" must be a string");
  return it->get<std::string>();
}

TaskTag pair_task_from_string(const std::string& name, const LineContext& ctx) {
  if (name == "paraphrase") return TaskTag::kParaphrase;
  if (name == "ir") return TaskTag::kIr;
  if (name == "summarization") return TaskTag::kSummarization;
  schema_fail(ctx, "field \"task\" must be paraphrase, ir, or summarization");
}

template <typename Row, typename ParseFn>
std::vector<Row> load_rows(const std::string& path, ParseFn parse) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::kParseError, "cannot open dataset " + path);

  std::vector<Row> rows;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    LineContext ctx{&path, line_number};
    json row;
    try {
      row = json::parse(line);
    } catch (const json::parse_error& e) {
      std::ostringstream msg;
      msg << path << ":" << line_number << ": invalid JSON: " << e.what();
      throw Error(ErrorCode::kParseError, msg.str());
    }
    if (!row.is_object()) schema_fail(ctx, "each line must be a JSON object");
    rows.push_back(parse(row, ctx));
  }
  if (rows.empty())
    throw Error(ErrorCode::kEmpty, "dataset " + path + " has no examples");
  return rows;
}

}  // namespace

DatasetKind dataset_kind_from_string(const std::string& name) {
  if (name == "nli") return DatasetKind::kNli;
  if (name == "sts") return DatasetKind::kSts;
  if (name == "pair") return DatasetKind::kPair;
  if (name == "mcq") return DatasetKind::kMcq;
  if (name == "qa") return DatasetKind::kQa;
  if (name == "coref") return DatasetKind::kCoref;
  if (name == "geneval") return DatasetKind::kGeneval;
  throw Error(ErrorCode::kParseError,
              "unknown task '" + name +
                  "' (nli|sts|pair|mcq|qa|coref|geneval)");
}

const char* to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kNli: return "nli";
    case DatasetKind::kSts: return "sts";
    case DatasetKind::kPair: return "pair";
    case DatasetKind::kMcq: return "mcq";
    case DatasetKind::kQa: return "qa";
    case DatasetKind::kCoref: return "coref";
    case DatasetKind::kGeneval: return "geneval";
  }
  return "?";
}

DatasetRows load_dataset(const std::string& path, DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kNli:
      return load_rows<NliRow>(path, [](const json& row, const LineContext& ctx) {
        NliRow out;
        out.premise = require_string(row, "premise", ctx);
        out.hypothesis = require_string(row, "hypothesis", ctx);
        out.label = require_string(row, "label", ctx);
        if (out.label != "entail" && out.label != "contradict" &&
            out.label != "neutral")
          schema_fail(ctx, "field \"label\" must be entail, contradict, or neutral");
        out.id = row_id(row, ctx);
        return out;
      });
    case DatasetKind::kSts:
      return load_rows<StsRow>(path, [](const json& row, const LineContext& ctx) {
        StsRow out;
        out.sentence1 = require_string(row, "sentence1", ctx);
        out.sentence2 = require_string(row, "sentence2", ctx);
        out.score = require_number(row, "score", ctx);
        out.scale_min = require_number(row, "scale_min", ctx);
        out.scale_max = require_number(row, "scale_max", ctx);
        if (!(out.scale_min < out.scale_max))
          schema_fail(ctx, "field \"scale_min\" must be below \"scale_max\"");
        if (out.score < out.scale_min || out.score > out.scale_max)
          schema_fail(ctx, "field \"score\" must lie within its scale");
        out.id = row_id(row, ctx);
        return out;
      });
    case DatasetKind::kPair:
      return load_rows<PairRow>(path, [](const json& row, const LineContext& ctx) {
        PairRow out;
        out.x1 = require_string(row, "x1", ctx);
        out.x2 = require_string(row, "x2", ctx);
        out.positive = require_bool(row, "positive", ctx);
        out.task = pair_task_from_string(require_string(row, "task", ctx), ctx);
        out.id = row_id(row, ctx);
        return out;
      });
    case DatasetKind::kMcq:
      return load_rows<McqSample>(path, [](const json& row, const LineContext& ctx) {
        McqSample out;
        out.context = require_string(row, "context", ctx);
        out.question = require_string(row, "question", ctx);
        out.choices = require_string_array(row, "choices", ctx);
        if (out.choices.size() < 2)
          schema_fail(ctx, "field \"choices\" needs at least 2 entries");
        out.answer_index = require_index(row, "answer_index", ctx);
        if (out.answer_index >= out.choices.size())
          schema_fail(ctx, "field \"answer_index\" out of range");
        out.id = row_id(row, ctx);
        return out;
      });
    case DatasetKind::kQa:
      return load_rows<QaSample>(path, [](const json& row, const LineContext& ctx) {
        QaSample out;
        out.context = require_string(row, "context", ctx);
        out.question = require_string(row, "question", ctx);
        out.gold_answers = require_string_array(row, "answers", ctx);
        out.answerable = require_bool(row, "answerable", ctx);
        if (out.answerable != !out.gold_answers.empty())
          schema_fail(ctx,
                      "field \"answerable\" must match \"answers\" presence");
        if (auto it = row.find("qa_prediction"); it != row.end()) {
          if (!it->is_string())
            schema_fail(ctx, "field \"qa_prediction\" must be a string");
          out.qa_prediction = it->get<std::string>();
        }
        out.id = row_id(row, ctx);
        return out;
      });
    case DatasetKind::kCoref:
      return load_rows<CorefSample>(path, [](const json& row,
                                             const LineContext& ctx) {
        CorefSample out;
        out.context = require_string(row, "context", ctx);
        out.pronoun_begin = require_index(row, "pronoun_start", ctx);
        out.pronoun_end = require_index(row, "pronoun_end", ctx);
        if (out.pronoun_begin >= out.pronoun_end ||
            out.pronoun_end > out.context.size())
          schema_fail(ctx, "field \"pronoun_end\" makes an invalid span");
        out.candidates = require_string_array(row, "candidates", ctx);
        if (out.candidates.size() < 2)
          schema_fail(ctx, "field \"candidates\" needs at least 2 entries");
        out.answer_index = require_index(row, "answer_index", ctx);
        if (out.answer_index >= out.candidates.size())
          schema_fail(ctx, "field \"answer_index\" out of range");
        out.id = row_id(row, ctx);
        return out;
      });
    case DatasetKind::kGeneval:
      return load_rows<GenevalRow>(path, [](const json& row,
                                            const LineContext& ctx) {
        GenevalRow out;
        out.context = require_string(row, "context", ctx);
        out.output = require_string(row, "output", ctx);
        out.human_score = require_number(row, "human_score", ctx);
        out.id = row_id(row, ctx);
        return out;
      });
  }
  throw Error(ErrorCode::kParseError, "unknown dataset kind");
}

std::size_t dataset_size(const DatasetRows& rows) {
  return std::visit([](const auto& v) { return v.size(); }, rows);
}

std::vector<AdaptedExample> adapt_dataset(const DatasetRows& rows,
                                          DatasetKind kind) {
  std::vector<AdaptedExample> out;
  switch (kind) {
    case DatasetKind::kNli:
      for (const NliRow& row : std::get<std::vector<NliRow>>(rows))
        out.push_back(adapt_three_way(row.premise, row.hypothesis, row.label,
                                      TaskTag::kNli, row.id));
      break;
    case DatasetKind::kSts:
      for (const StsRow& row : std::get<std::vector<StsRow>>(rows))
        out.push_back(adapt_sts(row.sentence1, row.sentence2, row.score,
                                row.scale_min, row.scale_max, row.id));
      break;
    case DatasetKind::kPair:
      for (const PairRow& row : std::get<std::vector<PairRow>>(rows))
        out.push_back(
            adapt_binary_pair(row.x1, row.x2, row.positive, row.task, row.id));
      break;
    case DatasetKind::kMcq:
      for (const McqSample& sample : std::get<std::vector<McqSample>>(rows)) {
        std::vector<AdaptedExample> pairs = build_mcq_pairs(sample);
        out.insert(out.end(), pairs.begin(), pairs.end());
      }
      break;
    case DatasetKind::kQa:
      for (const QaSample& sample : std::get<std::vector<QaSample>>(rows)) {
        // One positive pair per gold answer; the QA prediction, when present,
        // is adapted too and labeled by normalized gold matching.
        for (const std::string& gold : sample.gold_answers)
          out.push_back(adapt_answerability(sample, gold));
        if (sample.qa_prediction && !sample.qa_prediction->empty())
          out.push_back(adapt_answerability(sample, *sample.qa_prediction));
      }
      break;
    case DatasetKind::kCoref:
      for (const CorefSample& sample :
           std::get<std::vector<CorefSample>>(rows)) {
        for (std::size_t i = 0; i < sample.candidates.size(); ++i) {
          std::string substituted = sample.context;
          substituted.replace(sample.pronoun_begin,
                              sample.pronoun_end - sample.pronoun_begin,
                              sample.candidates[i]);
          out.push_back(AdaptedExample{
              TextPair{sample.context, substituted},
              BinaryTarget{i == sample.answer_index ? LabelBin::kAligned
                                                    : LabelBin::kNotAligned},
              TaskTag::kCoref, sample.id + "#" + std::to_string(i)});
        }
      }
      break;
    case DatasetKind::kGeneval:
      for (const GenevalRow& row : std::get<std::vector<GenevalRow>>(rows)) {
        if (row.human_score < 0.0 || row.human_score > 1.0)
          throw Error(ErrorCode::kOutOfRange,
                      "geneval row " + row.id +
                          ": human_score must be in [0, 1] to adapt to a "
                          "regression target");
        out.push_back(AdaptedExample{TextPair{row.context, row.output},
                                     RegressionTarget{row.human_score},
                                     TaskTag::kConsistency, row.id});
      }
      break;
  }
  return out;
}

}  // namespace align
