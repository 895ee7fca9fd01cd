// Copyright 2026 The tweetinfo Authors
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

#include "tweetinfo/cli.h"

#include <cstdio>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tweetinfo/dataset.h"
#include "tweetinfo/error.h"
#include "tweetinfo/fusion_eval.h"
#include "tweetinfo/normalize.h"
#include "tweetinfo/pipeline.h"

namespace tweetinfo::cli {

namespace {

namespace fs = std::filesystem;

const CLI::Validator kOpenUnitInterval(
    [](std::string& value) -> std::string {
      double v = 0.0;
      try {
        std::size_t pos = 0;
        v = std::stod(value, &pos);
        if (pos != value.size()) return "not a number: " + value;
      } catch (const std::exception&) {
        return "not a number: " + value;
      }
      if (!(v > 0.0 && v < 1.0)) return "must lie strictly between 0 and 1";
      return {};
    },
    "(0,1)");

// The directory an output file goes into must already exist.
const CLI::Validator kWritablePath(
    [](std::string& value) -> std::string {
      const fs::path parent = fs::path(value).parent_path();
      if (!parent.empty() && !fs::is_directory(parent)) {
        return "directory does not exist: " + parent.string();
      }
      return {};
    },
    "PATH");

struct DictionaryFlags {
  std::optional<std::string> emoji;
  std::optional<std::string> interjections;
  std::optional<std::string> contractions;
  std::optional<std::string> slang;
  bool no_lowercase = false;

  void Register(CLI::App* app) {
    app->add_option("--emoji-dict", emoji, "Emoji table (TSV), replaces the bundled one")
        ->check(CLI::ExistingFile);
    app->add_option("--interjections-dict", interjections,
                    "Interjection table (TSV)")
        ->check(CLI::ExistingFile);
    app->add_option("--contractions-dict", contractions,
                    "Contraction table (TSV)")
        ->check(CLI::ExistingFile);
    app->add_option("--slang-dict", slang, "Slang table (TSV)")
        ->check(CLI::ExistingFile);
    app->add_flag("--no-lowercase", no_lowercase,
                  "Keep letter case (dictionary keys are lowercase)");
  }

  NormalizationConfig Config() const {
    NormalizationConfig cfg;
    if (emoji) cfg.dictionaries.emoji = LoadDictionary(*emoji);
    if (interjections) {
      cfg.dictionaries.interjections = LoadDictionary(*interjections);
    }
    if (contractions) {
      cfg.dictionaries.contractions = LoadDictionary(*contractions);
    }
    if (slang) cfg.dictionaries.slang = LoadDictionary(*slang);
    cfg.lowercase = !no_lowercase;
    return cfg;
  }
};

struct SplitCommand {
  std::string input;
  double fraction = 0.8;
  std::uint64_t seed = 0;
  std::string train_out;
  std::string valid_out;

  void Register(CLI::App* app) {
    app->add_option("-i,--input", input, "Labeled corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--fraction", fraction, "Share of each class sent to train")
        ->capture_default_str()
        ->check(kOpenUnitInterval);
    app->add_option("--seed", seed, "Shuffle seed")->required();
    app->add_option("--train-out", train_out, "Output train corpus")
        ->required()
        ->check(kWritablePath);
    app->add_option("--valid-out", valid_out, "Output validation corpus")
        ->required()
        ->check(kWritablePath);
  }

  int Run(std::ostream& out) const {
    const Corpus corpus = LoadCorpus(input, /*labeled=*/true);
    const auto [train, valid] = StratifiedSplit(corpus, fraction, seed);
    WriteCorpus(train_out, train);
    WriteCorpus(valid_out, valid);

    char line[128];
    out << "Label          Training  Validation\n";
    for (Label label : kAllLabels) {
      std::snprintf(line, sizeof(line), "%-13s %9zu %11zu\n",
                    std::string(LabelName(label)).c_str(),
                    train.class_counts().of(label),
                    valid.class_counts().of(label));
      out << line;
    }
    std::snprintf(line, sizeof(line), "%-13s %9zu %11zu\n", "Total",
                  train.size(), valid.size());
    out << line;
    return kExitOk;
  }
};

struct NormalizeCommand {
  std::string input;
  std::string output;
  DictionaryFlags dicts;

  void Register(CLI::App* app) {
    app->add_option("-i,--input", input, "Corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("-o,--output", output, "Normalized corpus TSV")
        ->required()
        ->check(kWritablePath);
    dicts.Register(app);
  }

  int Run(std::ostream& out) const {
    const Normalizer normalizer(dicts.Config());
    const Corpus corpus = LoadCorpus(input, /*labeled=*/false);
    WriteCorpus(output, normalizer.NormalizeCorpus(corpus));
    out << "normalized " << corpus.size() << " tweets\n";
    return kExitOk;
  }
};

struct TrainCommand {
  std::string train;
  std::string model;
  std::optional<std::string> vocab;
  std::optional<std::string> train_predictions;
  std::uint64_t seed = 0;
  std::size_t min_df = 2;
  std::optional<double> c, gamma, coef0, tol;
  std::optional<std::size_t> max_passes;
  std::size_t cache_mb = 256;
  DictionaryFlags dicts;

  void Register(CLI::App* app) {
    app->add_option("-t,--train", train, "Labeled training corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("-m,--model", model, "Output model file")
        ->required()
        ->check(kWritablePath);
    app->add_option("--vocab", vocab,
                    "Output vocabulary file (default: <model>.vocab)")
        ->check(kWritablePath);
    app->add_option("--train-predictions", train_predictions,
                    "Also write P(INFORMATIVE) for the training tweets")
        ->check(kWritablePath);
    app->add_option("--seed", seed, "Seed for the SMO fallback sweep")
        ->required();
    app->add_option("--min-df", min_df, "Minimum document frequency")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    app->add_option("--C", c, "Box constraint (default 1)")
        ->check(CLI::PositiveNumber);
    app->add_option("--gamma", gamma, "Kernel scale (default 1/n_features)")
        ->check(CLI::PositiveNumber);
    app->add_option("--coef0", coef0, "Kernel shift (default 0)");
    app->add_option("--tol", tol, "KKT tolerance (default 1e-3)")
        ->check(CLI::PositiveNumber);
    app->add_option("--max-passes", max_passes,
                    "Maximum SMO pair updates (default 10 * n)")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    app->add_option("--cache-mb", cache_mb, "Kernel row cache budget in MiB")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
    dicts.Register(app);
  }

  int Run(std::ostream& out, std::ostream& err) const {
    const Normalizer normalizer(dicts.Config());
    const Corpus corpus = LoadCorpus(train, /*labeled=*/true);
    if (corpus.empty()) throw ValidationError("training corpus is empty");

    PipelineOptions options;
    options.min_df = min_df;
    options.c = c;
    options.gamma = gamma;
    options.coef0 = coef0;
    options.tol = tol;
    options.max_passes = max_passes;
    options.seed = seed;
    options.train.cache_bytes = cache_mb << 20;
    const TrainedPipeline trained = TrainTfIdfSvm(corpus, normalizer, options);

    const std::string vocab_path = vocab.value_or(model + ".vocab");
    trained.model.Save(model);
    trained.vocabulary.Save(vocab_path);
    if (train_predictions) {
      std::vector<PredictionSet::Entry> entries;
      entries.reserve(corpus.size());
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        entries.emplace_back(corpus.entries()[i].tweet.id,
                             trained.train_probabilities[i]);
      }
      WritePredictions(*train_predictions,
                       PredictionSet(fs::path(*train_predictions).stem().string(),
                                     std::move(entries)));
    }

    const TrainReport& r = trained.report;
    char line[256];
    out << "tweets      " << corpus.size() << " (INFORMATIVE "
        << corpus.class_counts().informative << ", UNINFORMATIVE "
        << corpus.class_counts().uninformative << ")\n";
    out << "vocabulary  " << trained.vocabulary.size() << " terms (min_df "
        << min_df << ")\n";
    std::snprintf(line, sizeof(line),
                  "smo         %zu passes, %zu support vectors (%zu at C), "
                  "max KKT violation %.3g, %s\n",
                  r.iterations, r.support_vectors, r.bounded_support_vectors,
                  r.max_kkt_violation,
                  r.converged ? "converged" : "NOT converged");
    out << line;
    std::snprintf(line, sizeof(line), "platt       A = %.6g, B = %.6g\n",
                  trained.platt.scaling.a, trained.platt.scaling.b);
    out << line;
    out << "wrote " << model << " and " << vocab_path << "\n";
    if (!r.converged) {
      err << "WARNING: SMO stopped after " << r.iterations
          << " passes without meeting the KKT tolerance (gap " << r.kkt_gap
          << "). The model is usable but may be suboptimal; consider "
             "raising --max-passes.\n";
    }
    return kExitOk;
  }
};

struct PredictCommand {
  std::string model;
  std::optional<std::string> vocab;
  std::string corpus;
  std::string output;
  DictionaryFlags dicts;

  void Register(CLI::App* app) {
    app->add_option("-m,--model", model, "Model file from `train`")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--vocab", vocab, "Vocabulary file (default: <model>.vocab)")
        ->check(CLI::ExistingFile);
    app->add_option("-c,--corpus", corpus, "Corpus TSV, labeled or not")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("-o,--output", output, "Output prediction TSV")
        ->required()
        ->check(kWritablePath);
    dicts.Register(app);
  }

  int Run(std::ostream& out) const {
    const Normalizer normalizer(dicts.Config());
    const SvmModel svm = SvmModel::Load(model);
    const TfIdfVocabulary vocabulary =
        TfIdfVocabulary::Load(vocab.value_or(model + ".vocab"));
    if (vocabulary.size() != svm.dimension()) {
      throw ValidationError("vocabulary has " +
                            std::to_string(vocabulary.size()) +
                            " terms but the model expects " +
                            std::to_string(svm.dimension()));
    }
    const Corpus tweets = LoadCorpus(corpus, /*labeled=*/false);
    const PredictionSet preds = PredictTfIdfSvm(
        tweets, normalizer, vocabulary, svm, fs::path(output).stem().string());
    WritePredictions(output, preds);
    out << "wrote " << preds.size() << " predictions to " << output << "\n";
    return kExitOk;
  }
};

struct FuseCommand {
  std::vector<std::string> inputs;
  std::string output;

  void Register(CLI::App* app) {
    app->add_option("predictions", inputs, "Prediction TSV files to average")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("-o,--output", output, "Fused prediction TSV")
        ->required()
        ->check(kWritablePath);
  }

  int Run(std::ostream& out) const {
    std::vector<PredictionSet> sets;
    for (const std::string& path : inputs) sets.push_back(LoadPredictions(path));
    const PredictionSet fused = Fuse(sets);
    WritePredictions(output, fused);
    out << "fused " << sets.size() << " prediction sets over " << fused.size()
        << " tweets into " << output << "\n";
    return kExitOk;
  }
};

struct EvalCommand {
  std::string gold;
  std::string predictions;
  double cutoff = kDefaultCutoff;
  bool json_only = false;

  void Register(CLI::App* app) {
    app->add_option("-g,--gold", gold, "Labeled corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("-p,--predictions", predictions, "Prediction TSV")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--cutoff", cutoff,
                    "Probability at or above which a tweet is INFORMATIVE")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app->add_flag("--json", json_only, "Print only the JSON record");
  }

  int Run(std::ostream& out) const {
    const Corpus corpus = LoadCorpus(gold, /*labeled=*/true);
    const PredictionSet preds = LoadPredictions(predictions);
    const MetricsReport report =
        ComputeMetrics(GoldLabels(corpus), Threshold(preds, cutoff));
    if (!json_only) out << report.ToText();
    out << report.ToJson() << "\n";
    return kExitOk;
  }
};

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Informative-tweet classification toolkit", "tweetinfo"};
  app.require_subcommand(1);

  SplitCommand split;
  NormalizeCommand normalize;
  TrainCommand train;
  PredictCommand predict;
  FuseCommand fuse;
  EvalCommand eval;
  CLI::App* split_app =
      app.add_subcommand("split", "Stratified train/validation split");
  CLI::App* normalize_app =
      app.add_subcommand("normalize", "Normalize the text column of a corpus");
  CLI::App* train_app =
      app.add_subcommand("train", "Train the TF-IDF + sigmoid SVM model");
  CLI::App* predict_app =
      app.add_subcommand("predict", "Write P(INFORMATIVE) for a corpus");
  CLI::App* fuse_app =
      app.add_subcommand("fuse", "Average several prediction files");
  CLI::App* eval_app =
      app.add_subcommand("eval", "Precision, recall and F1 against gold labels");
  split.Register(split_app);
  normalize.Register(normalize_app);
  train.Register(train_app);
  predict.Register(predict_app);
  fuse.Register(fuse_app);
  eval.Register(eval_app);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (split_app->parsed()) return split.Run(out);
    if (normalize_app->parsed()) return normalize.Run(out);
    if (train_app->parsed()) return train.Run(out, err);
    if (predict_app->parsed()) return predict.Run(out);
    if (fuse_app->parsed()) return fuse.Run(out);
    if (eval_app->parsed()) return eval.Run(out);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace tweetinfo::cli
