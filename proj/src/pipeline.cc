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

#include "tweetinfo/pipeline.h"

#include "tweetinfo/error.h"

namespace tweetinfo {

namespace {

std::vector<SparseVector> VectorizeAll(const std::vector<std::string>& texts,
                                       const TfIdfVocabulary& vocabulary) {
  std::vector<SparseVector> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(vocabulary.Vectorize(t));
  return out;
}

}  // namespace

TrainedPipeline TrainTfIdfSvm(const Corpus& train, const Normalizer& normalizer,
                              const PipelineOptions& options) {
  if (!train.labeled()) {
    throw ValidationError("training corpus must be labeled and non-empty");
  }
  const std::vector<Label> labels = train.Labels();
  std::vector<std::string> texts = normalizer.NormalizeCorpus(train).Texts();

  TfIdfVocabulary vocabulary = TfIdfVocabulary::Fit(texts, options.min_df);
  const std::vector<SparseVector> vectors = VectorizeAll(texts, vocabulary);

  SvmParams params = DefaultSvmParams(vocabulary.size(), vectors.size());
  if (options.c) params.c = *options.c;
  if (options.gamma) params.gamma = *options.gamma;
  if (options.coef0) params.coef0 = *options.coef0;
  if (options.tol) params.tol = *options.tol;
  if (options.max_passes) params.max_passes = *options.max_passes;

  TrainResult trained =
      TrainSvm(vectors, labels, params, options.seed, options.train);
  const std::vector<double> decisions = trained.model.Decisions(vectors);
  PlattFit platt = FitPlatt(decisions, labels);
  trained.model.set_platt(platt.scaling);

  std::vector<double> probabilities;
  probabilities.reserve(decisions.size());
  for (double f : decisions) {
    probabilities.push_back(platt.scaling.Probability(f));
  }
  return {std::move(vocabulary), std::move(trained.model), trained.report,
          platt, std::move(probabilities)};
}

PredictionSet PredictTfIdfSvm(const Corpus& corpus,
                              const Normalizer& normalizer,
                              const TfIdfVocabulary& vocabulary,
                              const SvmModel& model, std::string model_name) {
  std::vector<PredictionSet::Entry> entries;
  entries.reserve(corpus.size());
  for (const CorpusEntry& e : corpus.entries()) {
    const SparseVector x = vocabulary.Vectorize(normalizer.Normalize(e.tweet.text));
    entries.emplace_back(e.tweet.id, model.PredictProba(x));
  }
  return PredictionSet(std::move(model_name), std::move(entries));
}

}  // namespace tweetinfo
