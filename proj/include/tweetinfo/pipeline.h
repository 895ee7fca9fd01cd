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

// End-to-end TF-IDF + sigmoid-kernel SVM: normalize, vectorize, train,
// calibrate, predict.

#ifndef TWEETINFO_PIPELINE_H_
#define TWEETINFO_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tweetinfo/dataset.h"
#include "tweetinfo/features.h"
#include "tweetinfo/normalize.h"
#include "tweetinfo/svm.h"

namespace tweetinfo {

struct PipelineOptions {
  std::size_t min_df = 2;
  // Unset fields take DefaultSvmParams() values for the fitted vocabulary.
  std::optional<double> c;
  std::optional<double> gamma;
  std::optional<double> coef0;
  std::optional<double> tol;
  std::optional<std::size_t> max_passes;
  std::uint64_t seed = 0;
  TrainOptions train;
};

struct TrainedPipeline {
  TfIdfVocabulary vocabulary;
  SvmModel model;  // Platt pair attached
  TrainReport report;
  PlattFit platt;
  // P(INFORMATIVE) of each training tweet, in corpus order.
  std::vector<double> train_probabilities;
};

// Throws ValidationError for an unlabeled or single-class corpus.
TrainedPipeline TrainTfIdfSvm(const Corpus& train, const Normalizer& normalizer,
                              const PipelineOptions& options);

PredictionSet PredictTfIdfSvm(const Corpus& corpus,
                              const Normalizer& normalizer,
                              const TfIdfVocabulary& vocabulary,
                              const SvmModel& model,
                              std::string model_name = "svm");

}  // namespace tweetinfo

#endif  // TWEETINFO_PIPELINE_H_
