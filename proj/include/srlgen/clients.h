//
// Copyright 2026 The srlgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SRLGEN_CLIENTS_H_
#define SRLGEN_CLIENTS_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "srlgen/prompt.h"
#include "srlgen/srl.h"

namespace srlgen {

struct GenerateRequest {
  std::string prompt;
  int n_beams = 10;
  bool no_repeat_bigrams = true;
  std::vector<std::string> banned_phrases;
  int max_candidates = 1;
  // In-process only, never sent: the compiled prompt `prompt` was serialized
  // from. The mock uses its blank-to-code slots; a parsed prompt has none.
  const PromptSpec* compiled = nullptr;
};

struct ScoreResponse {
  double loss = 0.0;
  double perplexity = 0.0;
};

class Generator {
 public:
  virtual ~Generator() = default;
  // At most request.max_candidates texts in the tagged-output format.
  virtual std::vector<std::string> Generate(const GenerateRequest& request) = 0;
};

class SrlPredictor {
 public:
  virtual ~SrlPredictor() = default;
  virtual SrlSentence Predict(std::string_view text) = 0;
};

class Scorer {
 public:
  virtual ~Scorer() = default;
  // One response per text, in order.
  virtual std::vector<ScoreResponse> Score(const std::vector<std::string>& texts) = 0;
  ScoreResponse Score(const std::string& text);
};

// In-process backends built on the mock generator. Pure; safe to share
// between threads.
class MockGenerator : public Generator {
 public:
  std::vector<std::string> Generate(const GenerateRequest& request) override;
};

class MockSrlPredictor : public SrlPredictor {
 public:
  SrlSentence Predict(std::string_view text) override;
};

class MockScorer : public Scorer {
 public:
  using Scorer::Score;
  std::vector<ScoreResponse> Score(const std::vector<std::string>& texts) override;
};

struct ClientConfig {
  std::string url;  // e.g. http://localhost:8080 or http://host:port/prefix
  double timeout_seconds = 30.0;
  int max_retries = 3;
  int backoff_ms = 200;
};

inline constexpr std::string_view kGenUrlEnv = "TAILOR_GEN_URL";
inline constexpr std::string_view kSrlUrlEnv = "TAILOR_SRL_URL";
inline constexpr std::string_view kScoreUrlEnv = "TAILOR_SCORE_URL";

struct BackendConfig {
  ClientConfig generator;
  ClientConfig srl;
  ClientConfig scorer;

  // URLs from TAILOR_GEN_URL / TAILOR_SRL_URL / TAILOR_SCORE_URL where set.
  void ApplyEnvironment();
  // Keys: gen_url, srl_url, score_url, timeout_seconds, max_retries, backoff_ms.
  void ApplyJson(const nlohmann::json& config);
};

using WarningSink = std::function<void(const std::string&)>;

// HTTP/1.1 + JSON clients. Transport failures and 5xx responses are retried
// up to max_retries times; the final failure throws TransportError carrying
// the request id. Malformed payloads throw SchemaError.
class HttpGenerator : public Generator {
 public:
  explicit HttpGenerator(ClientConfig config, WarningSink warn = {});
  std::vector<std::string> Generate(const GenerateRequest& request) override;

 private:
  ClientConfig config_;
  WarningSink warn_;
};

class HttpSrlPredictor : public SrlPredictor {
 public:
  explicit HttpSrlPredictor(ClientConfig config);
  SrlSentence Predict(std::string_view text) override;

 private:
  ClientConfig config_;
};

class HttpScorer : public Scorer {
 public:
  explicit HttpScorer(ClientConfig config);
  using Scorer::Score;
  std::vector<ScoreResponse> Score(const std::vector<std::string>& texts) override;

 private:
  ClientConfig config_;
};

// Validates a scorer payload entry: loss > 0, perplexity > 0 and
// perplexity = exp(loss) (perplexity is derived when absent).
ScoreResponse ScoreResponseFromJson(const nlohmann::json& j);

struct Backends {
  std::shared_ptr<Generator> generator;
  std::shared_ptr<SrlPredictor> srl;
  std::shared_ptr<Scorer> scorer;
};

// Mock backends when `mock`; otherwise HTTP clients for the configured URLs.
// A missing URL leaves that backend null.
Backends MakeBackends(const BackendConfig& config, bool mock, WarningSink warn = {});

// Fresh id for correlating a request with backend logs.
std::string NextRequestId(std::string_view kind);

}  // namespace srlgen

#endif  // SRLGEN_CLIENTS_H_
