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

#include "srlgen/clients.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "srlgen/corpus.h"
#include "srlgen/error.h"
#include "srlgen/mock.h"
#include "srlgen/prompt.h"
#include "srlgen/text.h"

namespace srlgen {

namespace {

using nlohmann::json;

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path prefix without trailing '/'
};

Endpoint SplitUrl(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ContractViolation("backend URL needs a scheme: " + url);
  const auto path = url.find('/', scheme + 3);
  Endpoint e;
  e.origin = url.substr(0, path);
  if (path != std::string::npos) e.prefix = url.substr(path);
  while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
  return e;
}

json PostJson(const ClientConfig& config, const std::string& route, const json& body,
              const std::string& request_id) {
  if (config.url.empty()) throw ContractViolation("no URL configured for " + route);
  const Endpoint ep = SplitUrl(config.url);
  const std::string payload = body.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(config.backoff_ms * attempt));
    httplib::Client cli(ep.origin);
    const auto timeout = std::chrono::duration<double>(config.timeout_seconds);
    cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    cli.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    cli.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    httplib::Headers headers = {{"X-Request-Id", request_id}};
    auto res = cli.Post(ep.prefix + route, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "server error " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw TransportError(route + " returned status " + std::to_string(res->status),
                           request_id);
    try {
      return json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw SchemaError(route + ": response is not JSON: " + e.what());
    }
  }
  throw TransportError(route + " failed after " + std::to_string(config.max_retries + 1) +
                           " attempts: " + last_error,
                       request_id);
}

bool ContainsFolded(std::string_view text, std::string_view phrase) {
  if (phrase.empty()) return false;
  return CaseFold(text).find(CaseFold(phrase)) != std::string::npos;
}

}  // namespace

ScoreResponse Scorer::Score(const std::string& text) {
  auto out = Score(std::vector<std::string>{text});
  if (out.size() != 1) throw SchemaError("scorer returned " + std::to_string(out.size()) +
                                         " results for one text");
  return out[0];
}

std::vector<std::string> MockGenerator::Generate(const GenerateRequest& request) {
  if (request.n_beams < 1) throw ContractViolation("n_beams must be >= 1");
  if (request.max_candidates <= 0) return {};
  const std::string text =
      request.compiled ? MockGenerate(*request.compiled) : MockGenerate(ParsePrompt(request.prompt));
  const std::string plain = ParseTaggedOutput(text).text();
  for (const auto& phrase : request.banned_phrases)
    if (ContainsFolded(plain, phrase)) return {};
  return {text};
}

SrlSentence MockSrlPredictor::Predict(std::string_view text) {
  if (Trim(text).empty()) throw SchemaError("empty text");
  return MockPredictSrl(text);
}

std::vector<ScoreResponse> MockScorer::Score(const std::vector<std::string>& texts) {
  std::vector<ScoreResponse> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    const double loss = MockLoss(t);
    out.push_back({loss, std::exp(loss)});
  }
  return out;
}

void BackendConfig::ApplyEnvironment() {
  auto read = [](std::string_view name, ClientConfig& c) {
    if (const char* v = std::getenv(std::string(name).c_str()); v && *v) c.url = v;
  };
  read(kGenUrlEnv, generator);
  read(kSrlUrlEnv, srl);
  read(kScoreUrlEnv, scorer);
}

void BackendConfig::ApplyJson(const json& config) {
  try {
    if (config.contains("gen_url")) generator.url = config.at("gen_url").get<std::string>();
    if (config.contains("srl_url")) srl.url = config.at("srl_url").get<std::string>();
    if (config.contains("score_url")) scorer.url = config.at("score_url").get<std::string>();
    for (ClientConfig* c : {&generator, &srl, &scorer}) {
      if (config.contains("timeout_seconds"))
        c->timeout_seconds = config.at("timeout_seconds").get<double>();
      if (config.contains("max_retries")) c->max_retries = config.at("max_retries").get<int>();
      if (config.contains("backoff_ms")) c->backoff_ms = config.at("backoff_ms").get<int>();
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("backend config: ") + e.what());
  }
}

std::string NextRequestId(std::string_view kind) {
  static std::atomic<std::uint64_t> counter{0};
  static const auto epoch = static_cast<std::uint64_t>(
      std::chrono::system_clock::now().time_since_epoch().count());
  char buf[64];
  std::snprintf(buf, sizeof(buf), "-%llx-%llu", static_cast<unsigned long long>(epoch & 0xffffffff),
                static_cast<unsigned long long>(++counter));
  return std::string(kind) + buf;
}

HttpGenerator::HttpGenerator(ClientConfig config, WarningSink warn)
    : config_(std::move(config)), warn_(std::move(warn)) {}

std::vector<std::string> HttpGenerator::Generate(const GenerateRequest& request) {
  if (request.n_beams < 1) throw ContractViolation("n_beams must be >= 1");
  if (request.max_candidates <= 0) return {};
  const std::string id = NextRequestId("gen");
  const json body = {{"request_id", id},
                     {"prompt", request.prompt},
                     {"n_beams", request.n_beams},
                     {"no_repeat_bigrams", request.no_repeat_bigrams},
                     {"banned_phrases", request.banned_phrases},
                     {"max_candidates", request.max_candidates}};
  const json res = PostJson(config_, "/generate", body, id);
  std::vector<std::string> out;
  try {
    for (const auto& c : res.at("candidates")) out.push_back(c.get<std::string>());
  } catch (const json::exception& e) {
    throw SchemaError(std::string("/generate: ") + e.what());
  }
  if (!request.banned_phrases.empty() && res.value("constraints_supported", true) == false &&
      warn_)
    warn_("generator backend ignored banned phrases [request " + id + "]");
  if (out.size() > static_cast<std::size_t>(request.max_candidates))
    out.resize(request.max_candidates);
  return out;
}

HttpSrlPredictor::HttpSrlPredictor(ClientConfig config) : config_(std::move(config)) {}

SrlSentence HttpSrlPredictor::Predict(std::string_view text) {
  if (Trim(text).empty()) throw SchemaError("empty text");
  const std::string id = NextRequestId("srl");
  const json res = PostJson(config_, "/srl", {{"request_id", id}, {"text", text}}, id);
  if (!res.is_object()) throw SchemaError("/srl: response is not an object");
  try {
    return SentenceFromJson(res, id, nullptr);
  } catch (const ParseError& e) {
    throw SchemaError(std::string("/srl: ") + e.what());
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("/srl: ") + e.what());
  }
}

ScoreResponse ScoreResponseFromJson(const json& j) {
  try {
    ScoreResponse r;
    r.loss = j.at("loss").get<double>();
    if (!(r.loss > 0) || !std::isfinite(r.loss)) throw SchemaError("loss must be positive");
    r.perplexity = j.contains("perplexity") ? j.at("perplexity").get<double>() : std::exp(r.loss);
    if (!(r.perplexity > 0)) throw SchemaError("perplexity must be positive");
    if (std::abs(r.perplexity - std::exp(r.loss)) > 1e-6 * std::exp(r.loss))
      throw SchemaError("perplexity is not exp(loss)");
    return r;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("score entry: ") + e.what());
  }
}

HttpScorer::HttpScorer(ClientConfig config) : config_(std::move(config)) {}

std::vector<ScoreResponse> HttpScorer::Score(const std::vector<std::string>& texts) {
  if (texts.empty()) return {};
  const std::string id = NextRequestId("score");
  const json res = PostJson(config_, "/score", {{"request_id", id}, {"texts", texts}}, id);
  std::vector<ScoreResponse> out;
  try {
    for (const auto& r : res.at("results")) out.push_back(ScoreResponseFromJson(r));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("/score: ") + e.what());
  }
  if (out.size() != texts.size())
    throw SchemaError("/score: expected " + std::to_string(texts.size()) + " results, got " +
                      std::to_string(out.size()));
  return out;
}

Backends MakeBackends(const BackendConfig& config, bool mock, WarningSink warn) {
  Backends b;
  if (mock) {
    b.generator = std::make_shared<MockGenerator>();
    b.srl = std::make_shared<MockSrlPredictor>();
    b.scorer = std::make_shared<MockScorer>();
    return b;
  }
  if (!config.generator.url.empty())
    b.generator = std::make_shared<HttpGenerator>(config.generator, std::move(warn));
  if (!config.srl.url.empty()) b.srl = std::make_shared<HttpSrlPredictor>(config.srl);
  if (!config.scorer.url.empty()) b.scorer = std::make_shared<HttpScorer>(config.scorer);
  return b;
}

}  // namespace srlgen
