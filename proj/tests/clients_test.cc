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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "srlgen/clients.h"
#include "srlgen/corpus.h"
#include "srlgen/error.h"
#include "test_util.h"

namespace srlgen {
namespace {

using nlohmann::json;

// Local HTTP backend; each route runs `handler` with the parsed request.
class StubServer {
 public:
  using Handler = std::function<void(const json& body, const httplib::Request&, httplib::Response&)>;

  StubServer() {
    for (const char* route : {"/generate", "/srl", "/score", "/api/generate"}) {
      server_.Post(route, [this](const httplib::Request& req, httplib::Response& res) {
        ++hits_;
        {
          std::lock_guard<std::mutex> lock(mu_);
          last_path_ = req.path;
          last_header_id_ = req.get_header_value("X-Request-Id");
        }
        handler_(json::parse(req.body), req, res);
      });
    }
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  void Handle(Handler h) { handler_ = std::move(h); }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int hits() const { return hits_; }
  std::string last_path() {
    std::lock_guard<std::mutex> lock(mu_);
    return last_path_;
  }
  std::string last_header_id() {
    std::lock_guard<std::mutex> lock(mu_);
    return last_header_id_;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  Handler handler_;
  std::mutex mu_;
  std::string last_path_, last_header_id_;
};

ClientConfig Fast(const std::string& url) {
  ClientConfig c;
  c.url = url;
  c.timeout_seconds = 2;
  c.max_retries = 2;
  c.backoff_ms = 1;
  return c;
}

void Reply(httplib::Response& res, const json& j) { res.set_content(j.dump(), "application/json"); }

TEST(HttpGeneratorTest, SendsDocumentedRequest) {
  StubServer stub;
  json seen;
  stub.Handle([&](const json& body, const httplib::Request&, httplib::Response& res) {
    seen = body;
    Reply(res, {{"candidates", {"[VERB: ran] .", "[VERB: runs] .", "[VERB: run] ."}}});
  });
  HttpGenerator gen(Fast(stub.url()));
  GenerateRequest req;
  req.prompt = "[VERB+active+past: run] <extra_id_0> .";
  req.banned_phrases = {"walk"};
  req.max_candidates = 2;
  auto out = gen.Generate(req);
  EXPECT_EQ(out, (std::vector<std::string>{"[VERB: ran] .", "[VERB: runs] ."}));
  EXPECT_EQ(seen["prompt"], req.prompt);
  EXPECT_EQ(seen["n_beams"], 10);
  EXPECT_EQ(seen["no_repeat_bigrams"], true);
  EXPECT_EQ(seen["banned_phrases"], json::array({"walk"}));
  EXPECT_EQ(seen["max_candidates"], 2);
  EXPECT_EQ(seen["request_id"], stub.last_header_id());
  EXPECT_EQ(stub.last_path(), "/generate");
}

TEST(HttpGeneratorTest, UrlPrefix) {
  StubServer stub;
  stub.Handle([](const json&, const httplib::Request&, httplib::Response& res) {
    Reply(res, {{"candidates", json::array()}});
  });
  HttpGenerator gen(Fast(stub.url() + "/api/"));
  EXPECT_TRUE(gen.Generate({"[VERB+active+past: run] <extra_id_0>"}).empty());
  EXPECT_EQ(stub.last_path(), "/api/generate");
}

TEST(HttpGeneratorTest, RetriesServerErrors) {
  StubServer stub;
  std::atomic<int> calls{0};
  std::set<std::string> ids;
  std::mutex mu;
  stub.Handle([&](const json& body, const httplib::Request&, httplib::Response& res) {
    {
      std::lock_guard<std::mutex> lock(mu);
      ids.insert(body["request_id"].get<std::string>());
    }
    if (++calls < 3) {
      res.status = 503;
      return;
    }
    Reply(res, {{"candidates", {"[VERB: ran] ."}}});
  });
  HttpGenerator gen(Fast(stub.url()));
  EXPECT_EQ(gen.Generate({"p"}).size(), 1u);
  EXPECT_EQ(calls, 3);
  EXPECT_EQ(ids.size(), 1u);  // retries reuse the request id
}

TEST(HttpGeneratorTest, GivesUpWithRequestId) {
  StubServer stub;
  stub.Handle([](const json&, const httplib::Request&, httplib::Response& res) { res.status = 500; });
  HttpGenerator gen(Fast(stub.url()));
  try {
    gen.Generate({"p"});
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.request_id(), stub.last_header_id());
    EXPECT_FALSE(e.request_id().empty());
  }
  EXPECT_EQ(stub.hits(), 3);
}

TEST(HttpGeneratorTest, ClientErrorsAreNotRetried) {
  StubServer stub;
  stub.Handle([](const json&, const httplib::Request&, httplib::Response& res) { res.status = 400; });
  HttpGenerator gen(Fast(stub.url()));
  EXPECT_THROW(gen.Generate({"p"}), TransportError);
  EXPECT_EQ(stub.hits(), 1);
}

TEST(HttpGeneratorTest, UnreachableBackend) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  ClientConfig c = Fast("http://127.0.0.1:" + std::to_string(port));
  c.max_retries = 1;
  c.timeout_seconds = 0.5;
  HttpGenerator gen(c);
  EXPECT_THROW(gen.Generate({"p"}), TransportError);
}

TEST(HttpGeneratorTest, SchemaErrors) {
  StubServer stub;
  std::string body = "not json";
  stub.Handle([&](const json&, const httplib::Request&, httplib::Response& res) {
    res.set_content(body, "application/json");
  });
  HttpGenerator gen(Fast(stub.url()));
  EXPECT_THROW(gen.Generate({"p"}), SchemaError);
  body = R"({"texts": []})";
  EXPECT_THROW(gen.Generate({"p"}), SchemaError);
  body = R"({"candidates": [1]})";
  EXPECT_THROW(gen.Generate({"p"}), SchemaError);
}

TEST(HttpGeneratorTest, WarnsWhenConstraintsIgnored) {
  StubServer stub;
  stub.Handle([](const json&, const httplib::Request&, httplib::Response& res) {
    Reply(res, {{"candidates", {"x"}}, {"constraints_supported", false}});
  });
  std::vector<std::string> warnings;
  HttpGenerator gen(Fast(stub.url()), [&](const std::string& w) { warnings.push_back(w); });
  GenerateRequest req{"p"};
  req.banned_phrases = {"x"};
  gen.Generate(req);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("banned"), std::string::npos);
}

TEST(HttpGeneratorTest, ConcurrentRequests) {
  StubServer stub;
  stub.Handle([](const json& body, const httplib::Request&, httplib::Response& res) {
    Reply(res, {{"candidates", {body["prompt"]}}});
  });
  HttpGenerator gen(Fast(stub.url()));
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      const std::string p = "prompt " + std::to_string(t);
      if (gen.Generate({p}) == std::vector<std::string>{p}) ++ok;
    });
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok, 8);
}

TEST(HttpScorerTest, PerplexityAndOrder) {
  StubServer stub;
  stub.Handle([](const json& body, const httplib::Request&, httplib::Response& res) {
    json results = json::array();
    double loss = 2.0;
    for (std::size_t i = 0; i < body["texts"].size(); ++i) results.push_back({{"loss", loss++}});
    Reply(res, {{"results", results}});
  });
  HttpScorer scorer(Fast(stub.url()));
  ScoreResponse one = scorer.Score(std::string("a"));
  EXPECT_DOUBLE_EQ(one.loss, 2.0);
  EXPECT_NEAR(one.perplexity, std::exp(2.0), 1e-12);
  auto batch = scorer.Score(std::vector<std::string>{"a", "b", "c"});
  ASSERT_EQ(batch.size(), 3u);
  EXPECT_DOUBLE_EQ(batch[2].loss, 4.0);
  EXPECT_TRUE(scorer.Score(std::vector<std::string>{}).empty());
}

TEST(HttpScorerTest, Malformed) {
  StubServer stub;
  json reply;
  stub.Handle([&](const json&, const httplib::Request&, httplib::Response& res) { Reply(res, reply); });
  HttpScorer scorer(Fast(stub.url()));
  reply = {{"results", json::array({{{"loss", 1.0}}})}};
  EXPECT_THROW(scorer.Score(std::vector<std::string>{"a", "b"}), SchemaError);
  reply = {{"results", json::array({{{"loss", 1.0}, {"perplexity", 9.0}}})}};
  EXPECT_THROW(scorer.Score(std::string("a")), SchemaError);
  reply = {{"results", json::array({{{"loss", -1.0}}})}};
  EXPECT_THROW(scorer.Score(std::string("a")), SchemaError);
  reply = {{"scores", json::array()}};
  EXPECT_THROW(scorer.Score(std::string("a")), SchemaError);
}

TEST(HttpSrlTest, DecodesSentence) {
  StubServer stub;
  auto s = srlgen_test::OperatingRoom();
  json reply = SentenceToJson(*s);
  std::string sent;
  stub.Handle([&](const json& body, const httplib::Request&, httplib::Response& res) {
    sent = body["text"];
    Reply(res, reply);
  });
  HttpSrlPredictor srl(Fast(stub.url()));
  SrlSentence got = srl.Predict(s->text());
  EXPECT_EQ(sent, s->text());
  EXPECT_EQ(got.text(), s->text());
  ASSERT_EQ(got.frames.size(), 1u);
  EXPECT_EQ(got.frames[0].lemma, "comfort");
  reply = {{"tokens", {"a"}}, {"frames", {{{"verb_index", 7}}}}};
  EXPECT_THROW(srl.Predict("a"), SchemaError);
  reply = json::array();
  EXPECT_THROW(srl.Predict("a"), SchemaError);
  EXPECT_THROW(srl.Predict("  "), SchemaError);
}

TEST(ScoreResponseTest, DerivesPerplexity) {
  ScoreResponse r = ScoreResponseFromJson({{"loss", 2.0}});
  EXPECT_NEAR(r.perplexity, std::exp(2.0), 1e-12);
  EXPECT_THROW(ScoreResponseFromJson({{"perplexity", 2.0}}), SchemaError);
}

TEST(BackendConfigTest, EnvironmentAndJson) {
  BackendConfig c;
  ::setenv("TAILOR_GEN_URL", "http://gen:1", 1);
  ::setenv("TAILOR_SRL_URL", "http://srl:2", 1);
  ::unsetenv("TAILOR_SCORE_URL");
  c.ApplyEnvironment();
  EXPECT_EQ(c.generator.url, "http://gen:1");
  EXPECT_EQ(c.srl.url, "http://srl:2");
  EXPECT_TRUE(c.scorer.url.empty());
  c.ApplyJson({{"score_url", "http://score:3"}, {"max_retries", 5}, {"timeout_seconds", 1.5}});
  EXPECT_EQ(c.scorer.url, "http://score:3");
  EXPECT_EQ(c.generator.max_retries, 5);
  EXPECT_DOUBLE_EQ(c.srl.timeout_seconds, 1.5);
  EXPECT_THROW(c.ApplyJson({{"max_retries", "many"}}), SchemaError);
  ::unsetenv("TAILOR_GEN_URL");
  ::unsetenv("TAILOR_SRL_URL");
}

TEST(MakeBackendsTest, MockAndMissing) {
  Backends mock = MakeBackends({}, true);
  EXPECT_TRUE(mock.generator && mock.srl && mock.scorer);
  Backends none = MakeBackends({}, false);
  EXPECT_FALSE(none.generator || none.srl || none.scorer);
}

TEST(MockBackendsTest, GeneratorHonorsBannedPhrases) {
  MockGenerator gen;
  GenerateRequest req{"[VERB+active+past: comfort | AGENT+complete: the doctor] <extra_id_0> <extra_id_1> ."};
  ASSERT_EQ(gen.Generate(req).size(), 1u);
  req.banned_phrases = {"The Doctor"};
  EXPECT_TRUE(gen.Generate(req).empty());
  req.max_candidates = 0;
  EXPECT_TRUE(gen.Generate(req).empty());
}

TEST(MockBackendsTest, ScorerIsConsistent) {
  MockScorer s;
  auto r = s.Score(std::vector<std::string>{"a b", "c"});
  ASSERT_EQ(r.size(), 2u);
  for (const auto& x : r) EXPECT_NEAR(x.perplexity, std::exp(x.loss), 1e-9);
}

TEST(RequestIdTest, Unique) {
  std::set<std::string> ids;
  for (int i = 0; i < 100; ++i) ids.insert(NextRequestId("gen"));
  EXPECT_EQ(ids.size(), 100u);
  EXPECT_EQ(NextRequestId("srl").rfind("srl-", 0), 0u);
}

}  // namespace
}  // namespace srlgen
