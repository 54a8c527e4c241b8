#include <httplib.h>
#include <json.hpp>

#include "nl2ltl/gateway.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <thread>

namespace nl2ltl {

using json = nlohmann::json;

namespace {

std::string store_key(const std::string &prompt_hash, const std::string &config) { return prompt_hash + "\n" + config; }

std::string provider_message(const std::string &body) {
  try {
    const json j = json::parse(body);
    if (j.contains("error")) {
      const json &e = j["error"];
      if (e.is_object() && e.contains("message") && e["message"].is_string()) {
        return e["message"].get<std::string>();
      }
      if (e.is_string()) {
        return e.get<std::string>();
      }
    }
  } catch (const json::exception &) {
  }
  return body.substr(0, 200);
}

} // namespace

void GenerationConfig::validate() const {
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw std::invalid_argument("temperature must lie in [0, 2]");
  }
  if (max_new_tokens < 1) {
    throw std::invalid_argument("max_new_tokens must be at least 1");
  }
  if (max_network_retries < 0) {
    throw std::invalid_argument("max_network_retries must not be negative");
  }
}

std::string fingerprint(const GenerationConfig &cfg) {
  std::ostringstream out;
  out << "model=" << cfg.model_name << ";temperature=" << std::setprecision(6) << cfg.temperature
      << ";max_new_tokens=" << cfg.max_new_tokens << ";stop=" << json(cfg.stop_sequences).dump();
  return out.str();
}

std::string to_string(FinishReason reason) {
  switch (reason) {
  case FinishReason::stop:
    return "stop";
  case FinishReason::length:
    return "length";
  case FinishReason::error:
    return "error";
  }
  return "error";
}

ScriptedReply ScriptedReply::failure(std::string message) {
  ScriptedReply r("");
  r.error = std::move(message);
  return r;
}

ScriptedBackend::ScriptedBackend(std::vector<ScriptedReply> shared) : shared_(shared.begin(), shared.end()) {}

void ScriptedBackend::push(ScriptedReply reply) {
  std::lock_guard lock(mutex_);
  shared_.push_back(std::move(reply));
}

void ScriptedBackend::set_run_script(std::size_t run, std::vector<ScriptedReply> replies) {
  std::lock_guard lock(mutex_);
  per_run_[run] = std::deque<ScriptedReply>(replies.begin(), replies.end());
}

Completion ScriptedBackend::complete(const std::string &prompt, const GenerationConfig &cfg,
                                     const CallContext &context) {
  cfg.validate();
  std::optional<ScriptedReply> reply;
  {
    std::lock_guard lock(mutex_);
    prompts_.push_back(prompt);
    auto run = per_run_.find(context.run);
    auto &queue = run != per_run_.end() ? run->second : shared_;
    if (!queue.empty()) {
      reply = std::move(queue.front());
      queue.pop_front();
    }
  }
  if (!reply) {
    throw GatewayError("scripted backend has no reply left for run " + std::to_string(context.run));
  }
  if (reply->error) {
    throw ProviderError(*reply->error, 0);
  }
  Completion c;
  c.text = std::move(reply->text);
  c.provider_metadata["backend"] = "scripted";
  return c;
}

std::size_t ScriptedBackend::call_count() const {
  std::lock_guard lock(mutex_);
  return prompts_.size();
}

std::vector<std::string> ScriptedBackend::prompts() const {
  std::lock_guard lock(mutex_);
  return prompts_;
}

std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

ReplayStore::ReplayStore(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) {
    return;
  }
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      const json j = json::parse(line);
      records_[store_key(j.at("prompt_sha256").get<std::string>(), j.at("config").get<std::string>())] =
          j.at("text").get<std::string>();
    } catch (const json::exception &e) {
      throw StoreError("replay store " + path_ + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::optional<std::string> ReplayStore::lookup(const std::string &prompt, const GenerationConfig &cfg) const {
  std::lock_guard lock(mutex_);
  auto it = records_.find(store_key(sha256_hex(prompt), fingerprint(cfg)));
  if (it == records_.end()) {
    return std::nullopt;
  }
  return it->second;
}

void ReplayStore::append(const std::string &prompt, const GenerationConfig &cfg, const std::string &text) {
  const std::string hash = sha256_hex(prompt);
  const std::string config = fingerprint(cfg);
  const json record = {{"schema_version", 1}, {"prompt_sha256", hash}, {"config", config}, {"text", text}};
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) {
    throw StoreError("cannot open replay store '" + path_ + "' for writing");
  }
  out << record.dump() << '\n';
  if (!out.flush()) {
    throw StoreError("write to replay store '" + path_ + "' failed");
  }
  records_[store_key(hash, config)] = text;
}

std::size_t ReplayStore::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

Completion ReplayBackend::complete(const std::string &prompt, const GenerationConfig &cfg, const CallContext &) {
  auto text = store_->lookup(prompt, cfg);
  if (!text) {
    throw ReplayMissError("no recorded completion for prompt sha256 " + sha256_hex(prompt) + " with config " +
                          fingerprint(cfg));
  }
  Completion c;
  c.text = *text;
  c.provider_metadata["backend"] = "replay";
  return c;
}

Completion RecordingBackend::complete(const std::string &prompt, const GenerationConfig &cfg,
                                      const CallContext &context) {
  Completion c = inner_->complete(prompt, cfg, context);
  store_->append(prompt, cfg, c.text);
  return c;
}

LiveOptions live_options_from_env(const std::optional<std::string> &endpoint) {
  LiveOptions o;
  if (endpoint) {
    o.endpoint = *endpoint;
  } else if (const char *e = std::getenv(kEndpointEnv)) {
    o.endpoint = e;
  }
  if (const char *k = std::getenv(kApiKeyEnv)) {
    o.api_key = k;
  }
  return o;
}

LiveBackend::LiveBackend(LiveOptions options) : options_(std::move(options)) {
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(options_.endpoint, m, url)) {
    throw std::invalid_argument("endpoint '" + options_.endpoint + "' is not an http(s) URL");
  }
  base_ = m[1];
  path_ = m[2].matched ? std::string(m[2]) : "/v1/chat/completions";
}

Completion LiveBackend::complete(const std::string &prompt, const GenerationConfig &cfg, const CallContext &) {
  cfg.validate();
  if (prompt.empty()) {
    throw std::invalid_argument("prompt must not be empty");
  }
  if (options_.api_key.empty()) {
    throw AuthenticationError(std::string("missing API key; set ") + kApiKeyEnv);
  }
  json body = {{"model", cfg.model_name},
               {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
               {"temperature", cfg.temperature},
               {"max_tokens", cfg.max_new_tokens}};
  if (!cfg.stop_sequences.empty()) {
    body["stop"] = cfg.stop_sequences;
  }
  const std::string payload = body.dump();
  const httplib::Headers headers = {{"Authorization", "Bearer " + options_.api_key}};

  auto backoff = options_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= cfg.max_network_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(base_);
    client.set_connection_timeout(cfg.request_timeout);
    client.set_read_timeout(cfg.request_timeout);
    client.set_write_timeout(cfg.request_timeout);
    const auto started = std::chrono::steady_clock::now();
    auto res = client.Post(path_, headers, payload, "application/json");
    const auto latency =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    if (!res) {
      last_error = "network error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw AuthenticationError("authentication failed (HTTP " + std::to_string(res->status) +
                                "): " + provider_message(res->body));
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status) + ": " + provider_message(res->body);
      continue;
    }
    if (res->status != 200) {
      throw ProviderError("provider error (HTTP " + std::to_string(res->status) + "): " + provider_message(res->body),
                          res->status);
    }
    try {
      const json j = json::parse(res->body);
      const json &choice = j.at("choices").at(0);
      Completion c;
      c.text = choice.at("message").at("content").get<std::string>();
      const std::string reason = choice.value("finish_reason", std::string("stop"));
      c.finish_reason = reason == "length" ? FinishReason::length : FinishReason::stop;
      c.latency = latency;
      c.provider_metadata["backend"] = "live";
      if (j.contains("model") && j["model"].is_string()) {
        c.provider_metadata["model"] = j["model"].get<std::string>();
      }
      if (j.contains("id") && j["id"].is_string()) {
        c.provider_metadata["id"] = j["id"].get<std::string>();
      }
      return c;
    } catch (const json::exception &e) {
      throw ProviderError(std::string("malformed provider response: ") + e.what(), res->status);
    }
  }
  throw NetworkError(last_error + " (after " + std::to_string(cfg.max_network_retries) + " retries)");
}

Completion record(Backend &backend, const std::string &prompt, const GenerationConfig &cfg,
                  const std::string &store_path) {
  Completion c = backend.complete(prompt, cfg);
  ReplayStore(store_path).append(prompt, cfg, c.text);
  return c;
}

} // namespace nl2ltl
