#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nl2ltl {

struct GenerationConfig {
  std::string model_name = "gpt-4";
  double temperature = 0.2;
  int max_new_tokens = 400;
  std::vector<std::string> stop_sequences = {"FINISH"};
  std::chrono::milliseconds request_timeout{60000};
  int max_network_retries = 3;

  // Throws std::invalid_argument.
  void validate() const;
};

// Sampling parameters only; timeout and retry count do not change the output.
std::string fingerprint(const GenerationConfig &cfg);

enum class FinishReason { stop, length, error };
std::string to_string(FinishReason reason);

struct Completion {
  std::string text;
  FinishReason finish_reason = FinishReason::stop;
  std::chrono::milliseconds latency{0};
  std::map<std::string, std::string> provider_metadata;
};

// Identifies the pipeline run and attempt issuing a request.
struct CallContext {
  std::size_t run = 0;
  std::size_t attempt = 0;
};

class GatewayError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NetworkError : public GatewayError {
public:
  using GatewayError::GatewayError;
};

class AuthenticationError : public GatewayError {
public:
  using GatewayError::GatewayError;
};

class ProviderError : public GatewayError {
public:
  ProviderError(const std::string &message, int status) : GatewayError(message), status_(status) {}
  int status() const { return status_; }

private:
  int status_;
};

class ReplayMissError : public GatewayError {
public:
  using GatewayError::GatewayError;
};

class StoreError : public GatewayError {
public:
  using GatewayError::GatewayError;
};

class Backend {
public:
  virtual ~Backend() = default;
  virtual Completion complete(const std::string &prompt, const GenerationConfig &cfg,
                              const CallContext &context = {}) = 0;
};

struct ScriptedReply {
  ScriptedReply(std::string t) : text(std::move(t)) {}
  ScriptedReply(const char *t) : text(t) {}
  static ScriptedReply failure(std::string message);

  std::string text;
  std::optional<std::string> error;
};

/* Returns queued replies in order. Replies queued for a specific run are
 * consumed by that run only, so concurrent runs stay deterministic; other
 * calls draw from the shared queue.
 */
class ScriptedBackend : public Backend {
public:
  ScriptedBackend() = default;
  explicit ScriptedBackend(std::vector<ScriptedReply> shared);

  void push(ScriptedReply reply);
  void set_run_script(std::size_t run, std::vector<ScriptedReply> replies);

  Completion complete(const std::string &prompt, const GenerationConfig &cfg,
                      const CallContext &context = {}) override;

  std::size_t call_count() const;
  std::vector<std::string> prompts() const;

private:
  mutable std::mutex mutex_;
  std::deque<ScriptedReply> shared_;
  std::map<std::size_t, std::deque<ScriptedReply>> per_run_;
  std::vector<std::string> prompts_;
};

std::string sha256_hex(const std::string &data);

/* Line-delimited JSON store of recorded completions keyed by the prompt's
 * SHA-256 and the config fingerprint. Appends are serialized; when a key is
 * recorded twice the later record wins.
 */
class ReplayStore {
public:
  explicit ReplayStore(std::string path);

  std::optional<std::string> lookup(const std::string &prompt, const GenerationConfig &cfg) const;
  void append(const std::string &prompt, const GenerationConfig &cfg, const std::string &text);
  std::size_t size() const;
  const std::string &path() const { return path_; }

private:
  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::string, std::string> records_;
};

class ReplayBackend : public Backend {
public:
  explicit ReplayBackend(std::shared_ptr<ReplayStore> store) : store_(std::move(store)) {}
  Completion complete(const std::string &prompt, const GenerationConfig &cfg,
                      const CallContext &context = {}) override;

private:
  std::shared_ptr<ReplayStore> store_;
};

// Forwards to another backend and persists every successful completion.
class RecordingBackend : public Backend {
public:
  RecordingBackend(std::shared_ptr<Backend> inner, std::shared_ptr<ReplayStore> store)
      : inner_(std::move(inner)), store_(std::move(store)) {}
  Completion complete(const std::string &prompt, const GenerationConfig &cfg,
                      const CallContext &context = {}) override;

private:
  std::shared_ptr<Backend> inner_;
  std::shared_ptr<ReplayStore> store_;
};

struct LiveOptions {
  // Full chat-completions URL, e.g. https://api.openai.com/v1/chat/completions
  std::string endpoint;
  std::string api_key;
  std::chrono::milliseconds initial_backoff{500};
};

inline constexpr const char *kEndpointEnv = "NL2LTL_ENDPOINT";
inline constexpr const char *kApiKeyEnv = "NL2LTL_API_KEY";

// Endpoint and key from the environment; endpoint may be overridden.
LiveOptions live_options_from_env(const std::optional<std::string> &endpoint = std::nullopt);

class LiveBackend : public Backend {
public:
  explicit LiveBackend(LiveOptions options);
  Completion complete(const std::string &prompt, const GenerationConfig &cfg,
                      const CallContext &context = {}) override;

private:
  LiveOptions options_;
  std::string base_;
  std::string path_;
};

// Record helper: one completion from `backend`, persisted to `store_path`.
Completion record(Backend &backend, const std::string &prompt, const GenerationConfig &cfg,
                  const std::string &store_path);

} // namespace nl2ltl
