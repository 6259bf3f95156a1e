#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unicrag/payloads.hpp"

namespace unicrag {

// RAG prompt: fixed assistant header plus retrieved contexts in rank
// order and the user query.
struct AssembledPrompt {
    std::string system_text;
    std::vector<std::string> contexts;
    std::string query;

    std::string user_text() const;  // contexts + query + answer cue
    std::string render() const;     // full template as one string
};

AssembledPrompt assemble_prompt(const std::string& query,
                                const std::vector<std::string>& contexts);

enum class Judgment { Yes, No };

using LogSink = std::function<void(const std::string&)>;

class LMAdapter {
public:
    virtual ~LMAdapter() = default;
    virtual std::string kind() const = 0;
    virtual std::string generate(const AssembledPrompt& prompt) = 0;
    // YES/NO: did the response answer the query (Yes) or deny it (No)?
    virtual Judgment judge_denial(const std::string& query,
                                  const std::string& response) = 0;
    virtual std::string paraphrase(const std::string& query) = 0;
};

enum class MockBehavior { InstructionFollowing, Robust, Probabilistic };
enum class MockParaphrase { Rotate, Reword };

// Deterministic offline stand-in. Generation scans the contexts for the
// exact payload text of any known payload (the run's payload plus the
// built-in library) and, depending on behavior, answers with that
// payload's instructed response; otherwise "ANSWER(<query>)". Judging
// matches known refusal phrases. All outputs are pure functions of the
// inputs and constructor arguments.
class MockAdapter : public LMAdapter {
public:
    explicit MockAdapter(MockBehavior behavior,
                         double obey_probability = 0.5, std::uint64_t seed = 0,
                         MockParaphrase paraphrase_mode = MockParaphrase::Rotate,
                         std::vector<Payload> extra_payloads = {});

    std::string kind() const override;
    std::string generate(const AssembledPrompt& prompt) override;
    Judgment judge_denial(const std::string& query,
                          const std::string& response) override;
    std::string paraphrase(const std::string& query) override;

private:
    MockBehavior behavior_;
    double obey_probability_;
    std::uint64_t seed_;
    MockParaphrase paraphrase_mode_;
    std::vector<Payload> payloads_;
};

struct RemoteChatConfig {
    std::string base_url;  // e.g. http://127.0.0.1:8080
    std::string path = "/v1/chat/completions";
    std::string model;
    std::string api_key_env;  // env var holding the bearer token
    double temperature = 0.0;
    int timeout_ms = 10000;
    int max_retries = 3;
    int backoff_ms = 200;
    int max_in_flight = 4;
};

// JSON-over-HTTP chat-completion client. Sends {model, messages, temperature}
// with a system and a user message, reads the first choice's message
// content. Transient transport failures and 5xx responses retry with
// exponential backoff; other non-success statuses raise an error carrying
// the status and a body excerpt. The bearer token is read from the
// configured environment variable at request time and never logged.
class RemoteChatAdapter : public LMAdapter {
public:
    explicit RemoteChatAdapter(RemoteChatConfig config, LogSink log = nullptr);
    ~RemoteChatAdapter() override;

    std::string kind() const override;
    std::string generate(const AssembledPrompt& prompt) override;
    Judgment judge_denial(const std::string& query,
                          const std::string& response) override;
    std::string paraphrase(const std::string& query) override;

    std::string chat(const std::string& system_text, const std::string& user_text);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Fixed few-shot judging prompt shipped with the toolkit; its hash is
// recorded in reports.
const std::string& judge_fewshot_prompt();
std::uint64_t judge_prompt_hash();
Judgment parse_judgment(const std::string& output);

const std::vector<std::string>& refusal_phrases();

// Fixed wording sent to a remote model when paraphrasing a query.
std::string paraphrase_request(const std::string& query);

// "mock:instruction-following", "mock:robust", "mock:probabilistic:0.5",
// or "remote". Mock specs accept an optional ":reword" suffix selecting
// the token-altering paraphraser.
std::unique_ptr<LMAdapter> make_adapter(const std::string& spec,
                                        const RemoteChatConfig& remote,
                                        std::vector<Payload> extra_payloads = {},
                                        std::uint64_t seed = 0,
                                        LogSink log = nullptr);

}  // namespace unicrag
