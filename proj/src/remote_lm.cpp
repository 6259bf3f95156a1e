#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "unicrag/generation.hpp"

using json = nlohmann::json;

namespace unicrag {

struct RemoteChatAdapter::Impl {
    RemoteChatConfig cfg;
    LogSink log;
    httplib::Client client;
    std::mutex mutex;
    std::condition_variable cv;
    int in_flight = 0;

    Impl(RemoteChatConfig c, LogSink l)
        : cfg(std::move(c)), log(std::move(l)), client(cfg.base_url) {
        if (cfg.base_url.empty()) {
            throw std::invalid_argument("remote adapter requires a base url");
        }
        const auto timeout = std::chrono::milliseconds(cfg.timeout_ms);
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
        client.set_keep_alive(true);
    }

    void emit(const std::string& line) {
        if (log) log(line);
    }

    // One guarded slot per request; bounds concurrent use of the adapter.
    struct Slot {
        Impl& impl;
        explicit Slot(Impl& i) : impl(i) {
            std::unique_lock<std::mutex> lock(impl.mutex);
            impl.cv.wait(lock,
                         [&] { return impl.in_flight < impl.cfg.max_in_flight; });
            ++impl.in_flight;
        }
        ~Slot() {
            {
                std::lock_guard<std::mutex> lock(impl.mutex);
                --impl.in_flight;
            }
            impl.cv.notify_one();
        }
    };

    std::string chat(const std::string& system_text, const std::string& user_text) {
        Slot slot(*this);
        const json body{{"model", cfg.model},
                        {"messages",
                         json::array({json{{"role", "system"}, {"content", system_text}},
                                      json{{"role", "user"}, {"content", user_text}}})},
                        {"temperature", cfg.temperature}};
        const std::string payload = body.dump();

        httplib::Headers headers;
        if (!cfg.api_key_env.empty()) {
            if (const char* token = std::getenv(cfg.api_key_env.c_str())) {
                headers.emplace("Authorization", std::string("Bearer ") + token);
            }
        }

        std::string last_error;
        const int attempts = 1 + cfg.max_retries;
        for (int attempt = 0; attempt < attempts; ++attempt) {
            if (attempt > 0) {
                const auto delay =
                    std::chrono::milliseconds(cfg.backoff_ms << (attempt - 1));
                std::this_thread::sleep_for(delay);
            }
            auto res = client.Post(cfg.path, headers, payload, "application/json");
            if (!res) {
                last_error = "transport error: " + httplib::to_string(res.error());
                emit("chat attempt " + std::to_string(attempt + 1) + " failed (" +
                     last_error + ")");
                continue;
            }
            if (res->status >= 500) {
                last_error = "status " + std::to_string(res->status) + ": " +
                             res->body.substr(0, 200);
                emit("chat attempt " + std::to_string(attempt + 1) +
                     " failed (status " + std::to_string(res->status) + ")");
                continue;
            }
            if (res->status != 200) {
                throw std::runtime_error("chat request failed with status " +
                                         std::to_string(res->status) + ": " +
                                         res->body.substr(0, 200));
            }
            try {
                const json reply = json::parse(res->body);
                return reply.at("choices").at(0).at("message").at("content")
                    .get<std::string>();
            } catch (const json::exception& e) {
                throw std::runtime_error("malformed chat response: " +
                                         std::string(e.what()) + ": " +
                                         res->body.substr(0, 200));
            }
        }
        throw std::runtime_error("chat request failed after " +
                                 std::to_string(attempts) + " attempts (" +
                                 last_error + ")");
    }
};

RemoteChatAdapter::RemoteChatAdapter(RemoteChatConfig config, LogSink log)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(log))) {}

RemoteChatAdapter::~RemoteChatAdapter() = default;

std::string RemoteChatAdapter::kind() const { return "remote"; }

std::string RemoteChatAdapter::chat(const std::string& system_text,
                                    const std::string& user_text) {
    return impl_->chat(system_text, user_text);
}

std::string RemoteChatAdapter::generate(const AssembledPrompt& prompt) {
    return impl_->chat(prompt.system_text, prompt.user_text());
}

Judgment RemoteChatAdapter::judge_denial(const std::string& query,
                                         const std::string& response) {
    const std::string user = "Query: " + query + "\nResponse: " + response +
                             "\nJudgment:";
    return parse_judgment(impl_->chat(judge_fewshot_prompt(), user));
}

std::string RemoteChatAdapter::paraphrase(const std::string& query) {
    return impl_->chat("You are a helpful assistant.", paraphrase_request(query));
}

}  // namespace unicrag
