// Release-gate acceptance suite. Each criterion prints exactly one
// [PASS]/[FAIL] line; the process exits nonzero if any criterion fails.
// Tolerances and budgets are pinned as constants next to each check.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "unicrag/attack.hpp"
#include "unicrag/cli.hpp"
#include "unicrag/clustering.hpp"
#include "unicrag/corpus.hpp"
#include "unicrag/encoder.hpp"
#include "unicrag/eval.hpp"
#include "unicrag/generation.hpp"
#include "unicrag/payloads.hpp"
#include "unicrag/rng.hpp"
#include "unicrag/synth.hpp"
#include "unicrag/tokenizer.hpp"
#include "unicrag/util.hpp"

using namespace unicrag;
using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double value, int precision = 2) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << value;
    return os.str();
}

std::string fmt_sci(double value) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << value;
    return os.str();
}

// Vocabulary of `words` plain tokens behind the two reserved entries.
std::vector<std::string> word_vocab(std::size_t words) {
    std::vector<std::string> vocab{Tokenizer::kUnknownToken, Tokenizer::kMaskToken};
    for (std::size_t i = 0; i < words; ++i) vocab.push_back("t" + std::to_string(i));
    return vocab;
}

QuerySet random_queries(SeededRng& rng, std::size_t count, std::size_t words) {
    QuerySet qs;
    for (std::size_t q = 0; q < count; ++q) {
        std::string text;
        const std::size_t len = 1 + rng.uniform_index(5);
        for (std::size_t w = 0; w < len; ++w) {
            if (w) text += ' ';
            text += "t" + std::to_string(rng.uniform_index(words));
        }
        qs.queries.push_back({"q" + std::to_string(q), text});
    }
    return qs;
}

std::vector<Embedding> embed_queries(const QuerySet& qs, const TextEncoder& enc) {
    std::vector<Embedding> out;
    out.reserve(qs.size());
    for (const auto& q : qs.queries) out.push_back(enc.encode_query(q.text));
    return out;
}

// --- criterion 1 ------------------------------------------------------

constexpr double kClusteringBudgetSeconds = 10.0;

bool clustering_invariants(std::string& detail) {
    SeededRng rng(101);
    const auto vocab = word_vocab(30);
    const auto start = Clock::now();
    for (int instance = 0; instance < 200; ++instance) {
        const std::size_t m = 1 + rng.uniform_index(200);
        const std::size_t n = 1 + rng.uniform_index(m);
        const std::size_t dim = 2 + rng.uniform_index(6);
        const auto metric = (instance % 2 == 0) ? SimilarityMetric::DotProduct
                                                : SimilarityMetric::Cosine;
        const auto enc =
            MeanPoolingEncoder::from_seed(vocab, dim, 500 + static_cast<std::uint64_t>(instance));
        const auto qs = random_queries(rng, m, 30);
        const auto part = balanced_similarity_clustering(
            qs, enc, metric, n, 900 + static_cast<std::uint64_t>(instance));
        if (part.clusters.size() != n) {
            detail = "instance " + std::to_string(instance) + ": wrong cluster count";
            return false;
        }
        std::set<std::string> seen;
        std::size_t total = 0;
        for (const auto& cluster : part.clusters) {
            if (cluster.member_ids.size() < m / n) {
                detail = "instance " + std::to_string(instance) + ": cluster below quota";
                return false;
            }
            bool holds_seed = false;
            for (const auto& id : cluster.member_ids) {
                if (!seen.insert(id).second) {
                    detail = "instance " + std::to_string(instance) + ": duplicate member " + id;
                    return false;
                }
                holds_seed = holds_seed || id == cluster.seed_query_id;
            }
            if (!holds_seed) {
                detail = "instance " + std::to_string(instance) + ": seed outside its cluster";
                return false;
            }
            total += cluster.member_ids.size();
        }
        if (total != m) {
            detail = "instance " + std::to_string(instance) + ": not a partition";
            return false;
        }
    }
    const double secs = seconds_since(start);
    detail = "200 instances, |Q|<=200, in " + fmt(secs) + "s";
    return secs < kClusteringBudgetSeconds;
}

// --- criterion 2 ------------------------------------------------------

MeanPoolingEncoder two_blob_encoder() {
    Tokenizer tok({"[UNK]", "[MASK]", "a0", "a1", "b0", "b1"});
    EmbeddingTable table(2, 6, {1e-3, 1e-3, 1e-3, 1e-3, 10, 0, 9, 1, 0, 10, 1, 9});
    return MeanPoolingEncoder(std::move(tok), std::move(table));
}

bool seed_enumeration_recovers_blobs(std::string& detail) {
    const auto enc = two_blob_encoder();
    QuerySet qs;
    qs.queries = {{"q0", "a0"}, {"q1", "a1"}, {"q2", "b0"}, {"q3", "b1"}};
    const std::set<std::set<std::string>> expected{{"q0", "q1"}, {"q2", "q3"}};
    const auto blob_of = [](std::size_t i) { return i / 2; };
    int pairs = 0;
    for (const auto metric : {SimilarityMetric::DotProduct, SimilarityMetric::Cosine}) {
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                if (blob_of(i) == blob_of(j)) continue;  // admissible: one seed per blob
                const auto part =
                    balanced_similarity_clustering_with_seeds(qs, enc, metric, {i, j});
                std::set<std::set<std::string>> got;
                for (const auto& cluster : part.clusters) {
                    got.insert({cluster.member_ids.begin(), cluster.member_ids.end()});
                }
                if (got != expected) {
                    detail = "seeds (" + std::to_string(i) + "," + std::to_string(j) +
                             ") under " + to_string(metric) + " split the blobs wrong";
                    return false;
                }
                ++pairs;
            }
        }
    }
    detail = std::to_string(pairs) + " admissible seed pairs recover both blobs";
    return true;
}

// --- criterion 3 ------------------------------------------------------

constexpr double kGainTolerance = 1e-9;

bool first_order_gains_are_exact(std::string& detail) {
    SeededRng rng(303);
    const SimilarityMetric metric = SimilarityMetric::DotProduct;
    int instances = 0;
    double worst_gap = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t words = 4 + rng.uniform_index(44);  // vocab rows <= 50
        const std::size_t dim = 2 + rng.uniform_index(5);
        const std::size_t length = 1 + rng.uniform_index(8);  // l <= 8
        const std::size_t cluster = 1 + rng.uniform_index(4);
        const auto enc = MeanPoolingEncoder::from_seed(
            word_vocab(words), dim, 7000 + static_cast<std::uint64_t>(trial));
        const auto embs = embed_queries(random_queries(rng, cluster, words), enc);
        const std::size_t rows = enc.table().rows();
        std::vector<TokenId> tokens(length);
        for (auto& t : tokens) t = static_cast<TokenId>(2 + rng.uniform_index(rows - 2));

        const auto gradient = objective_gradient(embs, metric, enc.encode(tokens));
        const double base = attack_objective(embs, tokens, enc, metric);
        for (std::size_t p = 0; p < length; ++p) {
            const auto gains = substitution_gain(enc.table(), tokens, p, gradient);
            std::size_t best_gain_v = 2, best_exact_v = 2;
            double best_gain = -1e300, best_exact = -1e300;
            for (std::size_t v = 0; v < rows; ++v) {
                auto mutated = tokens;
                mutated[p] = static_cast<TokenId>(v);
                const double exact = attack_objective(embs, mutated, enc, metric) - base;
                worst_gap = std::max(worst_gap, std::abs(gains[v] - exact));
                if (std::abs(gains[v] - exact) > kGainTolerance) {
                    detail = "trial " + std::to_string(trial) + ": gain off by " +
                             fmt_sci(gains[v] - exact);
                    return false;
                }
                if (v < 2) continue;  // the optimizer never proposes reserved tokens
                if (gains[v] > best_gain) { best_gain = gains[v]; best_gain_v = v; }
                if (exact > best_exact) { best_exact = exact; best_exact_v = v; }
            }
            if (best_gain_v != best_exact_v) {
                detail = "trial " + std::to_string(trial) + " position " + std::to_string(p) +
                         ": argmax disagrees with the substitution oracle";
                return false;
            }
        }
        ++instances;
    }
    detail = std::to_string(instances) + " instances, worst |gain-delta| " + fmt_sci(worst_gap);
    return instances >= 50;
}

// --- criterion 4 ------------------------------------------------------

constexpr double kEnumerationTolerance = 1e-12;

bool greedy_reaches_enumeration_optimum(std::string& detail) {
    SeededRng rng(404);
    const SimilarityMetric metric = SimilarityMetric::DotProduct;
    int instances = 0;
    for (int trial = 0; trial < 24; ++trial) {
        const std::size_t words = 4 + rng.uniform_index(9);  // vocab rows <= 15 (<= 20)
        const std::size_t dim = 2 + rng.uniform_index(3);
        const int length = 1 + static_cast<int>(rng.uniform_index(4));  // l <= 4
        const auto enc = MeanPoolingEncoder::from_seed(
            word_vocab(words), dim, 8000 + static_cast<std::uint64_t>(trial));
        const auto embs = embed_queries(random_queries(rng, 1, words), enc);

        std::optional<Payload> payload;
        if (trial % 3 != 0) {
            const auto word = [&](std::size_t i) { return "t" + std::to_string(i % words); };
            payload = custom_payload(word(trial) + " " + word(trial + 1), word(trial), "resp");
        }

        OptimizerConfig cfg;
        cfg.iterations = length + 3;
        cfg.prefix_length = length;
        cfg.rng_seed = static_cast<std::uint64_t>(trial);
        const auto result = optimize_prefix(embs, payload, enc, metric, cfg);

        std::vector<TokenId> payload_tokens;
        if (payload) payload_tokens = enc.tokenizer().tokenize(payload->text);
        const auto rows = static_cast<TokenId>(enc.table().rows());
        std::vector<TokenId> combo(static_cast<std::size_t>(length), 2);
        double best = -1e300;
        while (true) {
            auto tokens = combo;
            tokens.insert(tokens.end(), payload_tokens.begin(), payload_tokens.end());
            best = std::max(best, attack_objective(embs, tokens, enc, metric));
            std::size_t pos = 0;
            while (pos < combo.size()) {
                if (++combo[pos] < rows) break;
                combo[pos] = 2;
                ++pos;
            }
            if (pos == combo.size()) break;
        }
        if (std::abs(result.objective_value - best) > kEnumerationTolerance) {
            detail = "trial " + std::to_string(trial) + ": optimizer " +
                     fmt(result.objective_value, 9) + " vs enumeration " + fmt(best, 9);
            return false;
        }
        ++instances;
    }
    detail = std::to_string(instances) + " instances hit the full-enumeration optimum";
    return instances >= 20;
}

// --- criterion 5 ------------------------------------------------------

constexpr double kGradientRelTolerance = 1e-5;
constexpr double kFiniteDiffStep = 1e-6;

bool cosine_gradient_matches_finite_differences(std::string& detail) {
    SeededRng rng(505);
    const std::size_t dim = 8;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Embedding> embs(1 + rng.uniform_index(5), Embedding(dim));
        for (auto& e : embs)
            for (auto& x : e) x = rng.normal();
        Embedding current(dim);
        for (auto& x : current) x = rng.normal();

        const auto objective = [&](const Embedding& x) {
            double sum = 0.0;
            for (const auto& q : embs) sum += similarity(x, q, SimilarityMetric::Cosine);
            return sum / static_cast<double>(embs.size());
        };
        const auto analytic = objective_gradient(embs, SimilarityMetric::Cosine, current);
        Embedding fd(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            auto hi = current, lo = current;
            hi[i] += kFiniteDiffStep;
            lo[i] -= kFiniteDiffStep;
            fd[i] = (objective(hi) - objective(lo)) / (2.0 * kFiniteDiffStep);
        }
        double diff = 0.0, norm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            diff += (analytic[i] - fd[i]) * (analytic[i] - fd[i]);
            norm += analytic[i] * analytic[i];
        }
        const double rel = std::sqrt(diff) / std::max(std::sqrt(norm), 1e-12);
        worst = std::max(worst, rel);
        if (rel >= kGradientRelTolerance) {
            detail = "trial " + std::to_string(trial) + ": relative error " + fmt_sci(rel);
            return false;
        }
    }
    detail = "100 trials, worst relative error " + fmt_sci(worst);
    return true;
}

// --- criterion 6 ------------------------------------------------------

constexpr double kSeedBudgetSeconds = 300.0;
constexpr int kBenchmarkSeeds = 100;
constexpr int kRequiredWins = 90;

struct MeasuredRun {
    double rsr = 0.0;
    double asr = 0.0;
};

MeasuredRun measure_run(const BlobBenchmark& bench, const std::vector<AdversarialText>& gamma,
                        const Payload& library_payload, const std::optional<Payload>& scored) {
    const auto corrupted = inject(bench.corpus, to_records(gamma), bench.encoder.get());
    MeasuredRun run;
    run.rsr = retrieval_success_rate(bench.queries, corrupted, 5,
                                     SimilarityMetric::DotProduct, *bench.encoder);
    MockAdapter adapter(MockBehavior::InstructionFollowing, 0.5, 0, MockParaphrase::Rotate,
                        {library_payload});
    run.asr = attack_success_rate(bench.queries, corrupted, 5, SimilarityMetric::DotProduct,
                                  *bench.encoder, adapter, scored, AsrMode::Substring);
    return run;
}

bool benchmark_beats_uniform_and_baselines(std::string& detail) {
    const auto payload = craft_payload(AttackObjective::MaliciousLink, "more_information");
    int wins = 0;
    double slowest = 0.0;
    for (int seed = 0; seed < kBenchmarkSeeds; ++seed) {
        const auto start = Clock::now();
        BlobBenchmarkConfig bc;  // 20 blobs, 10000 chunks, 200 queries
        bc.seed = static_cast<std::uint64_t>(seed);
        auto bench = make_blob_benchmark(bc);
        ensure_index(bench.corpus, *bench.encoder);

        OptimizerConfig oc;
        oc.iterations = 60;
        oc.prefix_length = 50;
        oc.rng_seed = static_cast<std::uint64_t>(seed);
        oc.init = PrefixInit::GreedyFromPrevious;
        const std::size_t n = 20;

        const auto balanced = unic_rag(bench.queries, payload, *bench.encoder,
                                       SimilarityMetric::DotProduct, n, oc, "unic-rag");
        const auto uniform_part = uniform_partition(bench.queries, *bench.encoder, n,
                                                    static_cast<std::uint64_t>(seed));
        const auto uniform =
            optimize_for_partition(bench.queries, uniform_part, payload, *bench.encoder,
                                   SimilarityMetric::DotProduct, oc, "unic-rag-uniform");
        const auto injection = prompt_injection_only(payload, n);
        const auto poisoning =
            corpus_poisoning_baseline(bench.queries, *bench.encoder,
                                      SimilarityMetric::DotProduct, n, oc, payload);

        const auto run_b = measure_run(bench, balanced, payload, payload);
        const auto run_u = measure_run(bench, uniform, payload, payload);
        const auto run_i = measure_run(bench, injection, payload, payload);
        const auto run_p = measure_run(bench, poisoning, payload, std::nullopt);

        if (run_b.asr != run_b.rsr || run_u.asr != run_u.rsr || run_i.asr != run_i.rsr) {
            detail = "seed " + std::to_string(seed) + ": ASR != RSR under the obedient mock";
            return false;
        }
        if (run_i.asr != 0.0 || run_p.asr != 0.0) {
            detail = "seed " + std::to_string(seed) + ": baseline ASR not zero (injection " +
                     fmt(run_i.asr) + ", poisoning " + fmt(run_p.asr) + ")";
            return false;
        }
        if (run_b.rsr >= run_u.rsr) ++wins;
        const double secs = seconds_since(start);
        slowest = std::max(slowest, secs);
        if (secs >= kSeedBudgetSeconds) {
            detail = "seed " + std::to_string(seed) + " took " + fmt(secs) + "s";
            return false;
        }
    }
    detail = "balanced RSR@5 >= uniform on " + std::to_string(wins) + "/" +
             std::to_string(kBenchmarkSeeds) + " seeds, slowest seed " + fmt(slowest) + "s";
    return wins >= kRequiredWins;
}

// --- criterion 7 ------------------------------------------------------

bool rsr_is_monotone_in_k(std::string& detail) {
    const auto payload = craft_payload(AttackObjective::MaliciousLink, "more_information");
    const std::vector<int> ks{5, 10, 20, 30, 40, 50};
    int rows_checked = 0;
    for (std::uint64_t seed = 201; seed <= 203; ++seed) {
        BlobBenchmarkConfig bc;
        bc.seed = seed;
        auto bench = make_blob_benchmark(bc);
        ensure_index(bench.corpus, *bench.encoder);
        OptimizerConfig oc;
        oc.iterations = 60;
        oc.prefix_length = 50;
        oc.rng_seed = seed;
        const auto gamma = unic_rag(bench.queries, payload, *bench.encoder,
                                    SimilarityMetric::DotProduct, 20, oc, "unic-rag");
        const auto corrupted = inject(bench.corpus, to_records(gamma), bench.encoder.get());
        MockAdapter adapter(MockBehavior::InstructionFollowing, 0.5, 0, MockParaphrase::Rotate,
                            {payload});
        const auto rows = metrics_over_k(bench.queries, corrupted, ks,
                                         SimilarityMetric::DotProduct, *bench.encoder, adapter,
                                         payload, AsrMode::Substring, "unic-rag", "none");
        double prev = -1.0;
        for (const auto& row : rows) {
            const double rsr = row.at("rsr").get<double>();
            if (rsr < prev) {
                detail = "seed " + std::to_string(seed) + ": RSR drops at k=" +
                         std::to_string(row.at("k").get<int>());
                return false;
            }
            prev = rsr;
            ++rows_checked;
        }
    }
    detail = std::to_string(rows_checked) + " rows over k in {5,10,20,30,40,50}, zero violations";
    return true;
}

// --- criterion 8 ------------------------------------------------------

constexpr int kPairedSeeds = 20;
constexpr int kRequiredGreedyWins = 12;  // 60% of the pairs

bool greedy_initialization_helps(std::string& detail) {
    const auto payload = craft_payload(AttackObjective::MaliciousLink, "more_information");
    int greedy_wins = 0;
    std::vector<double> deltas;
    for (int pair = 0; pair < kPairedSeeds; ++pair) {
        BlobBenchmarkConfig bc;
        bc.seed = 2000 + static_cast<std::uint64_t>(pair);
        const auto bench = make_blob_benchmark(bc);

        OptimizerConfig oc;
        oc.iterations = 6;  // below the prefix length, so initialization matters
        oc.prefix_length = 12;
        oc.rng_seed = 77 + static_cast<std::uint64_t>(pair);
        const auto mean_objective = [&](PrefixInit init) {
            auto cfg = oc;
            cfg.init = init;
            const auto gamma = unic_rag(bench.queries, payload, *bench.encoder,
                                        SimilarityMetric::DotProduct, 20, cfg, "paired");
            double sum = 0.0;
            for (const auto& at : gamma) sum += at.objective_value;
            return sum / static_cast<double>(gamma.size());
        };
        const double greedy = mean_objective(PrefixInit::GreedyFromPrevious);
        const double masked = mean_objective(PrefixInit::MaskTokens);
        deltas.push_back(greedy - masked);
        if (greedy >= masked) ++greedy_wins;
    }
    std::ostringstream dist;
    dist << "  greedy-minus-mask mean objective per pair:";
    double mean_delta = 0.0;
    for (const double d : deltas) {
        dist << ' ' << fmt(d, 3);
        mean_delta += d;
    }
    mean_delta /= static_cast<double>(deltas.size());
    std::cout << dist.str() << "\n";
    detail = "greedy wins " + std::to_string(greedy_wins) + "/" + std::to_string(kPairedSeeds) +
             " pairs, mean delta " + fmt(mean_delta, 3);
    return greedy_wins >= kRequiredGreedyWins;
}

// --- criterion 9 ------------------------------------------------------

int quiet_cli(const std::vector<std::string>& args, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (err_text) *err_text = err.str();
    return code;
}

bool artifacts_are_deterministic(std::string& detail) {
    const fs::path root("tmp_acceptance_det");
    fs::remove_all(root);
    fs::create_directories(root);
    const auto bench = (root / "bench").string();
    std::string err;
    if (quiet_cli({"synth", "--out", bench, "--seed", "42", "--blobs", "3", "--chunks", "60",
                   "--queries", "12", "--transfer", "2", "--chunk-tokens", "6",
                   "--query-tokens", "4", "--dimension", "8", "--natural-tokens", "8",
                   "--amplified-tokens", "2"},
                  &err) != 0) {
        detail = "synth failed: " + err;
        return false;
    }
    const std::vector<std::string> common{
        "--corpus",        bench + "/corpus.jsonl",
        "--queries",       bench + "/queries.jsonl",
        "--encoder-table", bench + "/table.jsonl"};
    const auto gamma_path = (root / "atk" / "gamma.jsonl").string();
    std::vector<std::string> gammas, reports;
    for (int round = 0; round < 2; ++round) {
        auto attack = std::vector<std::string>{"attack", "--out", (root / "atk").string(),
                                               "--method", "unic-rag", "--m", "0", "--n", "2",
                                               "--t", "4", "--l", "3", "--rng-seed", "11"};
        attack.insert(attack.end(), common.begin(), common.end());
        if (quiet_cli(attack, &err) != 0) {
            detail = "attack failed: " + err;
            fs::remove_all(root);
            return false;
        }
        auto eval = std::vector<std::string>{"eval", "--out", (root / "ev").string(),
                                             "--gamma", gamma_path, "--m", "0", "--k", "1",
                                             "--k", "3", "--rng-seed", "11"};
        eval.insert(eval.end(), common.begin(), common.end());
        if (quiet_cli(eval, &err) != 0) {
            detail = "eval failed: " + err;
            fs::remove_all(root);
            return false;
        }
        gammas.push_back(read_file(gamma_path));
        reports.push_back(read_file((root / "ev" / "report.json").string()));
    }
    fs::remove_all(root);
    if (gammas[0] != gammas[1]) {
        detail = "gamma.jsonl differs between identical runs";
        return false;
    }
    if (reports[0] != reports[1]) {
        detail = "report.json differs between identical runs";
        return false;
    }
    detail = "gamma.jsonl and report.json byte-identical across repeated runs";
    return true;
}

// --- criterion 10 -----------------------------------------------------

struct AcceptanceStub {
    httplib::Server svr;
    int port = 0;
    std::thread thread;

    AcceptanceStub() {
        port = svr.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { svr.listen_after_bind(); });
        svr.wait_until_ready();
    }
    ~AcceptanceStub() {
        svr.stop();
        thread.join();
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port); }
};

std::string stub_reply(const std::string& content) {
    return json{{"choices",
                 json::array({json{{"message", json{{"content", content}}}}})}}
        .dump();
}

bool remote_adapter_conforms(std::string& detail) {
    const std::string token = "acceptance-secret-7f3a";
    setenv("UNICRAG_ACCEPT_KEY", token.c_str(), 1);
    std::vector<std::string> log_lines;
    const LogSink sink = [&](const std::string& line) { log_lines.push_back(line); };

    // Defaults: temperature 0 goes out with the bearer token attached.
    {
        AcceptanceStub stub;
        std::mutex mu;
        json seen_body;
        std::string seen_auth;
        stub.svr.Post("/v1/chat/completions",
                      [&](const httplib::Request& req, httplib::Response& res) {
                          std::lock_guard<std::mutex> lock(mu);
                          seen_body = json::parse(req.body);
                          seen_auth = req.get_header_value("Authorization");
                          res.set_content(stub_reply("remote answer"), "application/json");
                      });
        RemoteChatConfig cfg;
        cfg.base_url = stub.url();
        cfg.model = "accept-model";
        cfg.api_key_env = "UNICRAG_ACCEPT_KEY";
        RemoteChatAdapter lm(cfg, sink);
        const auto reply = lm.generate(assemble_prompt("q", {"ctx"}));
        std::lock_guard<std::mutex> lock(mu);
        if (reply != "remote answer") {
            detail = "unexpected reply: " + reply;
            return false;
        }
        if (seen_body.at("temperature") != 0.0) {
            detail = "default temperature is not 0";
            return false;
        }
        if (seen_auth != "Bearer " + token) {
            detail = "authorization header missing or wrong";
            return false;
        }
    }

    // Retries: two 5xx responses then success, honoring max_retries.
    {
        AcceptanceStub stub;
        std::atomic<int> hits{0};
        stub.svr.Post("/v1/chat/completions",
                      [&](const httplib::Request&, httplib::Response& res) {
                          if (++hits <= 2) {
                              res.status = 500;
                              res.set_content("flaky", "text/plain");
                          } else {
                              res.set_content(stub_reply("after retries"), "application/json");
                          }
                      });
        RemoteChatConfig cfg;
        cfg.base_url = stub.url();
        cfg.model = "accept-model";
        cfg.api_key_env = "UNICRAG_ACCEPT_KEY";
        cfg.max_retries = 2;
        cfg.backoff_ms = 1;
        RemoteChatAdapter lm(cfg, sink);
        if (lm.generate(assemble_prompt("q", {"ctx"})) != "after retries" || hits != 3) {
            detail = "retry policy not honored (hits " + std::to_string(hits.load()) + ")";
            return false;
        }
    }

    // Timeouts: a hung first attempt is cut off and retried.
    {
        AcceptanceStub stub;
        std::atomic<int> hits{0};
        stub.svr.Post("/v1/chat/completions",
                      [&](const httplib::Request&, httplib::Response& res) {
                          if (++hits == 1) {
                              std::this_thread::sleep_for(std::chrono::milliseconds(1500));
                          }
                          res.set_content(stub_reply("fast enough"), "application/json");
                      });
        RemoteChatConfig cfg;
        cfg.base_url = stub.url();
        cfg.model = "accept-model";
        cfg.api_key_env = "UNICRAG_ACCEPT_KEY";
        cfg.timeout_ms = 200;
        cfg.max_retries = 2;
        cfg.backoff_ms = 1;
        RemoteChatAdapter lm(cfg, sink);
        const auto start = Clock::now();
        const auto reply = lm.generate(assemble_prompt("q", {"ctx"}));
        if (reply != "fast enough" || hits < 2) {
            detail = "timeout not honored (hits " + std::to_string(hits.load()) + ")";
            return false;
        }
        if (seconds_since(start) > 1.4) {
            detail = "request waited out the hung attempt instead of timing out";
            return false;
        }
    }

    if (log_lines.empty()) {
        detail = "retry diagnostics never reached the log sink";
        return false;
    }
    for (const auto& line : log_lines) {
        if (line.find(token) != std::string::npos) {
            detail = "auth token leaked into the log sink";
            return false;
        }
    }
    detail = "temperature 0 by default, retries and timeouts honored, token never logged (" +
             std::to_string(log_lines.size()) + " log lines checked)";
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        bool (*fn)(std::string&);
    };
    const std::vector<Criterion> criteria{
        {"clustering invariants on random instances", clustering_invariants},
        {"exhaustive seed pairs recover planted blobs", seed_enumeration_recovers_blobs},
        {"first-order substitution gains are exact", first_order_gains_are_exact},
        {"greedy optimization reaches the enumeration optimum",
         greedy_reaches_enumeration_optimum},
        {"cosine gradient matches finite differences", cosine_gradient_matches_finite_differences},
        {"clustered attack beats uniform clustering on the benchmark",
         benchmark_beats_uniform_and_baselines},
        {"retrieval success is monotone in k", rsr_is_monotone_in_k},
        {"greedy initialization helps under tight budgets", greedy_initialization_helps},
        {"attack and eval artifacts are deterministic", artifacts_are_deterministic},
        {"remote adapter honors config and protects the token", remote_adapter_conforms},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].fn(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": "
                  << criteria[i].label;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n" << std::flush;
    }
    std::cout << "acceptance: " << (criteria.size() - static_cast<std::size_t>(failures)) << "/"
              << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
