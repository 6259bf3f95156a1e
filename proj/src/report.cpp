#include "unicrag/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace unicrag {

namespace {

using nlohmann::json;

struct TableLine {
    std::string method;
    std::string defense;
    std::string metric;  // "rsr" or "asr"
    std::map<int, double> by_k;
};

std::string format_value(double v) { return json(v).dump(); }

std::vector<TableLine> collect_lines(const json& body, std::vector<int>& k_columns) {
    std::vector<TableLine> lines;
    auto add_block = [&](const std::string& method, const std::string& defense,
                         const json& metrics) {
        TableLine rsr{method, defense, "rsr", {}};
        TableLine asr{method, defense, "asr", {}};
        for (const auto& cell : metrics) {
            const int k = cell.at("k").get<int>();
            rsr.by_k[k] = cell.at("rsr").get<double>();
            asr.by_k[k] = cell.at("asr").get<double>();
            if (std::find(k_columns.begin(), k_columns.end(), k) == k_columns.end()) {
                k_columns.push_back(k);
            }
        }
        lines.push_back(std::move(rsr));
        lines.push_back(std::move(asr));
    };
    for (const auto& row : body.at("rows")) {
        add_block(row.at("method").get<std::string>(),
                  row.at("defense").get<std::string>(), row.at("metrics"));
    }
    if (body.contains("transfer") && !body.at("transfer").is_null()) {
        add_block(body.at("attack").at("method").get<std::string>(), "transfer",
                  body.at("transfer"));
    }
    std::sort(k_columns.begin(), k_columns.end());
    return lines;
}

}  // namespace

std::string report_csv(const json& body) {
    std::vector<int> ks;
    const auto lines = collect_lines(body, ks);
    std::ostringstream out;
    out << "method,defense,metric";
    for (const int k : ks) out << ",k=" << k;
    out << '\n';
    for (const auto& line : lines) {
        out << line.method << ',' << line.defense << ',' << line.metric;
        for (const int k : ks) {
            out << ',';
            const auto it = line.by_k.find(k);
            if (it != line.by_k.end()) out << format_value(it->second);
        }
        out << '\n';
    }
    return out.str();
}

std::string report_markdown(const json& body) {
    std::vector<int> ks;
    const auto lines = collect_lines(body, ks);
    const auto& attack = body.at("attack");
    std::ostringstream out;
    out << "# Run report\n\n";
    out << "- attack: " << attack.at("attack_id").get<std::string>() << " ("
        << attack.at("method").get<std::string>() << ")\n";
    out << "- adversarial texts: " << attack.at("texts").get<std::size_t>()
        << ", converged: " << attack.at("converged").get<std::size_t>() << "\n";
    out << "- mean objective: " << format_value(attack.at("mean_objective").get<double>())
        << "\n";
    const auto& enc = body.at("encoder");
    out << "- encoder: dim " << enc.at("dimension").get<std::size_t>() << ", vocab "
        << enc.at("vocab_size").get<std::size_t>() << "\n";
    out << "- judge prompt hash: " << body.at("judge_prompt_hash").get<std::string>()
        << "\n\n";

    out << "| method | defense | metric |";
    for (const int k : ks) out << " k=" << k << " |";
    out << "\n|---|---|---|";
    for (std::size_t i = 0; i < ks.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& line : lines) {
        out << "| " << line.method << " | " << line.defense << " | " << line.metric
            << " |";
        for (const int k : ks) {
            const auto it = line.by_k.find(k);
            out << ' ' << (it != line.by_k.end() ? format_value(it->second) : "")
                << " |";
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace unicrag
