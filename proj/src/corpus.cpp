#include "unicrag/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "unicrag/util.hpp"

using json = nlohmann::json;

namespace unicrag {

std::size_t KnowledgeBase::adversarial_count() const {
    std::size_t n = 0;
    for (const auto& c : chunks) {
        if (c.provenance == Provenance::Adversarial) ++n;
    }
    return n;
}

CorpusFormat corpus_format_from_path(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".tsv") {
        return CorpusFormat::Tsv;
    }
    return CorpusFormat::Jsonl;
}

namespace {

int word_count(const std::string& text) {
    return static_cast<int>(Tokenizer::words(text).size());
}

void check_unique(std::unordered_set<std::string>& seen, const std::string& id) {
    if (!seen.insert(id).second) {
        throw std::runtime_error("duplicate chunk id: " + id);
    }
}

}  // namespace

KnowledgeBase load_corpus(const std::string& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus: " + path);
    KnowledgeBase kb;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        TextChunk chunk;
        if (format == CorpusFormat::Jsonl) {
            json rec;
            try {
                rec = json::parse(line);
                chunk.id = rec.at("id").get<std::string>();
                chunk.text = rec.at("text").get<std::string>();
            } catch (const json::exception& e) {
                throw std::runtime_error("malformed corpus record at line " +
                                         std::to_string(line_no) + ": " + e.what());
            }
            if (rec.contains("provenance")) {
                const auto prov = rec.at("provenance").get<std::string>();
                if (prov == "adversarial") {
                    chunk.provenance = Provenance::Adversarial;
                    chunk.attack_id = rec.value("attack_id", "");
                } else if (prov != "clean") {
                    throw std::runtime_error("malformed corpus record at line " +
                                             std::to_string(line_no) +
                                             ": unknown provenance '" + prov + "'");
                }
            }
        } else {
            const std::size_t tab = line.find('\t');
            if (tab == std::string::npos) {
                throw std::runtime_error("malformed corpus record at line " +
                                         std::to_string(line_no) + ": missing tab");
            }
            chunk.id = line.substr(0, tab);
            chunk.text = line.substr(tab + 1);
            if (chunk.id.empty()) {
                throw std::runtime_error("malformed corpus record at line " +
                                         std::to_string(line_no) + ": empty id");
            }
        }
        check_unique(seen, chunk.id);
        chunk.token_count = word_count(chunk.text);
        kb.chunks.push_back(std::move(chunk));
    }
    return kb;
}

KnowledgeBase load_corpus(const std::string& path) {
    return load_corpus(path, corpus_format_from_path(path));
}

void save_corpus(const KnowledgeBase& kb, const std::string& path) {
    std::ostringstream out;
    for (const auto& c : kb.chunks) {
        json rec{{"id", c.id},
                 {"text", c.text},
                 {"provenance",
                  c.provenance == Provenance::Adversarial ? "adversarial" : "clean"}};
        if (c.provenance == Provenance::Adversarial) rec["attack_id"] = c.attack_id;
        out << rec.dump() << '\n';
    }
    write_file(path, out.str());
}

QuerySet load_queries(const std::string& path, QuerySetRole role) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open query set: " + path);
    QuerySet qs;
    qs.role = role;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Query q;
        try {
            const json rec = json::parse(line);
            q.id = rec.at("id").get<std::string>();
            q.text = rec.at("text").get<std::string>();
        } catch (const json::exception& e) {
            throw std::runtime_error("malformed query record at line " +
                                     std::to_string(line_no) + ": " + e.what());
        }
        if (!seen.insert(q.id).second) {
            throw std::runtime_error("duplicate query id: " + q.id);
        }
        qs.queries.push_back(std::move(q));
    }
    return qs;
}

void save_queries(const QuerySet& qs, const std::string& path) {
    std::ostringstream out;
    for (const auto& q : qs.queries) {
        out << json{{"id", q.id}, {"text", q.text}}.dump() << '\n';
    }
    write_file(path, out.str());
}

std::vector<TextChunk> chunk_document(const std::string& doc_id,
                                      const std::string& text,
                                      std::size_t chunk_size) {
    if (chunk_size == 0) throw std::invalid_argument("chunk_size must be positive");
    const auto words = Tokenizer::words(text);
    std::vector<TextChunk> chunks;
    for (std::size_t start = 0; start < words.size(); start += chunk_size) {
        const std::size_t end = std::min(start + chunk_size, words.size());
        std::string body;
        for (std::size_t i = start; i < end; ++i) {
            if (i > start) body.push_back(' ');
            body += words[i];
        }
        TextChunk c;
        c.id = doc_id + "-" + std::to_string(chunks.size());
        c.text = std::move(body);
        c.token_count = static_cast<int>(end - start);
        chunks.push_back(std::move(c));
    }
    return chunks;
}

KnowledgeBase inject(const KnowledgeBase& kb,
                     const std::vector<AdversarialRecord>& texts,
                     const TextEncoder* encoder) {
    KnowledgeBase out = kb;
    if (out.embedding_index && encoder == nullptr && !texts.empty()) {
        throw std::logic_error("inject: embedding index present but no encoder given");
    }
    std::unordered_set<std::string> seen;
    for (const auto& c : kb.chunks) seen.insert(c.id);
    for (const auto& rec : texts) {
        check_unique(seen, rec.id);
        TextChunk chunk;
        chunk.id = rec.id;
        chunk.text = rec.text;
        chunk.token_count = word_count(rec.text);
        chunk.provenance = Provenance::Adversarial;
        chunk.attack_id = rec.attack_id;
        out.chunks.push_back(std::move(chunk));
        if (out.embedding_index) {
            out.embedding_index->push_back(encoder->encode_text(rec.text));
        }
    }
    return out;
}

void ensure_index(KnowledgeBase& kb, const TextEncoder& encoder) {
    if (kb.embedding_index) {
        if (kb.embedding_index->size() != kb.chunks.size()) {
            throw std::logic_error("embedding index row count mismatch");
        }
        return;
    }
    std::vector<Embedding> index;
    index.reserve(kb.chunks.size());
    for (const auto& c : kb.chunks) index.push_back(encoder.encode_text(c.text));
    kb.embedding_index = std::move(index);
}

}  // namespace unicrag
