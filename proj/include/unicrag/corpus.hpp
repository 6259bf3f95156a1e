#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unicrag/encoder.hpp"

namespace unicrag {

enum class Provenance { Clean, Adversarial };

struct TextChunk {
    std::string id;
    std::string text;
    int token_count = 0;
    Provenance provenance = Provenance::Clean;
    std::string attack_id;  // set iff provenance == Adversarial
};

struct KnowledgeBase {
    std::vector<TextChunk> chunks;
    // Row i is the embedding of chunks[i]; optional, extended on inject.
    std::optional<std::vector<Embedding>> embedding_index;

    std::size_t size() const { return chunks.size(); }
    std::size_t adversarial_count() const;
};

struct Query {
    std::string id;
    std::string text;
};

enum class QuerySetRole { AttackTraining, TransferEvaluation };

struct QuerySet {
    std::vector<Query> queries;
    QuerySetRole role = QuerySetRole::AttackTraining;

    std::size_t size() const { return queries.size(); }
};

enum class CorpusFormat { Jsonl, Tsv };

CorpusFormat corpus_format_from_path(const std::string& path);

// JSONL: one {"id", "text"} object per line, optional "provenance" and
// "attack_id". TSV: id <TAB> text. Malformed records report the line
// number; duplicate ids report the id.
KnowledgeBase load_corpus(const std::string& path, CorpusFormat format);
KnowledgeBase load_corpus(const std::string& path);
void save_corpus(const KnowledgeBase& kb, const std::string& path);

QuerySet load_queries(const std::string& path,
                      QuerySetRole role = QuerySetRole::AttackTraining);
void save_queries(const QuerySet& qs, const std::string& path);

// Greedy fixed-size chunking: every chunk except possibly the last has
// exactly chunk_size tokens; chunk ids are "{doc_id}-{index}".
std::vector<TextChunk> chunk_document(const std::string& doc_id,
                                      const std::string& text,
                                      std::size_t chunk_size = 100);

struct AdversarialRecord {
    std::string id;
    std::string text;
    std::string attack_id;
};

// Returns a new knowledge base with the adversarial records appended as
// single chunks (never re-chunked, whatever their length). Extends the
// embedding index when present, which requires an encoder.
KnowledgeBase inject(const KnowledgeBase& kb,
                     const std::vector<AdversarialRecord>& texts,
                     const TextEncoder* encoder = nullptr);

// Fills kb.embedding_index from chunk texts if absent.
void ensure_index(KnowledgeBase& kb, const TextEncoder& encoder);

}  // namespace unicrag
