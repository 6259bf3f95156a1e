#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace unicrag {

using TokenId = std::uint32_t;

// Whitespace/punctuation word tokenizer over a fixed vocabulary.
//
// Ids are dense in [0, vocab_size); id 0 is [UNK], id 1 is [MASK]. The
// reserved tokens are never produced by tokenize; they exist so the
// embedding table has rows for out-of-vocabulary words and for neutral
// prefix initialization.
class Tokenizer {
public:
    static constexpr TokenId kUnknownId = 0;
    static constexpr TokenId kMaskId = 1;
    static constexpr const char* kUnknownToken = "[UNK]";
    static constexpr const char* kMaskToken = "[MASK]";

    // vocabulary must start with [UNK], [MASK] and contain no duplicates.
    explicit Tokenizer(std::vector<std::string> vocabulary);

    // Lowercases ASCII, splits on ASCII whitespace/punctuation/control
    // bytes; multi-byte UTF-8 sequences pass through as word characters.
    static std::vector<std::string> words(const std::string& text);

    std::vector<TokenId> tokenize(const std::string& text) const;
    std::string detokenize(const std::vector<TokenId>& ids) const;

    TokenId unknown_id() const { return kUnknownId; }
    TokenId mask_id() const { return kMaskId; }
    std::size_t vocab_size() const { return vocab_.size(); }
    const std::string& token(TokenId id) const;
    const std::vector<std::string>& vocabulary() const { return vocab_; }
    bool contains(const std::string& token) const {
        return token_to_id_.count(token) > 0;
    }

private:
    std::vector<std::string> vocab_;
    std::unordered_map<std::string, TokenId> token_to_id_;
};

// Builds an ordered vocabulary from document and query texts: reserved
// tokens first, then words by descending frequency (ties broken
// lexicographically). cap bounds the total size including the two
// reserved entries; default keeps the 50,000 most frequent words.
std::vector<std::string> build_vocabulary(const std::vector<std::string>& texts,
                                          std::size_t cap = 50000);

}  // namespace unicrag
