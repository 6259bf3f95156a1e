#include "unicrag/tokenizer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace unicrag {

Tokenizer::Tokenizer(std::vector<std::string> vocabulary) : vocab_(std::move(vocabulary)) {
    if (vocab_.size() < 2 || vocab_[kUnknownId] != kUnknownToken ||
        vocab_[kMaskId] != kMaskToken) {
        throw std::invalid_argument(
            "tokenizer vocabulary must start with [UNK], [MASK]");
    }
    token_to_id_.reserve(vocab_.size());
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
        if (!token_to_id_.emplace(vocab_[i], static_cast<TokenId>(i)).second) {
            throw std::invalid_argument("duplicate vocabulary token: " + vocab_[i]);
        }
    }
}

std::vector<std::string> Tokenizer::words(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (const char raw : text) {
        const auto c = static_cast<unsigned char>(raw);
        bool word_char;
        if (c >= 0x80) {
            word_char = true;  // UTF-8 continuation or lead byte
        } else {
            word_char = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
                        (c >= 'A' && c <= 'Z');
        }
        if (word_char) {
            cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                               : raw);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<TokenId> Tokenizer::tokenize(const std::string& text) const {
    const auto ws = words(text);
    std::vector<TokenId> ids;
    ids.reserve(ws.size());
    for (const auto& w : ws) {
        const auto it = token_to_id_.find(w);
        ids.push_back(it == token_to_id_.end() ? kUnknownId : it->second);
    }
    return ids;
}

std::string Tokenizer::detokenize(const std::vector<TokenId>& ids) const {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += token(ids[i]);
    }
    return out;
}

const std::string& Tokenizer::token(TokenId id) const {
    if (id >= vocab_.size()) throw std::out_of_range("token id out of range");
    return vocab_[id];
}

std::vector<std::string> build_vocabulary(const std::vector<std::string>& texts,
                                          std::size_t cap) {
    if (cap < 3) throw std::invalid_argument("vocabulary cap too small");
    std::map<std::string, std::size_t> freq;
    for (const auto& t : texts) {
        for (auto& w : Tokenizer::words(t)) ++freq[w];
    }
    std::vector<std::pair<std::string, std::size_t>> entries(freq.begin(), freq.end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> vocab{Tokenizer::kUnknownToken, Tokenizer::kMaskToken};
    const std::size_t budget = cap - 2;
    for (std::size_t i = 0; i < entries.size() && i < budget; ++i) {
        vocab.push_back(entries[i].first);
    }
    return vocab;
}

}  // namespace unicrag
