#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "unicrag/tokenizer.hpp"

using namespace unicrag;

namespace {

Tokenizer small_tokenizer() {
    return Tokenizer({"[UNK]", "[MASK]", "hello", "world", "42"});
}

}  // namespace

TEST_CASE("words lowercases and splits on punctuation and whitespace") {
    CHECK(Tokenizer::words("Hello, World!") ==
          std::vector<std::string>{"hello", "world"});
    CHECK(Tokenizer::words("a-b_c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(Tokenizer::words("  \t\n") == std::vector<std::string>{});
    CHECK(Tokenizer::words("x1 2y") == std::vector<std::string>{"x1", "2y"});
}

TEST_CASE("words passes multi-byte UTF-8 sequences through unchanged") {
    CHECK(Tokenizer::words("caf\xc3\xa9 au lait") ==
          std::vector<std::string>{"caf\xc3\xa9", "au", "lait"});
}

TEST_CASE("tokenize maps known words to ids and unknown words to [UNK]") {
    const auto tok = small_tokenizer();
    CHECK(tok.tokenize("Hello world") == std::vector<TokenId>{2, 3});
    CHECK(tok.tokenize("hello stranger 42") == std::vector<TokenId>{2, 0, 4});
    CHECK(tok.tokenize("") == std::vector<TokenId>{});
}

TEST_CASE("detokenize joins tokens with single spaces") {
    const auto tok = small_tokenizer();
    CHECK(tok.detokenize({2, 3, 4}) == "hello world 42");
    CHECK(tok.detokenize({}) == "");
    CHECK_THROWS_AS(tok.detokenize({99}), std::out_of_range);
}

TEST_CASE("tokenizer validates the reserved prefix and duplicates") {
    CHECK_THROWS_AS(Tokenizer({"hello", "[MASK]"}), std::invalid_argument);
    CHECK_THROWS_AS(Tokenizer({"[UNK]"}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(Tokenizer({"[UNK]", "[MASK]", "a", "a"}),
                         "duplicate vocabulary token: a", std::invalid_argument);
}

TEST_CASE("build_vocabulary orders by frequency then lexicographically") {
    const auto vocab = build_vocabulary({"b b b a a c", "a c"});
    // a: 3, b: 3, c: 2 -> tie between a and b broken alphabetically
    CHECK(vocab == std::vector<std::string>{"[UNK]", "[MASK]", "a", "b", "c"});
}

TEST_CASE("build_vocabulary cap counts the reserved entries") {
    const auto vocab = build_vocabulary({"a a b c"}, 4);
    CHECK(vocab == std::vector<std::string>{"[UNK]", "[MASK]", "a", "b"});
    CHECK_THROWS_AS(build_vocabulary({"a"}, 2), std::invalid_argument);
}

TEST_CASE("build_vocabulary output constructs a valid tokenizer") {
    const Tokenizer tok(build_vocabulary({"alpha beta beta", "Gamma gamma GAMMA"}));
    CHECK(tok.vocab_size() == 5);
    CHECK(tok.tokenize("gamma beta alpha") == std::vector<TokenId>{2, 3, 4});
}
