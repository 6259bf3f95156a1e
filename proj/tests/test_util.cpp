#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <string>

#include "unicrag/util.hpp"

using namespace unicrag;

TEST_CASE("fnv1a64 matches the published test vectors") {
    CHECK(fnv1a64(std::string("")) == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64(std::string("a")) == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64(std::string("foobar")) == 0x85944171f73967e8ULL);
}

TEST_CASE("fnv1a64 distinguishes embedded NUL bytes") {
    const std::string a("ab\0c", 4);
    const std::string b("ab\0d", 4);
    CHECK(fnv1a64(a) != fnv1a64(b));
}

TEST_CASE("hex64 is fixed-width lowercase") {
    CHECK(hex64(0) == "0000000000000000");
    CHECK(hex64(0xcbf29ce484222325ULL) == "cbf29ce484222325");
    CHECK(hex64(0xFFULL) == "00000000000000ff");
}

TEST_CASE("file round trip preserves bytes and hash_file matches fnv1a64") {
    const std::string path = "test_util_roundtrip.bin";
    const std::string content("line1\nline2\r\n\0binary", 20);
    write_file(path, content);
    CHECK(read_file(path) == content);
    CHECK(hash_file(path) == fnv1a64(content));
    std::remove(path.c_str());
}

TEST_CASE("read_file on a missing path raises") {
    CHECK_THROWS_WITH_AS(read_file("no/such/file.txt"),
                         "cannot open file: no/such/file.txt", std::runtime_error);
}

TEST_CASE("split_lines handles LF, CRLF and missing trailing newline") {
    CHECK(split_lines("a\nb\r\nc") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_lines("a\nb\n") == std::vector<std::string>{"a", "b"});
    CHECK(split_lines("") == std::vector<std::string>{});
    CHECK(split_lines("\n\n") == std::vector<std::string>{"", ""});
}
