#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace unicrag {

// FNV-1a 64-bit. Used for artifact fingerprints in manifests and reports;
// deterministic bookkeeping, not cryptography.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::uint64_t hash_file(const std::string& path);

std::vector<std::string> split_lines(const std::string& text);

}  // namespace unicrag
