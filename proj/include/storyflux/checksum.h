#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace storyflux {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);
// Throws Error(MissingArtifact) if the file cannot be read.
std::string file_checksum(const std::filesystem::path& path);

// Independent 64-bit stream derived from a base seed and a key.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key);

}  // namespace storyflux
