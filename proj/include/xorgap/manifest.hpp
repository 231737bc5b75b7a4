#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xorgap {

uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);
std::string digest_file(const std::filesystem::path& p);

// Line-oriented key-value run record. The self-digest covers every line
// written before it; timing lines come after the digest so that repeated
// runs of the same command produce the same digest.
class Manifest {
public:
    explicit Manifest(std::string command);
    void param(std::string_view key, std::string_view value);
    void param(std::string_view key, uint64_t value);
    void input(std::string_view name, const std::filesystem::path& file);
    void output(std::string_view name, const std::filesystem::path& file);
    void note(std::string_view key, std::string_view value);

    // Digest of the canonical (pre-timing) content.
    std::string digest() const;
    void write(const std::filesystem::path& file, double elapsed_ms) const;

private:
    std::vector<std::string> lines_;
};

}  // namespace xorgap
