#include "xorgap/manifest.hpp"

#include <fstream>
#include <sstream>

#include "xorgap/errors.hpp"

namespace xorgap {

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    static const char* hexd = "0123456789abcdef";
    uint64_t h = fnv1a64(bytes);
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = hexd[h & 0xf];
        h >>= 4;
    }
    return s;
}

std::string digest_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return fnv1a64_hex(os.str());
}

Manifest::Manifest(std::string command) { lines_.push_back("command " + command); }

void Manifest::param(std::string_view key, std::string_view value) {
    lines_.push_back("param " + std::string(key) + " " + std::string(value));
}

void Manifest::param(std::string_view key, uint64_t value) {
    param(key, std::to_string(value));
}

void Manifest::input(std::string_view name, const std::filesystem::path& file) {
    lines_.push_back("input " + std::string(name) + " " + digest_file(file));
}

void Manifest::output(std::string_view name, const std::filesystem::path& file) {
    lines_.push_back("output " + std::string(name) + " " + file.filename().string() + " " +
                     digest_file(file));
}

void Manifest::note(std::string_view key, std::string_view value) {
    lines_.push_back("note " + std::string(key) + " " + std::string(value));
}

std::string Manifest::digest() const {
    std::string all;
    for (const std::string& l : lines_) {
        all += l;
        all += '\n';
    }
    return fnv1a64_hex(all);
}

void Manifest::write(const std::filesystem::path& file, double elapsed_ms) const {
    std::ofstream out(file);
    for (const std::string& l : lines_) out << l << '\n';
    out << "digest " << digest() << '\n';
    out << "timing_ms " << elapsed_ms << '\n';
}

}  // namespace xorgap
