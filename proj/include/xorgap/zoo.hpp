#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "xorgap/complex.hpp"

namespace xorgap {

enum class ZooKind {
    projective_plane_6,
    torus_7,
    klein_bottle,
    clique_complex,
    cayley_clique,
};

ZooKind zoo_kind_from_name(const std::string& name);
std::string zoo_kind_name(ZooKind k);

struct ZooSpec {
    ZooKind kind = ZooKind::projective_plane_6;

    // clique_complex
    uint32_t n_vertices = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;
    int max_dim = -1;  // mandatory cap for clique enumeration

    // cayley_clique: either a full multiplication table with generator
    // element indices, or a list of permutation generators.
    std::vector<std::vector<uint32_t>> mul_table;
    std::vector<uint32_t> generator_indices;
    std::vector<std::vector<uint32_t>> perm_generators;
    uint32_t max_group = 10000;
};

SimplicialComplex build(const ZooSpec& spec);
SimplicialComplex build_named(const std::string& name);

// Key-value spec file: "kind <name>", then kind-specific lines
// ("vertices <n>", "maxdim <d>", "edge <u> <v>", "table <file>",
// "generators <i>...", "perm <img0> <img1> ...").
ZooSpec load_spec(std::istream& in, const std::filesystem::path& base_dir = {});
ZooSpec load_spec_file(const std::filesystem::path& p);

// Multiplication table file: first line n, then n rows of n element indices.
std::vector<std::vector<uint32_t>> load_mul_table(std::istream& in);

SimplicialComplex load_complex_file(const std::filesystem::path& p);
void save_complex_file(const SimplicialComplex& x, const std::filesystem::path& p);

}  // namespace xorgap
