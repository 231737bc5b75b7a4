#include "xorgap/zoo.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace xorgap {

namespace {

// Minimal 6-vertex triangulation of the real projective plane, obtained as
// the antipodal quotient of the icosahedron (vertex v paired with v+6).
const std::vector<Face> kProjectivePlane6 = {
    {0, 1, 2}, {0, 1, 4}, {0, 2, 3}, {0, 3, 5}, {0, 4, 5},
    {1, 2, 5}, {1, 3, 4}, {1, 3, 5}, {2, 3, 4}, {2, 4, 5},
};

// 7-vertex torus triangulation: orbits {i,i+1,i+3} and {i,i+2,i+3} mod 7.
const std::vector<Face> kTorus7 = {
    {0, 1, 3}, {0, 1, 5}, {0, 2, 3}, {0, 2, 6}, {0, 4, 5}, {0, 4, 6}, {1, 2, 4},
    {1, 2, 6}, {1, 3, 4}, {1, 5, 6}, {2, 3, 5}, {2, 4, 5}, {3, 4, 6}, {3, 5, 6},
};

// Klein bottle as a 3x3 grid with one seam glued with a flip; every edge
// lies in exactly two triangles.
const std::vector<Face> kKleinBottle = {
    {0, 1, 3}, {0, 1, 6}, {0, 2, 5}, {0, 2, 7}, {0, 3, 5}, {0, 6, 7},
    {1, 2, 4}, {1, 2, 8}, {1, 3, 4}, {1, 6, 8}, {2, 4, 5}, {2, 7, 8},
    {3, 4, 6}, {3, 5, 8}, {3, 6, 8}, {4, 5, 7}, {4, 6, 7}, {5, 7, 8},
};

SimplicialComplex build_surface(uint32_t n, const std::vector<Face>& tris, long expected_chi,
                                const char* name) {
    SimplicialComplex x = SimplicialComplex::from_faces(n, tris);
    if (x.euler_characteristic() != expected_chi)
        throw std::logic_error(std::string(name) + ": embedded facet data is corrupt");
    return x;
}

SimplicialComplex build_clique_complex(uint32_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                                       int max_dim) {
    if (max_dim < 1) throw InvalidComplex("clique complex requires a dimension cap >= 1");
    if (n == 0) throw InvalidComplex("clique complex with no vertices");
    std::vector<std::set<Vertex>> adj(n);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw InvalidComplex("edge endpoint out of range");
        if (u == v) throw InvalidComplex("self-loop in edge list");
        adj[u].insert(v);
        adj[v].insert(u);
    }
    // Grow cliques by the largest vertex; every clique of size <= max_dim+1
    // is emitted exactly once.
    std::vector<Face> cliques;
    std::vector<Face> frontier;
    for (Vertex v = 0; v < n; ++v) frontier.push_back({v});
    size_t cap = static_cast<size_t>(max_dim) + 1;
    while (!frontier.empty()) {
        std::vector<Face> next;
        for (const Face& c : frontier) {
            cliques.push_back(c);
            if (c.size() == cap) continue;
            for (Vertex v = c.back() + 1; v < n; ++v) {
                bool all = true;
                for (Vertex u : c)
                    if (!adj[u].count(v)) {
                        all = false;
                        break;
                    }
                if (all) {
                    Face e = c;
                    e.push_back(v);
                    next.push_back(std::move(e));
                }
            }
        }
        frontier = std::move(next);
    }
    return SimplicialComplex::from_faces(n, cliques);
}

// Validates the table as a group (Latin square, two-sided identity,
// associativity) and returns the identity element.
size_t check_mul_table(const std::vector<std::vector<uint32_t>>& t) {
    size_t n = t.size();
    if (n == 0) throw InvalidComplex("empty multiplication table");
    for (const auto& row : t) {
        if (row.size() != n) throw InvalidComplex("multiplication table is not square");
        for (uint32_t v : row)
            if (v >= n) throw InvalidComplex("multiplication table entry out of range");
    }
    // Latin square in rows and columns.
    for (size_t r = 0; r < n; ++r) {
        std::vector<char> seen(n, 0);
        for (uint32_t v : t[r]) {
            if (seen[v]) throw InvalidComplex("multiplication table row is not a permutation");
            seen[v] = 1;
        }
    }
    for (size_t c = 0; c < n; ++c) {
        std::vector<char> seen(n, 0);
        for (size_t r = 0; r < n; ++r) {
            if (seen[t[r][c]])
                throw InvalidComplex("multiplication table column is not a permutation");
            seen[t[r][c]] = 1;
        }
    }
    // Two-sided identity.
    size_t e = n;
    for (size_t r = 0; r < n; ++r) {
        bool id = true;
        for (size_t c = 0; c < n; ++c)
            if (t[r][c] != c) {
                id = false;
                break;
            }
        if (id) {
            e = r;
            break;
        }
    }
    if (e == n) throw InvalidComplex("multiplication table has no identity");
    for (size_t r = 0; r < n; ++r)
        if (t[r][e] != r) throw InvalidComplex("identity is not two-sided");
    // Associativity (cubic scan; these tables are desk scale).
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                if (t[t[a][b]][c] != t[a][t[b][c]])
                    throw InvalidComplex("multiplication table is not associative");
    return e;
}

SimplicialComplex build_cayley_table(const ZooSpec& spec) {
    size_t e = check_mul_table(spec.mul_table);
    const auto& t = spec.mul_table;
    size_t n = t.size();
    if (spec.generator_indices.empty()) throw InvalidComplex("no generators given");
    std::set<uint32_t> gens(spec.generator_indices.begin(), spec.generator_indices.end());
    for (uint32_t s : gens) {
        if (s >= n) throw InvalidComplex("generator index out of range");
        if (s == e) throw InvalidComplex("generator set contains the identity");
        // inverse of s
        uint32_t inv = UINT32_MAX;
        for (uint32_t x = 0; x < n; ++x)
            if (t[s][x] == e) {
                inv = x;
                break;
            }
        if (!gens.count(inv)) throw InvalidComplex("generator set is not symmetric");
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (uint32_t g = 0; g < n; ++g)
        for (uint32_t s : gens) {
            uint32_t h = t[g][s];
            if (g < h) edges.emplace_back(g, h);
        }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return build_clique_complex(static_cast<uint32_t>(n), edges, spec.max_dim);
}

std::vector<uint32_t> perm_compose(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    // (a*b)(x) = a(b(x))
    std::vector<uint32_t> c(a.size());
    for (size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
    return c;
}

SimplicialComplex build_cayley_perm(const ZooSpec& spec) {
    const auto& gens = spec.perm_generators;
    if (gens.empty()) throw InvalidComplex("no permutation generators given");
    size_t deg = gens[0].size();
    if (deg == 0) throw InvalidComplex("empty permutation");
    std::vector<uint32_t> identity(deg);
    for (size_t i = 0; i < deg; ++i) identity[i] = static_cast<uint32_t>(i);
    for (const auto& g : gens) {
        if (g.size() != deg) throw InvalidComplex("permutation generators of unequal degree");
        std::vector<char> seen(deg, 0);
        for (uint32_t v : g) {
            if (v >= deg || seen[v]) throw InvalidComplex("generator is not a permutation");
            seen[v] = 1;
        }
        if (g == identity) throw InvalidComplex("generator set contains the identity");
        // inverse must be listed too
        std::vector<uint32_t> inv(deg);
        for (size_t x = 0; x < deg; ++x) inv[g[x]] = static_cast<uint32_t>(x);
        if (std::find(gens.begin(), gens.end(), inv) == gens.end())
            throw InvalidComplex("generator set is not symmetric");
    }
    // Enumerate the generated group by BFS from the identity; the discovery
    // rank is the element's vertex id, so the labeling is deterministic.
    std::map<std::vector<uint32_t>, uint32_t> id_of;
    std::vector<std::vector<uint32_t>> elems;
    id_of[identity] = 0;
    elems.push_back(identity);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (size_t qi = 0; qi < elems.size(); ++qi) {
        std::vector<uint32_t> g = elems[qi];
        for (const auto& s : gens) {
            std::vector<uint32_t> h = perm_compose(g, s);
            auto it = id_of.find(h);
            uint32_t hid;
            if (it == id_of.end()) {
                if (elems.size() >= spec.max_group)
                    throw BudgetExceeded("generated group exceeds max_group = " +
                                         std::to_string(spec.max_group));
                hid = static_cast<uint32_t>(elems.size());
                id_of[h] = hid;
                elems.push_back(std::move(h));
            } else {
                hid = it->second;
            }
            Vertex a = static_cast<Vertex>(qi), b = hid;
            if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return build_clique_complex(static_cast<uint32_t>(elems.size()), edges, spec.max_dim);
}

}  // namespace

ZooKind zoo_kind_from_name(const std::string& name) {
    if (name == "projective_plane_6") return ZooKind::projective_plane_6;
    if (name == "torus_7") return ZooKind::torus_7;
    if (name == "klein_bottle") return ZooKind::klein_bottle;
    if (name == "clique_complex") return ZooKind::clique_complex;
    if (name == "cayley_clique") return ZooKind::cayley_clique;
    throw InvalidComplex("unknown zoo kind: " + name);
}

std::string zoo_kind_name(ZooKind k) {
    switch (k) {
        case ZooKind::projective_plane_6: return "projective_plane_6";
        case ZooKind::torus_7: return "torus_7";
        case ZooKind::klein_bottle: return "klein_bottle";
        case ZooKind::clique_complex: return "clique_complex";
        case ZooKind::cayley_clique: return "cayley_clique";
    }
    return "?";
}

SimplicialComplex build(const ZooSpec& spec) {
    switch (spec.kind) {
        case ZooKind::projective_plane_6:
            return build_surface(6, kProjectivePlane6, 1, "projective_plane_6");
        case ZooKind::torus_7:
            return build_surface(7, kTorus7, 0, "torus_7");
        case ZooKind::klein_bottle:
            return build_surface(9, kKleinBottle, 0, "klein_bottle");
        case ZooKind::clique_complex:
            return build_clique_complex(spec.n_vertices, spec.edges, spec.max_dim);
        case ZooKind::cayley_clique:
            if (!spec.mul_table.empty()) return build_cayley_table(spec);
            return build_cayley_perm(spec);
    }
    throw InvalidComplex("unknown zoo kind");
}

SimplicialComplex build_named(const std::string& name) {
    ZooSpec spec;
    spec.kind = zoo_kind_from_name(name);
    if (spec.kind == ZooKind::clique_complex || spec.kind == ZooKind::cayley_clique)
        throw InvalidComplex(name + " requires a spec file with parameters");
    return build(spec);
}

ZooSpec load_spec(std::istream& in, const std::filesystem::path& base_dir) {
    ZooSpec spec;
    bool have_kind = false;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "kind") {
            std::string name;
            if (!(ls >> name)) throw ParseError(lineno, "kind requires a name");
            spec.kind = zoo_kind_from_name(name);
            have_kind = true;
        } else if (key == "vertices") {
            if (!(ls >> spec.n_vertices)) throw ParseError(lineno, "vertices requires a count");
        } else if (key == "maxdim") {
            if (!(ls >> spec.max_dim)) throw ParseError(lineno, "maxdim requires a number");
        } else if (key == "edge") {
            Vertex u, v;
            if (!(ls >> u >> v)) throw ParseError(lineno, "edge requires two vertex ids");
            spec.edges.emplace_back(u, v);
        } else if (key == "table") {
            std::string file;
            if (!(ls >> file)) throw ParseError(lineno, "table requires a file path");
            std::filesystem::path p =
                base_dir.empty() ? std::filesystem::path(file) : base_dir / file;
            std::ifstream tf(p);
            if (!tf) throw ParseError(lineno, "cannot open table file " + p.string());
            spec.mul_table = load_mul_table(tf);
        } else if (key == "generators") {
            uint32_t g;
            while (ls >> g) spec.generator_indices.push_back(g);
            if (spec.generator_indices.empty())
                throw ParseError(lineno, "generators requires element indices");
        } else if (key == "perm") {
            std::vector<uint32_t> img;
            uint32_t v;
            while (ls >> v) img.push_back(v);
            if (img.empty()) throw ParseError(lineno, "perm requires image values");
            spec.perm_generators.push_back(std::move(img));
        } else if (key == "max_group") {
            if (!(ls >> spec.max_group)) throw ParseError(lineno, "max_group requires a count");
        } else {
            throw ParseError(lineno, "unknown spec key: " + key);
        }
    }
    if (!have_kind) throw ParseError(lineno, "spec file has no kind line");
    return spec;
}

ZooSpec load_spec_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ParseError(0, "cannot open " + p.string());
    return load_spec(in, p.parent_path());
}

std::vector<std::vector<uint32_t>> load_mul_table(std::istream& in) {
    size_t lineno = 1;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing table size");
    long n;
    std::istringstream hs(line);
    if (!(hs >> n) || n <= 0) throw ParseError(1, "table size must be positive");
    std::vector<std::vector<uint32_t>> t;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<uint32_t> row;
        long v;
        while (ls >> v) {
            if (v < 0 || v >= n) throw ParseError(lineno, "table entry out of range");
            row.push_back(static_cast<uint32_t>(v));
        }
        if (static_cast<long>(row.size()) != n)
            throw ParseError(lineno, "table row has wrong length");
        t.push_back(std::move(row));
    }
    if (static_cast<long>(t.size()) != n) throw ParseError(lineno, "table has wrong row count");
    return t;
}

SimplicialComplex load_complex_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ParseError(0, "cannot open " + p.string());
    return SimplicialComplex::load(in);
}

void save_complex_file(const SimplicialComplex& x, const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw ParseError(0, "cannot open " + p.string() + " for writing");
    x.save(out);
}

}  // namespace xorgap
