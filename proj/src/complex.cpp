#include "xorgap/complex.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "xorgap/manifest.hpp"

namespace xorgap {

namespace {

Face canonical_face(Face f, uint32_t n_vertices) {
    std::sort(f.begin(), f.end());
    for (size_t i = 0; i + 1 < f.size(); ++i)
        if (f[i] == f[i + 1]) throw InvalidComplex("face with a repeated vertex");
    if (!f.empty() && f.back() >= n_vertices)
        throw InvalidComplex("face vertex out of range");
    return f;
}

void add_subsets(const Face& f, std::vector<std::set<Face>>& bydim) {
    // All nonempty subsets of f, via bitmask (faces are small).
    size_t k = f.size();
    for (uint32_t mask = 1; mask < (1u << k); ++mask) {
        Face sub;
        for (size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) sub.push_back(f[i]);
        bydim[sub.size() - 1].insert(std::move(sub));
    }
}

}  // namespace

SimplicialComplex SimplicialComplex::from_faces(uint32_t n_vertices,
                                                const std::vector<Face>& faces) {
    if (faces.empty()) throw InvalidComplex("empty complex");
    size_t maxdim = 0;
    std::vector<Face> canon;
    canon.reserve(faces.size());
    for (const Face& f : faces) {
        if (f.empty()) throw InvalidComplex("empty face");
        Face c = canonical_face(f, n_vertices);
        maxdim = std::max(maxdim, c.size() - 1);
        canon.push_back(std::move(c));
    }
    std::vector<std::set<Face>> bydim(maxdim + 1);
    for (const Face& f : canon) add_subsets(f, bydim);

    SimplicialComplex x;
    x.n_vertices_ = n_vertices;
    x.faces_.resize(maxdim + 1);
    for (size_t d = 0; d <= maxdim; ++d)
        x.faces_[d].assign(bydim[d].begin(), bydim[d].end());
    x.cache_ = std::make_shared<OperatorCache>();
    return x;
}

const std::vector<Face>& SimplicialComplex::faces(int i) const {
    if (i < 0 || i > dim()) throw DimensionError("face dimension out of range");
    return faces_[i];
}

std::optional<size_t> SimplicialComplex::face_index(int i, const Face& f) const {
    if (i < 0 || i > dim()) return std::nullopt;
    const auto& list = faces_[i];
    auto it = std::lower_bound(list.begin(), list.end(), f);
    if (it != list.end() && *it == f) return static_cast<size_t>(it - list.begin());
    return std::nullopt;
}

bool SimplicialComplex::has_face(const Face& f) const {
    if (f.empty()) return false;
    return face_index(static_cast<int>(f.size()) - 1, f).has_value();
}

std::vector<Face> SimplicialComplex::facets() const {
    std::vector<Face> out;
    for (int d = 0; d <= dim(); ++d) {
        for (const Face& f : faces_[d]) {
            bool maximal = true;
            // f is maximal iff no (d+1)-face contains it.
            if (d < dim()) {
                for (const Face& g : faces_[d + 1]) {
                    if (std::includes(g.begin(), g.end(), f.begin(), f.end())) {
                        maximal = false;
                        break;
                    }
                }
            }
            if (maximal) out.push_back(f);
        }
    }
    return out;
}

long SimplicialComplex::euler_characteristic() const {
    long chi = 0;
    for (int d = 0; d <= dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(faces_[d].size());
    return chi;
}

const BitMatrix& SimplicialComplex::boundary_matrix(int i) const {
    if (i < 1 || i > dim()) throw DimensionError("boundary dimension out of range");
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->boundary.find(i);
    if (it != cache_->boundary.end()) return it->second;
    BitMatrix m(faces_[i - 1].size(), faces_[i].size());
    for (size_t c = 0; c < faces_[i].size(); ++c) {
        const Face& t = faces_[i][c];
        Face sub(t.size() - 1);
        for (size_t drop = 0; drop < t.size(); ++drop) {
            size_t k = 0;
            for (size_t j = 0; j < t.size(); ++j)
                if (j != drop) sub[k++] = t[j];
            m.set(*face_index(i - 1, sub), c, true);
        }
    }
    return cache_->boundary.emplace(i, std::move(m)).first->second;
}

const BitMatrix& SimplicialComplex::coboundary_matrix(int i) const {
    if (i < 0 || i >= dim()) throw DimensionError("coboundary dimension out of range");
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->coboundary.find(i);
    if (it != cache_->coboundary.end()) return it->second;
    // (delta_i f)(t) = sum over i-faces s inside t of f(s).
    BitMatrix m(faces_[i + 1].size(), faces_[i].size());
    for (size_t r = 0; r < faces_[i + 1].size(); ++r) {
        const Face& t = faces_[i + 1][r];
        Face sub(t.size() - 1);
        for (size_t drop = 0; drop < t.size(); ++drop) {
            size_t k = 0;
            for (size_t j = 0; j < t.size(); ++j)
                if (j != drop) sub[k++] = t[j];
            m.set(r, *face_index(i, sub), true);
        }
    }
    return cache_->coboundary.emplace(i, std::move(m)).first->second;
}

void SimplicialComplex::validate() const {
    if (faces_.empty() || faces_[0].empty()) throw InvalidComplex("empty complex");
    for (int d = 0; d <= dim(); ++d) {
        const auto& list = faces_[d];
        if (!std::is_sorted(list.begin(), list.end()))
            throw InvalidComplex("face list not sorted");
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw InvalidComplex("duplicate face");
        for (const Face& f : list) {
            if (static_cast<int>(f.size()) != d + 1) throw InvalidComplex("face in wrong bucket");
            if (!std::is_sorted(f.begin(), f.end()) ||
                std::adjacent_find(f.begin(), f.end()) != f.end())
                throw InvalidComplex("face vertices not strictly ascending");
            if (f.back() >= n_vertices_) throw InvalidComplex("face vertex out of range");
            // Downward closure: every subset obtained by dropping one vertex.
            if (d > 0) {
                Face sub(f.size() - 1);
                for (size_t drop = 0; drop < f.size(); ++drop) {
                    size_t k = 0;
                    for (size_t j = 0; j < f.size(); ++j)
                        if (j != drop) sub[k++] = f[j];
                    if (!face_index(d - 1, sub))
                        throw InvalidComplex("complex is not downward closed");
                }
            }
        }
    }
}

void SimplicialComplex::save(std::ostream& out) const {
    out << "complex " << n_vertices_ << ' ' << dim() << '\n';
    for (const Face& f : facets()) {
        for (size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
        out << '\n';
    }
}

SimplicialComplex SimplicialComplex::load(std::istream& in) {
    std::string line;
    size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError(1, "missing complex header");
    ++lineno;
    std::istringstream hs(line);
    std::string tag;
    long nv = -1, d = -1;
    if (!(hs >> tag >> nv >> d) || tag != "complex" || nv <= 0 || d < 0)
        throw ParseError(lineno, "expected 'complex <n_vertices> <dim>'");
    std::vector<Face> facets;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        Face f;
        long v;
        while (ls >> v) {
            if (v < 0 || v >= nv) throw ParseError(lineno, "vertex index out of range");
            f.push_back(static_cast<Vertex>(v));
        }
        if (!ls.eof()) throw ParseError(lineno, "invalid token in facet line");
        if (f.empty()) continue;  // blank line
        for (size_t i = 0; i + 1 < f.size(); ++i) {
            if (f[i] == f[i + 1]) throw ParseError(lineno, "repeated vertex in face");
            if (f[i] > f[i + 1]) throw ParseError(lineno, "facet vertices must be ascending");
        }
        facets.push_back(std::move(f));
    }
    if (facets.empty()) throw ParseError(lineno, "complex has no facets");
    SimplicialComplex x = from_faces(static_cast<uint32_t>(nv), facets);
    if (x.dim() != d) throw ParseError(1, "header dimension does not match facets");
    return x;
}

std::string SimplicialComplex::serialized() const {
    std::ostringstream os;
    save(os);
    return os.str();
}

std::string SimplicialComplex::digest() const { return fnv1a64_hex(serialized()); }

Chain zero_chain(const SimplicialComplex& host, int dim) {
    return Chain{dim, BitVec(host.face_count(dim))};
}

Chain face_indicator_chain(const SimplicialComplex& host, int dim, size_t face_index) {
    Chain c = zero_chain(host, dim);
    if (face_index >= c.coeffs.size()) throw DimensionError("face index out of range");
    c.coeffs.set(face_index, true);
    return c;
}

void save_chain(std::ostream& out, const Chain& c) {
    out << "chain " << c.dim << ' ' << c.weight() << '\n';
    for (size_t i : c.coeffs.support()) out << i << '\n';
}

Chain load_chain(std::istream& in, const SimplicialComplex& host) {
    std::string line;
    size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError(1, "missing chain header");
    ++lineno;
    std::istringstream hs(line);
    std::string tag;
    long d = -1, count = -1;
    if (!(hs >> tag >> d >> count) || tag != "chain" || d < 0 || count < 0)
        throw ParseError(lineno, "expected 'chain <dim> <count>'");
    if (d > host.dim()) throw ParseError(lineno, "chain dimension exceeds complex dimension");
    Chain c = zero_chain(host, static_cast<int>(d));
    long seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        long idx;
        if (!(ls >> idx) || idx < 0) throw ParseError(lineno, "expected face index");
        if (static_cast<size_t>(idx) >= c.coeffs.size())
            throw ParseError(lineno, "face index out of range");
        if (c.coeffs.get(idx)) throw ParseError(lineno, "duplicate face index");
        c.coeffs.set(idx, true);
        ++seen;
    }
    if (seen != count) throw ParseError(lineno, "support count does not match header");
    return c;
}

std::string chain_digest(const Chain& c) {
    std::ostringstream os;
    save_chain(os, c);
    return fnv1a64_hex(os.str());
}

Chain push_chain(const SimplicialComplex& sub, const SimplicialMapImage& incl,
                 const SimplicialComplex& host, const Chain& c) {
    if (c.coeffs.size() != sub.face_count(c.dim))
        throw DimensionError("chain does not match subcomplex");
    Chain out = zero_chain(host, c.dim);
    for (size_t i : c.coeffs.support()) {
        Face f = sub.faces(c.dim)[i];
        for (Vertex& v : f) v = incl.vertex_map[v];
        std::sort(f.begin(), f.end());
        auto idx = host.face_index(c.dim, f);
        if (!idx) throw DimensionError("image face missing from host complex");
        out.coeffs.set(*idx, true);
    }
    return out;
}

Chain pull_chain(const SimplicialComplex& sub, const SimplicialMapImage& incl,
                 const SimplicialComplex& host, const Chain& c) {
    if (c.coeffs.size() != host.face_count(c.dim))
        throw DimensionError("chain does not match host complex");
    std::map<Vertex, Vertex> back;
    for (Vertex v = 0; v < incl.vertex_map.size(); ++v) back[incl.vertex_map[v]] = v;
    Chain out = zero_chain(sub, c.dim);
    for (size_t i : c.coeffs.support()) {
        Face f = host.faces(c.dim)[i];
        for (Vertex& v : f) {
            auto it = back.find(v);
            if (it == back.end()) throw DimensionError("chain support outside the image");
            v = it->second;
        }
        std::sort(f.begin(), f.end());
        auto idx = sub.face_index(c.dim, f);
        if (!idx) throw DimensionError("chain support outside the image");
        out.coeffs.set(*idx, true);
    }
    return out;
}

SimplicialComplex link(const SimplicialComplex& x, const Face& s) {
    Face key = s;
    std::sort(key.begin(), key.end());
    if (!x.has_face(key)) throw InvalidComplex("link of a non-face");
    std::vector<Face> generated;
    for (int d = static_cast<int>(key.size()); d <= x.dim(); ++d) {
        for (const Face& u : x.faces(d)) {
            if (!std::includes(u.begin(), u.end(), key.begin(), key.end())) continue;
            Face t;
            std::set_difference(u.begin(), u.end(), key.begin(), key.end(),
                                std::back_inserter(t));
            if (!t.empty()) generated.push_back(std::move(t));
        }
    }
    if (generated.empty()) throw InvalidComplex("link is empty");
    return SimplicialComplex::from_faces(x.n_vertices(), generated);
}

BallResult ball(const SimplicialComplex& x, Vertex center, unsigned radius) {
    if (!x.has_face({center})) throw InvalidComplex("ball center is not a vertex");
    // BFS on the 1-skeleton.
    std::vector<int> dist(x.n_vertices(), -1);
    std::deque<Vertex> q;
    dist[center] = 0;
    q.push_back(center);
    std::vector<std::vector<Vertex>> adj(x.n_vertices());
    if (x.dim() >= 1) {
        for (const Face& e : x.faces(1)) {
            adj[e[0]].push_back(e[1]);
            adj[e[1]].push_back(e[0]);
        }
    }
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop_front();
        if (static_cast<unsigned>(dist[v]) >= radius) continue;
        for (Vertex w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    std::vector<Vertex> inside;
    for (Vertex v = 0; v < x.n_vertices(); ++v)
        if (dist[v] >= 0 && x.has_face({v})) inside.push_back(v);
    std::vector<Vertex> newid(x.n_vertices(), UINT32_MAX);
    for (size_t i = 0; i < inside.size(); ++i) newid[inside[i]] = static_cast<Vertex>(i);

    SimplicialMapImage incl;
    incl.vertex_map = inside;
    std::vector<Face> relabeled;
    for (int d = 0; d <= x.dim(); ++d) {
        for (const Face& f : x.faces(d)) {
            bool ok = true;
            for (Vertex v : f)
                if (newid[v] == UINT32_MAX) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            incl.image_faces.push_back(f);
            Face g = f;
            for (Vertex& v : g) v = newid[v];
            std::sort(g.begin(), g.end());
            relabeled.push_back(std::move(g));
        }
    }
    BallResult r{SimplicialComplex::from_faces(static_cast<uint32_t>(inside.size()), relabeled),
                 std::move(incl)};
    return r;
}

std::vector<Chain> connected_components_2chain(const SimplicialComplex& x, const Chain& h) {
    if (h.dim != 2) throw DimensionError("connected components are defined for 2-chains");
    if (h.coeffs.size() != x.face_count(2)) throw DimensionError("chain does not match complex");
    std::vector<size_t> supp = h.coeffs.support();
    std::vector<Chain> out;
    if (supp.empty()) return out;

    // Two triangles are connected when they share an edge; walk the support.
    std::vector<char> used(supp.size(), 0);

    // Edge -> triangles of the support containing it.
    std::map<size_t, std::vector<size_t>> edge_tris;
    for (size_t i = 0; i < supp.size(); ++i) {
        const Face& t = x.faces(2)[supp[i]];
        for (size_t drop = 0; drop < 3; ++drop) {
            Face e;
            for (size_t j = 0; j < 3; ++j)
                if (j != drop) e.push_back(t[j]);
            edge_tris[*x.face_index(1, e)].push_back(i);
        }
    }

    for (size_t start = 0; start < supp.size(); ++start) {
        if (used[start]) continue;
        Chain comp = zero_chain(x, 2);
        std::deque<size_t> q{start};
        used[start] = 1;
        while (!q.empty()) {
            size_t i = q.front();
            q.pop_front();
            comp.coeffs.set(supp[i], true);
            const Face& t = x.faces(2)[supp[i]];
            for (size_t drop = 0; drop < 3; ++drop) {
                Face e;
                for (size_t j = 0; j < 3; ++j)
                    if (j != drop) e.push_back(t[j]);
                for (size_t other : edge_tris[*x.face_index(1, e)]) {
                    if (!used[other]) {
                        used[other] = 1;
                        q.push_back(other);
                    }
                }
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

SimplicialComplex involution_quotient(const SimplicialComplex& x,
                                      const std::vector<Vertex>& sigma) {
    if (sigma.size() != x.n_vertices()) throw InvalidComplex("sigma size != vertex count");
    for (Vertex v = 0; v < sigma.size(); ++v) {
        if (sigma[v] >= x.n_vertices()) throw InvalidComplex("sigma image out of range");
        if (sigma[sigma[v]] != v) throw InvalidComplex("sigma is not an involution");
    }
    // sigma must be simplicial and free on faces.
    for (int d = 0; d <= x.dim(); ++d) {
        for (const Face& f : x.faces(d)) {
            Face img = f;
            for (Vertex& v : img) v = sigma[v];
            std::sort(img.begin(), img.end());
            if (std::adjacent_find(img.begin(), img.end()) != img.end() || !x.has_face(img))
                throw InvalidComplex("sigma does not map faces to faces");
            if (img == f) throw InvalidComplex("sigma fixes a face; the action is not free");
        }
    }
    // Orbit labels: rank of min(v, sigma v) among vertices of the complex.
    std::vector<Vertex> reps;
    for (const Face& f : x.faces(0)) {
        Vertex v = f[0];
        reps.push_back(std::min(v, sigma[v]));
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    std::vector<Vertex> orbit(x.n_vertices(), UINT32_MAX);
    for (const Face& f : x.faces(0)) {
        Vertex v = f[0];
        Vertex rep = std::min(v, sigma[v]);
        orbit[v] = static_cast<Vertex>(
            std::lower_bound(reps.begin(), reps.end(), rep) - reps.begin());
    }
    std::vector<Face> image;
    for (int d = 0; d <= x.dim(); ++d) {
        for (const Face& f : x.faces(d)) {
            Face g = f;
            for (Vertex& v : g) v = orbit[v];
            std::sort(g.begin(), g.end());
            image.push_back(std::move(g));
        }
    }
    return SimplicialComplex::from_faces(static_cast<uint32_t>(reps.size()), image);
}

}  // namespace xorgap
