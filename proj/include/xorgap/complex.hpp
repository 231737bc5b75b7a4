#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "xorgap/f2.hpp"

namespace xorgap {

using Vertex = uint32_t;
using Face = std::vector<Vertex>;  // vertices strictly ascending

// A finite simplicial complex: downward-closed family of vertex sets.
// Faces of each dimension are kept sorted lexicographically; the position of
// a face in that list is its chain coordinate, which makes all operator
// matrices and serialized artifacts reproducible.
class SimplicialComplex {
public:
    // Builds the downward closure of the given faces and validates the
    // result. Input faces may be in any vertex order; a repeated vertex
    // inside a face is an error, as is an empty face list.
    static SimplicialComplex from_faces(uint32_t n_vertices, const std::vector<Face>& faces);

    uint32_t n_vertices() const { return n_vertices_; }
    int dim() const { return static_cast<int>(faces_.size()) - 1; }
    const std::vector<Face>& faces(int i) const;
    size_t face_count(int i) const { return i >= 0 && i <= dim() ? faces_[i].size() : 0; }
    std::optional<size_t> face_index(int i, const Face& f) const;
    bool has_face(const Face& f) const;
    std::vector<Face> facets() const;  // maximal faces

    long euler_characteristic() const;

    // Matrix of the boundary operator C^i -> C^{i-1}: entry (s, t) = 1 iff
    // the (i-1)-face s is contained in the i-face t. Requires 1 <= i <= dim.
    // Cached per dimension; concurrent first calls return the same matrix.
    const BitMatrix& boundary_matrix(int i) const;

    // Matrix of the coboundary operator C^i -> C^{i+1}, built directly from
    // the definition (it is the transpose of boundary_matrix(i+1), but that
    // identity is tested, not assumed). Requires 0 <= i < dim.
    const BitMatrix& coboundary_matrix(int i) const;

    // Full re-check of the invariants (downward closure by subset
    // enumeration, sortedness, vertex range). Throws InvalidComplex.
    void validate() const;

    bool operator==(const SimplicialComplex& o) const {
        return n_vertices_ == o.n_vertices_ && faces_ == o.faces_;
    }

    // Text format: "complex <n_vertices> <dim>" then one facet per line.
    void save(std::ostream& out) const;
    static SimplicialComplex load(std::istream& in);
    std::string serialized() const;
    std::string digest() const;  // fnv1a64 hex of serialized()

private:
    SimplicialComplex() = default;

    uint32_t n_vertices_ = 0;
    std::vector<std::vector<Face>> faces_;  // faces_[i] = i-dimensional faces

    struct OperatorCache {
        std::mutex mu;
        std::map<int, BitMatrix> boundary, coboundary;
    };
    std::shared_ptr<OperatorCache> cache_;
};

// An F2 chain: a coefficient per i-face of a fixed host complex.
struct Chain {
    int dim = 0;
    BitVec coeffs;

    size_t weight() const { return coeffs.weight(); }
};

Chain zero_chain(const SimplicialComplex& host, int dim);
Chain face_indicator_chain(const SimplicialComplex& host, int dim, size_t face_index);

// Chain file format: "chain <dim> <count>" then one support index per line.
void save_chain(std::ostream& out, const Chain& c);
Chain load_chain(std::istream& in, const SimplicialComplex& host);
std::string chain_digest(const Chain& c);

// Inclusion of a subcomplex into a host: vertex_map sends subcomplex vertex
// ids to host vertex ids and maps faces to faces.
struct SimplicialMapImage {
    std::vector<Vertex> vertex_map;
    std::vector<Face> image_faces;  // host faces in the image, all dimensions
};

// Transport a chain on the subcomplex to the host along the inclusion.
Chain push_chain(const SimplicialComplex& sub, const SimplicialMapImage& incl,
                 const SimplicialComplex& host, const Chain& c);

// Restrict a host chain supported on the image back to the subcomplex.
// Throws DimensionError if the support leaves the image.
Chain pull_chain(const SimplicialComplex& sub, const SimplicialMapImage& incl,
                 const SimplicialComplex& host, const Chain& c);

// Link of a face: all t with s and t disjoint and s union t a face.
SimplicialComplex link(const SimplicialComplex& x, const Face& s);

struct BallResult {
    SimplicialComplex complex;   // induced subcomplex, vertices relabeled 0..k-1
    SimplicialMapImage inclusion;
};

// Induced subcomplex on the vertices at skeleton distance <= r from center.
BallResult ball(const SimplicialComplex& x, Vertex center, unsigned radius);

// Partition of a 2-chain's support into connectivity classes, where two
// triangles are connected when they share an edge. Components are returned
// by ascending smallest triangle index.
std::vector<Chain> connected_components_2chain(const SimplicialComplex& x, const Chain& h);

// Quotient by a free simplicial involution: vertices become orbits. Throws
// InvalidComplex when sigma is not an involution, does not map faces to
// faces, or fixes some face setwise.
SimplicialComplex involution_quotient(const SimplicialComplex& x, const std::vector<Vertex>& sigma);

}  // namespace xorgap
