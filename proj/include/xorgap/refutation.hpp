#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "xorgap/cohomology.hpp"
#include "xorgap/complex.hpp"
#include "xorgap/xor_instance.hpp"

namespace xorgap {

// One derived or axiom equation inside a closure. Variable sets are kept
// canonical (a bit vector over the system's variables); an equation's width
// is the weight of that vector.
struct ClosureNode {
    BitVec vars;
    uint8_t rhs = 0;
    int32_t parent1 = -1, parent2 = -1;  // node ids, -1 for axioms
    int32_t axiom = -1;                  // axiom index, -1 for derived nodes

    bool is_leaf() const { return parent1 < 0; }
    size_t width() const { return vars.weight(); }
};

// Fixpoint of the resolution rule (XOR two equations) restricted to results
// of width <= w, seeded with 0=0 and the system's equations. Axioms are
// retained whatever their width, so the closure can be wider-seeded than w;
// that is exactly what the certificate construction consumes. The stored
// set is the full fixpoint and does not depend on processing order; parent
// pairs record the first derivation under the fixed order (axioms in input
// order, then FIFO).
class ResolutionClosure {
public:
    int width() const { return width_; }
    uint32_t n_vars() const { return n_vars_; }
    bool refuted() const { return refuted_; }
    size_t size() const { return nodes_.size(); }
    const std::vector<ClosureNode>& nodes() const { return nodes_; }
    int32_t contradiction_node() const { return contradiction_; }

    // Node id holding (vars, rhs), or -1.
    int32_t find(const BitVec& vars, uint8_t rhs) const;
    // The rhs values present for this variable set (0, 1, or both).
    std::vector<uint8_t> rhs_values(const BitVec& vars) const;

    friend ResolutionClosure close(const XorSystem& sys, int w, uint64_t budget);

private:
    int width_ = 0;
    uint32_t n_vars_ = 0;
    bool refuted_ = false;
    int32_t contradiction_ = -1;
    std::vector<ClosureNode> nodes_;
    std::unordered_map<BitVec, std::array<int32_t, 2>, BitVecHash> index_;
};

// Upper bound on the number of width-<= w equations over n variables
// (sum of binomial coefficients), saturating at UINT64_MAX.
uint64_t closure_size_bound(uint32_t n_vars, int w);

ResolutionClosure close(const XorSystem& sys, int w, uint64_t budget);

// Smallest w <= w_max admitting a refutation in which every node, leaves
// included, has width <= w; nullopt when none exists. Found by sweeping w
// upward with axioms filtered to width <= w, which matches the DAG notion
// of refutation width exactly.
std::optional<int> refutation_width(const XorSystem& sys, int w_max, uint64_t budget);

struct DagNode {
    BitVec vars;
    uint8_t rhs = 0;
    int32_t parent1 = -1, parent2 = -1;  // indices into the DAG's node list
    int32_t axiom = -1;
};

struct DerivationDag {
    uint32_t n_vars = 0;
    std::vector<DagNode> nodes;  // topologically ordered; parents precede children
    size_t root = 0;             // the 0=1 node
    size_t depth = 0;
};

// Derivation of 0=1 reconstructed from the recorded parent pairs.
DerivationDag extract_dag(const ResolutionClosure& closure);

struct DagAudit {
    size_t node_count = 0, leaf_count = 0;
    size_t max_width = 0;     // max |boundary(h)| over nodes = realized width
    size_t max_kappa = 0;
    size_t root_kappa = 0;
    std::vector<size_t> walk_kappas;  // root-to-leaf walk along the larger-kappa child
};

// Checks, at every node: rhs = <beta, h>, vars = support(boundary h),
// kappa subadditivity, and kappa = 0 => rhs = 0; h is the triangle
// indicator at leaves and the parent sum at inner nodes. Violations are
// engine bugs and throw std::logic_error.
DagAudit audit_dag(const DerivationDag& dag, const SimplicialComplex& x, const Cocycle& beta,
                   uint64_t budget);

// Text export: "node <id> <parent1|-> <parent2|-> <rhs> : <var list>".
void write_dag(std::ostream& out, const DerivationDag& dag);
DerivationDag read_dag(std::istream& in, uint32_t n_vars);

}  // namespace xorgap
