#include "xorgap/refutation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace xorgap {

int32_t ResolutionClosure::find(const BitVec& vars, uint8_t rhs) const {
    auto it = index_.find(vars);
    if (it == index_.end()) return -1;
    return it->second[rhs & 1];
}

std::vector<uint8_t> ResolutionClosure::rhs_values(const BitVec& vars) const {
    std::vector<uint8_t> out;
    auto it = index_.find(vars);
    if (it == index_.end()) return out;
    if (it->second[0] >= 0) out.push_back(0);
    if (it->second[1] >= 0) out.push_back(1);
    return out;
}

uint64_t closure_size_bound(uint32_t n_vars, int w) {
    // sum_{k<=w} C(n,k), saturating
    uint64_t total = 0, term = 1;
    for (int k = 0; k <= w && k <= static_cast<int>(n_vars); ++k) {
        if (total > UINT64_MAX - term) return UINT64_MAX;
        total += term;
        if (k < static_cast<int>(n_vars)) {
            // term * (n-k) may overflow; saturate
            if (term > UINT64_MAX / (n_vars - k)) return UINT64_MAX;
            term = term * (n_vars - k) / (k + 1);
        }
    }
    return total;
}

ResolutionClosure close(const XorSystem& sys, int w, uint64_t budget) {
    ResolutionClosure c;
    c.width_ = w;
    c.n_vars_ = sys.n_vars;

    auto insert = [&](BitVec vars, uint8_t rhs, int32_t p1, int32_t p2,
                      int32_t axiom) -> int32_t {
        auto it = c.index_.find(vars);
        if (it != c.index_.end() && it->second[rhs] >= 0) return -1;  // already known
        if (c.nodes_.size() >= budget)
            throw BudgetExceeded("closure exceeds equation budget " + std::to_string(budget));
        int32_t id = static_cast<int32_t>(c.nodes_.size());
        if (it == c.index_.end()) {
            std::array<int32_t, 2> slot{-1, -1};
            slot[rhs] = id;
            c.index_.emplace(vars, slot);
        } else {
            it->second[rhs] = id;
        }
        if (vars.is_zero() && rhs == 1) {
            c.refuted_ = true;
            c.contradiction_ = id;
        }
        c.nodes_.push_back(ClosureNode{std::move(vars), rhs, p1, p2, axiom});
        return id;
    };

    insert(BitVec(sys.n_vars), 0, -1, -1, -1);  // 0 = 0
    for (size_t i = 0; i < sys.equations.size(); ++i) {
        const XorEquation& eq = sys.equations[i];
        BitVec v(sys.n_vars);
        for (uint32_t x : eq.vars) v.set(x, true);
        insert(std::move(v), eq.rhs, -1, -1, static_cast<int32_t>(i));
    }

    // Each pair of nodes is combined exactly once, when the later of the two
    // is processed; results of width <= w join the queue.
    for (size_t qi = 1; qi < c.nodes_.size(); ++qi) {
        for (size_t j = 0; j < qi; ++j) {
            BitVec vars = c.nodes_[qi].vars ^ c.nodes_[j].vars;
            if (vars.weight() > static_cast<size_t>(w)) continue;
            uint8_t rhs = c.nodes_[qi].rhs ^ c.nodes_[j].rhs;
            insert(std::move(vars), rhs, static_cast<int32_t>(j), static_cast<int32_t>(qi), -1);
        }
    }
    return c;
}

std::optional<int> refutation_width(const XorSystem& sys, int w_max, uint64_t budget) {
    for (int w = 1; w <= w_max; ++w) {
        XorSystem filtered;
        filtered.n_vars = sys.n_vars;
        filtered.mode = sys.mode;
        for (const XorEquation& eq : sys.equations)
            if (eq.vars.size() <= static_cast<size_t>(w)) filtered.equations.push_back(eq);
        if (filtered.equations.empty()) continue;
        if (close(filtered, w, budget).refuted()) return w;
    }
    return std::nullopt;
}

DerivationDag extract_dag(const ResolutionClosure& closure) {
    if (!closure.refuted()) throw std::domain_error("closure is not refuted; no DAG to extract");
    const auto& nodes = closure.nodes();
    // Ancestors of the contradiction node, in creation order (which is
    // already topological since parents are created first).
    std::vector<char> keep(nodes.size(), 0);
    std::deque<int32_t> q{closure.contradiction_node()};
    keep[closure.contradiction_node()] = 1;
    while (!q.empty()) {
        int32_t id = q.front();
        q.pop_front();
        const ClosureNode& n = nodes[id];
        for (int32_t p : {n.parent1, n.parent2}) {
            if (p >= 0 && !keep[p]) {
                keep[p] = 1;
                q.push_back(p);
            }
        }
    }
    DerivationDag dag;
    dag.n_vars = closure.n_vars();
    std::vector<int32_t> newid(nodes.size(), -1);
    for (size_t id = 0; id < nodes.size(); ++id) {
        if (!keep[id]) continue;
        const ClosureNode& n = nodes[id];
        newid[id] = static_cast<int32_t>(dag.nodes.size());
        dag.nodes.push_back(DagNode{n.vars, n.rhs,
                                    n.parent1 >= 0 ? newid[n.parent1] : -1,
                                    n.parent2 >= 0 ? newid[n.parent2] : -1, n.axiom});
    }
    dag.root = static_cast<size_t>(newid[closure.contradiction_node()]);
    std::vector<size_t> depth(dag.nodes.size(), 0);
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
        const DagNode& n = dag.nodes[i];
        if (n.parent1 >= 0)
            depth[i] = 1 + std::max(depth[n.parent1], depth[n.parent2]);
        dag.depth = std::max(dag.depth, depth[i]);
    }
    return dag;
}

DagAudit audit_dag(const DerivationDag& dag, const SimplicialComplex& x, const Cocycle& beta,
                   uint64_t budget) {
    if (beta.chain.dim != 2 || beta.chain.coeffs.size() != x.face_count(2))
        throw DimensionError("beta must be a 2-chain over the complex");
    if (dag.n_vars != x.face_count(1))
        throw DimensionError("DAG variables do not match the complex's edges");

    // Leaves must carry triangle equations; match their variable sets to
    // triangles (the three edges determine the triangle).
    std::map<std::vector<size_t>, size_t> tri_by_edges;
    for (size_t t = 0; t < x.face_count(2); ++t) {
        const Face& tri = x.faces(2)[t];
        std::vector<size_t> edges;
        for (size_t drop = 0; drop < 3; ++drop) {
            Face e;
            for (size_t j = 0; j < 3; ++j)
                if (j != drop) e.push_back(tri[j]);
            edges.push_back(*x.face_index(1, e));
        }
        std::sort(edges.begin(), edges.end());
        tri_by_edges[edges] = t;
    }

    const BitMatrix& d2 = x.boundary_matrix(2);
    DagAudit audit;
    audit.node_count = dag.nodes.size();
    std::vector<BitVec> h(dag.nodes.size());
    std::vector<size_t> kap(dag.nodes.size());
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
        const DagNode& n = dag.nodes[i];
        if (n.parent1 < 0) {
            auto it = tri_by_edges.find(n.vars.support());
            if (it == tri_by_edges.end())
                throw std::logic_error("DAG leaf is not a triangle equation");
            h[i] = BitVec(x.face_count(2));
            h[i].set(it->second, true);
            ++audit.leaf_count;
        } else {
            if (n.parent1 >= static_cast<int32_t>(i) || n.parent2 >= static_cast<int32_t>(i))
                throw std::logic_error("DAG parents must precede children");
            h[i] = h[n.parent1] ^ h[n.parent2];
            // Re-derive the node's equation from its parents.
            if ((dag.nodes[n.parent1].vars ^ dag.nodes[n.parent2].vars) != n.vars ||
                ((dag.nodes[n.parent1].rhs ^ dag.nodes[n.parent2].rhs) & 1) != n.rhs)
                throw std::logic_error("DAG node is not the XOR of its parents");
        }
        // rhs = <beta, h>
        if (beta.chain.coeffs.dot(h[i]) != n.rhs)
            throw std::logic_error("DAG node rhs differs from <beta, h>");
        // vars = support(boundary h)
        BitVec f = d2.apply(h[i]);
        if (f != n.vars) throw std::logic_error("DAG node variables differ from boundary support");
        audit.max_width = std::max(audit.max_width, f.weight());

        kap[i] = kappa(x, Chain{2, h[i]}, budget);
        audit.max_kappa = std::max(audit.max_kappa, kap[i]);
        if (n.parent1 >= 0 && kap[i] > kap[n.parent1] + kap[n.parent2])
            throw std::logic_error("kappa is not subadditive along the DAG");
        if (kap[i] == 0 && n.rhs != 0)
            throw std::logic_error("node with kappa 0 carries rhs 1");
    }
    audit.root_kappa = kap[dag.root];

    // Walk from the root toward the child of larger kappa; purely a logged
    // measurement.
    size_t cur = dag.root;
    audit.walk_kappas.push_back(kap[cur]);
    while (dag.nodes[cur].parent1 >= 0) {
        size_t p1 = dag.nodes[cur].parent1, p2 = dag.nodes[cur].parent2;
        cur = kap[p1] >= kap[p2] ? p1 : p2;
        audit.walk_kappas.push_back(kap[cur]);
    }
    return audit;
}

void write_dag(std::ostream& out, const DerivationDag& dag) {
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
        const DagNode& n = dag.nodes[i];
        out << "node " << i << ' ';
        if (n.parent1 < 0)
            out << "- - ";
        else
            out << n.parent1 << ' ' << n.parent2 << ' ';
        out << int(n.rhs) << " :";
        for (size_t v : n.vars.support()) out << ' ' << v;
        out << '\n';
    }
}

DerivationDag read_dag(std::istream& in, uint32_t n_vars) {
    DerivationDag dag;
    dag.n_vars = n_vars;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag, p1s, p2s;
        long id, rhs;
        if (!(ls >> tag >> id >> p1s >> p2s >> rhs) || tag != "node")
            throw ParseError(lineno, "expected 'node <id> <p1|-> <p2|-> <rhs> : <vars>'");
        if (id != static_cast<long>(dag.nodes.size()))
            throw ParseError(lineno, "node ids must be consecutive from 0");
        if (rhs != 0 && rhs != 1) throw ParseError(lineno, "rhs must be 0 or 1");
        std::string colon;
        if (!(ls >> colon) || colon != ":") throw ParseError(lineno, "missing ':' separator");
        DagNode n;
        n.rhs = static_cast<uint8_t>(rhs);
        if (p1s == "-") {
            if (p2s != "-") throw ParseError(lineno, "leaf must have both parents '-'");
        } else {
            n.parent1 = static_cast<int32_t>(std::stol(p1s));
            n.parent2 = static_cast<int32_t>(std::stol(p2s));
            if (n.parent1 < 0 || n.parent2 < 0 || n.parent1 >= id || n.parent2 >= id)
                throw ParseError(lineno, "parents must be earlier nodes");
        }
        n.vars = BitVec(n_vars);
        long v;
        while (ls >> v) {
            if (v < 0 || static_cast<uint32_t>(v) >= n_vars)
                throw ParseError(lineno, "variable out of range");
            n.vars.set(v, true);
        }
        dag.nodes.push_back(std::move(n));
    }
    if (dag.nodes.empty()) throw ParseError(lineno, "empty DAG file");
    // Root: the 0=1 node.
    bool found = false;
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
        if (dag.nodes[i].vars.is_zero() && dag.nodes[i].rhs == 1) {
            dag.root = i;
            found = true;
        }
    }
    if (!found) throw ParseError(lineno, "DAG has no 0=1 node");
    std::vector<size_t> depth(dag.nodes.size(), 0);
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
        if (dag.nodes[i].parent1 >= 0)
            depth[i] = 1 + std::max(depth[dag.nodes[i].parent1], depth[dag.nodes[i].parent2]);
        dag.depth = std::max(dag.depth, depth[i]);
    }
    return dag;
}

}  // namespace xorgap
