#pragma once

// Simple undirected graphs: Cayley/coset/voltage constructions, canonical
// certificates via individualization-refinement, automorphism groups,
// arc-transitivity predicates, and graph6 interchange.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cayley/finite_group.hpp"
#include "cayley/permgroup.hpp"
#include "cayley/series.hpp"

namespace cayley {

struct CanonResult;

class Graph {
public:
    Graph() = default;
    /// Builds from an edge list; loops are rejected, duplicates collapse.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int order() const { return n_; }
    long edge_count() const { return m_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    bool adjacent(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool is_regular_graph(int* valency = nullptr) const;

    bool is_connected() const;
    /// Length of a shortest cycle; 0 when the graph is a forest.
    int girth() const;

    std::vector<std::pair<int, int>> edges() const;
    Graph relabeled(const Permutation& p) const;
    bool is_automorphism(const Permutation& p) const;

    /// Canonical certificate: equal byte strings exactly for isomorphic
    /// graphs. Cached (with the labeling and automorphism generators) after
    /// the first computation; concurrent races recompute the same value.
    const std::vector<std::uint8_t>& certificate() const;
    const CanonResult& canon() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    friend struct CanonSearch;
    int n_ = 0;
    long m_ = 0;
    std::vector<std::vector<int>> adj_;

    mutable std::mutex canon_mutex_;
    mutable std::shared_ptr<const CanonResult> canon_cache_;

public:
    Graph(const Graph& other) : n_(other.n_), m_(other.m_), adj_(other.adj_) {
        std::lock_guard lock(other.canon_mutex_);
        canon_cache_ = other.canon_cache_;
    }
    Graph& operator=(const Graph& other) {
        if (this != &other) {
            n_ = other.n_;
            m_ = other.m_;
            adj_ = other.adj_;
            std::lock_guard lock(other.canon_mutex_);
            canon_cache_ = other.canon_cache_;
        }
        return *this;
    }
    Graph(Graph&& other) noexcept
        : n_(other.n_), m_(other.m_), adj_(std::move(other.adj_)),
          canon_cache_(std::move(other.canon_cache_)) {}
    Graph& operator=(Graph&& other) noexcept {
        n_ = other.n_;
        m_ = other.m_;
        adj_ = std::move(other.adj_);
        canon_cache_ = std::move(other.canon_cache_);
        return *this;
    }
};

struct CanonResult {
    std::vector<std::uint8_t> certificate;
    Permutation canonical_labeling;       // vertex -> canonical position
    std::vector<Permutation> aut_gens;
};

CanonResult canonical_form(const Graph& g);
std::vector<std::uint8_t> canonical_certificate(const Graph& g);
PermGroup automorphism_group(const Graph& g);

/// Cay(G, S): vertices are group elements, u ~ v iff u v^-1 in S. S must be
/// identity-free and inverse-closed; the right-regular action is verified to
/// act by automorphisms.
Graph cayley_graph(const FiniteGroup& g, const std::vector<int>& connection_set);

/// Cos(G, A, b): vertices are right cosets of A, edges {Ag, Abg}. b must lie
/// outside A; the right-multiplication action is verified vertex-transitive.
Graph coset_graph(const FiniteGroup& g, const Subgroup& a, int b);

/// Same construction inside a permutation group given by full element lists.
Graph coset_graph(const std::vector<Permutation>& group_elements,
                  const std::vector<Permutation>& subgroup_elements, const Permutation& b);

/// Derived graph of a voltage assignment into F2^k: vertices (v, x), each
/// base edge {u,v} with voltage w lifts to edges {(u,x),(v,x^w)}. Voltages
/// are given per base edge with endpoints ordered u < v.
Graph voltage_cover(const Graph& base, int k,
                    const std::map<std::pair<int, int>, std::uint32_t>& voltages);

struct SArcReport {
    int max_s = 0;
    std::vector<bool> transitive_at;  // indexed by s, 0..s_max
};

/// Decides s-arc-transitivity for each s <= s_max by comparing the orbit of
/// one s-arc under Aut with the full s-arc count. Graph must be connected.
/// max_s is the largest transitive s, or -1 for non-vertex-transitive input.
SArcReport s_arc_transitivity(const Graph& g, int s_max);
SArcReport s_arc_transitivity(const Graph& g, int s_max, const PermGroup& aut);

bool is_grr(const Graph& g);

/// For a fixed base vertex with neighbors v_1..v_d, picks group elements
/// mapping the base vertex to each neighbor; the generated subgroup is
/// verified transitive. A must act vertex-transitively.
std::vector<Permutation> transitive_subgroup_gens(const Graph& g, const PermGroup& a);

/// The incidence graph of the 15-point generalized quadrangle of order
/// (2,2): 30 vertices, 45 edges, girth 8. Identity is verified on first use
/// (girth, |Aut| = 1440, 5-arc-transitive but not 6).
const Graph& tutte_coxeter_graph();

// graph6 interchange (bit-exact per the public format description).
std::string to_graph6(const Graph& g);
Graph from_graph6(const std::string& line);

// Fallback adjacency-list text: "n m" then one "u v" pair per line.
std::string to_adjacency_text(const Graph& g);
Graph from_adjacency_text(std::istream& in);

}  // namespace cayley
