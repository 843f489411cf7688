#include "cayley/graph.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

namespace cayley {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    require(n >= 0, "negative vertex count");
    Graph g;
    g.n_ = n;
    g.adj_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        require(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
        require(u != v, "loops are not allowed");
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second) continue;
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    g.m_ = static_cast<long>(seen.size());
    return g;
}

bool Graph::adjacent(int u, int v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

bool Graph::is_regular_graph(int* valency) const {
    if (n_ == 0) return true;
    int d = degree(0);
    for (int v = 1; v < n_; ++v)
        if (degree(v) != d) return false;
    if (valency) *valency = d;
    return true;
}

bool Graph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<bool> seen(n_, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj_[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n_;
}

int Graph::girth() const {
    int best = 0;
    std::vector<int> dist(n_), parent(n_);
    for (int src = 0; src < n_; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> q;
        q.push(src);
        dist[src] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (best && 2 * dist[v] + 1 > best) break;
            for (int w : adj_[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push(w);
                } else if (w != parent[v] && parent[w] != v) {
                    int cycle = dist[v] + dist[w] + 1;
                    if (!best || cycle < best) best = cycle;
                }
            }
        }
    }
    return best;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::relabeled(const Permutation& p) const {
    require(p.degree() == n_, "relabeling degree mismatch");
    std::vector<std::pair<int, int>> es;
    es.reserve(m_);
    for (auto [u, v] : edges()) es.emplace_back(p(u), p(v));
    return from_edges(n_, es);
}

bool Graph::is_automorphism(const Permutation& p) const {
    if (p.degree() != n_) return false;
    for (int u = 0; u < n_; ++u) {
        for (int v : adj_[u])
            if (!adjacent(p(u), p(v))) return false;
    }
    return true;
}

Graph cayley_graph(const FiniteGroup& g, const std::vector<int>& connection_set) {
    require(!connection_set.empty(), "empty connection set");
    std::set<int> s(connection_set.begin(), connection_set.end());
    require(s.size() == connection_set.size(), "connection set has repeats");
    require(!s.count(0), "connection set contains the identity");
    for (int x : s)
        require(s.count(g.inverse(x)), "connection set is not inverse-closed");

    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < g.order(); ++v)
        for (int x : s) edges.emplace_back(v, g.mul(x, v));
    Graph graph = Graph::from_edges(g.order(), edges);

    int valency = -1;
    internal_check(graph.is_regular_graph(&valency) &&
                       valency == static_cast<int>(s.size()),
                   "Cayley graph is not |S|-regular");
    for (int x : g.gens())
        internal_check(graph.is_automorphism(right_multiplication(g, x)),
                       "right-regular action is not by automorphisms");
    return graph;
}

Graph coset_graph(const FiniteGroup& g, const Subgroup& a, int b) {
    require(b >= 0 && b < g.order(), "element out of range");
    require(!a.contains(b), "b inside the subgroup would create loops");
    for (int e : a.elements) require(e >= 0 && e < g.order(), "subgroup element out of range");

    // Right cosets in order of least representative.
    std::vector<int> coset_of(g.order(), -1);
    int ncosets = 0;
    for (int e = 0; e < g.order(); ++e) {
        if (coset_of[e] >= 0) continue;
        for (int x : a.elements) coset_of[g.mul(x, e)] = ncosets;
        ++ncosets;
    }
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < g.order(); ++e) edges.emplace_back(coset_of[e], coset_of[g.mul(b, e)]);
    Graph graph = Graph::from_edges(ncosets, edges);

    // Right multiplication by each group generator permutes cosets and
    // preserves the edge set; the orbit of the trivial coset is everything.
    for (int x : g.gens()) {
        std::vector<int> img(ncosets, -1);
        for (int e = 0; e < g.order(); ++e) {
            int from = coset_of[e], to = coset_of[g.mul(e, x)];
            internal_check(img[from] < 0 || img[from] == to,
                           "right multiplication is not well-defined on cosets");
            img[from] = to;
        }
        Permutation p{std::move(img)};
        internal_check(graph.is_automorphism(p),
                       "coset action does not preserve the edge set");
    }
    return graph;
}

Graph coset_graph(const std::vector<Permutation>& group_elements,
                  const std::vector<Permutation>& subgroup_elements, const Permutation& b) {
    require(!group_elements.empty(), "empty group listing");
    std::map<Permutation, int> index;
    for (std::size_t i = 0; i < group_elements.size(); ++i)
        index.emplace(group_elements[i], static_cast<int>(i));
    require(index.size() == group_elements.size(), "group listing has repeats");
    require(index.count(b), "b is not in the group listing");

    std::vector<int> coset_of(group_elements.size(), -1);
    int ncosets = 0;
    for (std::size_t e = 0; e < group_elements.size(); ++e) {
        if (coset_of[e] >= 0) continue;
        for (const auto& a : subgroup_elements) {
            auto it = index.find(a.compose(group_elements[e]));
            require(it != index.end(), "subgroup element outside the group listing");
            coset_of[it->second] = ncosets;
        }
        internal_check(coset_of[e] == ncosets, "subgroup listing is not closed");
        ++ncosets;
    }
    bool b_in_a = false;
    for (const auto& a : subgroup_elements) b_in_a = b_in_a || a == b;
    require(!b_in_a, "b inside the subgroup would create loops");

    std::vector<std::pair<int, int>> edges;
    for (std::size_t e = 0; e < group_elements.size(); ++e) {
        int to = index.at(b.compose(group_elements[e]));
        edges.emplace_back(coset_of[e], coset_of[to]);
    }
    return Graph::from_edges(ncosets, edges);
}

Graph voltage_cover(const Graph& base, int k,
                    const std::map<std::pair<int, int>, std::uint32_t>& voltages) {
    require_domain(k >= 0 && k < 20, "fiber exponent out of range");
    std::uint32_t fiber = 1u << k;
    auto base_edges = base.edges();
    require(voltages.size() == base_edges.size(),
            "need exactly one voltage per base edge (endpoints ordered u < v)");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(base.edge_count()) * fiber);
    for (auto [u, v] : base_edges) {
        auto it = voltages.find({u, v});
        require(it != voltages.end(), "missing voltage for an edge");
        require_domain(it->second < fiber, "voltage outside F2^k");
        for (std::uint32_t x = 0; x < fiber; ++x)
            edges.emplace_back(u * fiber + x, v * fiber + (x ^ it->second));
    }
    return Graph::from_edges(base.order() * fiber, edges);
}

namespace {

struct TupleHash {
    std::size_t operator()(const std::vector<int>& t) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : t) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Number of s-arcs by arc-extension dynamic programming.
BigCount count_s_arcs(const Graph& g, int s) {
    if (s == 0) return g.order();
    std::map<std::pair<int, int>, BigCount> dp;
    for (auto [u, v] : g.edges()) {
        dp[{u, v}] = 1;
        dp[{v, u}] = 1;
    }
    for (int step = 2; step <= s; ++step) {
        std::map<std::pair<int, int>, BigCount> next;
        for (const auto& [arc, cnt] : dp) {
            auto [u, v] = arc;
            for (int w : g.neighbors(v))
                if (w != u) next[{v, w}] += cnt;
        }
        dp = std::move(next);
    }
    BigCount total = 0;
    for (const auto& [arc, cnt] : dp) total += cnt;
    return total;
}

std::optional<std::vector<int>> first_s_arc(const Graph& g, int s) {
    // Lexicographically extend greedily with backtracking.
    std::vector<int> arc;
    auto dfs = [&](auto&& self, int v) -> bool {
        arc.push_back(v);
        if (static_cast<int>(arc.size()) == s + 1) return true;
        for (int w : g.neighbors(v)) {
            if (arc.size() >= 2 && w == arc[arc.size() - 2]) continue;
            if (self(self, w)) return true;
        }
        arc.pop_back();
        return false;
    };
    for (int v = 0; v < g.order(); ++v) {
        arc.clear();
        if (dfs(dfs, v)) return arc;
    }
    return std::nullopt;
}

}  // namespace

SArcReport s_arc_transitivity(const Graph& g, int s_max) {
    return s_arc_transitivity(g, s_max, automorphism_group(g));
}

SArcReport s_arc_transitivity(const Graph& g, int s_max, const PermGroup& aut) {
    require(g.is_connected(), "s-arc transitivity needs a connected graph");
    require(s_max >= 0 && s_max <= 8, "s_max out of supported range");
    SArcReport report;
    report.transitive_at.assign(s_max + 1, false);

    for (int s = 0; s <= s_max; ++s) {
        auto start = first_s_arc(g, s);
        if (!start) break;
        BigCount total = count_s_arcs(g, s);
        std::unordered_set<std::vector<int>, TupleHash> orbit;
        std::vector<std::vector<int>> queue = {*start};
        orbit.insert(*start);
        while (!queue.empty()) {
            auto t = std::move(queue.back());
            queue.pop_back();
            for (const auto& p : aut.generators()) {
                std::vector<int> img(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) img[i] = p(t[i]);
                if (orbit.insert(img).second) queue.push_back(std::move(img));
            }
        }
        report.transitive_at[s] = BigCount(orbit.size()) == total;
        if (!report.transitive_at[s]) break;  // downward closure: stop at first failure
    }
    // max_s = -1 means not even vertex-transitive.
    report.max_s = -1;
    for (int s = 0; s <= s_max && report.transitive_at[s]; ++s) report.max_s = s;
    return report;
}

bool is_grr(const Graph& g) {
    return automorphism_group(g).is_regular();
}

std::vector<Permutation> transitive_subgroup_gens(const Graph& g, const PermGroup& a) {
    require(a.degree() == g.order(), "group degree does not match the graph");
    require(a.is_transitive(), "group is not vertex-transitive");
    require(g.order() > 0 && g.is_connected(), "graph must be connected and nonempty");
    std::vector<Permutation> gens;
    for (int w : g.neighbors(0)) {
        auto p = a.element_mapping(0, w);
        internal_check(p.has_value(), "transitive group missed a neighbor");
        gens.push_back(std::move(*p));
    }
    PermGroup h = PermGroup::from_generators(g.order(), gens);
    internal_check(h.is_transitive(), "neighbor-mapping elements do not act transitively");
    return gens;
}

const Graph& tutte_coxeter_graph() {
    static const Graph graph = [] {
        // Points: the 15 unordered pairs from {0..5}. Lines: the 15 perfect
        // matchings of K6. Incidence gives a cubic bipartite graph on 30.
        std::vector<std::pair<int, int>> duads;
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b) duads.emplace_back(a, b);
        auto duad_index = [&](int a, int b) {
            if (a > b) std::swap(a, b);
            for (std::size_t i = 0; i < duads.size(); ++i)
                if (duads[i] == std::make_pair(a, b)) return static_cast<int>(i);
            return -1;
        };
        std::vector<std::array<int, 3>> matchings;
        // Partitions of {0..5} into three pairs; 0 pairs with p, rest splits.
        for (int p = 1; p < 6; ++p) {
            std::vector<int> rest;
            for (int x = 1; x < 6; ++x)
                if (x != p) rest.push_back(x);
            for (int q = 1; q < 4; ++q) {
                std::vector<int> last;
                for (int i = 1; i < 4; ++i)
                    if (i != q) last.push_back(rest[i]);
                matchings.push_back({duad_index(0, p), duad_index(rest[0], rest[q]),
                                     duad_index(last[0], last[1])});
            }
        }
        std::vector<std::pair<int, int>> edges;
        for (std::size_t li = 0; li < matchings.size(); ++li)
            for (int duad : matchings[li]) edges.emplace_back(duad, 15 + static_cast<int>(li));
        Graph g = Graph::from_edges(30, edges);

        internal_check(g.order() == 30 && g.edge_count() == 45, "wrong size");
        internal_check(g.is_connected(), "not connected");
        int valency = 0;
        internal_check(g.is_regular_graph(&valency) && valency == 3, "not cubic");
        internal_check(g.girth() == 8, "girth is not 8");
        internal_check(automorphism_group(g).order() == 1440, "|Aut| is not 1440");
        internal_check(s_arc_transitivity(g, 5).max_s == 5, "not 5-arc-transitive");
        return g;
    }();
    return graph;
}

// ---- graph6 ----

std::string to_graph6(const Graph& g) {
    long n = g.order();
    require(n >= 0 && n < (1 << 18), "graph6 writer supports n < 2^18");
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int shift = 30; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
    int bit = 0;
    char cur = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            cur = static_cast<char>(cur << 1);
            if (g.adjacent(u, v)) cur |= 1;
            if (++bit == 6) {
                out.push_back(static_cast<char>(cur + 63));
                bit = 0;
                cur = 0;
            }
        }
    }
    if (bit) out.push_back(static_cast<char>((cur << (6 - bit)) + 63));
    return out;
}

Graph from_graph6(const std::string& line) {
    std::size_t pos = 0;
    auto need = [&](std::size_t k) {
        if (line.size() < pos + k) throw PreconditionError("graph6: truncated line");
    };
    auto val = [&](std::size_t i) {
        unsigned char c = static_cast<unsigned char>(line[i]);
        if (c < 63 || c > 126) throw PreconditionError("graph6: byte out of range");
        return static_cast<long>(c - 63);
    };
    need(1);
    long n = 0;
    if (line[0] != 126) {
        n = val(0);
        pos = 1;
    } else {
        need(2);
        if (line[1] != 126) {
            need(4);
            n = (val(1) << 12) | (val(2) << 6) | val(3);
            pos = 4;
        } else {
            need(8);
            for (int i = 2; i < 8; ++i) n = (n << 6) | val(i);
            pos = 8;
        }
    }
    require(n >= 0 && n < (1 << 18), "graph6: vertex count out of supported range");
    long nbits = n * (n - 1) / 2;
    std::size_t nbytes = static_cast<std::size_t>((nbits + 5) / 6);
    need(nbytes);
    if (line.size() != pos + nbytes) throw PreconditionError("graph6: wrong line length");
    std::vector<std::pair<int, int>> edges;
    long bit = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u, ++bit) {
            long byte = bit / 6;
            int shift = 5 - static_cast<int>(bit % 6);
            if ((val(pos + byte) >> shift) & 1) edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(static_cast<int>(n), edges);
}

std::string to_adjacency_text(const Graph& g) {
    std::ostringstream out;
    out << g.order() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Graph from_adjacency_text(std::istream& in) {
    int n = 0;
    long m = 0;
    if (!(in >> n >> m) || n < 0 || m < 0)
        throw PreconditionError("adjacency text: bad header");
    std::vector<std::pair<int, int>> edges;
    for (long i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw PreconditionError("adjacency text: truncated edge list");
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
}

}  // namespace cayley
