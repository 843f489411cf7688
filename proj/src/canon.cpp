// Canonical labeling by individualization-refinement: equitable partition
// refinement with a splitter worklist, backtracking over the first smallest
// non-singleton cell, leaf comparison on relabeled edge lists, and orbit
// pruning by the automorphisms discovered from equal leaves. The canonical
// form is the minimum leaf string; all non-pruned leaves are explored, and
// pruning only ever removes subtrees equivalent under verified automorphisms.

#include <algorithm>
#include <deque>
#include <optional>

#include "cayley/graph.hpp"

namespace cayley {

namespace {

struct Partition {
    int n = 0;
    std::vector<int> order;       // vertices grouped by cell
    std::vector<int> pos_of;      // vertex -> position in `order`
    std::vector<int> cell_start;  // per position: start of its cell
    std::vector<int> cell_size;   // valid at cell start positions

    static Partition unit(int n) {
        Partition p;
        p.n = n;
        p.order.resize(n);
        p.pos_of.resize(n);
        p.cell_start.assign(n, 0);
        p.cell_size.assign(n, 0);
        for (int i = 0; i < n; ++i) p.order[i] = p.pos_of[i] = i;
        if (n > 0) p.cell_size[0] = n;
        return p;
    }

    bool discrete() const {
        for (int s = 0; s < n; s += cell_size[s])
            if (cell_size[s] > 1) return false;
        return true;
    }

    // Start of the first cell of minimal size > 1, or -1 when discrete.
    int target_cell() const {
        int best = -1, best_size = n + 1;
        for (int s = 0; s < n; s += cell_size[s]) {
            if (cell_size[s] > 1 && cell_size[s] < best_size) {
                best = s;
                best_size = cell_size[s];
            }
        }
        return best;
    }
};

struct Refiner {
    const Graph& g;
    std::vector<int> cnt;
    std::vector<char> in_alpha;
    std::deque<int> alpha;

    explicit Refiner(const Graph& graph) : g(graph), cnt(graph.order(), 0),
                                           in_alpha(graph.order(), 0) {}

    void push_alpha(int s) {
        if (!in_alpha[s]) {
            in_alpha[s] = 1;
            alpha.push_back(s);
        }
    }

    // Splits cells against splitter cells from `alpha` until the partition
    // is equitable. Piece order inside a split is by ascending neighbor
    // count, which is a structural (relabeling-invariant) key.
    void refine(Partition& p) {
        while (!alpha.empty()) {
            int ws = alpha.front();
            alpha.pop_front();
            in_alpha[ws] = 0;
            int wsize = p.cell_size[ws];
            std::vector<int> witness(p.order.begin() + ws, p.order.begin() + ws + wsize);

            std::vector<int> touched;
            for (int u : witness)
                for (int w : g.neighbors(u))
                    if (cnt[w]++ == 0) touched.push_back(w);

            std::vector<int> affected;
            for (int v : touched) {
                int cs = p.cell_start[p.pos_of[v]];
                if (p.cell_size[cs] > 1) affected.push_back(cs);
            }
            std::sort(affected.begin(), affected.end());
            affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

            for (int cs : affected) split_cell(p, cs);

            for (int v : touched) cnt[v] = 0;
        }
    }

    void split_cell(Partition& p, int cs) {
        int size = p.cell_size[cs];
        auto begin = p.order.begin() + cs;
        bool uniform = true;
        for (int i = 1; i < size && uniform; ++i)
            uniform = cnt[*(begin + i)] == cnt[*begin];
        if (uniform) return;

        std::stable_sort(begin, begin + size,
                         [&](int a, int b) { return cnt[a] < cnt[b]; });

        // Rebuild bookkeeping and find piece boundaries.
        std::vector<std::pair<int, int>> pieces;  // (start, size)
        int piece_start = cs;
        for (int i = 0; i < size; ++i) {
            int pos = cs + i;
            p.pos_of[p.order[pos]] = pos;
            if (i > 0 && cnt[p.order[pos]] != cnt[p.order[pos - 1]]) {
                pieces.emplace_back(piece_start, pos - piece_start);
                piece_start = pos;
            }
        }
        pieces.emplace_back(piece_start, cs + size - piece_start);
        for (auto [s, len] : pieces) {
            p.cell_size[s] = len;
            for (int i = 0; i < len; ++i) p.cell_start[s + i] = s;
        }

        if (in_alpha[cs]) {
            // The waiting entry now denotes the first piece; queue the rest.
            for (std::size_t i = 1; i < pieces.size(); ++i) push_alpha(pieces[i].first);
        } else {
            // Queue all pieces except one largest (Hopcroft's rule).
            std::size_t largest = 0;
            for (std::size_t i = 1; i < pieces.size(); ++i)
                if (pieces[i].second > pieces[largest].second) largest = i;
            for (std::size_t i = 0; i < pieces.size(); ++i)
                if (i != largest) push_alpha(pieces[i].first);
        }
    }
};

// Move v to the front of its cell as a singleton piece; returns the start
// to seed the refiner with.
int individualize(Partition& p, int v) {
    int pos = p.pos_of[v];
    int s = p.cell_start[pos];
    int size = p.cell_size[s];
    std::swap(p.order[s], p.order[pos]);
    p.pos_of[p.order[pos]] = pos;
    p.pos_of[p.order[s]] = s;
    p.cell_size[s] = 1;
    p.cell_start[s] = s;
    if (size > 1) {
        p.cell_size[s + 1] = size - 1;
        for (int i = 1; i < size; ++i) p.cell_start[s + i] = s + 1;
    }
    return s;
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

struct CanonSearch {
    const Graph& g;
    int n;
    std::vector<Permutation> auts;
    std::optional<std::vector<std::uint64_t>> best;
    std::vector<int> best_labeling;  // vertex -> canonical position

    explicit CanonSearch(const Graph& graph) : g(graph), n(graph.order()) {}

    std::vector<std::uint64_t> leaf_string(const Partition& p) const {
        std::vector<std::uint64_t> codes;
        codes.reserve(g.edge_count());
        for (int u = 0; u < n; ++u) {
            for (int v : g.neighbors(u)) {
                if (u < v) {
                    std::uint64_t a = p.pos_of[u], b = p.pos_of[v];
                    if (a > b) std::swap(a, b);
                    codes.push_back(a * static_cast<std::uint64_t>(n) + b);
                }
            }
        }
        std::sort(codes.begin(), codes.end());
        return codes;
    }

    void process_leaf(const Partition& p) {
        auto codes = leaf_string(p);
        if (!best || codes < *best) {
            best = std::move(codes);
            best_labeling = p.pos_of;
            return;
        }
        if (codes == *best) {
            // Two labelings with identical images compose to an automorphism.
            std::vector<int> pos_to_vertex(n);
            for (int v = 0; v < n; ++v) pos_to_vertex[best_labeling[v]] = v;
            std::vector<int> img(n);
            for (int v = 0; v < n; ++v) img[v] = pos_to_vertex[p.pos_of[v]];
            Permutation a{std::move(img)};
            if (!a.is_identity()) {
                internal_check(g.is_automorphism(a), "leaf equality produced a non-automorphism");
                if (std::find(auts.begin(), auts.end(), a) == auts.end()) auts.push_back(a);
            }
        }
    }

    void descend(Partition& p, std::vector<int>& prefix) {
        int target = p.target_cell();
        if (target < 0) {
            process_leaf(p);
            return;
        }
        std::vector<int> candidates(p.order.begin() + target,
                                    p.order.begin() + target + p.cell_size[target]);
        std::sort(candidates.begin(), candidates.end());
        std::vector<int> tried;
        for (int v : candidates) {
            // Orbit pruning with the automorphisms that fix the prefix
            // pointwise (an under-approximation of the stabilizer: sound).
            if (!tried.empty() && !auts.empty()) {
                DisjointSet ds(n);
                for (const auto& a : auts) {
                    bool fixes = true;
                    for (int q : prefix)
                        if (a(q) != q) {
                            fixes = false;
                            break;
                        }
                    if (!fixes) continue;
                    for (int x = 0; x < n; ++x) ds.unite(x, a(x));
                }
                bool skip = false;
                for (int u : tried)
                    if (ds.find(u) == ds.find(v)) {
                        skip = true;
                        break;
                    }
                if (skip) continue;
            }
            Partition child = p;
            Refiner refiner(g);
            refiner.push_alpha(individualize(child, v));
            refiner.refine(child);
            prefix.push_back(v);
            descend(child, prefix);
            prefix.pop_back();
            tried.push_back(v);
        }
    }

    CanonResult run() {
        CanonResult result;
        if (n == 0) {
            result.canonical_labeling = Permutation::identity(0);
            result.certificate = {};
            return result;
        }
        Partition root = Partition::unit(n);
        Refiner refiner(g);
        refiner.push_alpha(0);
        refiner.refine(root);
        std::vector<int> prefix;
        descend(root, prefix);

        internal_check(best.has_value(), "canonical search found no leaf");
        result.canonical_labeling = Permutation{std::vector<int>(best_labeling)};
        result.aut_gens = auts;

        // Certificate bytes: n, m, then the canonical edge codes, big-endian.
        auto push64 = [&](std::uint64_t x) {
            for (int b = 7; b >= 0; --b)
                result.certificate.push_back(static_cast<std::uint8_t>((x >> (8 * b)) & 0xff));
        };
        push64(static_cast<std::uint64_t>(n));
        push64(static_cast<std::uint64_t>(g.edge_count()));
        for (auto code : *best) push64(code);
        return result;
    }
};

CanonResult canonical_form(const Graph& g) {
    return g.canon();
}

const CanonResult& Graph::canon() const {
    {
        std::lock_guard lock(canon_mutex_);
        if (canon_cache_) return *canon_cache_;
    }
    CanonSearch search(*this);
    auto result = std::make_shared<const CanonResult>(search.run());
    std::lock_guard lock(canon_mutex_);
    if (!canon_cache_) canon_cache_ = std::move(result);
    return *canon_cache_;
}

const std::vector<std::uint8_t>& Graph::certificate() const {
    return canon().certificate;
}

std::vector<std::uint8_t> canonical_certificate(const Graph& g) {
    return g.certificate();
}

PermGroup automorphism_group(const Graph& g) {
    const CanonResult& canon = g.canon();
    return PermGroup::from_generators(g.order(), canon.aut_gens);
}

}  // namespace cayley
