#include "cayley/finite_group.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>

namespace cayley {

FiniteGroup FiniteGroup::from_table(int n, std::vector<std::uint16_t> table,
                                    std::vector<int> gens,
                                    std::vector<std::string> labels) {
    require(n >= 1 && n <= kMaxTableOrder, "group order out of range (1.." +
                                               std::to_string(kMaxTableOrder) + ")");
    require(table.size() == static_cast<std::size_t>(n) * n, "table size mismatch");

    FiniteGroup g;
    g.n_ = n;
    g.table_ = std::move(table);
    g.gens_ = std::move(gens);
    g.labels_ = std::move(labels);

    for (auto v : g.table_) require(v < n, "table entry out of range");
    for (int a = 0; a < n; ++a)
        require(g.mul(0, a) == a && g.mul(a, 0) == a, "index 0 is not a two-sided identity");

    // Latin square: each row and column is a permutation.
    std::vector<bool> seen(n);
    for (int a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), false);
        for (int b = 0; b < n; ++b) {
            int v = g.mul(a, b);
            require(!seen[v], "row " + std::to_string(a) + " is not a permutation");
            seen[v] = true;
        }
        std::fill(seen.begin(), seen.end(), false);
        for (int b = 0; b < n; ++b) {
            int v = g.mul(b, a);
            require(!seen[v], "column " + std::to_string(a) + " is not a permutation");
            seen[v] = true;
        }
    }

    g.inv_.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int b = 0;
        while (g.mul(a, b) != 0) ++b;
        require(g.mul(b, a) == 0, "inverse is not two-sided");
        g.inv_[a] = static_cast<std::uint16_t>(b);
    }

    if (n <= 512) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    require(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)),
                            "associativity fails");
    } else {
        // Spot check: all triples with the first coordinate a generator, plus
        // a fixed stride sweep. Tables built from coset actions are
        // associative by construction; this guards against corrupted input.
        for (int a : g.gens_)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    require(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)),
                            "associativity fails");
        int stride = std::max(1, n / 64);
        for (int a = 0; a < n; a += stride)
            for (int b = 0; b < n; b += stride)
                for (int c = 0; c < n; c += stride)
                    require(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)),
                            "associativity fails");
    }

    for (int x : g.gens_) require(x >= 0 && x < n, "generator index out of range");
    require(static_cast<int>(subgroup_closure(g, g.gens_).size()) == n,
            "distinguished generators do not generate");
    return g;
}

int FiniteGroup::power(int a, long e) const {
    if (e < 0) return power(inverse(a), -e);
    int acc = 0;
    int base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

int FiniteGroup::element_order(int a) const {
    int ord = 1;
    int x = a;
    while (x != 0) {
        x = mul(x, a);
        ++ord;
    }
    return ord;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<int> FiniteGroup::involutions() const {
    std::vector<int> out;
    for (int a = 1; a < n_; ++a)
        if (mul(a, a) == 0) out.push_back(a);
    return out;
}

std::vector<int> FiniteGroup::center() const {
    std::vector<int> out;
    for (int a = 0; a < n_; ++a) {
        bool central = true;
        for (int b = 0; b < n_ && central; ++b) central = mul(a, b) == mul(b, a);
        if (central) out.push_back(a);
    }
    return out;
}

std::vector<int> FiniteGroup::element_orders() const {
    std::vector<int> out(n_);
    for (int a = 0; a < n_; ++a) out[a] = element_order(a);
    std::sort(out.begin(), out.end());
    return out;
}

std::string FiniteGroup::to_text() const {
    std::ostringstream out;
    out << n_ << '\n';
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            if (b) out << ' ';
            out << mul(a, b);
        }
        out << '\n';
    }
    out << "gens:";
    for (int x : gens_) out << ' ' << x;
    out << '\n';
    return out.str();
}

FiniteGroup FiniteGroup::from_text(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n < 1) throw PreconditionError("group text: bad order line");
    std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
    for (auto& v : table) {
        long x;
        if (!(in >> x) || x < 0 || x >= n) throw PreconditionError("group text: bad table entry");
        v = static_cast<std::uint16_t>(x);
    }
    std::string tag;
    if (!(in >> tag) || tag != "gens:") throw PreconditionError("group text: missing gens line");
    std::vector<int> gens;
    std::string rest;
    std::getline(in, rest);
    std::istringstream gs(rest);
    int x;
    while (gs >> x) gens.push_back(x);
    return from_table(n, std::move(table), std::move(gens));
}

std::vector<int> subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens) {
    std::vector<bool> in_set(g.order(), false);
    std::vector<int> frontier = {0};
    in_set[0] = true;
    for (int x : gens) {
        if (!in_set[x]) {
            in_set[x] = true;
            frontier.push_back(x);
        }
    }
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        for (int s : gens) {
            int y = g.mul(frontier[head], s);
            if (!in_set[y]) {
                in_set[y] = true;
                frontier.push_back(y);
            }
        }
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

Permutation right_multiplication(const FiniteGroup& g, int element) {
    std::vector<int> img(g.order());
    for (int x = 0; x < g.order(); ++x) img[x] = g.mul(x, element);
    return Permutation(std::move(img));
}

PermGroup regular_representation(const FiniteGroup& g) {
    std::vector<Permutation> gens;
    for (int x : g.gens()) gens.push_back(right_multiplication(g, x));
    return PermGroup::from_generators(g.order(), std::move(gens));
}

namespace {

// Expand a partial generator image assignment to the full group, or fail.
// words[e] = (previous element, generator position) along a BFS from 0.
struct WordTable {
    std::vector<int> parent;
    std::vector<int> letter;
    std::vector<int> bfs_order;
};

WordTable bfs_words(const FiniteGroup& g, const std::vector<int>& gens) {
    WordTable w;
    w.parent.assign(g.order(), -1);
    w.letter.assign(g.order(), -1);
    std::vector<bool> seen(g.order(), false);
    seen[0] = true;
    w.bfs_order.push_back(0);
    for (std::size_t head = 0; head < w.bfs_order.size(); ++head) {
        int x = w.bfs_order[head];
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            int y = g.mul(x, gens[gi]);
            if (!seen[y]) {
                seen[y] = true;
                w.parent[y] = x;
                w.letter[y] = static_cast<int>(gi);
                w.bfs_order.push_back(y);
            }
        }
    }
    return w;
}

// phi defined by gen images via the BFS words; empty result on failure.
std::vector<int> extend_to_map(const FiniteGroup& g, const WordTable& words,
                               const std::vector<int>& gen_images) {
    std::vector<int> phi(g.order(), -1);
    phi[0] = 0;
    for (int e : words.bfs_order) {
        if (e == 0) continue;
        phi[e] = g.mul(phi[words.parent[e]], gen_images[words.letter[e]]);
    }
    return phi;
}

bool is_automorphism(const FiniteGroup& g, const std::vector<int>& phi) {
    std::vector<bool> hit(g.order(), false);
    for (int v : phi) {
        if (v < 0 || hit[v]) return false;
        hit[v] = true;
    }
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (phi[g.mul(a, b)] != g.mul(phi[a], phi[b])) return false;
    return true;
}

}  // namespace

PermGroup set_preserving_automorphisms(const FiniteGroup& g, const std::vector<int>& S) {
    require(!S.empty(), "empty connection set");
    for (int s : S) require(s > 0 && s < g.order(), "connection set must be identity-free");
    {
        auto sorted = S;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                "connection set has repeats");
    }
    require(static_cast<int>(subgroup_closure(g, S).size()) == g.order(),
            "connection set does not generate");

    WordTable words = bfs_words(g, S);
    int k = static_cast<int>(S.size());
    std::vector<Permutation> found;

    // S generates, so an automorphism is pinned by its S-images; try the
    // injections S -> S in ascending image order.
    std::vector<int> assign(k, -1);
    std::vector<bool> used(k, false);
    auto backtrack = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            std::vector<int> gen_images(k);
            for (int i = 0; i < k; ++i) gen_images[i] = S[assign[i]];
            auto phi = extend_to_map(g, words, gen_images);
            if (is_automorphism(g, phi)) found.emplace_back(assign);
            return;
        }
        for (int j = 0; j < k; ++j) {
            if (used[j]) continue;
            if (g.element_order(S[pos]) != g.element_order(S[j])) continue;
            used[j] = true;
            assign[pos] = j;
            self(self, pos + 1);
            used[j] = false;
        }
    };
    backtrack(backtrack, 0);
    return PermGroup::from_generators(k, std::move(found));
}

namespace {

std::vector<int> greedy_generating_sequence(const FiniteGroup& g) {
    std::vector<int> gens;
    std::vector<int> closed = {0};
    while (static_cast<int>(closed.size()) < g.order()) {
        int pick = -1;
        for (int e = 1; e < g.order(); ++e) {
            if (!std::binary_search(closed.begin(), closed.end(), e)) {
                pick = e;
                break;
            }
        }
        gens.push_back(pick);
        closed = subgroup_closure(g, gens);
    }
    return gens;
}

std::vector<int> conjugacy_class_sizes(const FiniteGroup& g) {
    std::vector<bool> seen(g.order(), false);
    std::vector<int> sizes;
    for (int a = 0; a < g.order(); ++a) {
        if (seen[a]) continue;
        int size = 0;
        for (int x = 0; x < g.order(); ++x) {
            int c = g.conjugate(a, x);
            if (!seen[c]) {
                seen[c] = true;
                ++size;
            }
        }
        sizes.push_back(size);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

}  // namespace

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order() != b.order()) return false;
    if (a.element_orders() != b.element_orders()) return false;
    if (a.center().size() != b.center().size()) return false;
    if (conjugacy_class_sizes(a) != conjugacy_class_sizes(b)) return false;

    std::vector<int> gens = greedy_generating_sequence(a);
    if (gens.empty()) return true;  // both trivial

    std::vector<int> images(gens.size(), -1);
    auto backtrack = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == gens.size()) return true;
        int order_needed = a.element_order(gens[pos]);
        for (int h = 1; h < b.order(); ++h) {
            if (b.element_order(h) != order_needed) continue;
            images[pos] = h;
            // Partial consistency: grow the map over the subgroup generated
            // so far and compare multiplication.
            std::vector<int> phi(a.order(), -1);
            phi[0] = 0;
            std::vector<int> dom = {0};
            bool ok = true;
            for (std::size_t gi = 0; gi <= pos && ok; ++gi) {
                int gen = gens[gi], im = images[gi];
                if (phi[gen] == -1) {
                    phi[gen] = im;
                    dom.push_back(gen);
                } else if (phi[gen] != im) {
                    ok = false;
                    break;
                }
                for (std::size_t i = 0; i < dom.size() && ok; ++i) {
                    for (std::size_t j = 0; j < dom.size() && ok; ++j) {
                        int prod = a.mul(dom[i], dom[j]);
                        int want = b.mul(phi[dom[i]], phi[dom[j]]);
                        if (phi[prod] == -1) {
                            phi[prod] = want;
                            dom.push_back(prod);
                        } else if (phi[prod] != want) {
                            ok = false;
                        }
                    }
                }
            }
            if (ok) {
                // Injectivity on the domain discovered so far.
                std::vector<bool> hit(b.order(), false);
                for (int e : dom) {
                    if (hit[phi[e]]) {
                        ok = false;
                        break;
                    }
                    hit[phi[e]] = true;
                }
            }
            if (ok && self(self, pos + 1)) return true;
        }
        images[pos] = -1;
        return false;
    };
    return backtrack(backtrack, 0);
}

FiniteGroup cyclic_group(int n) {
    require(n >= 1 && n <= kMaxTableOrder, "cyclic order out of range");
    std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            table[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>((a + b) % n);
    std::vector<int> gens = n > 1 ? std::vector<int>{1} : std::vector<int>{};
    return FiniteGroup::from_table(n, std::move(table), std::move(gens));
}

FiniteGroup dihedral_group(int order) {
    require(order >= 2 && order % 2 == 0 && order <= kMaxTableOrder,
            "dihedral order must be even");
    int m = order / 2;
    // Elements: (r, f) -> index f*m + r, product by the usual reflection rule.
    auto idx = [m](int r, int f) { return f * m + r; };
    std::vector<std::uint16_t> table(static_cast<std::size_t>(order) * order);
    for (int r1 = 0; r1 < m; ++r1)
        for (int f1 = 0; f1 < 2; ++f1)
            for (int r2 = 0; r2 < m; ++r2)
                for (int f2 = 0; f2 < 2; ++f2) {
                    int r = f2 == 0 ? (r1 + r2) % m : (r2 - r1 + m) % m;
                    int f = f1 ^ f2;
                    table[static_cast<std::size_t>(idx(r1, f1)) * order + idx(r2, f2)] =
                        static_cast<std::uint16_t>(idx(r, f));
                }
    std::vector<int> gens;
    if (m > 1) gens = {idx(1, 0), idx(0, 1)};
    else gens = {idx(0, 1)};
    return FiniteGroup::from_table(order, std::move(table), std::move(gens));
}

FiniteGroup elementary_abelian_group(int rank) {
    require(rank >= 0 && (1 << rank) <= kMaxTableOrder, "rank out of range");
    int n = 1 << rank;
    std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            table[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(a ^ b);
    std::vector<int> gens;
    for (int i = 0; i < rank; ++i) gens.push_back(1 << i);
    return FiniteGroup::from_table(n, std::move(table), std::move(gens));
}

}  // namespace cayley
