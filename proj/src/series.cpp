#include "cayley/series.hpp"

#include <algorithm>
#include <map>

namespace cayley {

bool Subgroup::contains(int e) const {
    return std::binary_search(elements.begin(), elements.end(), e);
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> gens) {
    Subgroup h;
    h.elements = subgroup_closure(g, gens);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    h.gens = std::move(gens);
    return h;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
    for (int x : g.gens())
        for (int e : h.elements)
            if (!h.contains(g.conjugate(e, x))) return false;
    return true;
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
    std::vector<int> gens;
    std::vector<bool> seen(g.order(), false);
    for (int x : a.elements)
        for (int y : b.elements) {
            int c = g.commutator(x, y);
            if (!seen[c]) {
                seen[c] = true;
                gens.push_back(c);
            }
        }
    return make_subgroup(g, std::move(gens));
}

Subgroup frattini_like_radical(const FiniteGroup& g, const Subgroup& h) {
    Subgroup whole;
    whole.elements.resize(g.order());
    for (int i = 0; i < g.order(); ++i) whole.elements[i] = i;
    Subgroup comm = commutator_subgroup(g, h, whole);
    std::vector<int> gens = comm.gens;
    for (int e : h.elements) gens.push_back(g.mul(e, e));
    return make_subgroup(g, std::move(gens));
}

int factor_rank(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
    for (int e : k.elements)
        require(h.contains(e), "factor_rank: K is not contained in H");
    // Coset decomposition of K in H.
    std::map<int, int> coset_of;  // element -> coset id
    std::vector<int> reps;
    for (int e : h.elements) {
        if (coset_of.count(e)) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(e);
        for (int x : k.elements) coset_of[g.mul(e, x)] = id;
    }
    int m = static_cast<int>(reps.size());
    internal_check(static_cast<std::size_t>(m) * k.elements.size() == h.elements.size(),
                   "coset decomposition does not partition H");
    // Factor table; exponent 2 and commutativity are checked, not assumed.
    internal_check((m & (m - 1)) == 0, "factor group order is not a power of two");
    for (int i = 0; i < m; ++i) {
        internal_check(coset_of.at(g.mul(reps[i], reps[i])) == coset_of.at(0),
                       "factor group has an element of order > 2");
        for (int j = 0; j < m; ++j)
            internal_check(coset_of.at(g.mul(reps[i], reps[j])) ==
                               coset_of.at(g.mul(reps[j], reps[i])),
                           "factor group is not abelian");
    }
    int rank = 0;
    while ((1 << rank) < m) ++rank;
    return rank;
}

const Subgroup& SeriesData::p_term(int i) const {
    require(i >= 1, "series term index starts at 1");
    if (i == 1) return f_image;
    int idx = std::min(i - 1, static_cast<int>(gamma.size()) - 1);
    return gamma[idx];
}

SeriesData p_series(const MarkedQuotient& q) {
    const FiniteGroup& g = q.group;
    SeriesData s;
    s.f_image = make_subgroup(g, q.ygens);
    internal_check(g.order() == 2 * s.f_image.order() || g.order() == 1,
                   "ygens should generate an index-2 subgroup");

    Subgroup whole;
    whole.elements.resize(g.order());
    for (int i = 0; i < g.order(); ++i) whole.elements[i] = i;
    whole.gens = g.gens();
    s.gamma.push_back(whole);
    while (!s.gamma.back().is_trivial()) {
        Subgroup next = commutator_subgroup(g, s.gamma.back(), whole);
        internal_check(next.order() < s.gamma.back().order() || next.is_trivial(),
                       "lower central series stalled before reaching 1");
        // Factor must be elementary abelian of exponent 2.
        factor_rank(g, s.gamma.back(), next);
        s.gamma.push_back(std::move(next));
    }
    return s;
}

Subgroup m_subgroup(const MarkedQuotient& q, const SeriesData& series, int i, int j) {
    require(i >= 1, "m_subgroup needs i >= 1");
    require(j >= 0 && j <= i, "m_subgroup needs 0 <= j <= i");
    const FiniteGroup& g = q.group;
    std::vector<int> gens = series.p_term(i + 1).elements;
    int k = static_cast<int>(q.ygens.size());
    for (int s = j; s <= i - 1; ++s) {
        int weight = i - s;
        // [a_1,...,a_weight]^{2^s} over ygen tuples in lexicographic order.
        std::vector<int> tuple(weight, 0);
        for (;;) {
            int comm = q.ygens[tuple[0]];
            for (int t = 1; t < weight; ++t)
                comm = g.commutator(comm, q.ygens[tuple[t]]);
            gens.push_back(g.power(comm, 1L << s));
            int pos = weight - 1;
            while (pos >= 0 && tuple[pos] == k - 1) tuple[pos--] = 0;
            if (pos < 0) break;
            ++tuple[pos];
        }
    }
    return make_subgroup(g, std::move(gens));
}

int rr_rank(const MarkedQuotient& q, const Subgroup& h) {
    require(is_normal(q.group, h), "rr_rank needs a normal subgroup");
    Subgroup k = frattini_like_radical(q.group, h);
    return factor_rank(q.group, h, k);
}

std::vector<MarkedAutomorphism> symd_action(const MarkedQuotient& q) {
    const FiniteGroup& g = q.group;
    int d = q.d;
    std::vector<int> sigma(d);
    for (int i = 0; i < d; ++i) sigma[i] = i;
    std::vector<MarkedAutomorphism> out;
    do {
        std::vector<int> img(g.order());
        for (int e = 0; e < g.order(); ++e) {
            int acc = 0;
            for (int letter : q.element_words[e]) acc = g.mul(acc, q.xgens[sigma[letter]]);
            img[e] = acc;
        }
        Permutation perm{std::vector<int>(img)};  // throws if not bijective
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                internal_check(img[g.mul(a, b)] == g.mul(img[a], img[b]),
                               "generator permutation did not extend to an automorphism");
        out.push_back({sigma, std::move(perm)});
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

bool subgroup_invariant_under(const Subgroup& h, const Permutation& on_elements) {
    for (int e : h.elements)
        if (!h.contains(on_elements(e))) return false;
    return true;
}

bool faithfulness_check(const MarkedQuotient& q, const SeriesData& series, int i) {
    require(i >= 2, "faithfulness section needs i >= 2");
    Subgroup top = m_subgroup(q, series, i, i - 2);
    Subgroup bottom = m_subgroup(q, series, i, i);
    require_domain(top.order() > bottom.order(), "degenerate section: M(i,i-2) = M(i,i)");
    auto autos = symd_action(q);
    for (const auto& [sigma, perm] : autos) {
        bool is_id = true;
        for (int v = 0; v < q.d && is_id; ++v) is_id = sigma[v] == v;
        if (is_id) continue;
        internal_check(subgroup_invariant_under(top, perm) &&
                           subgroup_invariant_under(bottom, perm),
                       "section is not invariant under the generator permutation");
        // Trivial action on the section: perm(e) * e^-1 lands in `bottom`
        // for every e in `top`.
        bool trivial = true;
        for (int e : top.elements) {
            if (!bottom.contains(q.group.mul(perm(e), q.group.inverse(e)))) {
                trivial = false;
                break;
            }
        }
        if (trivial) return false;
    }
    return true;
}

}  // namespace cayley
