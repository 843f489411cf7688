#include "cayley/permgroup.hpp"

#include <algorithm>
#include <numeric>

namespace cayley {

Permutation::Permutation(std::vector<int> images) : img(std::move(images)) {
    std::vector<bool> seen(img.size(), false);
    for (int v : img) {
        require(v >= 0 && v < static_cast<int>(img.size()) && !seen[v],
                "image array is not a permutation");
        seen[v] = true;
    }
}

Permutation Permutation::identity(int n) {
    Permutation p;
    p.img.resize(n);
    std::iota(p.img.begin(), p.img.end(), 0);
    return p;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (img[i] != i) return false;
    return true;
}

Permutation Permutation::compose(const Permutation& other) const {
    require(degree() == other.degree(), "degree mismatch in composition");
    Permutation out;
    out.img.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) out.img[i] = other.img[img[i]];
    return out;
}

Permutation Permutation::inverse() const {
    Permutation out;
    out.img.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) out.img[img[i]] = static_cast<int>(i);
    return out;
}

PermGroup PermGroup::from_generators(int degree, std::vector<Permutation> gens) {
    PermGroup g;
    g.degree_ = degree;
    for (const auto& p : gens) {
        require(p.degree() == degree, "generator degree mismatch");
        if (!p.is_identity()) g.gens_.push_back(p);
    }
    if (!g.gens_.empty()) {
        Level root;
        root.base = -1;
        for (int pt = 0; pt < degree && root.base < 0; ++pt)
            for (const auto& p : g.gens_)
                if (p(pt) != pt) {
                    root.base = pt;
                    break;
                }
        root.gens = g.gens_;
        g.levels_.push_back(std::move(root));
        g.rebuild_level(0);
        g.complete_level(0);
    }
    g.order_ = 1;
    for (const auto& lvl : g.levels_) g.order_ *= static_cast<long>(lvl.orbit.size());
    return g;
}

void PermGroup::rebuild_level(std::size_t li) {
    Level& L = levels_[li];
    L.orbit.clear();
    L.reps.clear();
    L.transversal_idx.assign(degree_, -1);
    L.orbit.push_back(L.base);
    L.reps.push_back(Permutation::identity(degree_));
    L.transversal_idx[L.base] = 0;
    // BFS in discovery order, generators tried in list order: deterministic.
    for (std::size_t head = 0; head < L.orbit.size(); ++head) {
        int x = L.orbit[head];
        for (const auto& g : L.gens) {
            int y = g(x);
            if (L.transversal_idx[y] < 0) {
                L.transversal_idx[y] = static_cast<int>(L.orbit.size());
                L.orbit.push_back(y);
                L.reps.push_back(L.reps[head].compose(g));
            }
        }
    }
}

// Establishes the tower property at level li: every Schreier generator of
// the level strips to the identity through the chain below, adding residues
// as deeper strong generators (and re-completing below) when one does not.
// The level's own orbit and generator list are stable during the scan, so
// iterating by index is safe.
void PermGroup::complete_level(std::size_t li) {
    // levels_ may reallocate while deeper levels are being grown, so always
    // re-index instead of holding references.
    for (std::size_t oi = 0; oi < levels_[li].orbit.size(); ++oi) {
        for (std::size_t gi = 0; gi < levels_[li].gens.size(); ++gi) {
            const Level& L = levels_[li];
            int x = L.orbit[oi];
            int y = L.gens[gi](x);
            Permutation schreier =
                L.reps[oi].compose(L.gens[gi]).compose(L.reps[L.transversal_idx[y]].inverse());
            Permutation res = strip(schreier, li + 1);
            if (res.is_identity()) continue;
            if (li + 1 == levels_.size()) {
                Level next;
                next.base = -1;
                for (int pt = 0; pt < degree_; ++pt)
                    if (res(pt) != pt) {
                        next.base = pt;
                        break;
                    }
                levels_.push_back(std::move(next));
            }
            levels_[li + 1].gens.push_back(std::move(res));
            rebuild_level(li + 1);
            complete_level(li + 1);
        }
    }
}

Permutation PermGroup::strip(const Permutation& p, std::size_t from_level) const {
    Permutation cur = p;
    for (std::size_t li = from_level; li < levels_.size(); ++li) {
        if (cur.is_identity()) break;
        const Level& L = levels_[li];
        int x = cur(L.base);
        int ti = L.transversal_idx[x];
        if (ti < 0) return cur;
        cur = cur.compose(L.reps[ti].inverse());
    }
    return cur;
}

bool PermGroup::contains(const Permutation& p) const {
    if (p.degree() != degree_) return false;
    return strip(p, 0).is_identity();
}

std::vector<int> PermGroup::orbit(int point) const {
    require(point >= 0 && point < degree_, "point out of range");
    std::vector<int> orb = {point};
    std::vector<bool> seen(degree_, false);
    seen[point] = true;
    for (std::size_t head = 0; head < orb.size(); ++head) {
        for (const auto& g : gens_) {
            int y = g(orb[head]);
            if (!seen[y]) {
                seen[y] = true;
                orb.push_back(y);
            }
        }
    }
    std::sort(orb.begin(), orb.end());
    return orb;
}

bool PermGroup::is_transitive() const {
    if (degree_ == 0) return true;
    return static_cast<int>(orbit(0).size()) == degree_;
}

bool PermGroup::is_regular() const {
    return is_transitive() && order_ == degree_;
}

std::optional<Permutation> PermGroup::element_mapping(int from, int to) const {
    require(from >= 0 && from < degree_ && to >= 0 && to < degree_, "point out of range");
    std::vector<int> frontier = {from};
    std::vector<int> via_gen(degree_, -1), parent(degree_, -1);
    std::vector<bool> seen(degree_, false);
    seen[from] = true;
    for (std::size_t head = 0; head < frontier.size() && !seen[to]; ++head) {
        int x = frontier[head];
        for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
            int y = gens_[gi](x);
            if (!seen[y]) {
                seen[y] = true;
                parent[y] = x;
                via_gen[y] = static_cast<int>(gi);
                frontier.push_back(y);
            }
        }
    }
    if (!seen[to]) return std::nullopt;
    std::vector<int> letters;
    for (int x = to; x != from; x = parent[x]) letters.push_back(via_gen[x]);
    Permutation out = Permutation::identity(degree_);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        out = out.compose(gens_[*it]);
    return out;
}

std::vector<Permutation> PermGroup::elements(std::size_t cap) const {
    require(order_ <= static_cast<long>(cap), "element listing exceeds cap");
    std::vector<Permutation> out = {Permutation::identity(degree_)};
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
        std::vector<Permutation> next;
        next.reserve(out.size() * it->reps.size());
        for (const auto& rep : it->reps)
            for (const auto& tail : out) next.push_back(tail.compose(rep));
        out = std::move(next);
    }
    return out;
}

PermGroup PermGroup::point_stabilizer(int point) const {
    require(point >= 0 && point < degree_, "point out of range");
    // Schreier generators over the orbit of the point.
    std::vector<int> orb = {point};
    std::vector<int> idx(degree_, -1);
    idx[point] = 0;
    std::vector<Permutation> reps = {Permutation::identity(degree_)};
    for (std::size_t head = 0; head < orb.size(); ++head) {
        for (const auto& g : gens_) {
            int y = g(orb[head]);
            if (idx[y] < 0) {
                idx[y] = static_cast<int>(orb.size());
                orb.push_back(y);
                reps.push_back(reps[head].compose(g));
            }
        }
    }
    std::vector<Permutation> stab_gens;
    for (std::size_t oi = 0; oi < orb.size(); ++oi) {
        for (const auto& g : gens_) {
            Permutation s = reps[oi].compose(g).compose(reps[idx[g(orb[oi])]].inverse());
            if (!s.is_identity()) stab_gens.push_back(s);
        }
    }
    return from_generators(degree_, std::move(stab_gens));
}

PermGroup stabilizer_chain(int degree, std::vector<Permutation> gens) {
    return PermGroup::from_generators(degree, std::move(gens));
}

}  // namespace cayley
