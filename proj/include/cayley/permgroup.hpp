#pragma once

// Permutation groups with a deterministic Schreier-Sims stabilizer chain:
// exact order, membership by sifting, orbits, transversal walks.

#include <cstdint>
#include <optional>
#include <vector>

#include "cayley/bigcount.hpp"
#include "cayley/errors.hpp"

namespace cayley {

struct Permutation {
    std::vector<int> img;

    Permutation() = default;
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int n);

    int degree() const { return static_cast<int>(img.size()); }
    int operator()(int x) const { return img[x]; }
    bool is_identity() const;

    // compose: first apply this, then other (x^(p*q) = (x^p)^q).
    Permutation compose(const Permutation& other) const;
    Permutation inverse() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) {
        return a.img <=> b.img;
    }
};

class PermGroup {
public:
    static PermGroup from_generators(int degree, std::vector<Permutation> gens);
    static PermGroup trivial(int degree) { return from_generators(degree, {}); }

    int degree() const { return degree_; }
    const BigCount& order() const { return order_; }
    const std::vector<Permutation>& generators() const { return gens_; }

    bool contains(const Permutation& p) const;
    std::vector<int> orbit(int point) const;
    bool is_transitive() const;
    bool is_regular() const;

    /// Some element mapping `from` to `to`, or nullopt if none exists.
    std::optional<Permutation> element_mapping(int from, int to) const;

    /// Full element listing via transversal products; refuses above `cap`.
    std::vector<Permutation> elements(std::size_t cap = 250000) const;

    /// Pointwise stabilizer of a single point, as a fresh group.
    PermGroup point_stabilizer(int point) const;

private:
    struct Level {
        int base = -1;
        std::vector<Permutation> gens;
        std::vector<int> orbit;                    // discovery order, orbit[0] = base
        std::vector<int> transversal_idx;          // point -> index into reps, -1 outside
        std::vector<Permutation> reps;             // reps[i] maps base -> orbit[i]
    };

    void rebuild_level(std::size_t li);
    void complete_level(std::size_t li);
    Permutation strip(const Permutation& p, std::size_t from_level) const;

    int degree_ = 0;
    std::vector<Permutation> gens_;
    std::vector<Level> levels_;
    BigCount order_ = 1;
};

/// Builds the verified stabilizer chain (all generators must share a degree).
PermGroup stabilizer_chain(int degree, std::vector<Permutation> gens);

}  // namespace cayley
