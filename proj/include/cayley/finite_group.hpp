#pragma once

// Finite groups as explicit multiplication tables, plus the table-level
// algorithms the census needs: regular representations, automorphisms
// preserving a generating set, and small-order isomorphism testing.

#include <iosfwd>
#include <string>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/permgroup.hpp"

namespace cayley {

inline constexpr int kMaxTableOrder = 4096;

class FiniteGroup {
public:
    FiniteGroup() = default;  // empty placeholder; build via from_table

    /// Validates: Latin square, identity at index 0, two-sided inverses,
    /// associativity (full check for n <= 512, deterministic spot check
    /// above), and that `gens` generates the whole group.
    static FiniteGroup from_table(int n, std::vector<std::uint16_t> table,
                                  std::vector<int> gens,
                                  std::vector<std::string> labels = {});

    int order() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inverse(int a) const { return inv_[a]; }
    int conjugate(int a, int g) const { return mul(mul(inverse(g), a), g); }
    int commutator(int a, int b) const {
        return mul(mul(inverse(a), inverse(b)), mul(a, b));
    }
    int power(int a, long e) const;
    int element_order(int a) const;
    bool is_involution(int a) const { return a != 0 && mul(a, a) == 0; }
    bool is_abelian() const;

    const std::vector<int>& gens() const { return gens_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::vector<int> involutions() const;
    std::vector<int> center() const;
    std::vector<int> element_orders() const;  // sorted multiset

    /// Text format: line "n", n rows of n indices, then "gens: i j k".
    std::string to_text() const;
    static FiniteGroup from_text(std::istream& in);

private:
    int n_ = 0;
    std::vector<std::uint16_t> table_;
    std::vector<std::uint16_t> inv_;
    std::vector<int> gens_;
    std::vector<std::string> labels_;
};

/// Smallest subgroup containing `gens` (sorted element list).
std::vector<int> subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens);

/// Right-regular action x -> x*g for each g; the result acts regularly.
PermGroup regular_representation(const FiniteGroup& g);
Permutation right_multiplication(const FiniteGroup& g, int element);

/// All automorphisms of g that permute the generating set S, returned as the
/// permutation group they induce on S (positions into S). S must generate
/// and be identity-free; an automorphism is determined by its action on S.
PermGroup set_preserving_automorphisms(const FiniteGroup& g, const std::vector<int>& S);

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

// Table constructors for the catalog families.
FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int order);          // order = 2m, m >= 1
FiniteGroup elementary_abelian_group(int rank); // order 2^rank

}  // namespace cayley
