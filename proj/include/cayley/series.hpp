#pragma once

// Subgroup series inside a finite involution-generated 2-group quotient:
// the lower central series, its refinement by iterated-commutator 2-powers,
// rank bookkeeping, and the symmetric-group action permuting the marked
// generators.

#include <vector>

#include "cayley/permgroup.hpp"
#include "cayley/presentation.hpp"

namespace cayley {

/// Subgroup of a multiplication-table group: sorted element list plus the
/// generating subset it was built from.
struct Subgroup {
    std::vector<int> elements;
    std::vector<int> gens;

    int order() const { return static_cast<int>(elements.size()); }
    bool contains(int e) const;
    bool is_trivial() const { return elements.size() == 1; }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.elements == b.elements;
    }
};

Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> gens);
bool is_normal(const FiniteGroup& g, const Subgroup& h);

/// [A, B]: the subgroup generated by all commutators between the two element
/// lists (exact, not just generator commutators).
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);

/// [H, G] H^2 -- the smallest normal subgroup below H with elementary
/// abelian quotient when H is normal.
Subgroup frattini_like_radical(const FiniteGroup& g, const Subgroup& h);

/// rk(H/K) for K <= H with H/K elementary abelian; builds the factor table
/// and checks exponent 2 rather than assuming it.
int factor_rank(const FiniteGroup& g, const Subgroup& h, const Subgroup& k);

struct SeriesData {
    Subgroup f_image;                 // index-2 subgroup generated by the ygens
    std::vector<Subgroup> gamma;      // gamma[0] = whole group, gamma[i] = gamma_{i+1}
    /// Image of the series term P_i (i >= 1): P_1 is the ygen subgroup, and
    /// P_i for i >= 2 is the i-th lower central term.
    const Subgroup& p_term(int i) const;
    int length() const { return static_cast<int>(gamma.size()); }
};

/// Lower central series of the quotient, with each factor checked to be
/// elementary abelian of exponent 2.
SeriesData p_series(const MarkedQuotient& q);

/// M_{i,j}: generated by the image of P_{i+1} together with all elements
/// [a_1,...,a_{i-s}]^{2^s} for j <= s <= i-1, entries drawn from the ygens
/// in lexicographic tuple order.
Subgroup m_subgroup(const MarkedQuotient& q, const SeriesData& series, int i, int j);

/// rk(H / [H,G]H^2) for a normal subgroup H.
int rr_rank(const MarkedQuotient& q, const Subgroup& h);

struct MarkedAutomorphism {
    std::vector<int> sigma;  // permutation of generator positions 0..d-1
    Permutation on_elements;
};

/// The d! automorphisms induced by permuting the marked involution
/// generators, each verified against the multiplication table.
std::vector<MarkedAutomorphism> symd_action(const MarkedQuotient& q);

/// True iff no non-identity generator permutation acts trivially on the
/// section M_{i,i-2}/M_{i,i} (which must be nondegenerate and invariant).
bool faithfulness_check(const MarkedQuotient& q, const SeriesData& series, int i);

bool subgroup_invariant_under(const Subgroup& h, const Permutation& on_elements);

}  // namespace cayley
