#pragma once

// Finite presentations and HLT-style coset enumeration. Words are sequences
// of nonzero letters: +k is generator k-1, -k its inverse.

#include <iosfwd>
#include <string>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/finite_group.hpp"

namespace cayley {

using Word = std::vector<int>;

struct Presentation {
    int ngens = 0;
    std::vector<Word> relators;

    void validate() const;

    // Text format: "gens d" then one relator per line as letters a,b,c,...
    // with uppercase meaning the inverse.
    std::string to_text() const;
    static Presentation from_text(std::istream& in);
};

/// Completed, compacted coset table. Column 2g is generator g, column 2g+1
/// its inverse; coset numbering follows first definition order.
struct CosetTable {
    int ngens = 0;
    int ncosets = 0;
    bool complete = false;
    std::vector<int> tab;

    int action(int coset, int letter) const;
    int trace(int coset, const Word& word) const;

    /// Every column a bijection and every relator closed at every coset.
    bool verify(const Presentation& pres) const;
};

inline constexpr int kDefaultCosetCap = 1 << 20;

/// HLT coset enumeration over the subgroup generated by `subgroup_words`.
/// Deterministic; throws ResourceError when `coset_cap` rows are exhausted or
/// the enumeration cannot make progress (free directions).
CosetTable todd_coxeter(const Presentation& pres, const std::vector<Word>& subgroup_words,
                        int coset_cap = kDefaultCosetCap);

/// Left-normed commutator [w1,...,wk] as a word, [a,b] = a^-1 b^-1 a b.
Word left_normed_commutator(const std::vector<Word>& parts);

/// Regular action of a complete coset table (over the trivial subgroup) as a
/// multiplication table; the distinguished generators are the images of the
/// presentation generators. Fails above the table-order cap.
FiniteGroup coset_table_to_group(const CosetTable& table);

/// Presentation of the largest class-c quotient of the group generated by d
/// involutions: relators x_i^2 plus every left-normed commutator of weight
/// c+1 in the generators (all d^(c+1) tuples, unreduced).
Presentation involution_class_presentation(int d, int c);

/// A finite quotient of the universal d-involution group with its marked
/// generators: xgens are the involution images, ygens[i] = xgens[i]*xgens[d-1].
struct MarkedQuotient {
    FiniteGroup group;
    int d = 0;
    int cls = 0;  // nilpotency class bound used for the construction
    std::vector<int> xgens;
    std::vector<int> ygens;
    std::vector<std::vector<int>> element_words;  // per element, xgen indices
};

/// Runs the coset enumeration for involution_class_presentation(d, c) over
/// the trivial subgroup and converts the regular action into a multiplication
/// table. The order is checked to be a power of two.
MarkedQuotient build_involution_quotient(int d, int c, int coset_cap = kDefaultCosetCap);

}  // namespace cayley
