#pragma once

// Exact linear algebra over GF(2): bit-packed matrices, canonical subspace
// bases, Gaussian binomials, and counts of subspaces fixed or moved by
// matrix groups. Everything here is exact integer arithmetic; no floats.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cayley/bigcount.hpp"
#include "cayley/errors.hpp"

namespace cayley::f2 {

inline constexpr int kMaxDim = 64;  // rows are single machine words

/// A vector in F2^dim, bit i = coordinate i.
struct F2Vector {
    int dim = 0;
    std::uint64_t bits = 0;

    bool get(int i) const { return (bits >> i) & 1u; }
    void set(int i, bool v) {
        if (v) bits |= (std::uint64_t{1} << i);
        else bits &= ~(std::uint64_t{1} << i);
    }
    friend F2Vector operator^(F2Vector a, const F2Vector& b) {
        a.bits ^= b.bits;
        return a;
    }
    friend bool operator==(const F2Vector&, const F2Vector&) = default;
};

/// Row-major bit matrix; rows are 64-bit masks, column j = bit j.
struct F2Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint64_t> row;

    F2Matrix() = default;
    F2Matrix(int r, int c);

    static F2Matrix identity(int n);

    bool get(int i, int j) const { return (row[i] >> j) & 1u; }
    void set(int i, int j, bool v) {
        if (v) row[i] |= (std::uint64_t{1} << j);
        else row[i] &= ~(std::uint64_t{1} << j);
    }

    bool is_square() const { return rows == cols; }
    bool is_identity() const;

    F2Matrix mul(const F2Matrix& other) const;
    friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) { return a.mul(b); }

    int rank() const;
    bool is_invertible() const { return is_square() && rank() == rows; }
    F2Matrix inverse() const;

    // v * M for a row vector v (bit i selects row i).
    std::uint64_t apply_row(std::uint64_t v) const;

    // Multiplicative order; requires invertible. Caps at `cap` (DomainError past it).
    long order(long cap = 1 << 20) const;

    // Text format: "r c" then r lines of c characters from {0,1}.
    std::string to_text() const;
    static F2Matrix from_text(std::istream& in);

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;
};

/// A subspace of F2^ambient held as a reduced-row-echelon basis with strictly
/// increasing pivot columns. Equal subspaces have bit-identical bases, so
/// operator== is exact subspace equality.
struct F2Subspace {
    int ambient = 0;
    std::vector<std::uint64_t> basis;  // RREF rows, no zero rows

    int dim() const { return static_cast<int>(basis.size()); }
    int codim() const { return ambient - dim(); }

    static F2Subspace from_rows(int ambient, std::vector<std::uint64_t> rows);
    static F2Subspace row_space(const F2Matrix& m) {
        return from_rows(m.cols, m.row);
    }

    /// Image under a matrix acting on row vectors (basis * M, re-reduced).
    F2Subspace image(const F2Matrix& m) const;

    bool contains(std::uint64_t v) const;

    friend bool operator==(const F2Subspace&, const F2Subspace&) = default;
    friend auto operator<=>(const F2Subspace& a, const F2Subspace& b) {
        if (auto c = a.ambient <=> b.ambient; c != 0) return c;
        return a.basis <=> b.basis;
    }
};

/// Reduce rows in place to RREF with increasing pivots; returns the rank.
int rref(std::vector<std::uint64_t>& rows, int cols);

/// Gaussian binomial coefficient: the number of s-dimensional subspaces of an
/// r-dimensional space over the q-element field, as the exact product
/// (q^r-1)(q^{r-1}-1).../(q^s-1)(q^{s-1}-1)...  Requires 0 <= s <= r, q >= 2.
BigCount gaussian_binomial(int r, int s, const BigCount& q);
inline BigCount gaussian_binomial2(int r, int s) { return gaussian_binomial(r, s, 2); }

/// Streams every codimension-`codim` subspace of F2^r exactly once, in a
/// deterministic order: pivot-column sets lexicographically, free entries in
/// counting order within each pivot set.
class SubspaceStream {
public:
    SubspaceStream(int r, int codim);

    std::optional<F2Subspace> next();

    int ambient() const { return r_; }
    int dim() const { return k_; }

private:
    bool advance_combination();
    void setup_cells();

    int r_;
    int k_;
    bool done_ = false;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> cells_;  // (row, col) free positions
    std::uint64_t counter_ = 0;
};

/// Number of codimension-s subspaces invariant under an order-p element of
/// GL(r,2) with t nontrivial blocks. For p = 2, t counts Jordan blocks of
/// size 2; for p > 2, ell must be the multiplicative order of 2 mod p and t
/// counts the ell-dimensional irreducible blocks (all of one isomorphism
/// type). Exact closed form; the brute-force twin below is the oracle.
BigCount fix_count_formula(int r, int s, int p, int t, int ell = 0);

/// Same count by exhaustive enumeration over all codimension-s subspaces.
BigCount fix_count_bruteforce(const F2Matrix& alpha, int s);

/// f_{r,s}: the fixed-subspace count of a transvection, an upper bound for
/// every prime-order element (1 <= s < r).
BigCount transvection_bound(int r, int s);

struct FreeSubspaceCount {
    BigCount exact;        // |{W : codim s, W*a != W for all a != 1 in the group}|
    BigCount lower_bound;  // ceil(binom * (1 - (|T|-1) * 2^{1-min(r-s,s)})), clamped at 0
};

/// Counts codimension-s subspaces moved by every non-identity element of a
/// multiplicatively closed set of invertible matrices. r > s > 0.
FreeSubspaceCount count_free_subspaces(int r, int s, const std::vector<F2Matrix>& group);

/// Multiplicative order of `base` modulo the odd prime p.
int multiplicative_order_mod(int base, int p);

bool is_prime(int p);

/// Involution of GL(r,2) with t size-2 Jordan blocks (t = 1 is a transvection).
F2Matrix order_two_block_matrix(int r, int t);

/// Order-p element of GL(r,2) (p an odd prime) acting with t homogeneous
/// irreducible blocks of dimension ord_2(p) plus the identity on the rest.
F2Matrix odd_prime_block_matrix(int r, int p, int t);

/// All (p, t, ell) block descriptors of prime-order elements of GL(r,2)
/// reachable by the two constructors above. ell = 0 for p = 2.
struct PrimeOrderBlockData {
    int p;
    int t;
    int ell;
};
std::vector<PrimeOrderBlockData> prime_order_block_data(int r);

}  // namespace cayley::f2
