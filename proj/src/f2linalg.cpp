#include "cayley/f2linalg.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <sstream>

namespace cayley::f2 {

F2Matrix::F2Matrix(int r, int c) : rows(r), cols(c), row(r, 0) {
    require_domain(r >= 0 && c >= 0 && c <= kMaxDim, "matrix dimensions out of range");
}

F2Matrix F2Matrix::identity(int n) {
    F2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.row[i] = std::uint64_t{1} << i;
    return m;
}

bool F2Matrix::is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows; ++i)
        if (row[i] != (std::uint64_t{1} << i)) return false;
    return true;
}

F2Matrix F2Matrix::mul(const F2Matrix& other) const {
    require_domain(cols == other.rows, "matrix product shape mismatch");
    F2Matrix out(rows, other.cols);
    for (int i = 0; i < rows; ++i) {
        std::uint64_t acc = 0;
        std::uint64_t v = row[i];
        while (v) {
            int j = std::countr_zero(v);
            v &= v - 1;
            acc ^= other.row[j];
        }
        out.row[i] = acc;
    }
    return out;
}

int rref(std::vector<std::uint64_t>& rows, int cols) {
    int rank = 0;
    for (int col = 0; col < cols; ++col) {
        int pivot = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i) {
            if ((rows[i] >> col) & 1u) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i != rank && ((rows[i] >> col) & 1u)) rows[i] ^= rows[rank];
        }
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

int F2Matrix::rank() const {
    auto copy = row;
    return rref(copy, cols);
}

F2Matrix F2Matrix::inverse() const {
    require_domain(is_square(), "inverse of a non-square matrix");
    // Row-reduce [M | I]; the identity block tracks the row operations.
    int n = rows;
    std::vector<std::uint64_t> m = row;
    std::vector<std::uint64_t> inv(n);
    for (int i = 0; i < n; ++i) inv[i] = std::uint64_t{1} << i;
    int rank = 0;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = rank; i < n; ++i) {
            if ((m[i] >> col) & 1u) {
                pivot = i;
                break;
            }
        }
        require_domain(pivot >= 0, "matrix is singular");
        std::swap(m[rank], m[pivot]);
        std::swap(inv[rank], inv[pivot]);
        for (int i = 0; i < n; ++i) {
            if (i != rank && ((m[i] >> col) & 1u)) {
                m[i] ^= m[rank];
                inv[i] ^= inv[rank];
            }
        }
        ++rank;
    }
    F2Matrix out(n, n);
    out.row = std::move(inv);
    return out;
}

std::uint64_t F2Matrix::apply_row(std::uint64_t v) const {
    std::uint64_t acc = 0;
    while (v) {
        int i = std::countr_zero(v);
        v &= v - 1;
        acc ^= row[i];
    }
    return acc;
}

long F2Matrix::order(long cap) const {
    require_domain(is_invertible(), "order of a singular matrix");
    F2Matrix acc = *this;
    long n = 1;
    while (!acc.is_identity()) {
        acc = acc.mul(*this);
        ++n;
        require_domain(n <= cap, "matrix order exceeds cap");
    }
    return n;
}

std::string F2Matrix::to_text() const {
    std::ostringstream out;
    out << rows << ' ' << cols << '\n';
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) out << (get(i, j) ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

F2Matrix F2Matrix::from_text(std::istream& in) {
    int r = -1, c = -1;
    if (!(in >> r >> c) || r < 0 || c < 0 || c > kMaxDim)
        throw PreconditionError("matrix text: bad header");
    F2Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        std::string line;
        if (!(in >> line) || static_cast<int>(line.size()) != c)
            throw PreconditionError("matrix text: bad row " + std::to_string(i));
        for (int j = 0; j < c; ++j) {
            if (line[j] == '1') m.set(i, j, true);
            else if (line[j] != '0')
                throw PreconditionError("matrix text: bad character in row " + std::to_string(i));
        }
    }
    return m;
}

F2Subspace F2Subspace::from_rows(int ambient, std::vector<std::uint64_t> rows) {
    require_domain(ambient >= 0 && ambient <= kMaxDim, "ambient dimension out of range");
    if (ambient < kMaxDim) {
        std::uint64_t mask = (std::uint64_t{1} << ambient) - 1;
        for (auto& r : rows) require_domain((r & ~mask) == 0, "row exceeds ambient dimension");
    }
    rref(rows, ambient);
    F2Subspace s;
    s.ambient = ambient;
    s.basis = std::move(rows);
    return s;
}

F2Subspace F2Subspace::image(const F2Matrix& m) const {
    require_domain(m.rows == ambient, "matrix does not act on this ambient space");
    std::vector<std::uint64_t> rows;
    rows.reserve(basis.size());
    for (auto b : basis) rows.push_back(m.apply_row(b));
    return from_rows(m.cols, std::move(rows));
}

bool F2Subspace::contains(std::uint64_t v) const {
    for (auto b : basis) {
        if (v == 0) break;
        int pivot = std::countr_zero(b);
        if ((v >> pivot) & 1u) v ^= b;
    }
    return v == 0;
}

BigCount gaussian_binomial(int r, int s, const BigCount& q) {
    require_domain(q >= 2, "gaussian binomial needs q >= 2");
    require_domain(s >= 0 && s <= r, "gaussian binomial needs 0 <= s <= r");
    BigCount num = 1, den = 1;
    for (int i = 0; i < s; ++i) {
        num *= boost::multiprecision::pow(q, static_cast<unsigned>(r - i)) - 1;
        den *= boost::multiprecision::pow(q, static_cast<unsigned>(s - i)) - 1;
    }
    internal_check(num % den == 0, "gaussian binomial division not exact");
    return num / den;
}

SubspaceStream::SubspaceStream(int r, int codim) : r_(r), k_(r - codim) {
    require_domain(r >= 0 && r <= kMaxDim, "ambient dimension out of range");
    require_domain(codim >= 0 && codim <= r, "codimension out of range");
    pivots_.resize(k_);
    for (int i = 0; i < k_; ++i) pivots_[i] = i;
    setup_cells();
}

void SubspaceStream::setup_cells() {
    cells_.clear();
    counter_ = 0;
    std::vector<bool> is_pivot(r_, false);
    for (int p : pivots_) is_pivot[p] = true;
    // Free entries: to the right of the row's pivot, outside pivot columns.
    for (int i = 0; i < k_; ++i)
        for (int j = pivots_[i] + 1; j < r_; ++j)
            if (!is_pivot[j]) cells_.emplace_back(i, j);
    internal_check(cells_.size() < 63, "free cell count too large for counter");
}

bool SubspaceStream::advance_combination() {
    // Next k-subset of {0..r-1} in lexicographic order.
    int i = k_ - 1;
    while (i >= 0 && pivots_[i] == r_ - k_ + i) --i;
    if (i < 0) return false;
    ++pivots_[i];
    for (int j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
    return true;
}

std::optional<F2Subspace> SubspaceStream::next() {
    if (done_) return std::nullopt;
    F2Subspace s;
    s.ambient = r_;
    s.basis.resize(k_);
    for (int i = 0; i < k_; ++i) s.basis[i] = std::uint64_t{1} << pivots_[i];
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        if ((counter_ >> c) & 1u) {
            auto [i, j] = cells_[c];
            s.basis[i] |= std::uint64_t{1} << j;
        }
    }
    ++counter_;
    if (counter_ >= (std::uint64_t{1} << cells_.size())) {
        if (!advance_combination()) done_ = true;
        else setup_cells();
    }
    if (k_ == 0) done_ = true;  // single empty basis
    return s;
}

namespace {

// Gaussian binomial that treats out-of-range arguments as an empty count.
BigCount gb2_or_zero(int r, int s) {
    if (r < 0 || s < 0 || s > r) return 0;
    return gaussian_binomial2(r, s);
}

}  // namespace

BigCount fix_count_formula(int r, int s, int p, int t, int ell) {
    require_domain(r >= 1 && r <= kMaxDim, "r out of range");
    require_domain(s >= 0 && s <= r, "s out of range");
    require_domain(is_prime(p), "p must be prime");
    require_domain(t >= 1, "identity is excluded: t must be >= 1");
    if (p == 2) {
        require_domain(2 * t <= r, "more Jordan blocks than fit: need 2t <= r");
        BigCount total = 0;
        for (int x = std::max(0, t - s); x <= std::min(t, (r - s) / 2); ++x) {
            BigCount term = gaussian_binomial2(t, x);
            term *= gb2_or_zero(r - t - x, r - s - 2 * x);
            term *= big_pow2(static_cast<long>(s - t + x) * x);
            total += term;
        }
        return total;
    }
    int want_ell = multiplicative_order_mod(2, p);
    require_domain(ell == want_ell, "ell must be the multiplicative order of 2 mod p");
    require_domain(t * ell <= r, "block data does not fit: need t*ell <= r");
    BigCount qell = big_pow2(ell);
    BigCount total = 0;
    for (int x = 0; x <= t; ++x) {
        int cdim = r - s - x * ell;       // dimension of the fixed-space part
        if (cdim < 0 || cdim > r - t * ell) continue;
        total += gaussian_binomial(t, x, qell) * gaussian_binomial2(r - t * ell, cdim);
    }
    return total;
}

BigCount fix_count_bruteforce(const F2Matrix& alpha, int s) {
    require_domain(alpha.is_square(), "alpha must be square");
    require_domain(alpha.is_invertible(), "alpha is singular");
    int r = alpha.rows;
    require_domain(s >= 0 && s <= r, "s out of range");
    BigCount count = 0;
    SubspaceStream stream(r, s);
    while (auto w = stream.next()) {
        if (w->image(alpha) == *w) ++count;
    }
    return count;
}

BigCount transvection_bound(int r, int s) {
    require_domain(r > s && s > 0, "transvection bound needs r > s > 0");
    return gaussian_binomial2(r - 1, s - 1) + gb2_or_zero(r - 2, s) * big_pow2(s);
}

FreeSubspaceCount count_free_subspaces(int r, int s, const std::vector<F2Matrix>& group) {
    require_domain(r > s && s > 0, "count_free_subspaces needs r > s > 0");
    std::vector<F2Matrix> nontrivial;
    for (const auto& m : group) {
        require_domain(m.rows == r && m.cols == r, "group element has wrong dimension");
        require_domain(m.is_invertible(), "group contains a singular matrix");
        if (!m.is_identity()) nontrivial.push_back(m);
    }
    // The moved-by-everything condition only makes sense against a full group
    // listing, so insist the input is multiplicatively closed.
    for (const auto& a : group)
        for (const auto& b : group) {
            auto ab = a.mul(b);
            if (std::find(group.begin(), group.end(), ab) == group.end())
                throw PreconditionError("matrix set is not closed under multiplication");
        }

    BigCount exact = 0;
    SubspaceStream stream(r, s);
    while (auto w = stream.next()) {
        bool free_subspace = true;
        for (const auto& m : nontrivial) {
            if (w->image(m) == *w) {
                free_subspace = false;
                break;
            }
        }
        if (free_subspace) ++exact;
    }

    BigCount binom = gaussian_binomial2(r, s);
    long tsize = static_cast<long>(nontrivial.size()) + 1;  // with identity
    BigCount penalty = (binom * (tsize - 1)) / big_pow2(std::min(r - s, s) - 1);
    BigCount lower = binom - penalty;
    if (lower < 0) lower = 0;
    internal_check(exact >= lower, "exact free count fell below its guaranteed bound");
    return {exact, lower};
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int multiplicative_order_mod(int base, int p) {
    require_domain(is_prime(p) && p > 2, "modulus must be an odd prime");
    require_domain(base % p != 0, "base divisible by the modulus");
    long x = base % p;
    long acc = x;
    int order = 1;
    while (acc != 1) {
        acc = (acc * x) % p;
        ++order;
        internal_check(order <= p, "order computation ran away");
    }
    return order;
}

F2Matrix order_two_block_matrix(int r, int t) {
    require_domain(t >= 1 && 2 * t <= r, "need 1 <= t and 2t <= r");
    F2Matrix m = F2Matrix::identity(r);
    // Jordan blocks [[1,1],[0,1]] on coordinate pairs (2i, 2i+1).
    for (int i = 0; i < t; ++i) m.set(2 * i, 2 * i + 1, true);
    return m;
}

namespace {

// One fixed irreducible polynomial per degree, bits = coefficients.
std::uint64_t irreducible_poly(int ell) {
    switch (ell) {
        case 2: return 0b111;        // x^2 + x + 1
        case 3: return 0b1011;       // x^3 + x + 1
        case 4: return 0b10011;      // x^4 + x + 1
        case 5: return 0b100101;     // x^5 + x^2 + 1
        case 6: return 0b1000011;    // x^6 + x + 1
        default: throw DomainError("no irreducible polynomial stored for degree " + std::to_string(ell));
    }
}

std::uint64_t gf_mul(std::uint64_t a, std::uint64_t b, int ell, std::uint64_t poly) {
    std::uint64_t res = 0;
    while (b) {
        if (b & 1u) res ^= a;
        b >>= 1;
        a <<= 1;
        if ((a >> ell) & 1u) a ^= poly;
    }
    return res;
}

std::uint64_t gf_pow(std::uint64_t a, long e, int ell, std::uint64_t poly) {
    std::uint64_t res = 1;
    while (e) {
        if (e & 1) res = gf_mul(res, a, ell, poly);
        a = gf_mul(a, a, ell, poly);
        e >>= 1;
    }
    return res;
}

}  // namespace

F2Matrix odd_prime_block_matrix(int r, int p, int t) {
    require_domain(is_prime(p) && p > 2, "p must be an odd prime");
    int ell = multiplicative_order_mod(2, p);
    require_domain(t >= 1 && t * ell <= r, "block data does not fit in dimension r");
    std::uint64_t poly = irreducible_poly(ell);
    long group_order = (1L << ell) - 1;
    internal_check(group_order % p == 0, "2^ell - 1 not divisible by p");

    // Find an element of multiplicative order exactly p in GF(2^ell).
    std::uint64_t zeta = 0;
    for (std::uint64_t cand = 2; cand < (std::uint64_t{1} << ell); ++cand) {
        std::uint64_t z = gf_pow(cand, group_order / p, ell, poly);
        if (z == 1) continue;
        internal_check(gf_pow(z, p, ell, poly) == 1, "candidate order is not p");
        zeta = z;
        break;
    }
    internal_check(zeta != 0, "no order-p element found in GF(2^ell)");

    // Multiplication by zeta on GF(2^ell) as an ell x ell bit matrix, one
    // block per copy, identity on the remaining coordinates.
    F2Matrix m = F2Matrix::identity(r);
    for (int blk = 0; blk < t; ++blk) {
        int base = blk * ell;
        for (int i = 0; i < ell; ++i) {
            std::uint64_t img = gf_mul(std::uint64_t{1} << i, zeta, ell, poly);
            m.row[base + i] = img << base;
        }
    }
    return m;
}

std::vector<PrimeOrderBlockData> prime_order_block_data(int r) {
    std::vector<PrimeOrderBlockData> out;
    for (int t = 1; 2 * t <= r; ++t) out.push_back({2, t, 0});
    for (int p = 3; p < (1 << std::min(r, 20)); p += 2) {
        if (!is_prime(p)) continue;
        int ell = multiplicative_order_mod(2, p);
        if (ell > r) continue;
        for (int t = 1; t * ell <= r; ++t) out.push_back({p, t, ell});
    }
    return out;
}

}  // namespace cayley::f2
