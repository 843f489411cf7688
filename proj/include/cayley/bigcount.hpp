#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace cayley {

// Exact arbitrary-precision counter. Subspace counts exceed 64 bits already
// around r = 10, s = 5, so nothing in the counting paths uses machine ints.
using BigCount = boost::multiprecision::cpp_int;

inline BigCount big_pow2(long e) {
    BigCount r = 1;
    return r << e;
}

}  // namespace cayley
