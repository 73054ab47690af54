#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace gaplab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Renders "num/den" with the denominator always explicit ("3/1" for whole
// values), the format used by the rational CSV columns.
std::string rat_string(const Rat& r);

}  // namespace gaplab
