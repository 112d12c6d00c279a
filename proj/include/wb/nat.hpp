#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wb {

/// Unbounded natural number. Program indices, register contents and formula
/// codes all live here; none of them fit a machine word in general.
using Nat = boost::multiprecision::cpp_int;

/// Cantor pairing: <x,y> = (x+y)(x+y+1)/2 + y.
Nat pair(const Nat& x, const Nat& y);
Nat unpair0(const Nat& z);
Nat unpair1(const Nat& z);
std::pair<Nat, Nat> unpair(const Nat& z);

std::uint64_t pair_u64(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> unpair_u64(std::uint64_t z);

/// Value as uint64 if it fits.
std::optional<std::uint64_t> to_u64(const Nat& n);
/// Clamp to uint64 (saturating).
std::uint64_t saturate_u64(const Nat& n);

/// Decimal parse; throws std::invalid_argument on anything but digits.
Nat parse_nat(std::string_view text);
std::string to_string(const Nat& n);

}  // namespace wb
