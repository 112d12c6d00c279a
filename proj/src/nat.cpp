#include "wb/nat.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wb {

Nat pair(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Nat, Nat> unpair(const Nat& z) {
  // w = floor((sqrt(8z+1)-1)/2) is the diagonal index.
  if (z <= (std::numeric_limits<std::uint64_t>::max() - 1) / 8) {
    using u128 = unsigned __int128;
    auto v = 8 * static_cast<std::uint64_t>(z) + 1;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (static_cast<u128>(r) * r > v) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= v) ++r;
    std::uint64_t w = (r - 1) / 2;
    std::uint64_t y = static_cast<std::uint64_t>(z) - w * (w + 1) / 2;
    return {Nat(w - y), Nat(y)};
  }
  // Interpreters unpair many large values sharing a diagonal or lying a few
  // diagonals apart, so walk from a recently seen diagonal before paying for sqrt.
  struct Diagonal {
    Nat w, t;  // t = w(w+1)/2
  };
  thread_local std::array<Diagonal, 4> recent{};
  thread_local std::size_t next = 0;
  for (auto& d : recent) {
    if (d.w == 0) continue;
    Nat w = d.w, t = d.t;
    for (int step = 0; step < 8; ++step) {
      if (z < t) {
        t -= w;
        --w;
      } else if (z - t > w) {
        ++w;
        t += w;
      } else {
        Nat y = z - t;
        d = {w, t};
        return {w - y, y};
      }
    }
  }
  Nat w = (boost::multiprecision::sqrt(Nat(8 * z + 1)) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  recent[next] = {w, t};
  next = (next + 1) % recent.size();
  Nat y = z - t;
  return {w - y, y};
}

Nat unpair0(const Nat& z) { return unpair(z).first; }
Nat unpair1(const Nat& z) { return unpair(z).second; }

std::uint64_t pair_u64(std::uint64_t x, std::uint64_t y) {
  auto p = pair(Nat(x), Nat(y));
  auto v = to_u64(p);
  if (!v) throw std::overflow_error("pair_u64: result exceeds 64 bits");
  return *v;
}

std::pair<std::uint64_t, std::uint64_t> unpair_u64(std::uint64_t z) {
  auto [a, b] = unpair(Nat(z));
  return {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)};
}

std::optional<std::uint64_t> to_u64(const Nat& n) {
  if (n < 0 || n > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(n);
}

std::uint64_t saturate_u64(const Nat& n) {
  if (n > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(n);
}

Nat parse_nat(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  for (char c : text)
    if (c < '0' || c > '9') throw std::invalid_argument("not a natural number: " + std::string(text));
  return Nat(std::string(text));
}

std::string to_string(const Nat& n) { return n.str(); }

}  // namespace wb
