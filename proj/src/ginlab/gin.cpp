#include "gin.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace ginlab {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::int64_t> random_integers(std::uint64_t seed, std::size_t count, std::int64_t bound) {
  std::mt19937_64 engine(seed);
  const std::uint64_t range = 2 * static_cast<std::uint64_t>(bound) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::vector<std::int64_t> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::uint64_t x = engine();
    if (x >= limit) continue;
    out.push_back(static_cast<std::int64_t>(x % range) - bound);
  }
  return out;
}

const GinResult& GinSequence::at(unsigned n) const {
  auto it = entries.find(n);
  if (it == entries.end()) throw DomainError("gin sequence has no entry for n = " + std::to_string(n));
  return it->second;
}

bool GinSequence::all_containments_hold() const {
  return std::all_of(containments.begin(), containments.end(), [](const auto& c) { return c.holds; });
}

void check_graded_containments(GinSequence& seq) {
  seq.containments.clear();
  const unsigned top = seq.n_max();
  for (unsigned i = 1; i <= top; ++i)
    for (unsigned j = i; i + j <= top; ++j) {
      if (!seq.has(i) || !seq.has(j) || !seq.has(i + j)) continue;
      const auto prod = product(seq.at(i).ideal, seq.at(j).ideal);
      seq.containments.push_back({i, j, contains_ideal(prod, seq.at(i + j).ideal)});
    }
}

namespace detail {

std::string describe_difference(const MonomialIdeal& a, const MonomialIdeal& b) {
  auto list = [](const MonomialIdeal& x, const MonomialIdeal& y) {
    std::string s;
    for (const auto& g : x.generators())
      if (std::find(y.generators().begin(), y.generators().end(), g) == y.generators().end())
        s += (s.empty() ? "" : " ") + g.to_string();
    return s.empty() ? std::string("none") : s;
  };
  return "only in first sample: " + list(a, b) + "; only in second sample: " + list(b, a);
}

}  // namespace detail

}  // namespace ginlab
