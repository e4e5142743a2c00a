#include "staircase.hpp"

#include <algorithm>

#include "errors.hpp"

namespace ginlab {

bool generator_order(const ExponentVector& a, const ExponentVector& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return revlex_unchecked(a, b) > 0;
}

MonomialIdeal MonomialIdeal::minimalize(std::vector<ExponentVector> gens, std::size_t var_count) {
  for (const auto& g : gens)
    if (g.size() != var_count)
      throw DomainError("generator " + g.to_string() + " has wrong length for " + std::to_string(var_count) +
                        " variables");
  std::sort(gens.begin(), gens.end(), generator_order);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  MonomialIdeal out(var_count);
  // Sorted by degree, so a divisor always precedes its multiples.
  for (auto& g : gens) {
    const bool redundant =
        std::any_of(out.gens_.begin(), out.gens_.end(), [&](const ExponentVector& h) { return h.divides(g); });
    if (!redundant) out.gens_.push_back(std::move(g));
  }
  return out;
}

bool MonomialIdeal::contains(const ExponentVector& e) const {
  if (e.size() != var_count_)
    throw DomainError("contains: exponent vector " + e.to_string() + " does not have length " +
                      std::to_string(var_count_));
  return std::any_of(gens_.begin(), gens_.end(), [&](const ExponentVector& g) { return g.divides(e); });
}

std::uint64_t MonomialIdeal::max_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& g : gens_) d = std::max(d, g.degree());
  return d;
}

bool contains_ideal(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.var_count() != b.var_count()) throw DomainError("contains_ideal: variable counts differ");
  return std::all_of(a.generators().begin(), a.generators().end(),
                     [&](const ExponentVector& g) { return b.contains(g); });
}

MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.var_count() != b.var_count()) throw DomainError("product: variable counts differ");
  std::vector<ExponentVector> gens;
  gens.reserve(a.size() * b.size());
  for (const auto& g : a.generators())
    for (const auto& h : b.generators()) gens.push_back(g + h);
  return MonomialIdeal::minimalize(std::move(gens), a.var_count());
}

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.var_count() != b.var_count()) throw DomainError("ideal_sum: variable counts differ");
  std::vector<ExponentVector> gens(a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return MonomialIdeal::minimalize(std::move(gens), a.var_count());
}

bool is_strongly_stable(const MonomialIdeal& j) {
  const auto m = j.var_count();
  for (const auto& g : j.generators())
    for (std::size_t i = 1; i < m; ++i) {
      if (g[i] == 0) continue;
      for (std::size_t k = 0; k < i; ++k) {
        auto moved = g.with(i, g[i] - 1);
        moved = moved.with(k, moved[k] + 1);
        if (!j.contains(moved)) return false;
      }
    }
  return true;
}

bool PurePowers::all_present() const {
  return std::all_of(exponents.begin(), exponents.end(), [](const auto& e) { return e.has_value(); });
}

PurePowers pure_powers(const MonomialIdeal& j) {
  PurePowers out;
  out.exponents.assign(j.var_count(), std::nullopt);
  for (const auto& g : j.generators()) {
    if (g.degree() == 0) {
      for (auto& e : out.exponents) e = 0;
      return out;
    }
    const auto v = g.max_variable();
    if (g[v - 1] == g.degree()) {
      auto& slot = out.exponents[v - 1];
      if (!slot || *slot > g[v - 1]) slot = g[v - 1];
    }
  }
  return out;
}

Integer length_artinian(const MonomialIdeal& j) {
  const auto pp = pure_powers(j);
  const auto m = j.var_count();
  for (std::size_t i = 0; i < m; ++i)
    if (!pp.exponents[i])
      throw DomainError("length_artinian: ideal is not zero-dimensional (no pure power of x" +
                        std::to_string(i + 1) + ")");
  if (j.is_unit()) return 0;
  // Odometer over the box prod [0, p_i).
  Integer count = 0;
  std::vector<std::uint32_t> e(m, 0);
  for (;;) {
    if (!j.contains(ExponentVector(e))) ++count;
    std::size_t k = 0;
    while (k < m) {
      if (++e[k] < *pp.exponents[k]) break;
      e[k] = 0;
      ++k;
    }
    if (k == m) break;
  }
  return count;
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace {

// Number of monomials of degree d in m variables.
Integer monomials_of_degree(std::uint64_t d, std::size_t m) { return binomial(d + m - 1, m - 1); }

}  // namespace

std::vector<Integer> hilbert_function_inclusion_exclusion(const MonomialIdeal& j, std::uint32_t d_max) {
  const auto gens = j.generators();
  const auto m = j.var_count();
  if (gens.size() > kInclusionExclusionCap)
    throw DomainError("inclusion-exclusion is capped at " + std::to_string(kInclusionExclusionCap) + " generators");
  // signed count of subsets per lcm degree (only degrees <= d_max matter)
  std::vector<std::int64_t> weight(d_max + 1, 0);
  weight[0] = 1;  // empty subset
  auto rec = [&](auto&& self, std::size_t start, const ExponentVector& lcm, int sign) -> void {
    for (std::size_t i = start; i < gens.size(); ++i) {
      auto next = lcm.lcm(gens[i]);
      if (next.degree() > d_max) continue;  // supersets only grow
      weight[next.degree()] -= sign;
      self(self, i + 1, next, -sign);
    }
  };
  rec(rec, 0, ExponentVector(m), 1);
  std::vector<Integer> hf(d_max + 1);
  for (std::uint32_t d = 0; d <= d_max; ++d) {
    Integer v = 0;
    for (std::uint32_t e = 0; e <= d; ++e)
      if (weight[e] != 0) v += Integer(static_cast<long>(weight[e])) * monomials_of_degree(d - e, m);
    hf[d] = v;
  }
  return hf;
}

namespace {

// Standard-monomial counts split along the last variable: a monomial
// x'^a x_m^k is standard iff x'^a avoids the generators with e_m <= k.
std::vector<Integer> hf_recursive(std::vector<std::vector<std::uint32_t>> gens, std::size_t m, std::uint32_t d_max) {
  std::vector<Integer> hf(d_max + 1, 0);
  for (const auto& g : gens)
    if (std::all_of(g.begin(), g.end(), [](auto v) { return v == 0; })) return hf;  // unit ideal
  if (m == 1) {
    std::uint32_t low = d_max + 1;
    for (const auto& g : gens) low = std::min(low, g[0]);
    for (std::uint32_t d = 0; d <= d_max && d < low; ++d) hf[d] = 1;
    return hf;
  }
  if (gens.empty()) {
    for (std::uint32_t d = 0; d <= d_max; ++d) hf[d] = monomials_of_degree(d, m);
    return hf;
  }
  std::sort(gens.begin(), gens.end(), [&](const auto& a, const auto& b) { return a[m - 1] < b[m - 1]; });
  std::vector<std::vector<std::uint32_t>> slice;
  std::vector<Integer> sub;
  std::size_t used = 0;
  bool dirty = true;
  for (std::uint32_t k = 0; k <= d_max; ++k) {
    while (used < gens.size() && gens[used][m - 1] <= k) {
      std::vector<std::uint32_t> proj(gens[used].begin(), gens[used].end() - 1);
      const bool redundant = std::any_of(slice.begin(), slice.end(), [&](const auto& h) {
        for (std::size_t i = 0; i + 1 < m; ++i)
          if (h[i] > proj[i]) return false;
        return true;
      });
      if (!redundant) {
        std::erase_if(slice, [&](const auto& h) {
          for (std::size_t i = 0; i + 1 < m; ++i)
            if (proj[i] > h[i]) return false;
          return true;
        });
        slice.push_back(std::move(proj));
        dirty = true;
      }
      ++used;
    }
    if (dirty) {
      sub = hf_recursive(slice, m - 1, d_max);
      dirty = false;
    }
    for (std::uint32_t d = k; d <= d_max; ++d) hf[d] += sub[d - k];
  }
  return hf;
}

}  // namespace

std::vector<Integer> hilbert_function_recursive(const MonomialIdeal& j, std::uint32_t d_max) {
  std::vector<std::vector<std::uint32_t>> gens;
  for (const auto& g : j.generators()) gens.emplace_back(g.entries().begin(), g.entries().end());
  return hf_recursive(std::move(gens), j.var_count(), d_max);
}

std::vector<Integer> hilbert_function(const MonomialIdeal& j, std::uint32_t d_max) {
  if (j.size() <= kInclusionExclusionCap) return hilbert_function_inclusion_exclusion(j, d_max);
  return hilbert_function_recursive(j, d_max);
}

DimDepth dim_depth(const MonomialIdeal& j) {
  if (!is_strongly_stable(j)) throw DomainError("dim_depth: ideal is not strongly stable");
  const auto m = j.var_count();
  const auto pp = pure_powers(j);
  std::size_t d = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (pp.exponents[i]) d = i + 1;
  std::size_t mm = 0;
  for (const auto& g : j.generators()) mm = std::max(mm, g.max_variable());
  if (j.is_unit()) d = mm = m;  // R/R = 0; treat as dimension/depth 0
  return {m - d, m - mm, d, mm};
}

void BettiTable::add(std::uint32_t i, std::uint32_t j, const Integer& value) {
  if (value == 0) return;
  auto& slot = entries_[{i, j}];
  slot += value;
  if (slot == 0) entries_.erase({i, j});
}

Integer BettiTable::at(std::uint32_t i, std::uint32_t j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? Integer(0) : it->second;
}

BettiTable ek_betti(const MonomialIdeal& j) {
  if (!is_strongly_stable(j)) throw DomainError("ek_betti: ideal is not strongly stable");
  BettiTable t;
  for (const auto& u : j.generators()) {
    const auto top = u.max_variable();
    const std::uint64_t span = top == 0 ? 0 : top - 1;
    for (std::uint64_t i = 0; i <= span; ++i)
      t.add(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + u.degree()), binomial(span, i));
  }
  return t;
}

}  // namespace ginlab
