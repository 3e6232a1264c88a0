#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace tbhfk {

// Sparse Laurent polynomial in T with integer coefficients.
struct Laurent {
  std::map<int, std::int64_t> coeff;  // exponent -> nonzero coefficient

  void add(int exp, std::int64_t c) {
    if (c == 0) return;
    auto& slot = coeff[exp];
    slot += c;
    if (slot == 0) coeff.erase(exp);
  }

  bool is_zero() const { return coeff.empty(); }
  int min_exp() const { return coeff.begin()->first; }
  int max_exp() const { return coeff.rbegin()->first; }

  std::int64_t at(int exp) const {
    auto it = coeff.find(exp);
    return it == coeff.end() ? 0 : it->second;
  }

  std::int64_t eval_at_one() const {
    std::int64_t s = 0;
    for (const auto& [e, c] : coeff) s += c;
    return s;
  }

  Laurent shifted(int by) const {
    Laurent out;
    for (const auto& [e, c] : coeff) out.coeff[e + by] = c;
    return out;
  }

  // Coefficientwise P(T) = P(1/T).
  bool is_symmetric() const {
    for (const auto& [e, c] : coeff) {
      if (at(-e) != c) return false;
    }
    return true;
  }

  friend bool operator==(const Laurent&, const Laurent&) = default;

  std::string str() const {
    if (coeff.empty()) return "0";
    std::string s;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
      const auto [e, c] = *it;
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      const std::int64_t mag = c < 0 ? -c : c;
      if (mag != 1 || e == 0) s += std::to_string(mag);
      if (e != 0) s += (mag != 1 ? "*T" : "T") + (e != 1 ? "^" + std::to_string(e) : std::string());
    }
    return s;
  }
};

// Quotient by (1 - T^-1); nullopt-free: returns false when not divisible.
inline bool divide_by_one_minus_inverse_t(const Laurent& g, Laurent& out) {
  out = Laurent{};
  if (g.is_zero()) return true;
  if (g.eval_at_one() != 0) return false;
  // (1 - T^-1) Q = G  gives  q_k = sum_{i >= k} g_i.
  std::int64_t run = 0;
  for (int k = g.max_exp(); k >= g.min_exp(); --k) {
    run += g.at(k);
    out.add(k, run);
  }
  return true;
}

}  // namespace tbhfk
