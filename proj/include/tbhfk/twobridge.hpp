#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tbhfk/error.hpp"
#include "tbhfk/rational.hpp"

namespace tbhfk {

// Normalized two-bridge parameters: p odd >= 3, q odd with -p < q < p and
// gcd(p, |q|) = 1. Only normalize_params constructs these.
class TwoBridgeParams {
 public:
  int p() const { return p_; }
  int q() const { return q_; }

  friend bool operator==(const TwoBridgeParams&, const TwoBridgeParams&) = default;

  std::string str() const { return "(" + std::to_string(p_) + "," + std::to_string(q_) + ")"; }

 private:
  TwoBridgeParams(int p, int q) : p_(p), q_(q) {}
  friend TwoBridgeParams normalize_params(std::int64_t p, std::int64_t q);

  int p_;
  int q_;
};

// Chooses the odd representative of q mod p inside (-p, p). Exactly one of
// r and r - p is odd when p is odd.
inline TwoBridgeParams normalize_params(std::int64_t p, std::int64_t q) {
  if (p < 1) throw Error(ErrorCode::InvalidInput, "p must be positive, got " + std::to_string(p));
  if (p % 2 == 0) throw Error(ErrorCode::EvenP, "p = " + std::to_string(p) + " gives a two-component link");
  if (p == 1) throw Error(ErrorCode::UnitP, "p = 1 is the unknot");
  if (p > 1'000'000) throw Error(ErrorCode::InvalidInput, "p too large");
  if (std::gcd(p, q < 0 ? -q : q) != 1) {
    throw Error(ErrorCode::NotCoprime, "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
  std::int64_t r = mod(q, p);
  if (r % 2 == 0) r -= p;
  return TwoBridgeParams(static_cast<int>(p), static_cast<int>(r));
}

// Evaluates c1 - 1/(c2 - 1/(... - 1/cn)) and normalizes the resulting p/q.
inline TwoBridgeParams params_from_crossings(std::span<const std::int64_t> word) {
  if (word.empty()) throw Error(ErrorCode::ZeroDenominator, "empty crossing word");
  Rational r(word.back());
  for (auto it = word.rbegin() + 1; it != word.rend(); ++it) {
    if (*it == 0 || r.is_zero()) throw Error(ErrorCode::ZeroDenominator, "continued fraction divides by zero");
    r = Rational(*it) - Rational(1) / r;
  }
  if (word.front() == 0) throw Error(ErrorCode::ZeroDenominator, "crossing numbers must be nonzero");
  std::int64_t p = r.num();
  std::int64_t q = r.den();
  if (p < 0) {
    p = -p;
    q = -q;
  }
  if (p == 0) throw Error(ErrorCode::EvenP, "continued fraction evaluates to 0");
  return normalize_params(p, q);
}

inline TwoBridgeParams params_from_crossings(const std::vector<std::int64_t>& word) {
  return params_from_crossings(std::span<const std::int64_t>(word));
}

// Same knot iff p = p' and (q = q' or q q' = 1) mod p.
inline bool are_equivalent(const TwoBridgeParams& a, const TwoBridgeParams& b) {
  if (a.p() != b.p()) return false;
  const std::int64_t p = a.p();
  return mod(a.q() - b.q(), p) == 0 || mod(static_cast<std::int64_t>(a.q()) * b.q() - 1, p) == 0;
}

// One representative (p, q), q odd in (0, p), per equivalence class, for
// odd 3 <= p <= p_max. Smallest q is kept.
inline std::vector<TwoBridgeParams> class_representatives(int p_max) {
  std::vector<TwoBridgeParams> out;
  for (int p = 3; p <= p_max; p += 2) {
    std::vector<TwoBridgeParams> seen;
    for (int q = 1; q < p; q += 2) {
      if (std::gcd(p, q) != 1) continue;
      const auto cand = normalize_params(p, q);
      bool dup = false;
      for (const auto& s : seen) dup = dup || are_equivalent(s, cand);
      if (!dup) seen.push_back(cand);
    }
    out.insert(out.end(), seen.begin(), seen.end());
  }
  return out;
}

}  // namespace tbhfk
