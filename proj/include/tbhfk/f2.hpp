#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tbhfk/error.hpp"

namespace tbhfk {

// Dense bit vector over F2.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }
  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  void flip(int i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }

  // Index of the highest set bit, or -1.
  int top() const {
    for (std::size_t k = w_.size(); k-- > 0;) {
      if (w_[k] != 0) return static_cast<int>(k * 64 + 63 - std::countl_zero(w_[k]));
    }
    return -1;
  }

  bool none() const { return top() < 0; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Row space in echelon form, keyed by leading bit.
class Echelon {
 public:
  explicit Echelon(int n) : pivots_(n) {}

  // Reduces v in place; returns true when v became zero.
  bool reduce(BitVec& v) const {
    for (int t = v.top(); t >= 0; t = v.top()) {
      if (pivots_[t].size() == 0) return false;
      v ^= pivots_[t];
    }
    return true;
  }

  // Adds v; returns false when it was already in the span.
  bool insert(BitVec v) {
    if (reduce(v)) return false;
    const int t = v.top();
    pivots_[t] = std::move(v);
    ++rank_;
    return true;
  }

  int rank() const { return rank_; }

 private:
  std::vector<BitVec> pivots_;
  int rank_ = 0;
};

// Finite chain complex over F2. Column j of the boundary lists the basis
// elements in d(e_j). The Maslov grading drops by one along d; the Alexander
// grading is a filtration (graded complexes preserve it).
struct ChainComplex {
  int size = 0;
  std::vector<std::vector<int>> boundary;
  std::vector<std::int64_t> maslov;
  std::vector<std::int64_t> alexander;
};

inline bool d_squared_zero(const ChainComplex& c) {
  std::vector<char> acc(c.size, 0);
  for (int j = 0; j < c.size; ++j) {
    std::vector<int> touched;
    for (int i : c.boundary[j]) {
      for (int k : c.boundary[i]) {
        if (!acc[k]) touched.push_back(k);
        acc[k] ^= 1;
      }
    }
    bool zero = true;
    for (int k : touched) {
      zero = zero && acc[k] == 0;
      acc[k] = 0;
    }
    if (!zero) return false;
  }
  return true;
}

template <class Key>
struct BlockSplit {
  std::map<Key, std::vector<int>> members;  // block -> basis indices
  std::vector<int> position;                // basis index -> position in block
};

template <class Key>
BlockSplit<Key> split_blocks(const ChainComplex& c, const std::function<Key(int)>& key) {
  BlockSplit<Key> out;
  out.position.assign(c.size, 0);
  for (int i = 0; i < c.size; ++i) {
    auto& m = out.members[key(i)];
    out.position[i] = static_cast<int>(m.size());
    m.push_back(i);
  }
  return out;
}

// Homology ranks per block. The differential must carry each block into a
// single block (it is homogeneous for the key).
template <class Key>
std::map<Key, int> block_homology(const ChainComplex& c, const std::function<Key(int)>& key) {
  const auto split = split_blocks<Key>(c, key);
  std::map<Key, int> rank_out;
  std::map<Key, int> rank_in;
  for (const auto& [k, mem] : split.members) {
    std::optional<Key> target;
    for (int j : mem) {
      for (int i : c.boundary[j]) {
        const Key ki = key(i);
        if (target && *target != ki) throw Error(ErrorCode::InternalCheckFailed, "differential is not homogeneous");
        target = ki;
      }
    }
    if (!target) continue;
    Echelon ech(static_cast<int>(split.members.at(*target).size()));
    for (int j : mem) {
      BitVec v(static_cast<int>(split.members.at(*target).size()));
      for (int i : c.boundary[j]) v.flip(split.position[i]);
      ech.insert(std::move(v));
    }
    rank_out[k] = ech.rank();
    rank_in[*target] += ech.rank();
  }
  std::map<Key, int> h;
  for (const auto& [k, mem] : split.members) {
    const int r = static_cast<int>(mem.size()) - rank_out[k] - rank_in[k];
    if (r < 0) throw Error(ErrorCode::InternalCheckFailed, "negative homology rank");
    if (r > 0) h[k] = r;
  }
  return h;
}

// Ranks per (alexander, maslov); the differential must preserve alexander.
inline std::map<std::pair<std::int64_t, std::int64_t>, int> bigraded_homology(const ChainComplex& c) {
  return block_homology<std::pair<std::int64_t, std::int64_t>>(
      c, [&](int i) { return std::make_pair(c.alexander[i], c.maslov[i]); });
}

inline std::map<std::int64_t, int> maslov_homology(const ChainComplex& c) {
  return block_homology<std::int64_t>(c, [&](int i) { return c.maslov[i]; });
}

// Standard column reduction over a filtration order. `order` lists basis
// indices so that every prefix spans a subcomplex.
struct Persistence {
  std::vector<int> essential;                  // basis indices born and never killed
  std::vector<std::pair<int, int>> pairs;      // (birth, death) basis indices
};

inline Persistence reduce_filtered(const ChainComplex& c, const std::vector<int>& order) {
  std::vector<int> pos(c.size, -1);
  for (int k = 0; k < static_cast<int>(order.size()); ++k) pos[order[k]] = k;
  std::vector<std::vector<int>> col(c.size);  // ascending positions
  for (int k = 0; k < c.size; ++k) {
    for (int i : c.boundary[order[k]]) {
      if (pos[i] >= k) throw Error(ErrorCode::InternalCheckFailed, "order is not a filtration");
      col[k].push_back(pos[i]);
    }
    std::sort(col[k].begin(), col[k].end());
  }
  std::vector<int> owner(c.size, -1);  // low position -> column
  std::vector<char> killed(c.size, 0);
  Persistence out;
  std::vector<int> scratch;
  for (int k = 0; k < c.size; ++k) {
    while (!col[k].empty() && owner[col[k].back()] >= 0) {
      const auto& other = col[owner[col[k].back()]];
      scratch.clear();
      std::set_symmetric_difference(col[k].begin(), col[k].end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      col[k].swap(scratch);
    }
    if (!col[k].empty()) {
      owner[col[k].back()] = k;
      killed[col[k].back()] = 1;
      killed[k] = 2;  // k is a negative column
      out.pairs.emplace_back(order[col[k].back()], order[k]);
    }
  }
  for (int k = 0; k < c.size; ++k) {
    if (killed[k] == 0) out.essential.push_back(order[k]);
  }
  return out;
}

// Basis of ker d on the span of `members`, in member coordinates. `position`
// maps a basis index to its slot in `target_members`.
inline std::vector<BitVec> kernel_basis(const ChainComplex& c, const std::vector<int>& members,
                                        const std::vector<int>& target_members, const std::vector<int>& position) {
  const int n = static_cast<int>(members.size());
  const int m = static_cast<int>(target_members.size());
  // Rows: image (m bits) followed by a tag (n bits) that tracks combinations.
  std::vector<BitVec> rows;
  for (int j = 0; j < n; ++j) {
    BitVec v(m + n);
    for (int i : c.boundary[members[j]]) v.flip(position[i] + n);
    v.flip(j);
    rows.push_back(std::move(v));
  }
  // Eliminate on the image part (bits >= n); leftovers with empty image span the kernel.
  std::vector<int> pivot_row(m + n, -1);
  std::vector<BitVec> kernel;
  for (auto& v : rows) {
    for (int t = v.top(); t >= n; t = v.top()) {
      if (pivot_row[t] < 0) break;
      v ^= rows[pivot_row[t]];
    }
    const int t = v.top();
    if (t >= n) {
      pivot_row[t] = static_cast<int>(&v - rows.data());
    } else {
      BitVec k(n);
      for (int j = 0; j < n; ++j) {
        if (v.get(j)) k.set(j);
      }
      kernel.push_back(std::move(k));
    }
  }
  return kernel;
}

}  // namespace tbhfk
