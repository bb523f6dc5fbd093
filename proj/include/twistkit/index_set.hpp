#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/error.hpp"

namespace twistkit {

/// A pair (i, j) of small nonnegative integers labelling the b-, Y-, u- and
/// w-families.
struct Index {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Index&, const Index&) = default;
  friend bool operator==(const Index&, const Index&) = default;
};

inline std::string to_string(const Index& ix) {
  return "(" + std::to_string(ix.i) + "," + std::to_string(ix.j) + ")";
}

/// The index sets of the construction for one degree d:
///   I_d = {0 <= i,j <= d-1} minus {(0,0),(0,1),(1,0),(1,1)},   |I_d| = d^2 - 4
///   J_d = I_d minus every (i,0) and minus (0,2), (1,2),        |J_d| = d^2 - d - 4
/// Both are stored in lexicographic order.
class IndexSet {
 public:
  explicit IndexSet(int d) : d_(d) {
    if (d < 3) throw PreconditionError("d >= 3 required (got d = " + std::to_string(d) + ")");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (!(i <= 1 && j <= 1)) I_.push_back({i, j});
    for (const auto& ix : I_)
      if (ix.j != 0 && ix != Index{0, 2} && ix != Index{1, 2}) J_.push_back(ix);
  }

  int d() const noexcept { return d_; }
  const std::vector<Index>& I() const noexcept { return I_; }
  const std::vector<Index>& J() const noexcept { return J_; }

  bool in_I(int i, int j) const noexcept {
    return i >= 0 && j >= 0 && i < d_ && j < d_ && !(i <= 1 && j <= 1);
  }
  bool in_J(int i, int j) const noexcept {
    return in_I(i, j) && j != 0 && !(j == 2 && i <= 1);
  }

  /// Position of (i, j) in the lexicographic enumeration of I_d.
  std::size_t position_in_I(int i, int j) const {
    auto it = std::lower_bound(I_.begin(), I_.end(), Index{i, j});
    if (it == I_.end() || *it != Index{i, j})
      throw StructuralError("index " + to_string(Index{i, j}) + " is not in I_" + std::to_string(d_));
    return static_cast<std::size_t>(it - I_.begin());
  }

  /// k(i, j) = min(i, j), the X0-exponent of the Y_(i,j) coefficient in G.
  static int k(int i, int j) noexcept { return std::min(i, j); }

 private:
  int d_;
  std::vector<Index> I_;
  std::vector<Index> J_;
};

inline IndexSet build_index_sets(int d) { return IndexSet(d); }

}  // namespace twistkit
