#pragma once
// Streaming exact linear solver over F2 on bit-packed rows.  Equations are
// reduced against an echelon basis as they arrive, so memory stays bounded by
// rank x width no matter how many equations are streamed in.

#include <cstdint>
#include <span>
#include <vector>

namespace ainf {

class Mod2Solver {
 public:
  // ncols unknowns; one extra bit per row holds the right-hand side.
  explicit Mod2Solver(int ncols)
      : ncols_(ncols),
        words_((static_cast<std::size_t>(ncols) + 1 + 63) / 64),
        row_of_pivot_(static_cast<std::size_t>(ncols), -1) {}

  // Add the equation "sum of listed columns = rhs" (repeated columns cancel
  // in pairs).  Returns false once the system has become inconsistent.
  bool add(std::span<const int> cols, bool rhs) {
    std::vector<std::uint64_t> row(words_, 0);
    for (int c : cols) row[c >> 6] ^= 1ull << (c & 63);
    if (rhs) row[ncols_ >> 6] ^= 1ull << (ncols_ & 63);
    reduce_insert(std::move(row));
    return consistent_;
  }

  bool consistent() const { return consistent_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  // Particular solution with every free variable zero (empty if inconsistent).
  std::vector<std::uint8_t> solve() const {
    if (!consistent_) return {};
    std::vector<std::uint64_t> x(words_, 0);
    // visit echelon rows by descending pivot; each row's non-pivot columns
    // exceed its pivot, so they are already decided
    for (int p = ncols_ - 1; p >= 0; --p) {
      int r = row_of_pivot_[p];
      if (r < 0) continue;
      const auto& row = rows_[r];
      std::uint64_t acc = 0;
      for (std::size_t w = 0; w < words_; ++w) acc ^= row[w] & x[w];
      bool dot = __builtin_parityll(acc);
      bool rhs = (row[ncols_ >> 6] >> (ncols_ & 63)) & 1;
      if (dot != rhs) x[p >> 6] ^= 1ull << (p & 63);
    }
    std::vector<std::uint8_t> out(static_cast<std::size_t>(ncols_));
    for (int c = 0; c < ncols_; ++c) out[c] = (x[c >> 6] >> (c & 63)) & 1;
    return out;
  }

 private:
  int ncols_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<int> row_of_pivot_;
  bool consistent_ = true;

  int first_set(const std::vector<std::uint64_t>& row) const {
    for (std::size_t w = 0; w < words_; ++w) {
      if (row[w]) return static_cast<int>(w * 64) + __builtin_ctzll(row[w]);
    }
    return -1;
  }

  void reduce_insert(std::vector<std::uint64_t> row) {
    while (true) {
      int p = first_set(row);
      if (p < 0) return;                        // redundant equation
      if (p == ncols_) {                        // 0 = 1
        consistent_ = false;
        return;
      }
      int r = row_of_pivot_[p];
      if (r < 0) {
        row_of_pivot_[p] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(row));
        return;
      }
      const auto& e = rows_[r];
      for (std::size_t w = 0; w < words_; ++w) row[w] ^= e[w];
    }
  }
};

}  // namespace ainf
