#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "groupeq/ring.hpp"

namespace groupeq {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// U * M * V = D, D diagonal with d_1 | d_2 | ... and d_i >= 0; U, V unimodular.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Int> diagonal() const;
  std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Determinant by fraction-free (Bareiss) elimination; square matrices only.
Int determinant(const IntMatrix& m);

struct RankReport {
  bool full_row_rank = false;
  std::size_t rank = 0;
  /// When not full row rank: one coefficient per row, not all zero (mod p
  /// for the modular variant), whose combination of rows vanishes.
  std::vector<Int> witness;
};

/// Row independence over Q by fraction-free elimination on [M | I].
RankReport rank_over_q(const IntMatrix& m);
/// Row independence over the field Z/p.
RankReport rank_mod_p(const IntMatrix& m, const Int& p);

/// True iff every elementary divisor of a k x n matrix (k <= n) is 1.
bool is_unimodular(const IntMatrix& m);

/// Column reduction M * V = [L | 0] with L (k x k) lower triangular,
/// V unimodular. Requires full row rank.
struct ColumnHermite {
  IntMatrix L;
  IntMatrix V;
};

ColumnHermite column_hermite(const IntMatrix& m);

}  // namespace groupeq
