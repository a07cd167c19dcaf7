#include "groupeq/linalg.hpp"

#include <sstream>
#include <utility>

namespace groupeq {
namespace {

// rows a, b of M  <-  [[s, t], [-b0/g, a0/g]] * rows a, b
void row_transform(IntMatrix& m, std::size_t a, std::size_t b, const Int& s, const Int& t, const Int& u,
                   const Int& v) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const Int x = m(a, c);
    const Int y = m(b, c);
    m(a, c) = s * x + t * y;
    m(b, c) = u * x + v * y;
  }
}

void col_transform(IntMatrix& m, std::size_t a, std::size_t b, const Int& s, const Int& t, const Int& u,
                   const Int& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const Int x = m(r, a);
    const Int y = m(r, b);
    m(r, a) = s * x + t * y;
    m(r, b) = u * x + v * y;
  }
}

// Bezout pair for clearing y against pivot x. When x | y keep the pivot line
// as is; mpz_gcdext may otherwise pick (0, 1) for |x| == |y| and the
// reduction loop never settles.
Int pivot_gcd(const Int& x, const Int& y, Int& s, Int& t) {
  if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t()) != 0) {
    s = 1;
    t = 0;
    return x;
  }
  return xgcd(x, y, s, t);
}

Int content(const std::vector<Int>& row) {
  Int g = 0;
  for (const auto& v : row) g = gcd(g, v);
  return g;
}

void normalize_witness(std::vector<Int>& w) {
  const Int g = content(w);
  if (g > 1) {
    for (auto& v : w) v /= g;
  }
  for (const auto& v : w) {
    if (v == 0) continue;
    if (v < 0) {
      for (auto& x : w) x = -x;
    }
    break;
  }
}

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c).get_str();
    os << '\n';
  }
  return os.str();
}

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (const auto& v : diagonal()) r += v != 0 ? 1 : 0;
  return r;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(k);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < k && t < n; ++t) {
    // pivot: smallest nonzero |entry| in the trailing block
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < k; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a(i, j) != 0 && (!best || abs(a(i, j)) < abs(a(best->first, best->second)))) best = {i, j};
    if (!best) break;
    a.swap_rows(t, best->first);
    u.swap_rows(t, best->first);
    a.swap_cols(t, best->second);
    v.swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < k; ++i) {
        if (a(i, t) == 0) continue;
        Int s, q;
        const Int x = a(t, t);
        const Int y = a(i, t);
        const Int g = pivot_gcd(x, y, s, q);
        const Int nx = -y / g;
        const Int ny = x / g;
        row_transform(a, t, i, s, q, nx, ny);
        row_transform(u, t, i, s, q, nx, ny);
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Int s, q;
        const Int x = a(t, t);
        const Int y = a(t, j);
        const Int g = pivot_gcd(x, y, s, q);
        const Int nx = -y / g;
        const Int ny = x / g;
        col_transform(a, t, j, s, q, nx, ny);
        col_transform(v, t, j, s, q, nx, ny);
      }
      for (std::size_t i = t + 1; i < k && clean; ++i)
        if (a(i, t) != 0) clean = false;
      if (!clean) continue;

      // divisibility chain: fold an offending row into row t and redo
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < k && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t()) == 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_transform(a, t, *bad_row, 1, 1, 0, 1);
      row_transform(u, t, *bad_row, 1, 1, 0, 1);
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < k; ++j) u(t, j) = -u(t, j);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

RankReport rank_over_q(const IntMatrix& m) {
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  // augmented rows [M | I]
  std::vector<std::vector<Int>> rows(k, std::vector<Int>(n + k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
    rows[i][n + i] = 1;
  }
  std::vector<bool> used(k, false);
  RankReport rep;
  for (std::size_t col = 0; col < n; ++col) {
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < k; ++i)
      if (!used[i] && rows[i][col] != 0) {
        piv = i;
        break;
      }
    if (!piv) continue;
    used[*piv] = true;
    ++rep.rank;
    for (std::size_t i = 0; i < k; ++i) {
      if (used[i] || rows[i][col] == 0) continue;
      const Int g = gcd(rows[*piv][col], rows[i][col]);
      const Int a = rows[*piv][col] / g;
      const Int b = rows[i][col] / g;
      for (std::size_t j = 0; j < n + k; ++j) rows[i][j] = a * rows[i][j] - b * rows[*piv][j];
      const Int c = content(rows[i]);
      if (c > 1)
        for (auto& x : rows[i]) x /= c;
    }
  }
  rep.full_row_rank = rep.rank == k;
  for (std::size_t i = 0; i < k && !rep.full_row_rank; ++i) {
    if (used[i]) continue;
    rep.witness.assign(rows[i].begin() + static_cast<std::ptrdiff_t>(n), rows[i].end());
    normalize_witness(rep.witness);
    break;
  }
  return rep;
}

RankReport rank_mod_p(const IntMatrix& m, const Int& p) {
  require_prime(p);
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  std::vector<std::vector<Int>> rows(k, std::vector<Int>(n + k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = mod(m(i, j), p);
    rows[i][n + i] = 1;
  }
  std::vector<bool> used(k, false);
  RankReport rep;
  for (std::size_t col = 0; col < n; ++col) {
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < k; ++i)
      if (!used[i] && rows[i][col] != 0) {
        piv = i;
        break;
      }
    if (!piv) continue;
    used[*piv] = true;
    ++rep.rank;
    const Int inv = inv_mod(rows[*piv][col], p);
    for (auto& x : rows[*piv]) x = mod(x * inv, p);
    for (std::size_t i = 0; i < k; ++i) {
      if (used[i] || rows[i][col] == 0) continue;
      const Int f = rows[i][col];
      for (std::size_t j = 0; j < n + k; ++j) rows[i][j] = mod(rows[i][j] - f * rows[*piv][j], p);
    }
  }
  rep.full_row_rank = rep.rank == k;
  for (std::size_t i = 0; i < k && !rep.full_row_rank; ++i) {
    if (used[i]) continue;
    rep.witness.assign(rows[i].begin() + static_cast<std::ptrdiff_t>(n), rows[i].end());
    break;
  }
  return rep;
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() > m.cols()) return false;
  const auto d = smith_normal_form(m).diagonal();
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (d[i] != 1) return false;
  return true;
}

ColumnHermite column_hermite(const IntMatrix& m) {
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  IntMatrix a = m;
  IntMatrix v = IntMatrix::identity(n);
  for (std::size_t i = 0; i < k; ++i) {
    if (i >= n) throw Error(ErrorCode::Singular, "more rows than columns");
    // bring a nonzero entry of row i into column i, then clear the rest of the row
    std::size_t j0 = i;
    while (j0 < n && a(i, j0) == 0) ++j0;
    if (j0 == n) throw Error(ErrorCode::Singular, "row " + std::to_string(i) + " is dependent");
    a.swap_cols(i, j0);
    v.swap_cols(i, j0);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(i, j) == 0) continue;
      Int s, t;
      const Int x = a(i, i);
      const Int y = a(i, j);
      const Int g = pivot_gcd(x, y, s, t);
      const Int nx = -y / g;
      const Int ny = x / g;
      col_transform(a, i, j, s, t, nx, ny);
      col_transform(v, i, j, s, t, nx, ny);
    }
    if (a(i, i) < 0) {
      for (std::size_t r = 0; r < k; ++r) a(r, i) = -a(r, i);
      for (std::size_t r = 0; r < n; ++r) v(r, i) = -v(r, i);
    }
  }
  ColumnHermite out{IntMatrix(k, k), std::move(v)};
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) out.L(r, c) = a(r, c);
  return out;
}

}  // namespace groupeq
