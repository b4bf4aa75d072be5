#pragma once

#include "pimoduli/int_matrix.hpp"

#include <optional>
#include <tuple>

namespace pimoduli {

/// U * M * V = S with S diagonal, d_1 | d_2 | ..., zeros trailing, and U, V unimodular.
/// `U_inv` is carried along because presentations need both directions of the coordinate change.
struct SnfDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  IntMatrix U_inv;

  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
      if (S(i, i) != 0) ++r;
    return r;
  }
};

struct SnfOptions {
  bool track_left = true;
  bool track_left_inverse = true;
  bool track_right = true;
};

namespace detail {

// Minimal |entry| over the lower-right block starting at (t, t); ties go to the lowest (row, col).
inline std::optional<std::pair<std::size_t, std::size_t>> min_abs_pivot(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < a.rows(); ++i) {
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& v = a(i, j);
      if (v == 0) continue;
      if (!best || cmpabs(v, best_abs) < 0) {
        best = {i, j};
        best_abs = abs(v);
        if (best_abs == 1) return best;
      }
    }
  }
  return best;
}

// Truncated quotient; keeps |remainder| < |divisor|.
inline Integer tdiv_q(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

inline SnfDecomposition smith_normal_form(const IntMatrix& m, SnfOptions opts = {}) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SnfDecomposition out;
  IntMatrix& a = out.S;
  a = m;
  if (opts.track_left) out.U = IntMatrix::identity(rows);
  if (opts.track_left_inverse) out.U_inv = IntMatrix::identity(rows);
  if (opts.track_right) out.V = IntMatrix::identity(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    a.swap_rows(i, j);
    if (opts.track_left) out.U.swap_rows(i, j);
    if (opts.track_left_inverse) out.U_inv.swap_cols(i, j);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    a.swap_cols(i, j);
    if (opts.track_right) out.V.swap_cols(i, j);
  };
  // row[dst] += f * row[src]
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& f, std::size_t from) {
    a.add_row_multiple(dst, src, f, from);
    if (opts.track_left) out.U.add_row_multiple(dst, src, f);
    if (opts.track_left_inverse) out.U_inv.add_col_multiple(src, dst, -f);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& f, std::size_t from) {
    a.add_col_multiple(dst, src, f, from);
    if (opts.track_right) out.V.add_col_multiple(dst, src, f);
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      auto pivot = detail::min_abs_pivot(a, t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        add_row(i, t, -detail::tdiv_q(a(i, t), a(t, t)), t);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        add_col(j, t, -detail::tdiv_q(a(t, j), a(t, t)), t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column t are clear; enforce divisibility of the remaining block.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < rows && !offender; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            offender = i;
            break;
          }
      if (!offender) break;
      add_row(t, *offender, Integer(1), t);
    }
    if (a(t, t) == 0) break;
    if (a(t, t) < 0) {
      a.negate_row(t);
      if (opts.track_left) out.U.negate_row(t);
      if (opts.track_left_inverse) out.U_inv.negate_col(t);
    }
  }
  return out;
}

/// Column basis of the lattice spanned by the columns of `m`, in column Hermite form:
/// pivot rows strictly increase left to right, pivots are positive, everything above a
/// pivot is zero, and entries to the left of a pivot lie in [0, pivot).
inline IntMatrix hermite_column_basis(const IntMatrix& m) {
  IntMatrix h = m.transpose();  // generators as rows; run row-style HNF
  const std::size_t n = h.rows();
  const std::size_t dim = h.cols();
  std::size_t cur = 0;
  for (std::size_t c = 0; c < dim && cur < n; ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t r = cur; r < n; ++r)
        if (h(r, c) != 0 && (!best || cmpabs(h(r, c), h(*best, c)) < 0)) best = r;
      if (!best) break;
      h.swap_rows(cur, *best);
      bool clean = true;
      for (std::size_t r = cur + 1; r < n; ++r) {
        if (h(r, c) == 0) continue;
        h.add_row_multiple(r, cur, -detail::tdiv_q(h(r, c), h(cur, c)), c);
        if (h(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(cur, c) == 0) continue;
    if (h(cur, c) < 0) h.negate_row(cur);
    for (std::size_t r = 0; r < cur; ++r) {
      if (h(r, c) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, c).get_mpz_t(), h(cur, c).get_mpz_t());
      h.add_row_multiple(r, cur, -q, c);
    }
    ++cur;
  }
  return h.row_range(0, cur).transpose();
}

/// Basis of {x : M x = 0}, as columns in column Hermite form.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix t = IntMatrix::identity(cols);
  std::size_t cur = 0;
  for (std::size_t r = 0; r < rows && cur < cols; ++r) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t c = cur; c < cols; ++c)
        if (a(r, c) != 0 && (!best || cmpabs(a(r, c), a(r, *best)) < 0)) best = c;
      if (!best) break;
      a.swap_cols(cur, *best);
      t.swap_cols(cur, *best);
      bool clean = true;
      for (std::size_t c = cur + 1; c < cols; ++c) {
        if (a(r, c) == 0) continue;
        Integer q = -detail::tdiv_q(a(r, c), a(r, cur));
        a.add_col_multiple(c, cur, q, r);
        t.add_col_multiple(c, cur, q);
        if (a(r, c) != 0) clean = false;
      }
      if (clean) {
        ++cur;
        break;
      }
    }
  }
  if (cur == cols) return IntMatrix(cols, 0);
  return hermite_column_basis(t.column_range(cur, cols - cur));
}

/// A full-column-rank lattice basis in column Hermite form with a coordinate solver.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  explicit LatticeBasis(const IntMatrix& generators) : basis_(hermite_column_basis(generators)) {
    for (std::size_t j = 0; j < basis_.cols(); ++j) {
      std::size_t p = 0;
      while (basis_(p, j) == 0) ++p;
      pivots_.push_back(p);
    }
  }

  const IntMatrix& basis() const noexcept { return basis_; }
  std::size_t rank() const noexcept { return basis_.cols(); }
  std::size_t ambient_dimension() const noexcept { return basis_.rows(); }

  /// Coordinates y with basis * y = x, or nothing when x is outside the lattice.
  std::optional<IntVector> solve(const IntVector& x) const {
    IntVector residual = x;
    IntVector y(basis_.cols());
    for (std::size_t j = 0; j < basis_.cols(); ++j) {
      const std::size_t p = pivots_[j];
      for (std::size_t i = (j == 0 ? 0 : pivots_[j - 1] + 1); i < p; ++i)
        if (residual[i] != 0) return std::nullopt;
      if (!mpz_divisible_p(residual[p].get_mpz_t(), basis_(p, j).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[j].get_mpz_t(), residual[p].get_mpz_t(), basis_(p, j).get_mpz_t());
      if (y[j] != 0)
        for (std::size_t i = p; i < basis_.rows(); ++i)
          if (basis_(i, j) != 0) residual[i] -= y[j] * basis_(i, j);
    }
    for (const auto& v : residual)
      if (v != 0) return std::nullopt;
    return y;
  }

  bool contains(const IntVector& x) const { return solve(x).has_value(); }

 private:
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace pimoduli
