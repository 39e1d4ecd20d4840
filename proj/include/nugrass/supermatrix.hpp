#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nugrass/superalgebra.hpp"

namespace nugrass {

struct MatrixError : AlgebraError {
  using AlgebraError::AlgebraError;
};
struct DimensionMismatch : MatrixError {
  using MatrixError::MatrixError;
};
struct DoubleNu : MatrixError {
  DoubleNu() : MatrixError("product term pairs two 1nu symbols") {}
};
struct NotInvertible : MatrixError {
  NotInvertible() : MatrixError("supermatrix body is singular") {}
};
struct NuEntriesPresent : MatrixError {
  NuEntriesPresent() : MatrixError("cannot invert a supermatrix containing 1nu") {}
};
struct ResidualNuSymbol : MatrixError {
  ResidualNuSymbol() : MatrixError("1nu left in a column that M' does not move") {}
};
struct ParityViolation : MatrixError {
  using MatrixError::MatrixError;
};

/// The formal odd unit of a non-standard identity. Multiplication rule:
/// z * 1nu = 1nu * z = nu(z).
struct NuSymbol {
  bool operator==(const NuSymbol&) const = default;
};

template <class S>
using Entry = std::variant<S, NuSymbol>;

template <class S>
bool is_nu(const Entry<S>& e) {
  return std::holds_alternative<NuSymbol>(e);
}

/// (r0|r1) x (c0|c1) grid over the scalar type S (SuperFunction or
/// GrassmannNumber). Block parity of (i, j) is odd exactly when the row and
/// column lie on different sides of their dividers.
template <class S>
class SuperMatrix {
 public:
  using Split = std::array<int, 2>;

  SuperMatrix() = default;
  SuperMatrix(typename S::Context ctx, Split rows, Split cols)
      : ctx_(ctx), rows_(rows), cols_(cols),
        entries_(static_cast<std::size_t>((rows[0] + rows[1]) * (cols[0] + cols[1])), Entry<S>(S::zero(ctx))) {}

  static SuperMatrix identity(typename S::Context ctx, Split split) {
    SuperMatrix m(ctx, split, split);
    for (int i = 0; i < m.rows(); ++i) m.set(i, i, S::one(ctx));
    return m;
  }

  const typename S::Context& context() const { return ctx_; }
  Split row_split() const { return rows_; }
  Split col_split() const { return cols_; }
  int rows() const { return rows_[0] + rows_[1]; }
  int cols() const { return cols_[0] + cols_[1]; }
  bool row_odd(int i) const { return i >= rows_[0]; }
  bool col_odd(int j) const { return j >= cols_[0]; }
  int block_parity(int i, int j) const { return row_odd(i) != col_odd(j) ? 1 : 0; }

  const Entry<S>& at(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, Entry<S> e) { entries_[index(i, j)] = std::move(e); }
  const S& plain(int i, int j) const {
    const auto* p = std::get_if<S>(&at(i, j));
    if (!p) throw NuEntriesPresent();
    return *p;
  }

  bool has_nu() const {
    return std::any_of(entries_.begin(), entries_.end(), [](const Entry<S>& e) { return is_nu(e); });
  }

  /// Plain entries in B1/B4 even, in B2/B3 odd; 1nu only in B2/B3.
  void validate() const {
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) {
        const int bp = block_parity(i, j);
        if (is_nu(at(i, j))) {
          if (bp != 1) throw ParityViolation("1nu outside an odd block");
          continue;
        }
        const S& s = std::get<S>(at(i, j));
        if (s.is_zero()) continue;
        if (s.parity() != bp) throw ParityViolation("entry parity does not match its block");
      }
  }

  bool is_parity_valid() const {
    try {
      validate();
      return true;
    } catch (const ParityViolation&) {
      return false;
    }
  }

  /// Column j as a standalone (r0|r1) x (1|0) or (0|1) matrix is rarely needed;
  /// the operators below work on column index lists instead.
  SuperMatrix select_columns(const std::vector<int>& even_cols, const std::vector<int>& odd_cols) const {
    SuperMatrix out(ctx_, rows_, {static_cast<int>(even_cols.size()), static_cast<int>(odd_cols.size())});
    int c = 0;
    for (const auto* list : {&even_cols, &odd_cols})
      for (int j : *list) {
        for (int i = 0; i < rows(); ++i) out.set(i, c, at(i, j));
        ++c;
      }
    return out;
  }

  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < 0 || j < 0 || i >= rows() || j >= cols()) throw DimensionMismatch("supermatrix index out of range");
    return static_cast<std::size_t>(i * cols() + j);
  }

  typename S::Context ctx_{};
  Split rows_{0, 0};
  Split cols_{0, 0};
  std::vector<Entry<S>> entries_;
};

template <class S>
Entry<S> entry_product(const Entry<S>& a, const Entry<S>& b) {
  const bool na = is_nu(a), nb = is_nu(b);
  if (na && nb) throw DoubleNu();
  if (na) return std::get<S>(b).nu();
  if (nb) return std::get<S>(a).nu();
  return std::get<S>(a) * std::get<S>(b);
}

/// Row-by-column product; 1nu entries act by nu on the other factor.
template <class S>
SuperMatrix<S> smat_mul(const SuperMatrix<S>& a, const SuperMatrix<S>& b) {
  if (a.col_split() != b.row_split()) throw DimensionMismatch("smat_mul: inner splits differ");
  SuperMatrix<S> out(a.context(), a.row_split(), b.col_split());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      S acc = S::zero(a.context());
      for (int k = 0; k < a.cols(); ++k) {
        const Entry<S>& x = a.at(i, k);
        const Entry<S>& y = b.at(k, j);
        if ((!is_nu(x) && std::get<S>(x).is_zero()) || (!is_nu(y) && std::get<S>(y).is_zero())) {
          if (is_nu(x) && is_nu(y)) throw DoubleNu();
          continue;
        }
        acc = acc + std::get<S>(entry_product(x, y));
      }
      out.set(i, j, acc);
    }
  return out;
}

/// Gauss-Jordan inverse with body-invertible pivots, row operations applied
/// from the left. Throws NuEntriesPresent or NotInvertible.
template <class S>
SuperMatrix<S> smat_inv(const SuperMatrix<S>& a) {
  if (a.row_split() != a.col_split()) throw DimensionMismatch("smat_inv: matrix is not square in both parities");
  if (a.has_nu()) throw NuEntriesPresent();
  const int n = a.rows();
  const auto& ctx = a.context();
  std::vector<std::vector<S>> w(static_cast<std::size_t>(n)), inv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w[i].push_back(a.plain(i, j));
      inv[i].push_back(i == j ? S::one(ctx) : S::zero(ctx));
    }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!w[i][c].body_is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) throw NotInvertible();
    std::swap(w[c], w[piv]);
    std::swap(inv[c], inv[piv]);
    S pinv = w[c][c].inverse();
    for (int j = 0; j < n; ++j) {
      w[c][j] = pinv * w[c][j];
      inv[c][j] = pinv * inv[c][j];
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || w[i][c].is_zero()) continue;
      S f = w[i][c];
      for (int j = 0; j < n; ++j) {
        if (!w[c][j].is_zero()) w[i][j] = w[i][j] - f * w[c][j];
        if (!inv[c][j].is_zero()) inv[i][j] = inv[i][j] - f * inv[c][j];
      }
    }
  }
  SuperMatrix<S> out(ctx, a.row_split(), a.col_split());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.set(i, j, inv[i][j]);
  return out;
}

/// Whether every pivot of the body exists, i.e. smat_inv would succeed.
template <class S>
bool smat_invertible(const SuperMatrix<S>& a) {
  try {
    smat_inv(a);
    return true;
  } catch (const NotInvertible&) {
    return false;
  }
}

namespace detail {

inline void check_indices(const std::vector<int>& idx, int limit) {
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (idx[t] < 1 || idx[t] > limit) throw DimensionMismatch("column index out of range");
    if (t > 0 && idx[t] <= idx[t - 1]) throw DimensionMismatch("column indices must be strictly increasing");
  }
}

}  // namespace detail

/// Columns with even indices in J then odd indices in S (1-based, ascending),
/// each kept on its own side of the divider.
template <class S>
SuperMatrix<S> minor_M(const SuperMatrix<S>& a, const std::vector<int>& even_idx, const std::vector<int>& odd_idx) {
  detail::check_indices(even_idx, a.col_split()[0]);
  detail::check_indices(odd_idx, a.col_split()[1]);
  std::vector<int> ev, od;
  for (int j : even_idx) ev.push_back(j - 1);
  for (int j : odd_idx) od.push_back(a.col_split()[0] + j - 1);
  return a.select_columns(ev, od);
}

/// The columns of A not selected by minor_M, in order, on their own sides.
template <class S>
SuperMatrix<S> remainder_D(const SuperMatrix<S>& a, const std::vector<int>& even_idx, const std::vector<int>& odd_idx) {
  detail::check_indices(even_idx, a.col_split()[0]);
  detail::check_indices(odd_idx, a.col_split()[1]);
  std::vector<int> ev, od;
  for (int j = 1; j <= a.col_split()[0]; ++j)
    if (std::find(even_idx.begin(), even_idx.end(), j) == even_idx.end()) ev.push_back(j - 1);
  for (int j = 1; j <= a.col_split()[1]; ++j)
    if (std::find(odd_idx.begin(), odd_idx.end(), j) == odd_idx.end()) od.push_back(a.col_split()[0] + j - 1);
  return a.select_columns(ev, od);
}

/// Positions (0-based, within the selected minor) of the columns that carry
/// 1nu in the non-standard identity of a p|q index against k even rows: the
/// diagonal positions r with min(p,k) <= r < max(p,k).
inline std::vector<int> nu_identity_columns(int p, int k) {
  std::vector<int> out;
  for (int r = std::min(p, k); r < std::max(p, k); ++r) out.push_back(r);
  return out;
}

/// Column of M' as a column of the source matrix: its 0-based index there and
/// whether it was moved across the divider (entries replaced by nu).
struct PrimedColumn {
  int source;
  bool moved;
};

/// Column plan of M' for a target index J|S over a matrix with k even rows
/// and `even_cols` even columns. The columns that carry 1nu in the target's
/// non-standard identity sit right next to the divider, so moving them across
/// only shifts the divider from p to k; the column order is unchanged.
inline std::vector<PrimedColumn> mprime_plan(int k, int even_cols, const std::vector<int>& even_idx,
                                             const std::vector<int>& odd_idx) {
  const int p = static_cast<int>(even_idx.size());
  const auto moved = nu_identity_columns(p, k);
  std::vector<PrimedColumn> plan;
  for (int j : even_idx) plan.push_back({j - 1, false});
  for (int j : odd_idx) plan.push_back({even_cols + j - 1, false});
  for (int c : moved) plan.at(static_cast<std::size_t>(c)).moved = true;
  return plan;
}

/// M' for a target index J|S: M_{J|S}A with the columns that carry 1nu in the
/// target's non-standard identity moved across the divider and every entry a
/// in them replaced by nu(a), where nu(1nu) = 1. The result is square
/// k|l x k|l. Throws ResidualNuSymbol if a 1nu survives in an unmoved column.
template <class S>
SuperMatrix<S> minor_Mprime(const SuperMatrix<S>& a, const std::vector<int>& even_idx, const std::vector<int>& odd_idx) {
  detail::check_indices(even_idx, a.col_split()[0]);
  detail::check_indices(odd_idx, a.col_split()[1]);
  const int k = a.row_split()[0], l = a.row_split()[1];
  if (static_cast<int>(even_idx.size() + odd_idx.size()) != k + l)
    throw DimensionMismatch("minor_Mprime: selected index does not have k+l columns");
  const auto plan = mprime_plan(k, a.col_split()[0], even_idx, odd_idx);
  SuperMatrix<S> out(a.context(), a.row_split(), {k, l});
  for (int c = 0; c < k + l; ++c) {
    const PrimedColumn& pc = plan[static_cast<std::size_t>(c)];
    for (int i = 0; i < a.rows(); ++i) {
      const Entry<S>& e = a.at(i, pc.source);
      if (pc.moved) {
        out.set(i, c, is_nu(e) ? S::one(a.context()) : std::get<S>(e).nu());
      } else {
        if (is_nu(e)) throw ResidualNuSymbol();
        out.set(i, c, e);
      }
    }
  }
  return out;
}

/// Bracket-and-divider layout: cells padded per column, " | " at the column
/// divider, a dashed rule between even and odd rows.
std::string format_grid(const std::vector<std::vector<std::string>>& cells, std::array<int, 2> row_split,
                        std::array<int, 2> col_split);

template <class S>
std::vector<std::vector<std::string>> entry_tokens(const SuperMatrix<S>& m) {
  std::vector<std::vector<std::string>> t(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Entry<S>& e = m.at(i, j);
      t[i].push_back(is_nu(e) ? std::string("1ν") : std::get<S>(e).to_string());
    }
  return t;
}

template <class S>
std::string pretty(const SuperMatrix<S>& m) {
  return format_grid(entry_tokens(m), m.row_split(), m.col_split());
}

template <class S>
nlohmann::json to_json(const SuperMatrix<S>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) {
      const Entry<S>& e = m.at(i, j);
      row.push_back(is_nu(e) ? nlohmann::json("1nu") : to_json(std::get<S>(e)));
    }
    rows.push_back(row);
  }
  return {{"row_split", m.row_split()}, {"col_split", m.col_split()}, {"entries", rows}};
}

/// Parses the matrix format; `parse_entry` turns one serialized scalar into S.
template <class S, class ParseEntry>
SuperMatrix<S> supermatrix_from_json(const nlohmann::json& j, typename S::Context ctx, ParseEntry parse_entry) {
  auto rs = j.at("row_split").get<std::array<int, 2>>();
  auto cs = j.at("col_split").get<std::array<int, 2>>();
  SuperMatrix<S> m(ctx, rs, cs);
  const auto& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != m.rows()) throw DimensionMismatch("matrix json: row count");
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols()) throw DimensionMismatch("matrix json: column count");
    for (int c = 0; c < m.cols(); ++c) {
      const auto& e = rows[i][c];
      if (e.is_string() && e.get<std::string>() == "1nu") m.set(i, c, NuSymbol{});
      else m.set(i, c, parse_entry(e));
    }
  }
  m.validate();
  return m;
}

}  // namespace nugrass
