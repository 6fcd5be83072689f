#pragma once

// Column-compressed sparse matrices over int (exact q = 0 mode), double and
// std::complex<double>. Every operator in the library is a finite section of
// a bounded operator on a shell-truncated basis, with O(1) entries per column.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace suq2 {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class T>
constexpr T conj_scalar(const T& v) {
  if constexpr (is_complex<T>::value) {
    return std::conj(v);
  } else {
    return v;
  }
}

template <class T>
double abs_scalar(const T& v) {
  if constexpr (is_complex<T>::value) {
    return std::abs(v);
  } else {
    return std::abs(static_cast<double>(v));
  }
}

template <class T>
class SparseMatrix {
 public:
  using scalar_type = T;

  struct Entry {
    std::size_t row;
    T value;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseMatrix() : col_start_(1, 0) {}

  /// Zero matrix.
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_start_(cols + 1, 0) {}

  /// Builds from per-column entry lists: rows are sorted, duplicates summed,
  /// exact zeros dropped. Throws std::out_of_range on a row >= rows.
  static SparseMatrix from_columns(std::size_t rows, std::vector<std::vector<Entry>> columns) {
    SparseMatrix m(rows, columns.size());
    std::size_t total = 0;
    for (const auto& c : columns) total += c.size();
    m.entries_.reserve(total);
    for (std::size_t j = 0; j < columns.size(); ++j) {
      auto& col = columns[j];
      std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
      for (std::size_t k = 0; k < col.size();) {
        if (col[k].row >= rows) throw std::out_of_range("sparse entry row outside codomain");
        T sum = col[k].value;
        std::size_t l = k + 1;
        for (; l < col.size() && col[l].row == col[k].row; ++l) sum += col[l].value;
        if (sum != T{}) m.entries_.push_back({col[k].row, sum});
        k = l;
      }
      m.col_start_[j + 1] = m.entries_.size();
    }
    return m;
  }

  static SparseMatrix identity(std::size_t n) {
    std::vector<T> d(n, T{1});
    return diagonal(d);
  }

  static SparseMatrix diagonal(std::span<const T> values) {
    SparseMatrix m(values.size(), values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j] != T{}) m.entries_.push_back({j, values[j]});
      m.col_start_[j + 1] = m.entries_.size();
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  std::span<const Entry> column(std::size_t j) const {
    return {entries_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }

  /// Entry (i, j); zero when not stored.
  T coeff(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix entry outside dimensions");
    const auto col = column(j);
    const auto it = std::lower_bound(col.begin(), col.end(), i,
                                     [](const Entry& e, std::size_t row) { return e.row < row; });
    return (it != col.end() && it->row == i) ? it->value : T{};
  }

  std::vector<std::vector<Entry>> to_columns() const {
    std::vector<std::vector<Entry>> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto col = column(j);
      out[j].assign(col.begin(), col.end());
    }
    return out;
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_start_;
  std::vector<Entry> entries_;
};

template <class U, class T>
SparseMatrix<U> convert(const SparseMatrix<T>& a) {
  std::vector<std::vector<typename SparseMatrix<U>::Entry>> cols(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (const auto& e : a.column(j)) cols[j].push_back({e.row, static_cast<U>(e.value)});
  return SparseMatrix<U>::from_columns(a.rows(), std::move(cols));
}

/// Conjugate transpose.
template <class T>
SparseMatrix<T> adjoint(const SparseMatrix<T>& a) {
  std::vector<std::vector<typename SparseMatrix<T>::Entry>> cols(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (const auto& e : a.column(j)) cols[e.row].push_back({j, conj_scalar(e.value)});
  return SparseMatrix<T>::from_columns(a.cols(), std::move(cols));
}

/// a * b.
template <class T>
SparseMatrix<T> compose(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in compose");
  std::vector<std::vector<typename SparseMatrix<T>::Entry>> cols(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (const auto& eb : b.column(j))
      for (const auto& ea : a.column(eb.row)) cols[j].push_back({ea.row, ea.value * eb.value});
  return SparseMatrix<T>::from_columns(a.rows(), std::move(cols));
}

/// wa * a + wb * b.
template <class T>
SparseMatrix<T> add(const SparseMatrix<T>& a, const SparseMatrix<T>& b, T wa = T{1}, T wb = T{1}) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch in add");
  std::vector<std::vector<typename SparseMatrix<T>::Entry>> cols(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (const auto& e : a.column(j)) cols[j].push_back({e.row, wa * e.value});
    for (const auto& e : b.column(j)) cols[j].push_back({e.row, wb * e.value});
  }
  return SparseMatrix<T>::from_columns(a.rows(), std::move(cols));
}

template <class T>
SparseMatrix<T> subtract(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  return add(a, b, T{1}, T{-1});
}

template <class T>
SparseMatrix<T> scale(const SparseMatrix<T>& a, T w) {
  return add(a, SparseMatrix<T>(a.rows(), a.cols()), w, T{0});
}

/// Kronecker product; rank of (x, y) is x * b.dim + y.
template <class T>
SparseMatrix<T> kron(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  std::vector<std::vector<typename SparseMatrix<T>::Entry>> cols(a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja)
    for (std::size_t jb = 0; jb < b.cols(); ++jb) {
      auto& col = cols[ja * b.cols() + jb];
      for (const auto& ea : a.column(ja))
        for (const auto& eb : b.column(jb)) col.push_back({ea.row * b.rows() + eb.row, ea.value * eb.value});
    }
  return SparseMatrix<T>::from_columns(a.rows() * b.rows(), std::move(cols));
}

template <class T>
std::vector<T> apply(const SparseMatrix<T>& a, std::span<const T> x) {
  if (x.size() != a.cols()) throw std::invalid_argument("dimension mismatch in apply");
  std::vector<T> y(a.rows(), T{});
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (x[j] == T{}) continue;
    for (const auto& e : a.column(j)) y[e.row] += e.value * x[j];
  }
  return y;
}

/// Zeroes the columns j with keep[j] == false.
template <class T>
SparseMatrix<T> restrict_columns(const SparseMatrix<T>& a, const std::vector<bool>& keep) {
  if (keep.size() != a.cols()) throw std::invalid_argument("column mask size mismatch");
  auto cols = a.to_columns();
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (!keep[j]) cols[j].clear();
  return SparseMatrix<T>::from_columns(a.rows(), std::move(cols));
}

/// Zeroes the rows i with keep[i] == false.
template <class T>
SparseMatrix<T> restrict_rows(const SparseMatrix<T>& a, const std::vector<bool>& keep) {
  if (keep.size() != a.rows()) throw std::invalid_argument("row mask size mismatch");
  auto cols = a.to_columns();
  for (auto& col : cols) std::erase_if(col, [&](const auto& e) { return !keep[e.row]; });
  return SparseMatrix<T>::from_columns(a.rows(), std::move(cols));
}

template <class T>
double max_abs_entry(const SparseMatrix<T>& a) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (const auto& e : a.column(j)) m = std::max(m, abs_scalar(e.value));
  return m;
}

template <class T>
double frobenius_norm(const SparseMatrix<T>& a) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (const auto& e : a.column(j)) {
      const double v = abs_scalar(e.value);
      s += v * v;
    }
  return std::sqrt(s);
}

template <class T>
double column_norm(const SparseMatrix<T>& a, std::size_t j) {
  double s = 0.0;
  for (const auto& e : a.column(j)) {
    const double v = abs_scalar(e.value);
    s += v * v;
  }
  return std::sqrt(s);
}

struct NormOptions {
  double tol_rel = 1e-10;
  int max_iter = 10000;
};

struct NormEstimate {
  double value = 0.0;
  int iterations = 0;
  bool hit_max_iter = false;
};

namespace detail {

template <class T>
NormEstimate power_iteration_norm(const SparseMatrix<T>& a, NormOptions opts) {
  NormEstimate out;
  if (a.nnz() == 0) return out;

  const auto norm2 = [](const std::vector<T>& v) {
    double s = 0.0;
    for (const auto& x : v) {
      const double m = abs_scalar(x);
      s += m * m;
    }
    return s;
  };
  const auto ah = adjoint(a);

  std::vector<T> v(a.cols(), T{1});
  double lambda_prev = -1.0;
  bool perturbed = false;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const double vv = norm2(v);
    const auto w = apply(a, std::span<const T>(v));
    const double lambda = norm2(w) / vv;
    out.iterations = it;
    if (lambda == 0.0) {
      if (perturbed) return out;
      perturbed = true;
      std::fill(v.begin(), v.end(), T{1});
      v[0] += T{1e-3};
      lambda_prev = -1.0;
      continue;
    }
    auto u = apply(ah, std::span<const T>(w));
    const double inv = 1.0 / std::sqrt(norm2(u));
    for (auto& x : u) x *= inv;
    v = std::move(u);
    out.value = std::sqrt(lambda);
    if (lambda_prev >= 0.0 && std::abs(lambda - lambda_prev) < opts.tol_rel * lambda) return out;
    lambda_prev = lambda;
  }
  out.hit_max_iter = true;
  return out;
}

}  // namespace detail

/// Largest singular value by power iteration on a^* a from the all-ones start,
/// stopping when the Rayleigh quotient's relative change drops below tol_rel.
/// If the first Rayleigh quotient vanishes for a nonzero matrix the start is
/// perturbed once (1e-3 added at rank 0). Throws on a zero-dimensional matrix.
template <class T>
NormEstimate operator_norm(const SparseMatrix<T>& a, NormOptions opts = {}) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("operator norm of a zero-dimensional operator");
  if constexpr (std::is_integral_v<T>) {
    return detail::power_iteration_norm(convert<double>(a), opts);
  } else {
    return detail::power_iteration_norm(a, opts);
  }
}

namespace detail {

/// Largest eigenvalue of a dense symmetric k x k matrix (row-major) by cyclic Jacobi rotations.
inline double jacobi_max_eigenvalue(std::vector<double> a, std::size_t k) {
  const auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * k + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        total += at(i, j) * at(i, j);
        if (i != j) off += at(i, j) * at(i, j);
      }
    if (off <= 1e-30 * total) break;
    for (std::size_t p = 0; p + 1 < k; ++p)
      for (std::size_t q = p + 1; q < k; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < k; ++r) {
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = c * arp - s * arq;
          at(r, q) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < k; ++r) {
          const double apr = at(p, r);
          const double aqr = at(q, r);
          at(p, r) = c * apr - s * aqr;
          at(q, r) = s * apr + c * aqr;
        }
      }
  }
  double m = 0.0;
  for (std::size_t i = 0; i < k; ++i) m = std::max(m, at(i, i));
  return m;
}

}  // namespace detail

/// Largest singular value of a real matrix, computed exactly per connected
/// component of its row/column incidence graph: the Gram matrix of each
/// component is diagonalized densely. Throws std::length_error if a component
/// has more than max_block columns. iterations counts the components.
inline NormEstimate operator_norm_blockwise(const SparseMatrix<double>& a, std::size_t max_block = 512) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("operator norm of a zero-dimensional operator");
  std::vector<std::size_t> parent(a.cols());
  for (std::size_t j = 0; j < parent.size(); ++j) parent[j] = j;
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> row_owner(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (const auto& e : a.column(j)) {
      if (row_owner[e.row] == a.cols()) {
        row_owner[e.row] = j;
      } else {
        parent[find(j)] = find(row_owner[e.row]);
      }
    }
  std::vector<std::vector<std::size_t>> groups(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (a.column(j).size() != 0) groups[find(j)].push_back(j);

  NormEstimate out;
  std::vector<double> dense(a.rows(), 0.0);
  for (const auto& cols : groups) {
    const std::size_t k = cols.size();
    if (k == 0) continue;
    if (k > max_block) throw std::length_error("operator component too large for dense diagonalization");
    std::vector<double> gram(k * k, 0.0);
    for (std::size_t x = 0; x < k; ++x) {
      for (const auto& e : a.column(cols[x])) dense[e.row] = e.value;
      for (std::size_t y = x; y < k; ++y) {
        double s = 0.0;
        for (const auto& e : a.column(cols[y])) s += dense[e.row] * e.value;
        gram[x * k + y] = gram[y * k + x] = s;
      }
      for (const auto& e : a.column(cols[x])) dense[e.row] = 0.0;
    }
    out.value = std::max(out.value, std::sqrt(detail::jacobi_max_eigenvalue(std::move(gram), k)));
    ++out.iterations;
  }
  return out;
}

}  // namespace suq2
