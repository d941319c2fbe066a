#include "zdlab/qlinalg.hpp"

#include <algorithm>
#include <cctype>

#include "zdlab/errors.hpp"

namespace zdlab {

Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw UsageError("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

Rat parse_rat(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  if (s.empty()) throw UsageError("empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  auto to_z = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return BigInt(t, 10);
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw UsageError("bad rational literal '" + s + "'");
    return Rat(to_z(s));
  }
  std::string p = s.substr(0, slash);
  std::string q = s.substr(slash + 1);
  if (!valid_int(p) || !valid_int(q) || q[0] == '-' || q[0] == '+')
    throw UsageError("bad rational literal '" + s + "'");
  return make_rat(to_z(p), to_z(q));
}

BigInt floor_of(const Rat& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt ceil_of(const Rat& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

BigInt isqrt_ceil(const BigInt& n) {
  if (n < 0) throw UsageError("isqrt of negative");
  BigInt s = sqrt(n);
  if (s * s < n) s += 1;
  return s;
}

// ---------------------------------------------------------------------------

QVec QVec::from_ints(std::initializer_list<long> xs) {
  QVec v(xs.size());
  std::size_t i = 0;
  for (long x : xs) v[i++] = Rat(x);
  return v;
}

QVec QVec::unit(std::size_t n, std::size_t i) {
  QVec v(n);
  v[i] = 1;
  return v;
}

bool QVec::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rat& x) { return x == 0; });
}

bool QVec::is_integral() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rat& x) { return is_integer(x); });
}

QVec& QVec::operator+=(const QVec& o) {
  if (o.size() != size()) throw DimensionError("vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

QVec& QVec::operator-=(const QVec& o) {
  if (o.size() != size()) throw DimensionError("vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

QVec& QVec::operator*=(const Rat& s) {
  for (auto& x : entries_) x *= s;
  return *this;
}

QVec operator+(QVec a, const QVec& b) { return a += b; }
QVec operator-(QVec a, const QVec& b) { return a -= b; }
QVec operator-(QVec a) { return a *= Rat(-1); }
QVec operator*(const Rat& s, QVec v) { return v *= s; }

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionError("vector length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat norm_squared(const QVec& v) { return dot(v, v); }

Rat max_norm(const QVec& v) {
  Rat m = 0;
  for (const auto& x : v) m = std::max<Rat>(m, abs(x));
  return m;
}

bool leq(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

BigInt common_denominator(const QVec& v) {
  BigInt l = 1;
  for (const auto& x : v) l = lcm(l, BigInt(x.get_den()));
  return l;
}

QVec primitive(const QVec& v) {
  if (v.is_zero()) return v;
  BigInt l = common_denominator(v);
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt z = BigInt(x * l);
    g = gcd(g, z);
  }
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = make_rat(BigInt(v[i] * l), g);
  return out;
}

std::string to_string(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

QMat::QMat(std::size_t rows, std::size_t cols) : rows_(rows, QVec(cols)), cols_(cols) {}

QMat::QMat(std::vector<QVec> rows) : rows_(std::move(rows)) {
  cols_ = rows_.empty() ? 0 : rows_.front().size();
  for (const auto& r : rows_)
    if (r.size() != cols_) throw DimensionError("ragged matrix");
}

QMat::QMat(std::initializer_list<std::initializer_list<Rat>> rows) {
  for (const auto& r : rows) rows_.emplace_back(r);
  cols_ = rows_.empty() ? 0 : rows_.front().size();
  for (const auto& r : rows_)
    if (r.size() != cols_) throw DimensionError("ragged matrix");
}

QMat QMat::identity(std::size_t n) {
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool QMat::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (rows_[i][j] != rows_[j][i]) return false;
  return true;
}

QVec QMat::operator*(const QVec& x) const {
  if (x.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  QVec y(rows());
  for (std::size_t i = 0; i < rows(); ++i) y[i] = dot(rows_[i], x);
  return y;
}

QMat QMat::operator*(const QMat& o) const {
  if (o.rows() != cols_) throw DimensionError("matrix-matrix size mismatch");
  QMat out(rows(), o.cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < o.cols(); ++j) {
      Rat s = 0;
      for (std::size_t k = 0; k < cols_; ++k) s += rows_[i][k] * o(k, j);
      out(i, j) = s;
    }
  return out;
}

QMat QMat::transposed() const {
  QMat t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = rows_[i][j];
  return t;
}

Rat QMat::bilinear(const QVec& x, const QVec& y) const {
  if (x.size() != rows()) throw DimensionError("bilinear form size mismatch");
  return dot(x, (*this) * y);
}

// ---------------------------------------------------------------------------

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rat>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rat inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Rat>> to_rows(const QMat& a) {
  std::vector<std::vector<Rat>> m(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) m[i] = a.row(i).entries();
  return m;
}

}  // namespace

std::optional<QVec> solve_linear(const QMat& a, const QVec& b) {
  if (!a.is_square()) throw DimensionError("solve_linear: matrix not square");
  if (b.size() != a.rows()) throw DimensionError("solve_linear: rhs length mismatch");
  const std::size_t n = a.rows();
  auto m = to_rows(a);
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(b[i]);
  auto piv = rref(m, n);
  if (piv.size() < n) return std::nullopt;
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

std::size_t rank(const QMat& a) {
  auto m = to_rows(a);
  return rref(m, a.cols()).size();
}

Rat determinant(const QMat& a) {
  if (!a.is_square()) throw DimensionError("determinant of non-square matrix");
  auto m = to_rows(a);
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::vector<QVec> nullspace(const std::vector<QVec>& rows, std::size_t cols) {
  std::vector<std::vector<Rat>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("nullspace: row length mismatch");
    m.push_back(r.entries());
  }
  auto piv = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMat> inverse(const QMat& a) {
  if (!a.is_square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  auto m = to_rows(a);
  for (std::size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, Rat(0));
    m[i][n + i] = 1;
  }
  auto piv = rref(m, n);
  if (piv.size() < n) return std::nullopt;
  QMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = m[i][n + j];
  return inv;
}

DefinitenessWitness is_negative_definite(const QMat& a) {
  if (!a.is_symmetric()) throw UsageError("is_negative_definite: matrix not symmetric");
  DefinitenessWitness w;
  w.negative_definite = true;
  const std::size_t n = a.rows();
  for (std::size_t k = 1; k <= n; ++k) {
    QMat sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = -a(i, j);
    Rat d = determinant(sub);
    if (d <= 0) w.negative_definite = false;
    w.minors.push_back(d);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

class Tableau {
 public:
  // rows x (cols + 1); last column is the right-hand side.
  std::vector<std::vector<Rat>> t;
  std::vector<Rat> obj;  // reduced costs, last entry = -(objective value)
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    Rat inv = 1 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rat f = t[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    if (obj[c] != 0) {
      Rat f = obj[c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[r][j] != 0) obj[j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  void load_costs(const std::vector<Rat>& cost) {
    obj.assign(cols + 1, Rat(0));
    for (std::size_t j = 0; j < cols; ++j) obj[j] = cost[j];
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Rat& cb = cost[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= cb * t[i][j];
    }
  }

  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (obj[j] < 0) {
          enter = j;
          break;
        }
      if (enter == allowed) return true;
      std::size_t leave = t.size();
      Rat best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i][enter] <= 0) continue;
        Rat ratio = t[i][cols] / t[i][enter];
        if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_min(const QVec& c, std::span<const Constraint> constraints,
                const std::vector<bool>& nonnegative) {
  const std::size_t n = c.size();
  if (!nonnegative.empty() && nonnegative.size() != n)
    throw DimensionError("lp_min: sign vector length mismatch");
  for (const auto& con : constraints)
    if (con.coeffs.size() != n) throw DimensionError("lp_min: constraint length mismatch");

  // Column layout: structural (free vars split in two), slacks, artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = ncols++;
    if (nonnegative.empty() || !nonnegative[j]) neg_col[j] = ncols++;
  }
  std::vector<std::size_t> slack_col(constraints.size(), SIZE_MAX);
  for (std::size_t i = 0; i < constraints.size(); ++i)
    if (constraints[i].rel != Relation::Eq) slack_col[i] = ncols++;
  const std::size_t real_cols = ncols;
  const std::size_t m = constraints.size();
  const std::size_t total = real_cols + m;

  Tableau tab;
  tab.cols = total;
  tab.t.assign(m, std::vector<Rat>(total + 1, Rat(0)));
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = constraints[i];
    auto& row = tab.t[i];
    for (std::size_t j = 0; j < n; ++j) {
      row[pos_col[j]] = con.coeffs[j];
      if (neg_col[j] != SIZE_MAX) row[neg_col[j]] = -con.coeffs[j];
    }
    if (con.rel == Relation::Le) row[slack_col[i]] = 1;
    if (con.rel == Relation::Ge) row[slack_col[i]] = -1;
    row[total] = con.rhs;
    if (row[total] < 0)
      for (auto& x : row) x = -x;
    row[real_cols + i] = 1;
    tab.basis[i] = real_cols + i;
  }

  // Phase 1.
  std::vector<Rat> phase1(total, Rat(0));
  for (std::size_t i = 0; i < m; ++i) phase1[real_cols + i] = 1;
  tab.load_costs(phase1);
  tab.optimize(total);
  if (-tab.obj[total] != 0) return {LpStatus::Infeasible, Rat(0), QVec()};

  // Drive artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tab.t.size();) {
    if (tab.basis[i] < real_cols) {
      ++i;
      continue;
    }
    std::size_t c = real_cols;
    for (std::size_t j = 0; j < real_cols; ++j)
      if (tab.t[i][j] != 0) {
        c = j;
        break;
      }
    if (c == real_cols) {
      tab.t.erase(tab.t.begin() + static_cast<long>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
      continue;
    }
    tab.pivot(i, c);
    ++i;
  }

  // Phase 2.
  std::vector<Rat> cost(total, Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = c[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -c[j];
  }
  tab.load_costs(cost);
  if (!tab.optimize(real_cols)) return {LpStatus::Unbounded, Rat(0), QVec()};

  std::vector<Rat> colval(total, Rat(0));
  for (std::size_t i = 0; i < tab.t.size(); ++i) colval[tab.basis[i]] = tab.t[i][total];
  QVec x(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = colval[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) x[j] -= colval[neg_col[j]];
  }
  return {LpStatus::Optimal, dot(c, x), std::move(x)};
}

std::optional<QVec> nonnegative_combination(std::span<const QVec> columns, const QVec& target) {
  const std::size_t k = columns.size();
  const std::size_t d = target.size();
  std::vector<Constraint> cons;
  cons.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    QVec row(k);
    for (std::size_t j = 0; j < k; ++j) {
      if (columns[j].size() != d) throw DimensionError("nonnegative_combination: column length");
      row[j] = columns[j][i];
    }
    cons.push_back({std::move(row), Relation::Eq, target[i]});
  }
  auto res = lp_min(QVec(k), cons, std::vector<bool>(k, true));
  if (!res.optimal()) return std::nullopt;
  return res.point;
}

}  // namespace zdlab
