#include "ntorus/designs.hpp"

#include <cmath>
#include <map>

#include "ntorus/error.hpp"

namespace ntorus {

namespace {

using Exponent = std::vector<int>;

// Sparse multivariate polynomial with integer coefficients.
class Polynomial {
 public:
  explicit Polynomial(int vars) : vars_(vars) {}

  static Polynomial linear(const std::vector<Integer>& coeffs) {
    Polynomial p(static_cast<int>(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      Exponent e(coeffs.size(), 0);
      e[i] = 1;
      p.terms_[e] += coeffs[i];
    }
    return p;
  }

  Polynomial operator*(const Polynomial& other) const {
    Polynomial out(vars_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : other.terms_) {
        Exponent e(ea);
        for (int i = 0; i < vars_; ++i) e[i] += eb[i];
        out.terms_[e] += ca * cb;
      }
    out.prune();
    return out;
  }

  Polynomial& operator+=(const Polynomial& other) {
    for (const auto& [e, c] : other.terms_) terms_[e] += c;
    prune();
    return *this;
  }

  Integer coefficient(const Exponent& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  const std::map<Exponent, Integer>& terms() const { return terms_; }

 private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }

  int vars_;
  std::map<Exponent, Integer> terms_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

// Row-reduces in place; returns the rank.
int row_reduce(RationalMatrix& a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    const Rational inv = 1 / a[rank][c];
    for (auto& v : a[rank]) v *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational factor = a[r][c];
      for (int k = 0; k < cols; ++k) a[r][k] -= factor * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

RationalMatrix inverse(const std::vector<std::vector<Integer>>& m) {
  const int n = static_cast<int>(m.size());
  RationalMatrix aug(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = Rational(m[i][j]);
    aug[i][n + i] = 1;
  }
  if (row_reduce(aug) < n) throw Error(ErrorKind::RankDeficient, "Gram matrix is singular");
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

}  // namespace

FrameMatrix::FrameMatrix(std::vector<std::vector<long>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorKind::InvalidArgument, "frame matrix has no rows");
  cols_ = static_cast<int>(rows_[0].size());
  if (cols_ == 0) throw Error(ErrorKind::InvalidArgument, "frame matrix has no columns");
  for (const auto& r : rows_)
    if (static_cast<int>(r.size()) != cols_) throw Error(ErrorKind::InvalidArgument, "frame matrix rows differ in length");
}

int FrameMatrix::rank() const {
  RationalMatrix a(rows_.size(), std::vector<Rational>(static_cast<std::size_t>(cols_)));
  for (std::size_t j = 0; j < rows_.size(); ++j)
    for (int i = 0; i < cols_; ++i) a[j][i] = Rational(rows_[j][i]);
  return row_reduce(a);
}

FourierImmersion clifford(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "clifford torus needs m ≥ 1");
  std::vector<std::vector<long>> rows(static_cast<std::size_t>(m), std::vector<long>(static_cast<std::size_t>(m), 0));
  for (int i = 0; i < m; ++i) rows[i][i] = 1;
  return subtorus_immersion(FrameMatrix(std::move(rows)));
}

FourierImmersion subtorus_immersion(const FrameMatrix& B) {
  const int m = B.rows();
  const int n = B.cols();
  if (B.rank() < n) throw Error(ErrorKind::RankDeficient, "frame matrix rank is below " + std::to_string(n));
  std::vector<FourierTerm> terms;
  terms.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    FourierTerm t;
    t.k.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t.k[i] = static_cast<int>(B(j, i));
    t.a = Eigen::VectorXd::Unit(2 * m, 2 * j);
    t.b = Eigen::VectorXd::Unit(2 * m, 2 * j + 1);
    terms.push_back(std::move(t));
  }
  return FourierImmersion(Signature(n, 2 * m), std::move(terms), 1.0 / std::sqrt(double(m)),
                          Eigen::VectorXd::Zero(2 * m));
}

Rational optimal_K2(int n) { return Rational(3 * n, n + 2); }

DesignReport validate_design(const FrameMatrix& B) {
  const int m = B.rows();
  const int n = B.cols();
  if (B.rank() < n) throw Error(ErrorKind::RankDeficient, "frame matrix rank is below " + std::to_string(n));

  DesignReport report;
  report.m = m;
  report.n = n;
  report.gram.assign(n, std::vector<Integer>(n, Integer(0)));
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) report.gram[a][b] += Integer(B(j, a)) * Integer(B(j, b));

  // Q(v) = Σ_j (b_j·v)⁴ and P(v) = (vᵀGv)².
  Polynomial Q(n);
  for (int j = 0; j < m; ++j) {
    std::vector<Integer> row(n);
    for (int i = 0; i < n; ++i) row[i] = B(j, i);
    const Polynomial lin = Polynomial::linear(row);
    const Polynomial sq = lin * lin;
    Q += sq * sq;
  }
  Polynomial form(n);
  for (int a = 0; a < n; ++a) {
    std::vector<Integer> row(report.gram[a].begin(), report.gram[a].end());
    std::vector<Integer> unit(n, Integer(0));
    unit[a] = 1;
    form += Polynomial::linear(unit) * Polynomial::linear(row);
  }
  const Polynomial P = form * form;

  Exponent e1(n, 0);
  e1[0] = 4;
  const Rational c = Rational(Q.coefficient(e1)) / Rational(P.coefficient(e1));
  bool proportional = true;
  for (const auto& [e, coeff] : P.terms())
    if (Rational(Q.coefficient(e)) != c * Rational(coeff)) proportional = false;
  for (const auto& [e, coeff] : Q.terms())
    if (P.coefficient(e) == 0 && coeff != 0) proportional = false;

  const RationalMatrix ginv = inverse(report.gram);
  report.row_weights.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    Rational w = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) w += Rational(B(j, a)) * ginv[a][b] * Rational(B(j, b));
    report.row_weights.push_back(w);
  }

  report.is_constant_curvature = proportional;
  if (proportional) {
    report.c = c;
    report.K2 = c * m;
    report.K = std::sqrt(static_cast<double>(*report.K2));
    bool equal_weights = true;
    for (const auto& w : report.row_weights) equal_weights = equal_weights && w == report.row_weights.front();
    report.is_optimal = equal_weights;
  }
  return report;
}

FrameMatrix builtin_design(std::string_view name) {
  if (name == "circle1") return FrameMatrix(std::vector<std::vector<long>>{{1}});
  if (name == "hex2") return FrameMatrix({{1, 0}, {0, 1}, {1, 1}});
  if (name == "d4") {
    std::vector<std::vector<long>> rows;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (long s : {1L, -1L}) {
          std::vector<long> r(4, 0);
          r[i] = 1;
          r[j] = s;
          rows.push_back(r);
        }
    return FrameMatrix(std::move(rows));
  }
  if (name == "axdiag3") {
    std::vector<std::vector<long>> rows;
    for (int i = 0; i < 3; ++i)
      for (int copy = 0; copy < 8; ++copy) {
        std::vector<long> r(3, 0);
        r[i] = 1;
        rows.push_back(r);
      }
    for (long s2 : {1L, -1L})
      for (long s3 : {1L, -1L}) rows.push_back({1, s2, s3});
    return FrameMatrix(std::move(rows));
  }
  throw Error(ErrorKind::UnknownDesign, std::string(name));
}

std::vector<std::string> builtin_design_names() { return {"circle1", "hex2", "d4", "axdiag3"}; }

std::string to_fraction(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace ntorus
