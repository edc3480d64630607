#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "liebi/error.hpp"
#include "liebi/report.hpp"

namespace liebi {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

enum class Field { real, complex };

inline const char* to_string(Field f) { return f == Field::real ? "real" : "complex"; }

inline Field field_from_string(const std::string& s) {
  if (s == "real") return Field::real;
  if (s == "complex") return Field::complex;
  throw StructuralError("unknown field '" + s + "'");
}

/// Degrees of a finite truncation of a graded algebra. Brackets landing
/// outside [-bound, bound] were dropped when the truncation was built.
struct Truncation {
  std::vector<int> degree;
  int bound = 0;
  bool in_range(int d) const { return d >= -bound && d <= bound; }
};

/// Finite-dimensional Lie algebra given by structure constants
/// [b_i, b_j] = sum_k c(i,j,k) b_k.
class LieAlgebra {
 public:
  LieAlgebra(std::size_t dim, Field field, std::vector<std::string> labels,
             std::vector<cplx> structure, std::optional<Mat> form = std::nullopt,
             std::optional<Truncation> truncation = std::nullopt)
      : dim_(dim),
        field_(field),
        labels_(std::move(labels)),
        c_(std::move(structure)),
        form_(std::move(form)),
        truncation_(std::move(truncation)) {
    if (dim_ == 0) throw StructuralError("Lie algebra dimension must be positive");
    if (labels_.empty())
      for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("b" + std::to_string(i));
    if (labels_.size() != dim_) throw StructuralError("label count does not match dimension");
    if (c_.size() != dim_ * dim_ * dim_)
      throw StructuralError("structure tensor must have dim^3 entries");
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
          const cplx v = c(i, j, k);
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw StructuralError("structure constants must be finite");
          if (v + c(j, i, k) != cplx(0.0))
            throw StructuralError("structure constants are not antisymmetric at (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
          if (field_ == Field::real && v.imag() != 0.0)
            throw StructuralError("real Lie algebra has a non-real structure constant");
        }
    if (form_) {
      const Mat& f = *form_;
      if (f.rows() != static_cast<Eigen::Index>(dim_) || f.cols() != static_cast<Eigen::Index>(dim_))
        throw StructuralError("invariant form must be dim x dim");
      if (!f.allFinite()) throw StructuralError("invariant form must be finite");
      const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
      if ((f - f.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw StructuralError("invariant form must be symmetric");
    }
    if (truncation_ && truncation_->degree.size() != dim_)
      throw StructuralError("truncation degrees do not match dimension");
  }

  /// Builds the tensor from entries with i < j; the rest follows by antisymmetry.
  static LieAlgebra from_brackets(std::size_t dim, Field field, std::vector<std::string> labels,
                                  const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, cplx>>& entries,
                                  std::optional<Mat> form = std::nullopt) {
    std::vector<cplx> c(dim * dim * dim, cplx(0.0));
    for (const auto& [i, j, k, v] : entries) {
      if (i >= dim || j >= dim || k >= dim) throw StructuralError("bracket entry index out of range");
      if (i == j) throw StructuralError("bracket entry with i == j");
      c[(i * dim + j) * dim + k] = v;
      c[(j * dim + i) * dim + k] = -v;
    }
    return LieAlgebra(dim, field, std::move(labels), std::move(c), std::move(form));
  }

  static LieAlgebra abelian(std::size_t dim, Field field = Field::real,
                            std::vector<std::string> labels = {}) {
    return LieAlgebra(dim, field, std::move(labels), std::vector<cplx>(dim * dim * dim, cplx(0.0)));
  }

  std::size_t dim() const { return dim_; }
  Field field() const { return field_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<cplx>& structure() const { return c_; }
  const std::optional<Mat>& form() const { return form_; }
  const std::optional<Truncation>& truncation() const { return truncation_; }

  cplx c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

  LieAlgebra with_form(Mat form) const {
    return LieAlgebra(dim_, field_, labels_, c_, std::move(form), truncation_);
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    check_length(x);
    check_length(y);
    Vec out = Vec::Zero(static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == cplx(0.0)) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j] == cplx(0.0) || i == j) continue;
        const cplx xy = x[i] * y[j];
        const cplx* row = &c_[(i * dim_ + j) * dim_];
        for (std::size_t k = 0; k < dim_; ++k) out[k] += xy * row[k];
      }
    }
    return out;
  }

  /// Matrix of y -> [x, y].
  Mat ad(const Vec& x) const {
    check_length(x);
    const auto d = static_cast<Eigen::Index>(dim_);
    Mat a = Mat::Zero(d, d);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == cplx(0.0)) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) a(k, j) += x[i] * c(i, j, k);
    }
    return a;
  }

  Mat ad_basis(std::size_t i) const {
    Vec e = Vec::Zero(static_cast<Eigen::Index>(dim_));
    e[i] = 1.0;
    return ad(e);
  }

  void check_length(const Vec& x) const {
    if (x.size() != static_cast<Eigen::Index>(dim_))
      throw StructuralError("coordinate vector length " + std::to_string(x.size()) +
                            " does not match dimension " + std::to_string(dim_));
  }

 private:
  std::size_t dim_;
  Field field_;
  std::vector<std::string> labels_;
  std::vector<cplx> c_;
  std::optional<Mat> form_;
  std::optional<Truncation> truncation_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

inline AlgebraPtr share(LieAlgebra g) { return std::make_shared<const LieAlgebra>(std::move(g)); }

/// Coordinates tied to a specific algebra.
struct Element {
  AlgebraPtr algebra;
  Vec coords;
};

inline Element make_element(AlgebraPtr g, Vec coords) {
  if (!g) throw StructuralError("element without algebra");
  g->check_length(coords);
  if (!coords.allFinite()) throw StructuralError("element coordinates must be finite");
  return Element{std::move(g), std::move(coords)};
}

inline Element basis_element(AlgebraPtr g, std::size_t i) {
  if (!g || i >= g->dim()) throw StructuralError("basis index out of range");
  Vec e = Vec::Zero(static_cast<Eigen::Index>(g->dim()));
  e[static_cast<Eigen::Index>(i)] = 1.0;
  return Element{std::move(g), std::move(e)};
}

inline void require_same_algebra(const Element& x, const Element& y) {
  if (!x.algebra || !y.algebra) throw StructuralError("element without algebra");
  if (x.algebra != y.algebra) throw StructuralError("elements belong to different algebras");
}

inline Element bracket(const Element& x, const Element& y) {
  require_same_algebra(x, y);
  return Element{x.algebra, x.algebra->bracket(x.coords, y.coords)};
}

inline Mat ad(const Element& x) { return x.algebra->ad(x.coords); }

/// Coadjoint matrix on dual coordinates, (ad*_x f)(y) = f([x, y]).
inline Mat coad(const Element& x) { return x.algebra->ad(x.coords).transpose(); }

inline Mat killing_form(const LieAlgebra& g) {
  const auto d = static_cast<Eigen::Index>(g.dim());
  std::vector<Mat> ads;
  ads.reserve(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) ads.push_back(g.ad_basis(i));
  Mat k(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) k(i, j) = (ads[i] * ads[j]).trace();
  return k;
}

/// Jacobiator vector of three basis elements.
inline Vec jacobiator(const LieAlgebra& g, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t d = g.dim();
  Vec out = Vec::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t l = 0; l < d; ++l) {
    const cplx a = g.c(i, j, l), b = g.c(j, k, l), c = g.c(k, i, l);
    if (a == cplx(0.0) && b == cplx(0.0) && c == cplx(0.0)) continue;
    for (std::size_t m = 0; m < d; ++m) out[m] += a * g.c(l, k, m) + b * g.c(l, i, m) + c * g.c(l, j, m);
  }
  return out;
}

/// Maximum Jacobiator norm over basis triples. Triples whose intermediate
/// brackets leave a truncation are skipped and counted in the notes.
inline CheckReport check_jacobi(const LieAlgebra& g, double tol = 1e-10) {
  CheckReport r;
  r.check = "jacobi";
  r.tol = tol;
  double worst = 0.0;
  std::size_t checked = 0, skipped = 0;
  const auto& tr = g.truncation();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j)
      for (std::size_t k = j + 1; k < g.dim(); ++k) {
        if (tr) {
          const int di = tr->degree[i], dj = tr->degree[j], dk = tr->degree[k];
          if (!tr->in_range(di + dj) || !tr->in_range(dj + dk) || !tr->in_range(dk + di)) {
            ++skipped;
            continue;
          }
        }
        ++checked;
        worst = std::max(worst, jacobiator(g, i, j, k).norm());
      }
  r.residuals["jacobi"] = worst;
  r.notes["triples_checked"] = std::to_string(checked);
  if (skipped) r.notes["triples_skipped"] = std::to_string(skipped);
  r.pass = worst <= tol;
  return r;
}

/// max |F([x,y],z) + F(y,[x,z])| over basis triples.
inline CheckReport check_form_invariance(const LieAlgebra& g, const Mat& form, double tol = 1e-10) {
  const auto d = static_cast<Eigen::Index>(g.dim());
  if (form.rows() != d || form.cols() != d) throw StructuralError("form must be dim x dim");
  CheckReport r;
  r.check = "form_invariance";
  r.tol = tol;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const Mat a = g.ad_basis(i);
    worst = std::max(worst, (a.transpose() * form + form * a).cwiseAbs().maxCoeff());
  }
  r.residuals["invariance"] = worst;
  r.residuals["symmetry"] = (form - form.transpose()).cwiseAbs().maxCoeff();
  r.pass = worst <= tol && r.residuals["symmetry"] <= tol;
  return r;
}

inline LieAlgebra direct_sum(const LieAlgebra& g1, const LieAlgebra& g2) {
  if (g1.field() != g2.field()) throw StructuralError("direct sum of algebras over different fields");
  const std::size_t d1 = g1.dim(), d2 = g2.dim(), d = d1 + d2;
  std::vector<cplx> c(d * d * d, cplx(0.0));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t k = 0; k < d1; ++k) c[(i * d + j) * d + k] = g1.c(i, j, k);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t k = 0; k < d2; ++k) c[((d1 + i) * d + d1 + j) * d + d1 + k] = g2.c(i, j, k);
  std::vector<std::string> labels;
  for (const auto& l : g1.labels()) labels.push_back(l + ".1");
  for (const auto& l : g2.labels()) labels.push_back(l + ".2");
  std::optional<Mat> form;
  if (g1.form() && g2.form()) {
    Mat f = Mat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    f.topLeftCorner(d1, d1) = *g1.form();
    f.bottomRightCorner(d2, d2) = *g2.form();
    form = f;
  }
  std::optional<Truncation> tr;
  if (g1.truncation() || g2.truncation()) {
    Truncation t;
    t.bound = std::max(g1.truncation() ? g1.truncation()->bound : 0,
                       g2.truncation() ? g2.truncation()->bound : 0);
    for (std::size_t i = 0; i < d1; ++i) t.degree.push_back(g1.truncation() ? g1.truncation()->degree[i] : 0);
    for (std::size_t i = 0; i < d2; ++i) t.degree.push_back(g2.truncation() ? g2.truncation()->degree[i] : 0);
    tr = t;
  }
  return LieAlgebra(d, g1.field(), std::move(labels), std::move(c), std::move(form), std::move(tr));
}

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// Linear coordinate extraction against a list of matrices.
class MatrixBasis {
 public:
  explicit MatrixBasis(std::vector<Mat> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) throw StructuralError("empty matrix basis");
    n_ = basis_.front().rows();
    for (const auto& b : basis_)
      if (b.rows() != n_ || b.cols() != n_ || !b.allFinite())
        throw StructuralError("matrix basis entries must be finite n x n matrices of equal size");
    const auto d = static_cast<Eigen::Index>(basis_.size());
    Mat v(n_ * n_, d);
    for (Eigen::Index j = 0; j < d; ++j) v.col(j) = Eigen::Map<const Vec>(basis_[j].data(), n_ * n_);
    Eigen::JacobiSVD<Mat> svd(v);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) < 1e-10 * std::max(1.0, s(0)))
      throw StructuralError("matrix basis is linearly dependent");
    vec_ = v;
    qr_ = v.colPivHouseholderQr();
  }

  Eigen::Index n() const { return n_; }
  std::size_t size() const { return basis_.size(); }
  const Mat& operator[](std::size_t i) const { return basis_[i]; }
  const std::vector<Mat>& basis() const { return basis_; }

  Mat matrix(const Vec& coords) const {
    if (coords.size() != static_cast<Eigen::Index>(basis_.size()))
      throw StructuralError("coordinate length does not match matrix basis");
    Mat m = Mat::Zero(n_, n_);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (coords[i] != cplx(0.0)) m += coords[i] * basis_[i];
    return m;
  }

  /// Least-squares coordinates; residual receives the distance to the span.
  Vec coords(const Mat& m, double* residual = nullptr) const {
    if (m.rows() != n_ || m.cols() != n_) throw StructuralError("matrix size does not match basis");
    const Vec flat = Eigen::Map<const Vec>(m.data(), n_ * n_);
    Vec x = qr_.solve(flat);
    if (residual) *residual = (vec_ * x - flat).norm();
    return x;
  }

 private:
  std::vector<Mat> basis_;
  Eigen::Index n_ = 0;
  Mat vec_;
  Eigen::ColPivHouseholderQR<Mat> qr_;
};

/// Structure constants from a commutator-closed list of matrices.
inline LieAlgebra algebra_from_matrices(const std::vector<Mat>& matrices, std::vector<std::string> labels,
                                        Field field, std::optional<Mat> form = std::nullopt) {
  MatrixBasis mb(matrices);
  const std::size_t d = matrices.size();
  std::vector<cplx> c(d * d * d, cplx(0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Mat br = commutator(matrices[i], matrices[j]);
      double res = 0.0;
      Vec x = mb.coords(br, &res);
      if (res > 1e-9 * std::max(1.0, br.norm()))
        throw StructuralError("matrix basis is not closed under the commutator");
      for (std::size_t k = 0; k < d; ++k) {
        cplx v = x[k];
        if (std::abs(v.real()) < 1e-14) v.real(0.0);
        if (std::abs(v.imag()) < 1e-14) v.imag(0.0);
        if (field == Field::real) {
          if (std::abs(v.imag()) > 1e-12)
            throw StructuralError("matrix basis does not span a real Lie algebra");
          v.imag(0.0);
        }
        c[(i * d + j) * d + k] = v;
        c[(j * d + i) * d + k] = -v;
      }
    }
  return LieAlgebra(d, field, std::move(labels), std::move(c), std::move(form));
}

/// Faithful matrix realization of a Lie algebra, consistent with its bracket.
class MatrixRealization {
 public:
  MatrixRealization(AlgebraPtr g, std::vector<Mat> basis, double tol = 1e-9)
      : g_(std::move(g)), basis_(std::move(basis)) {
    if (!g_) throw StructuralError("realization without algebra");
    if (basis_.size() != g_->dim()) throw StructuralError("realization size does not match algebra dimension");
    const std::size_t d = g_->dim();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        Mat expect = Mat::Zero(basis_.n(), basis_.n());
        for (std::size_t k = 0; k < d; ++k) expect += g_->c(i, j, k) * basis_[k];
        const Mat br = commutator(basis_[i], basis_[j]);
        if ((br - expect).norm() > tol * std::max(1.0, br.norm()))
          throw StructuralError("realization is inconsistent with the structure constants at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }

  const AlgebraPtr& algebra() const { return g_; }
  Eigen::Index n() const { return basis_.n(); }
  std::size_t dim() const { return basis_.size(); }
  const Mat& basis(std::size_t i) const { return basis_[i]; }
  const std::vector<Mat>& basis() const { return basis_.basis(); }
  Mat matrix(const Vec& coords) const { return basis_.matrix(coords); }
  Vec coords(const Mat& m, double* residual = nullptr) const { return basis_.coords(m, residual); }

 private:
  AlgebraPtr g_;
  MatrixBasis basis_;
};

}  // namespace liebi
