#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "liebi/error.hpp"
#include "liebi/lie_core.hpp"
#include "liebi/report.hpp"

namespace liebi {

/// Integer weights of a diagonal torus action on the basis.
struct TorusWeighting {
  AlgebraPtr algebra;
  std::vector<int> weight;

  TorusWeighting(AlgebraPtr g, std::vector<int> w) : algebra(std::move(g)), weight(std::move(w)) {
    if (!algebra) throw StructuralError("weighting without algebra");
    if (weight.size() != algebra->dim()) throw StructuralError("weight count does not match dimension");
  }

  std::size_t dim() const { return weight.size(); }
};

/// Grading residual: bracket components landing outside weight w_i + w_j.
/// Zero-mode residual: brackets among weight-zero basis elements.
inline CheckReport check_weighting(const TorusWeighting& w, double tol = 1e-10) {
  const LieAlgebra& g = *w.algebra;
  double grading = 0.0, zero_mode = 0.0;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j)
      for (std::size_t k = 0; k < g.dim(); ++k) {
        const double a = std::abs(g.c(i, j, k));
        if (w.weight[k] != w.weight[i] + w.weight[j]) grading = std::max(grading, a);
        if (w.weight[i] == 0 && w.weight[j] == 0) zero_mode = std::max(zero_mode, a);
      }
  CheckReport r;
  r.check = "weighting";
  r.tol = tol;
  r.residuals["grading"] = grading;
  r.residuals["zero_mode_abelian"] = zero_mode;
  r.pass = grading <= tol && zero_mode <= tol;
  return r;
}

struct Projections {
  Mat zero, plus, minus;
};

inline Projections projections(const TorusWeighting& w) {
  const auto d = static_cast<Eigen::Index>(w.dim());
  Projections p{Mat::Zero(d, d), Mat::Zero(d, d), Mat::Zero(d, d)};
  for (Eigen::Index i = 0; i < d; ++i) {
    const int k = w.weight[static_cast<std::size_t>(i)];
    (k == 0 ? p.zero : (k > 0 ? p.plus : p.minus))(i, i) = 1.0;
  }
  return p;
}

/// Normalized trace (1/n) tr on a matrix realization.
class TraceState {
 public:
  explicit TraceState(MatrixRealization realization) : rep_(std::move(realization)) {}

  const MatrixRealization& realization() const { return rep_; }

  cplx omega(const Mat& m) const { return m.trace() / static_cast<double>(rep_.n()); }

  /// B_ij = omega(b_i b_j).
  Mat gram() const {
    const auto d = static_cast<Eigen::Index>(rep_.dim());
    Mat b(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) b(i, j) = omega(rep_.basis(i) * rep_.basis(j));
    return b;
  }

  /// Tracial, faithful on the realized span, and vanishing on nonzero weights.
  CheckReport check(const TorusWeighting& w, double tol = 1e-10) const {
    if (w.dim() != rep_.dim()) throw StructuralError("weighting and state have different dimensions");
    const auto d = static_cast<Eigen::Index>(rep_.dim());
    double tracial = 0.0, torus = 0.0;
    Mat herm(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      if (w.weight[i] != 0) torus = std::max(torus, std::abs(omega(rep_.basis(i))));
      for (Eigen::Index j = 0; j < d; ++j) {
        const Mat& a = rep_.basis(i);
        const Mat& b = rep_.basis(j);
        const cplx ab = omega(a * b);
        tracial = std::max(tracial, std::abs(ab - omega(b * a)));
        if (w.weight[i] + w.weight[j] != 0) torus = std::max(torus, std::abs(ab));
        herm(i, j) = omega(a.adjoint() * b);
      }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (herm + herm.adjoint()));
    CheckReport r;
    r.check = "trace_state";
    r.tol = tol;
    r.residuals["tracial"] = tracial;
    r.residuals["torus_invariance"] = torus;
    r.residuals["faithful_min_eigenvalue"] = es.eigenvalues().minCoeff();
    r.pass = tracial <= tol && torus <= tol && es.eigenvalues().minCoeff() > tol;
    return r;
  }

 private:
  MatrixRealization rep_;
};

/// A Lie algebra with two complementary isotropic subalgebras under a
/// nondegenerate invariant pairing. Columns of p1 and p2 are coordinates in
/// the double's basis.
struct ManinTriple {
  AlgebraPtr double_algebra;
  Mat p1;
  Mat p2;
  Mat pairing;
};

/// Distance of v from the column span of p.
inline double span_residual(const Mat& p, const Vec& v) {
  const Vec x = p.colPivHouseholderQr().solve(v);
  return (p * x - v).norm();
}

inline double min_singular_value(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().minCoeff();
}

inline CheckReport verify_manin(const ManinTriple& t, double tol = 1e-10) {
  const LieAlgebra& g = *t.double_algebra;
  const auto D = static_cast<Eigen::Index>(g.dim());
  if (t.pairing.rows() != D || t.pairing.cols() != D || t.p1.rows() != D || t.p2.rows() != D)
    throw StructuralError("Manin triple blocks do not match the double's dimension");
  CheckReport r;
  r.check = "manin";
  r.tol = tol;

  auto closure = [&](const Mat& p) {
    double worst = 0.0;
    const auto qr = p.colPivHouseholderQr();
    for (Eigen::Index i = 0; i < p.cols(); ++i)
      for (Eigen::Index j = i + 1; j < p.cols(); ++j) {
        const Vec b = g.bracket(p.col(i), p.col(j));
        worst = std::max(worst, (p * qr.solve(b) - b).norm());
      }
    return worst;
  };
  r.residuals["closure_p1"] = closure(t.p1);
  r.residuals["closure_p2"] = closure(t.p2);
  r.residuals["isotropy_p1"] = (t.p1.transpose() * t.pairing * t.p1).cwiseAbs().maxCoeff();
  r.residuals["isotropy_p2"] = (t.p2.transpose() * t.pairing * t.p2).cwiseAbs().maxCoeff();

  double inv = 0.0;
  for (std::size_t u = 0; u < g.dim(); ++u) {
    const Mat a = g.ad_basis(u);
    inv = std::max(inv, (a.transpose() * t.pairing + t.pairing * a).cwiseAbs().maxCoeff());
  }
  r.residuals["invariance"] = inv;
  r.residuals["symmetry"] = (t.pairing - t.pairing.transpose()).cwiseAbs().maxCoeff();

  Mat basis(D, t.p1.cols() + t.p2.cols());
  basis << t.p1, t.p2;
  if (basis.cols() != D) {
    r.residuals["basis_sigma_min"] = 0.0;
    r.residuals["gram_sigma_min"] = 0.0;
    r.residuals["reconstruction"] = 1.0;
    r.notes["decomposition"] = "p1 and p2 dimensions do not add up to the double's dimension";
    r.pass = false;
    return r;
  }
  r.residuals["basis_sigma_min"] = min_singular_value(basis);
  r.residuals["gram_sigma_min"] = min_singular_value(basis.transpose() * t.pairing * basis);
  const auto lu = basis.fullPivLu();
  const Mat id = Mat::Identity(D, D);
  r.residuals["reconstruction"] = (basis * lu.solve(id) - id).cwiseAbs().maxCoeff();

  r.pass = r.residuals["closure_p1"] <= tol && r.residuals["closure_p2"] <= tol &&
           r.residuals["isotropy_p1"] <= tol && r.residuals["isotropy_p2"] <= tol && inv <= tol &&
           r.residuals["symmetry"] <= tol && r.residuals["basis_sigma_min"] > tol &&
           r.residuals["gram_sigma_min"] > tol && r.residuals["reconstruction"] <= tol;
  return r;
}

/// Double g + g with pairing diag(B, -B), diagonal p1 and the weight-space p2.
inline ManinTriple build_double_manin(const TorusWeighting& w, const Mat& form, double tol = 1e-10) {
  const LieAlgebra& g = *w.algebra;
  const auto d = static_cast<Eigen::Index>(g.dim());
  if (form.rows() != d || form.cols() != d || !form.allFinite())
    throw StructuralError("pairing form must be a finite dim x dim matrix");
  const CheckReport wr = check_weighting(w, tol);
  if (wr.residual("grading") > tol)
    throw RefusedError("weights do not grade the bracket (residual " +
                       std::to_string(wr.residual("grading")) + ")");
  if (wr.residual("zero_mode_abelian") > tol)
    throw RefusedError("zero-mode subalgebra is not abelian (residual " +
                       std::to_string(wr.residual("zero_mode_abelian")) + ")");

  Mat pairing = Mat::Zero(2 * d, 2 * d);
  pairing.topLeftCorner(d, d) = form;
  pairing.bottomRightCorner(d, d) = -form;
  AlgebraPtr dbl = share(direct_sum(g.with_form(form), g.with_form(form)).with_form(pairing));

  Mat p1 = Mat::Zero(2 * d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    p1(i, i) = 1.0;
    p1(d + i, i) = 1.0;
  }
  std::vector<Vec> cols;
  for (Eigen::Index i = 0; i < d; ++i)
    if (w.weight[i] > 0) {
      Vec v = Vec::Zero(2 * d);
      v[i] = 1.0;
      cols.push_back(v);
    }
  for (Eigen::Index i = 0; i < d; ++i)
    if (w.weight[i] < 0) {
      Vec v = Vec::Zero(2 * d);
      v[d + i] = 1.0;
      cols.push_back(v);
    }
  for (Eigen::Index i = 0; i < d; ++i)
    if (w.weight[i] == 0) {
      Vec v = Vec::Zero(2 * d);
      v[i] = 1.0;
      v[d + i] = -1.0;
      cols.push_back(v);
    }
  Mat p2(2 * d, d);
  for (Eigen::Index j = 0; j < d; ++j) p2.col(j) = cols[static_cast<std::size_t>(j)];
  return ManinTriple{dbl, p1, p2, pairing};
}

inline ManinTriple build_double_manin(const TorusWeighting& w, const TraceState& state, double tol = 1e-10) {
  if (state.realization().dim() != w.dim())
    throw StructuralError("state realization does not match the weighted algebra");
  const CheckReport sr = state.check(w, tol);
  if (!sr.pass)
    throw RefusedError("state is not tracial, faithful and torus-invariant (tracial " +
                       std::to_string(sr.residual("tracial")) + ", torus " +
                       std::to_string(sr.residual("torus_invariance")) + ")");
  return build_double_manin(w, state.gram(), tol);
}

/// (u, v) = (a, a) + (x, y) with a in the diagonal and (x, y) in p2.
struct Split {
  Vec a, x, y;
};

inline Split split(const Vec& u, const Vec& v, const TorusWeighting& w) {
  w.algebra->check_length(u);
  w.algebra->check_length(v);
  const Projections p = projections(w);
  Split s;
  s.a = p.plus * v + 0.5 * (p.zero * (u + v)) + p.minus * u;
  s.x = p.plus * (u - v) + 0.5 * (p.zero * (u - v));
  s.y = 0.5 * (p.zero * (v - u)) + p.minus * (v - u);
  return s;
}

inline Split split(const Element& u, const Element& v, const TorusWeighting& w) {
  require_same_algebra(u, v);
  if (u.algebra != w.algebra) throw StructuralError("weighting belongs to a different algebra");
  return split(u.coords, v.coords, w);
}

}  // namespace liebi
