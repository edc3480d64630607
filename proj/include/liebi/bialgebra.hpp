#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "liebi/error.hpp"
#include "liebi/lie_core.hpp"
#include "liebi/report.hpp"
#include "liebi/torus_weight.hpp"

namespace liebi {

/// ad2_x(eta) for a bivector stored as an antisymmetric matrix.
inline Mat ad2(const Mat& ad_x, const Mat& eta) { return ad_x * eta + eta * ad_x.transpose(); }

/// Ad2(g)(eta) with Ad(g) given as a matrix.
inline Mat Ad2(const Mat& Ad_g, const Mat& eta) { return Ad_g * eta * Ad_g.transpose(); }

/// Lie bialgebra (g, delta). delta(b_i) = sum_{a,b} d(i,a,b) b_a (x) b_b with
/// d antisymmetric in (a,b); the dual bracket is [b^a, b^b] = sum_i d(i,a,b) b^i.
class Bialgebra {
 public:
  Bialgebra(AlgebraPtr g, std::vector<cplx> delta) : g_(std::move(g)), d_(std::move(delta)) {
    if (!g_) throw StructuralError("bialgebra without algebra");
    const std::size_t n = g_->dim();
    if (d_.size() != n * n * n) throw StructuralError("cobracket tensor must have dim^3 entries");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          cplx& v = d_[(i * n + a) * n + b];
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw StructuralError("cobracket entries must be finite");
          if (g_->field() == Field::real) {
            if (std::abs(v.imag()) > 1e-14 * std::max(1.0, std::abs(v.real())))
              throw StructuralError("real bialgebra has a non-real cobracket entry");
            v.imag(0.0);
          }
        }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (d(i, a, b) + d(i, b, a) != cplx(0.0))
            throw StructuralError("cobracket is not antisymmetric");
    std::vector<cplx> cb(n * n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < n; ++i) cb[(a * n + b) * n + i] = d(i, a, b);
    std::vector<std::string> labels;
    for (const auto& l : g_->labels()) labels.push_back(l + "*");
    std::optional<Truncation> tr;
    if (g_->truncation()) {
      tr = g_->truncation();
      for (int& deg : tr->degree) deg = -deg;
    }
    b_ = share(LieAlgebra(n, g_->field(), std::move(labels), std::move(cb), std::nullopt, std::move(tr)));
  }

  static Bialgebra zero(AlgebraPtr g) {
    const std::size_t n = g->dim();
    return Bialgebra(std::move(g), std::vector<cplx>(n * n * n, cplx(0.0)));
  }

  const AlgebraPtr& g() const { return g_; }
  const AlgebraPtr& b() const { return b_; }
  std::size_t dim() const { return g_->dim(); }
  const std::vector<cplx>& delta() const { return d_; }
  cplx d(std::size_t i, std::size_t a, std::size_t b) const { return d_[(i * dim() + a) * dim() + b]; }

  /// delta(x) as an antisymmetric matrix.
  Mat cobracket(const Vec& x) const {
    g_->check_length(x);
    const auto n = static_cast<Eigen::Index>(dim());
    Mat m = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (x[i] == cplx(0.0)) continue;
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) m(a, b) += x[i] * d(i, a, b);
    }
    return m;
  }

  Mat cobracket_basis(std::size_t i) const {
    Vec e = Vec::Zero(static_cast<Eigen::Index>(dim()));
    e[static_cast<Eigen::Index>(i)] = 1.0;
    return cobracket(e);
  }

 private:
  AlgebraPtr g_;
  std::vector<cplx> d_;
  AlgebraPtr b_;
};

/// Cobracket of the coboundary delta_r(x) = ad2_x(r).
inline std::vector<cplx> coboundary(const LieAlgebra& g, const Mat& r) {
  const std::size_t n = g.dim();
  if (r.rows() != static_cast<Eigen::Index>(n) || r.cols() != static_cast<Eigen::Index>(n))
    throw StructuralError("r must be dim x dim");
  const Mat ra = 0.5 * (r - r.transpose());
  std::vector<cplx> d(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Mat m = ad2(g.ad_basis(i), ra);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        d[(i * n + a) * n + b] = a < b ? m(a, b) : (a == b ? cplx(0.0) : -m(b, a));
  }
  return d;
}

/// max over basis pairs of |delta([x,y]) - ad2_x delta(y) + ad2_y delta(x)|.
/// On truncations, entries whose expansion passes through a degree outside
/// the truncation are skipped and counted in the notes.
inline CheckReport check_cocycle(const Bialgebra& bi, double tol = 1e-10) {
  const LieAlgebra& g = *bi.g();
  const std::size_t n = g.dim();
  const auto& tr = g.truncation();
  std::size_t skipped = 0;
  auto usable = [&](std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
    if (!tr) return true;
    const auto& dg = tr->degree;
    return tr->in_range(dg[i] + dg[j]) && tr->in_range(dg[a] - dg[i]) && tr->in_range(dg[a] - dg[j]) &&
           tr->in_range(dg[b] - dg[i]) && tr->in_range(dg[b] - dg[j]);
  };
  std::vector<Mat> ads, ds;
  for (std::size_t i = 0; i < n; ++i) {
    ads.push_back(g.ad_basis(i));
    ds.push_back(bi.cobracket_basis(i));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec br = Vec::Zero(static_cast<Eigen::Index>(n));
      for (std::size_t k = 0; k < n; ++k) br[k] = g.c(i, j, k);
      const Mat res = bi.cobracket(br) - ad2(ads[i], ds[j]) + ad2(ads[j], ds[i]);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (!usable(i, j, a, b)) {
            ++skipped;
            continue;
          }
          worst = std::max(worst, std::abs(res(a, b)));
        }
    }
  CheckReport r;
  r.check = "cocycle";
  r.tol = tol;
  r.residuals["cocycle"] = worst;
  if (skipped) r.notes["entries_skipped"] = std::to_string(skipped);
  r.pass = worst <= tol;
  return r;
}

struct DualBracket {
  AlgebraPtr algebra;
  CheckReport jacobi;
};

inline DualBracket dual_bracket(const Bialgebra& bi, double tol = 1e-10) {
  CheckReport j = check_jacobi(*bi.b(), tol);
  j.check = "co_jacobi";
  return DualBracket{bi.b(), j};
}

struct FromManin {
  Bialgebra bialgebra;
  /// Basis of p2 dual to p1 under the pairing, as columns in double coordinates.
  Mat dual_basis;
  /// Bracket of p2 expressed in the dual basis.
  AlgebraPtr p2_algebra;
  double cross_gram_sigma_min = 0.0;
  double cross_gram_condition = 0.0;
  CheckReport closure;
};

inline FromManin from_manin(const ManinTriple& t, std::vector<std::string> labels = {}, double tol = 1e-10) {
  const LieAlgebra& dbl = *t.double_algebra;
  const Eigen::Index d = t.p1.cols();
  if (t.p2.cols() != d || 2 * d != static_cast<Eigen::Index>(dbl.dim()))
    throw StructuralError("p1 and p2 must each have half the double's dimension");
  const Mat cross = t.p1.transpose() * t.pairing * t.p2;
  Eigen::JacobiSVD<Mat> svd(cross);
  const double smax = svd.singularValues().maxCoeff();
  const double smin = svd.singularValues().minCoeff();
  if (!(smin > 1e-12 * std::max(1.0, smax)))
    throw RefusedError("cross pairing between p1 and p2 is degenerate (sigma_min " + std::to_string(smin) + ")");
  const Mat q = t.p2 * cross.fullPivLu().inverse();

  CheckReport closure;
  closure.check = "subalgebra_closure";
  closure.tol = tol;
  double res1 = 0.0, res2 = 0.0;
  const auto qr1 = t.p1.colPivHouseholderQr();
  const auto qr2 = q.colPivHouseholderQr();
  const std::size_t n = static_cast<std::size_t>(d);
  std::vector<cplx> cg(n * n * n, cplx(0.0)), cb(n * n * n, cplx(0.0)), delta(n * n * n, cplx(0.0));
  const Field field = dbl.field();
  auto clean = [field](cplx v) {
    if (field == Field::real) v.imag(0.0);
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec b1 = dbl.bracket(t.p1.col(i), t.p1.col(j));
      const Vec x1 = qr1.solve(b1);
      res1 = std::max(res1, (t.p1 * x1 - b1).norm());
      const Vec b2 = dbl.bracket(q.col(i), q.col(j));
      const Vec x2 = qr2.solve(b2);
      res2 = std::max(res2, (q * x2 - b2).norm());
      const Vec pb = t.p1.transpose() * t.pairing * b2;
      for (std::size_t k = 0; k < n; ++k) {
        cg[(i * n + j) * n + k] = clean(x1[k]);
        cg[(j * n + i) * n + k] = -clean(x1[k]);
        cb[(i * n + j) * n + k] = clean(x2[k]);
        cb[(j * n + i) * n + k] = -clean(x2[k]);
        delta[(k * n + i) * n + j] = clean(pb[k]);
        delta[(k * n + j) * n + i] = -clean(pb[k]);
      }
    }
  closure.residuals["closure_p1"] = res1;
  closure.residuals["closure_p2"] = res2;
  closure.pass = res1 <= tol && res2 <= tol;
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  if (labels.size() != n) throw StructuralError("label count does not match p1 dimension");
  std::vector<std::string> blabels;
  for (const auto& l : labels) blabels.push_back(l + "*");
  std::optional<Truncation> tr;
  if (dbl.truncation()) {
    // Each p1 column must sit in a single degree for the truncation to carry over.
    Truncation t1;
    t1.bound = dbl.truncation()->bound;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      std::optional<int> deg;
      for (std::size_t r = 0; r < dbl.dim(); ++r) {
        if (t.p1(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) == cplx(0.0)) continue;
        const int dr = dbl.truncation()->degree[r];
        if (deg && *deg != dr) ok = false;
        deg = dr;
      }
      t1.degree.push_back(deg.value_or(0));
    }
    if (ok) tr = t1;
  }
  std::optional<Truncation> trb;
  if (tr) {
    trb = tr;
    for (int& deg : trb->degree) deg = -deg;
  }
  AlgebraPtr g = share(LieAlgebra(n, field, labels, std::move(cg), std::nullopt, tr));
  AlgebraPtr b = share(LieAlgebra(n, field, std::move(blabels), std::move(cb), std::nullopt, std::move(trb)));
  return FromManin{Bialgebra(g, std::move(delta)), q, b, smin, smax / smin, closure};
}

struct ToManin {
  ManinTriple triple;
  CheckReport jacobi;
};

/// Double g + g* with [(x,a),(y,b)] = ([x,y] + ad*_b x - ad*_a y, [a,b] + ad*_y a - ad*_x b)
/// and pairing <x,b> + <y,a>.
inline ToManin to_manin(const Bialgebra& bi, double tol = 1e-10) {
  const LieAlgebra& g = *bi.g();
  const std::size_t n = g.dim(), D = 2 * n;
  std::vector<cplx> c(D * D * D, cplx(0.0));
  auto set = [&](std::size_t u, std::size_t v, std::size_t w, cplx val) {
    c[(u * D + v) * D + w] += val;
    c[(v * D + u) * D + w] -= val;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (g.c(i, j, k) != cplx(0.0)) set(i, j, k, g.c(i, j, k));
        if (bi.d(k, i, j) != cplx(0.0)) set(n + i, n + j, n + k, bi.d(k, i, j));
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t k = 0; k < n; ++k) {
        if (bi.d(i, a, k) != cplx(0.0)) set(i, n + a, k, bi.d(i, a, k));
        if (g.c(i, k, a) != cplx(0.0)) set(i, n + a, n + k, -g.c(i, k, a));
      }
  std::vector<std::string> labels = g.labels();
  for (const auto& l : g.labels()) labels.push_back(l + "*");
  const auto N = static_cast<Eigen::Index>(n);
  Mat pairing = Mat::Zero(2 * N, 2 * N);
  pairing.topRightCorner(N, N) = Mat::Identity(N, N);
  pairing.bottomLeftCorner(N, N) = Mat::Identity(N, N);
  AlgebraPtr dbl = share(LieAlgebra(D, g.field(), std::move(labels), std::move(c), pairing));
  Mat p1 = Mat::Zero(2 * N, N), p2 = Mat::Zero(2 * N, N);
  p1.topRows(N) = Mat::Identity(N, N);
  p2.bottomRows(N) = Mat::Identity(N, N);
  return ToManin{ManinTriple{dbl, p1, p2, pairing}, check_jacobi(*dbl, tol)};
}

/// Compares two Manin triples through a linear map T from the first double's
/// coordinates to the second's.
inline CheckReport double_isomorphism_residual(const ManinTriple& from, const ManinTriple& to, const Mat& T,
                                               double tol = 1e-10) {
  const LieAlgebra& a = *from.double_algebra;
  const LieAlgebra& b = *to.double_algebra;
  if (T.rows() != static_cast<Eigen::Index>(b.dim()) || T.cols() != static_cast<Eigen::Index>(a.dim()))
    throw StructuralError("identification map has the wrong shape");
  double br = 0.0;
  for (std::size_t u = 0; u < a.dim(); ++u)
    for (std::size_t v = u + 1; v < a.dim(); ++v) {
      Vec e = Vec::Zero(static_cast<Eigen::Index>(a.dim())), f = e;
      e[u] = 1.0;
      f[v] = 1.0;
      br = std::max(br, (T * a.bracket(e, f) - b.bracket(T.col(u), T.col(v))).norm());
    }
  double p1 = 0.0, p2 = 0.0;
  for (Eigen::Index j = 0; j < from.p1.cols(); ++j) p1 = std::max(p1, span_residual(to.p1, T * from.p1.col(j)));
  for (Eigen::Index j = 0; j < from.p2.cols(); ++j) p2 = std::max(p2, span_residual(to.p2, T * from.p2.col(j)));
  CheckReport r;
  r.check = "double_isomorphism";
  r.tol = tol;
  r.residuals["bracket"] = br;
  r.residuals["pairing"] = (T.transpose() * to.pairing * T - from.pairing).cwiseAbs().maxCoeff();
  r.residuals["p1"] = p1;
  r.residuals["p2"] = p2;
  r.pass = br <= tol && r.residuals["pairing"] <= tol && p1 <= tol && p2 <= tol;
  return r;
}

/// phi maps coordinates of src.g to coordinates of dst.g.
inline CheckReport morphism_check(const Bialgebra& src, const Bialgebra& dst, const Mat& phi, double tol = 1e-10) {
  const LieAlgebra& g1 = *src.g();
  const LieAlgebra& g2 = *dst.g();
  if (phi.rows() != static_cast<Eigen::Index>(g2.dim()) || phi.cols() != static_cast<Eigen::Index>(g1.dim()))
    throw StructuralError("morphism matrix has the wrong shape");
  CheckReport r;
  r.check = "morphism";
  r.tol = tol;
  double hom = 0.0;
  for (std::size_t i = 0; i < g1.dim(); ++i)
    for (std::size_t j = i + 1; j < g1.dim(); ++j) {
      Vec br = Vec::Zero(static_cast<Eigen::Index>(g1.dim()));
      for (std::size_t k = 0; k < g1.dim(); ++k) br[k] = g1.c(i, j, k);
      hom = std::max(hom, (phi * br - g2.bracket(phi.col(i), phi.col(j))).norm());
    }
  r.residuals["homomorphism"] = hom;
  if (hom > tol) {
    r.notes["compatibility"] = "not evaluated: phi is not a Lie homomorphism";
    r.pass = false;
    return r;
  }
  double comp = 0.0;
  for (std::size_t i = 0; i < g1.dim(); ++i)
    comp = std::max(comp, (dst.cobracket(phi.col(i)) - phi * src.cobracket_basis(i) * phi.transpose())
                              .cwiseAbs()
                              .maxCoeff());
  r.residuals["compatibility"] = comp;
  r.pass = comp <= tol;
  return r;
}

}  // namespace liebi
