#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
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

enum class LoopKind { current, witt };

/// Loops theta -> base with the pointwise bracket (current), or the vector
/// fields f(theta) d/dtheta with [f, g] = f'g - g'f (witt).
class LoopAlgebra {
 public:
  static std::shared_ptr<const LoopAlgebra> current(AlgebraPtr base) {
    if (!base) throw StructuralError("loop algebra without base");
    return std::shared_ptr<const LoopAlgebra>(new LoopAlgebra(LoopKind::current, std::move(base)));
  }

  static std::shared_ptr<const LoopAlgebra> witt() {
    Mat form = Mat::Ones(1, 1);
    auto base = share(LieAlgebra(1, Field::complex, {"d"}, {cplx(0.0)}, form));
    return std::shared_ptr<const LoopAlgebra>(new LoopAlgebra(LoopKind::witt, std::move(base)));
  }

  LoopKind kind() const { return kind_; }
  const AlgebraPtr& base() const { return base_; }
  std::size_t dim() const { return base_->dim(); }

  /// Coefficient of mode m + n in [a e^{im theta}, b e^{in theta}].
  Vec mode_bracket(int m, const Vec& a, int n, const Vec& b) const {
    if (kind_ == LoopKind::witt) return cplx(0.0, static_cast<double>(m - n)) * (a.cwiseProduct(b));
    return base_->bracket(a, b);
  }

 private:
  LoopAlgebra(LoopKind k, AlgebraPtr base) : kind_(k), base_(std::move(base)) {}
  LoopKind kind_;
  AlgebraPtr base_;
};

using LoopAlgebraPtr = std::shared_ptr<const LoopAlgebra>;

/// Finitely supported Fourier series sum_m a_m e^{im theta}.
struct LoopElement {
  LoopAlgebraPtr algebra;
  std::map<int, Vec> modes;

  int support_bound() const {
    int b = 0;
    for (const auto& [m, v] : modes) b = std::max(b, std::abs(m));
    return b;
  }

  /// Coefficient at -m is the conjugate of the coefficient at m.
  bool is_real(double tol = 1e-14) const {
    for (const auto& [m, v] : modes) {
      auto it = modes.find(-m);
      const Vec other = it == modes.end() ? Vec::Zero(v.size()) : it->second;
      if ((v.conjugate() - other).norm() > tol) return false;
    }
    return true;
  }

  Vec coefficient(int m) const {
    auto it = modes.find(m);
    return it == modes.end() ? Vec::Zero(static_cast<Eigen::Index>(algebra->dim())) : it->second;
  }

  Vec operator()(double theta) const {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(algebra->dim()));
    for (const auto& [m, v] : modes) out += std::exp(cplx(0.0, m * theta)) * v;
    return out;
  }

  /// Termwise theta-derivative.
  LoopElement derivative() const {
    LoopElement d{algebra, {}};
    for (const auto& [m, v] : modes)
      if (m != 0) d.modes[m] = cplx(0.0, static_cast<double>(m)) * v;
    return d;
  }
};

inline LoopElement loop_element(LoopAlgebraPtr alg, std::map<int, Vec> modes) {
  if (!alg) throw StructuralError("loop element without algebra");
  for (const auto& [m, v] : modes) {
    alg->base()->check_length(v);
    if (!v.allFinite()) throw StructuralError("loop coefficients must be finite");
  }
  return LoopElement{std::move(alg), std::move(modes)};
}

inline LoopElement loop_mode(LoopAlgebraPtr alg, int m, Vec coeff) {
  std::map<int, Vec> modes;
  modes[m] = std::move(coeff);
  return loop_element(std::move(alg), std::move(modes));
}

inline LoopElement loop_bracket(const LoopElement& a, const LoopElement& b) {
  if (!a.algebra || a.algebra != b.algebra) throw StructuralError("loop elements belong to different loop algebras");
  LoopElement out{a.algebra, {}};
  for (const auto& [m, x] : a.modes)
    for (const auto& [n, y] : b.modes) {
      const Vec v = a.algebra->mode_bracket(m, x, n, y);
      auto it = out.modes.find(m + n);
      if (it == out.modes.end())
        out.modes.emplace(m + n, v);
      else
        it->second += v;
    }
  return out;
}

/// Values on the uniform grid theta_j = 2 pi j / S.
struct SampledLoop {
  std::size_t dim = 0;
  std::vector<Vec> values;

  std::size_t size() const { return values.size(); }
  static double theta(std::size_t j, std::size_t S) { return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(S); }
  int nyquist() const { return (static_cast<int>(values.size()) - 1) / 2; }
};

inline SampledLoop make_sampled_loop(std::vector<Vec> values) {
  if (values.empty()) throw StructuralError("sampled loop needs at least one sample");
  const auto d = values.front().size();
  for (const auto& v : values)
    if (v.size() != d || !v.allFinite()) throw StructuralError("samples must be finite and of equal dimension");
  return SampledLoop{static_cast<std::size_t>(d), std::move(values)};
}

inline SampledLoop sample(const LoopElement& a, std::size_t S) {
  if (S == 0) throw StructuralError("sample count must be positive");
  std::vector<Vec> v;
  v.reserve(S);
  for (std::size_t j = 0; j < S; ++j) v.push_back(a(SampledLoop::theta(j, S)));
  return make_sampled_loop(std::move(v));
}

/// Trapezoid rule for (1/2pi) int e^{-im theta} s(theta) dtheta.
inline Vec fourier_project(const SampledLoop& s, int m) {
  if (std::abs(m) > s.nyquist())
    throw RefusedError("mode " + std::to_string(m) + " exceeds the Nyquist bound " + std::to_string(s.nyquist()) +
                       " for " + std::to_string(s.size()) + " samples");
  const std::size_t S = s.size();
  Vec out = Vec::Zero(static_cast<Eigen::Index>(s.dim));
  for (std::size_t j = 0; j < S; ++j) {
    // Reduce m*j mod S so the phase stays accurate for large grids.
    const long long r = (static_cast<long long>(m) * static_cast<long long>(j)) % static_cast<long long>(S);
    out += std::exp(cplx(0.0, -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(S))) * s.values[j];
  }
  return out / static_cast<double>(S);
}

/// All coefficients with |m| <= nyquist; the even-S Nyquist mode is dropped.
inline LoopElement fourier_series(const SampledLoop& s, LoopAlgebraPtr alg = nullptr) {
  LoopElement a{std::move(alg), {}};
  for (int m = -s.nyquist(); m <= s.nyquist(); ++m) a.modes[m] = fourier_project(s, m);
  return a;
}

namespace detail {
inline std::vector<Vec> evaluate_on_grid(const std::map<int, Vec>& modes, std::size_t S, std::size_t dim) {
  std::vector<Vec> out(S, Vec::Zero(static_cast<Eigen::Index>(dim)));
  for (std::size_t j = 0; j < S; ++j)
    for (const auto& [m, v] : modes) {
      const long long r = ((static_cast<long long>(m) * static_cast<long long>(j)) % static_cast<long long>(S) + S) % S;
      out[j] += std::exp(cplx(0.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(S))) * v;
    }
  return out;
}
}  // namespace detail

/// j-th derivative of the band-limited interpolant, on the grid.
inline SampledLoop spectral_derivative(const SampledLoop& s, int order) {
  if (order < 0) throw StructuralError("derivative order must be nonnegative");
  const LoopElement a = fourier_series(s);
  std::map<int, Vec> d;
  for (const auto& [m, v] : a.modes) d[m] = std::pow(cplx(0.0, static_cast<double>(m)), order) * v;
  return make_sampled_loop(detail::evaluate_on_grid(d, s.size(), s.dim));
}

inline double grid_sup(const SampledLoop& s) {
  double sup = 0.0;
  for (const auto& v : s.values) sup = std::max(sup, v.norm());
  return sup;
}

/// max over j <= k of the grid sup of the j-th spectral derivative.
inline double seminorm(const SampledLoop& s, int k) {
  double best = 0.0;
  for (int j = 0; j <= k; ++j) best = std::max(best, grid_sup(spectral_derivative(s, j)));
  return best;
}

/// Grid sup of a - S_N(a), with S_N the symmetric partial sum over |m| <= N.
inline double partial_sum_error(const SampledLoop& s, int N) {
  const LoopElement a = fourier_series(s);
  std::map<int, Vec> head;
  for (const auto& [m, v] : a.modes)
    if (std::abs(m) <= N) head[m] = v;
  const auto approx = detail::evaluate_on_grid(head, s.size(), s.dim);
  double err = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) err = std::max(err, (s.values[j] - approx[j]).norm());
  return err;
}

/// Bound on the tail sum_{|m| > N} ||a_m|| from the k-th seminorm.
inline double tail_bound(double seminorm_k, int k, int N) {
  if (k < 2 || N < 1) throw RefusedError("tail bound needs k >= 2 and N >= 1");
  return seminorm_k * 2.0 / ((k - 1) * std::pow(static_cast<double>(N), k - 1));
}

enum class DecayRegime { smooth, analytic };

inline const char* to_string(DecayRegime r) { return r == DecayRegime::smooth ? "smooth" : "analytic"; }

struct DecayReport {
  DecayRegime regime = DecayRegime::smooth;
  std::vector<int> modes;
  std::map<int, double> norms;
  std::vector<int> used;
  double slope = 0.0;
  double intercept = 0.0;
  /// k for smooth fits, log rho for analytic fits.
  double fitted = 0.0;
  /// RMS residual of the log-linear fit.
  double residual = 0.0;

  double model(int m) const {
    const double x = regime == DecayRegime::smooth ? std::log(std::abs(static_cast<double>(m))) : std::abs(static_cast<double>(m));
    return std::exp(intercept + slope * x);
  }
};

/// Norms below this fraction of the largest are treated as roundoff and
/// excluded from the fit.
inline constexpr double kDecayFloor = 1e-14;

inline DecayReport decay_fit(const SampledLoop& s, const std::vector<int>& modes, DecayRegime regime) {
  DecayReport r;
  r.regime = regime;
  r.modes = modes;
  double top = 0.0;
  for (int m : modes) {
    const double n = fourier_project(s, m).norm();
    r.norms[m] = n;
    top = std::max(top, n);
  }
  for (int m : modes)
    if (m != 0 && r.norms[m] > kDecayFloor * top && r.norms[m] > 0.0) r.used.push_back(m);
  if (r.used.size() < 3)
    throw RefusedError("decay fit needs at least 3 nonzero modes, found " + std::to_string(r.used.size()));
  const auto n = static_cast<Eigen::Index>(r.used.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double am = std::abs(static_cast<double>(r.used[i]));
    A(i, 0) = 1.0;
    A(i, 1) = regime == DecayRegime::smooth ? std::log(am) : am;
    y(i) = std::log(r.norms[r.used[i]]);
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  r.intercept = coef(0);
  r.slope = coef(1);
  r.fitted = -r.slope;
  r.residual = std::sqrt((A * coef - y).squaredNorm() / static_cast<double>(n));
  return r;
}

/// sum_{m+n=0} F(a_m, b_n), bilinear.
inline cplx loop_pairing(const LoopElement& a, const LoopElement& b, std::optional<Mat> form = std::nullopt) {
  if (!a.algebra || a.algebra != b.algebra) throw StructuralError("loop elements belong to different loop algebras");
  if (!form) form = a.algebra->base()->form();
  if (!form) throw RefusedError("loop pairing needs an invariant form");
  const auto d = static_cast<Eigen::Index>(a.algebra->dim());
  if (form->rows() != d || form->cols() != d) throw StructuralError("form does not match the base dimension");
  cplx sum = 0.0;
  for (const auto& [m, x] : a.modes) {
    auto it = b.modes.find(-m);
    if (it != b.modes.end()) sum += (x.transpose() * (*form) * it->second)(0, 0);
  }
  return sum;
}

enum class LoopSplit { fourier, root };

/// Modes |m| <= N of the loop algebra as a finite-dimensional algebra.
/// Basis order: mode -N..N outer, base index inner. Brackets beyond N are dropped.
inline LieAlgebra truncated_loop_algebra(const LoopAlgebra& L, int N, std::optional<Mat> form = std::nullopt) {
  if (N < 0) throw StructuralError("truncation must be nonnegative");
  const std::size_t d = L.dim();
  const std::size_t nm = static_cast<std::size_t>(2 * N + 1);
  const std::size_t D = nm * d;
  std::vector<cplx> c(D * D * D, cplx(0.0));
  auto idx = [&](int m, std::size_t i) { return static_cast<std::size_t>(m + N) * d + i; };
  const LieAlgebra& base = *L.base();
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) {
      if (std::abs(m + n) > N) continue;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          Vec a = Vec::Zero(static_cast<Eigen::Index>(d)), b = a;
          a[i] = 1.0;
          b[j] = 1.0;
          const Vec v = L.mode_bracket(m, a, n, b);
          for (std::size_t k = 0; k < d; ++k) c[(idx(m, i) * D + idx(n, j)) * D + idx(m + n, k)] = v[k];
        }
    }
  std::vector<std::string> labels;
  Truncation tr;
  tr.bound = N;
  for (int m = -N; m <= N; ++m)
    for (std::size_t i = 0; i < d; ++i) {
      labels.push_back(base.labels()[i] + "[" + std::to_string(m) + "]");
      tr.degree.push_back(m);
    }
  if (!form) form = base.form();
  std::optional<Mat> tform;
  if (form) {
    Mat f = Mat::Zero(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D));
    for (int m = -N; m <= N; ++m)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) f(idx(m, i), idx(-m, j)) = (*form)(i, j);
    tform = f;
  }
  const Field field = L.kind() == LoopKind::witt ? Field::complex : base.field();
  return LieAlgebra(D, field, std::move(labels), std::move(c), std::move(tform), std::move(tr));
}

struct LoopManin {
  AlgebraPtr truncated;
  TorusWeighting weighting;
  ManinTriple triple;
};

/// Fourier split uses the mode as weight; root split uses root weights of the
/// base, constant along each loop.
inline LoopManin loop_manin(const LoopAlgebraPtr& L, int N, LoopSplit split_kind,
                            const std::vector<int>& base_weights = {}, std::optional<Mat> form = std::nullopt,
                            double tol = 1e-10) {
  if (!L) throw StructuralError("loop Manin triple without loop algebra");
  AlgebraPtr t = share(truncated_loop_algebra(*L, N, form));
  if (!t->form()) throw RefusedError("loop Manin triple needs an invariant form on the base");
  std::vector<int> w;
  if (split_kind == LoopSplit::root) {
    if (base_weights.size() != L->dim()) throw StructuralError("root split needs one weight per base element");
    for (int m = -N; m <= N; ++m)
      for (int b : base_weights) w.push_back(b);
  } else {
    for (int m = -N; m <= N; ++m)
      for (std::size_t i = 0; i < L->dim(); ++i) w.push_back(m);
  }
  TorusWeighting tw(t, w);
  ManinTriple mt = build_double_manin(tw, *t->form(), tol);
  return LoopManin{t, tw, mt};
}

/// sum_{k+m+p=0} F(X_k, [xi_m, zeta_p]) - sum_{k+n+q=0} F(X_k, [eta_n, chi_q]).
inline cplx cobracket_modes(const LoopElement& X, const LoopElement& xi, const LoopElement& eta,
                            const LoopElement& zeta, const LoopElement& chi, std::optional<Mat> form = std::nullopt) {
  const LoopAlgebraPtr& L = X.algebra;
  for (const LoopElement* e : {&xi, &eta, &zeta, &chi})
    if (!L || e->algebra != L) throw StructuralError("loop elements belong to different loop algebras");
  for (const auto& [m, v] : xi.modes)
    if (m < 0) throw RefusedError("xi must be supported on modes >= 0");
  for (const auto& [m, v] : zeta.modes)
    if (m < 0) throw RefusedError("zeta must be supported on modes >= 0");
  for (const auto& [m, v] : eta.modes)
    if (m > 0) throw RefusedError("eta must be supported on modes <= 0");
  for (const auto& [m, v] : chi.modes)
    if (m > 0) throw RefusedError("chi must be supported on modes <= 0");
  const LoopElement upper = loop_bracket(xi, zeta);
  const LoopElement lower = loop_bracket(eta, chi);
  LoopElement diff = upper;
  for (const auto& [m, v] : lower.modes) {
    auto it = diff.modes.find(m);
    if (it == diff.modes.end())
      diff.modes.emplace(m, -v);
    else
      it->second -= v;
  }
  return loop_pairing(X, diff, std::move(form));
}

}  // namespace liebi
