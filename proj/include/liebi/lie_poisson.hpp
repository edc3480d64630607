#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "liebi/bialgebra.hpp"
#include "liebi/error.hpp"
#include "liebi/lie_core.hpp"
#include "liebi/report.hpp"

namespace liebi {

/// Polynomial function on the coordinates of g; keys are exponent vectors.
class Polynomial {
 public:
  using Exponent = std::vector<int>;

  explicit Polynomial(std::size_t nvars) : n_(nvars) {
    if (nvars == 0) throw StructuralError("polynomial needs at least one variable");
  }

  static Polynomial constant(std::size_t n, cplx c) {
    Polynomial p(n);
    p.add(Exponent(n, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t n, std::size_t i) {
    if (i >= n) throw StructuralError("variable index out of range");
    Polynomial p(n);
    Exponent e(n, 0);
    e[i] = 1;
    p.add(e, 1.0);
    return p;
  }

  /// v -> <v, alpha>.
  static Polynomial linear(const Vec& alpha) {
    Polynomial p(static_cast<std::size_t>(alpha.size()));
    for (Eigen::Index i = 0; i < alpha.size(); ++i) p += alpha[i] * variable(p.n_, static_cast<std::size_t>(i));
    return p;
  }

  std::size_t nvars() const { return n_; }
  const std::map<Exponent, cplx>& terms() const { return terms_; }

  void add(const Exponent& e, cplx c) {
    if (e.size() != n_) throw StructuralError("exponent length does not match variable count");
    for (int k : e)
      if (k < 0) throw StructuralError("negative exponent");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw StructuralError("non-finite coefficient");
    if (c == cplx(0.0)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == cplx(0.0)) terms_.erase(it);
    }
  }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_zero() const { return terms_.empty(); }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(cplx s, const Polynomial& p) {
    Polynomial out(p.n_);
    for (const auto& [e, c] : p.terms_) out.add(e, s * c);
    return out;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.n_);
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) {
        Exponent e(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = e1[i] + e2[i];
        out.add(e, c1 * c2);
      }
    return out;
  }

  Polynomial derivative(std::size_t i) const {
    if (i >= n_) throw StructuralError("variable index out of range");
    Polynomial out(n_);
    for (const auto& [e, c] : terms_)
      if (e[i] > 0) {
        Exponent f = e;
        f[i] -= 1;
        out.add(f, c * static_cast<double>(e[i]));
      }
    return out;
  }

  cplx operator()(const Vec& v) const {
    if (v.size() != static_cast<Eigen::Index>(n_)) throw StructuralError("evaluation point has wrong dimension");
    cplx sum = 0.0;
    for (const auto& [e, c] : terms_) {
      cplx t = c;
      for (std::size_t i = 0; i < n_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= v[static_cast<Eigen::Index>(i)];
      sum += t;
    }
    return sum;
  }

  Vec gradient(const Vec& v) const {
    Vec g(static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i) g[static_cast<Eigen::Index>(i)] = derivative(i)(v);
    return g;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.n_ != n_) throw StructuralError("polynomials over different variable sets");
  }
  std::size_t n_;
  std::map<Exponent, cplx> terms_;
};

/// {f,h}(v) = <v, [df(v), dh(v)]_b> = sum d(i,a,b) v_i d_a f d_b h.
inline Polynomial lie_poisson_bracket(const Polynomial& f, const Polynomial& h, const Bialgebra& bi) {
  const std::size_t n = bi.dim();
  if (f.nvars() != n || h.nvars() != n) throw StructuralError("observable dimension does not match bialgebra");
  std::vector<Polynomial> df, dh;
  for (std::size_t a = 0; a < n; ++a) {
    df.push_back(f.derivative(a));
    dh.push_back(h.derivative(a));
  }
  Polynomial out(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (df[a].is_zero()) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (dh[b].is_zero()) continue;
      Polynomial coeff(n);
      for (std::size_t i = 0; i < n; ++i)
        if (bi.d(i, a, b) != cplx(0.0)) coeff += bi.d(i, a, b) * Polynomial::variable(n, i);
      if (!coeff.is_zero()) out += coeff * df[a] * dh[b];
    }
  }
  return out;
}

/// Components X_f^k(v) = sum d(i,a,k) v_i d_a f, the coadjoint action of df(v) on v.
inline std::vector<Polynomial> hamiltonian_field(const Polynomial& f, const Bialgebra& bi) {
  const std::size_t n = bi.dim();
  if (f.nvars() != n) throw StructuralError("observable dimension does not match bialgebra");
  std::vector<Polynomial> X(n, Polynomial(n));
  for (std::size_t a = 0; a < n; ++a) {
    const Polynomial da = f.derivative(a);
    if (da.is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      Polynomial coeff(n);
      for (std::size_t i = 0; i < n; ++i)
        if (bi.d(i, a, k) != cplx(0.0)) coeff += bi.d(i, a, k) * Polynomial::variable(n, i);
      if (!coeff.is_zero()) X[k] += coeff * da;
    }
  }
  return X;
}

inline Vec evaluate_field(const std::vector<Polynomial>& X, const Vec& v) {
  Vec out(static_cast<Eigen::Index>(X.size()));
  for (std::size_t k = 0; k < X.size(); ++k) out[static_cast<Eigen::Index>(k)] = X[k](v);
  return out;
}

/// Random real polynomial of degree <= D with coefficients in [-1, 1].
inline Polynomial random_polynomial(std::size_t n, int D, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Polynomial p(n);
  std::vector<int> e(n, 0);
  // Enumerate exponent vectors with total degree <= D.
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      p.add(e, u(rng));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, D);
  return p;
}

inline CheckReport check_poisson_axioms(const Bialgebra& bi, int D, int trials, double tol = 1e-8,
                                        std::uint64_t seed = 20240601ULL) {
  if (D < 0 || trials <= 0) throw StructuralError("degree must be nonnegative and trials positive");
  const std::size_t n = bi.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double leibniz = 0.0, jacobi = 0.0, ham = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Polynomial f = random_polynomial(n, D, rng);
    const Polynomial g = random_polynomial(n, D, rng);
    const Polynomial h = random_polynomial(n, D, rng);
    Vec v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u(rng);
    const Polynomial fg = lie_poisson_bracket(f, g, bi);
    const Polynomial fh = lie_poisson_bracket(f, h, bi);
    const Polynomial gh = lie_poisson_bracket(g, h, bi);
    leibniz = std::max(leibniz, std::abs(lie_poisson_bracket(f, g * h, bi)(v) - g(v) * fh(v) - fg(v) * h(v)));
    const cplx jac = lie_poisson_bracket(f, gh, bi)(v) + lie_poisson_bracket(g, lie_poisson_bracket(h, f, bi), bi)(v) +
                     lie_poisson_bracket(h, fg, bi)(v);
    jacobi = std::max(jacobi, std::abs(jac));
    const Vec Xf = evaluate_field(hamiltonian_field(f, bi), v);
    ham = std::max(ham, std::abs(fh(v) - h.gradient(v).cwiseProduct(Xf).sum()));
  }
  CheckReport r;
  r.check = "poisson_axioms";
  r.tol = tol;
  r.residuals["leibniz"] = leibniz;
  r.residuals["jacobi"] = jacobi;
  r.residuals["hamiltonian"] = ham;
  r.notes["seed"] = std::to_string(seed);
  r.notes["degree"] = std::to_string(D);
  r.notes["trials"] = std::to_string(trials);
  r.pass = leibniz <= tol && jacobi <= tol && ham <= tol;
  return r;
}

/// Constant-coefficient k-vector as a fully antisymmetric tensor. Wedge
/// products antisymmetrize without 1/k!, so x^y has components x_a y_b - x_b y_a
/// and the coefficient of b_I (I increasing) is the tensor entry at I.
class Multivector {
 public:
  Multivector(std::size_t dim, int degree) : dim_(dim), degree_(degree) {
    if (dim == 0 || degree < 0) throw StructuralError("multivector needs positive dimension and degree >= 0");
    comps_.assign(size_of(dim, degree), cplx(0.0));
  }

  static Multivector vector(const Vec& x) {
    Multivector m(static_cast<std::size_t>(x.size()), 1);
    for (Eigen::Index i = 0; i < x.size(); ++i) m.comps_[static_cast<std::size_t>(i)] = x[i];
    return m;
  }

  static Multivector wedge(const std::vector<Vec>& xs) {
    if (xs.empty()) throw StructuralError("wedge of no vectors");
    Multivector m = vector(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) m = wedge(m, vector(xs[i]));
    return m;
  }

  static Multivector from_coefficients(std::size_t dim, int degree,
                                       const std::map<std::vector<std::size_t>, cplx>& coeffs) {
    Multivector m(dim, degree);
    for (const auto& [I, c] : coeffs) m.add_basis(I, c);
    return m;
  }

  /// a ^ b with the unnormalized antisymmetrization convention.
  static Multivector wedge(const Multivector& a, const Multivector& b) {
    if (a.dim_ != b.dim_) throw StructuralError("wedge of multivectors of different dimension");
    std::map<std::vector<std::size_t>, cplx> out;
    for (const auto& I : increasing(a.dim_, a.degree_)) {
      const cplx ca = a.at(I);
      if (ca == cplx(0.0)) continue;
      for (const auto& J : increasing(b.dim_, b.degree_)) {
        const cplx cb = b.at(J);
        if (cb == cplx(0.0)) continue;
        std::vector<std::size_t> K = I;
        K.insert(K.end(), J.begin(), J.end());
        const int s = permutation_sign(K);
        if (s == 0) continue;
        std::sort(K.begin(), K.end());
        out[K] += static_cast<double>(s) * ca * cb;
      }
    }
    return from_coefficients(a.dim_, a.degree_ + b.degree_, out);
  }

  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::vector<cplx>& components() const { return comps_; }

  cplx at(const std::vector<std::size_t>& idx) const { return comps_[flat(idx)]; }

  /// Adds c * b_{I_1} ^ ... ^ b_{I_k}, filling all permutations.
  void add_basis(std::vector<std::size_t> I, cplx c) {
    if (static_cast<int>(I.size()) != degree_) throw StructuralError("index tuple length does not match degree");
    for (std::size_t i : I)
      if (i >= dim_) throw StructuralError("multivector index out of range");
    const int s0 = permutation_sign(I);
    if (s0 == 0 || c == cplx(0.0)) return;
    std::vector<std::size_t> P = I;
    std::sort(P.begin(), P.end());
    do {
      comps_[flat(P)] += static_cast<double>(permutation_sign(P) * s0) * c;
    } while (std::next_permutation(P.begin(), P.end()));
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : comps_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Largest violation of full antisymmetry under adjacent transpositions.
  double antisymmetry_residual() const {
    double worst = 0.0;
    if (degree_ < 2) return 0.0;
    std::vector<std::size_t> idx(static_cast<std::size_t>(degree_), 0);
    for (std::size_t f = 0; f < comps_.size(); ++f) {
      unflat(f, idx);
      for (int p = 0; p + 1 < degree_; ++p) {
        std::vector<std::size_t> s = idx;
        std::swap(s[p], s[p + 1]);
        worst = std::max(worst, std::abs(comps_[f] + comps_[flat(s)]));
      }
    }
    return worst;
  }

  Multivector& operator+=(const Multivector& o) {
    same_shape(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) {
    a.same_shape(b);
    for (std::size_t i = 0; i < a.comps_.size(); ++i) a.comps_[i] -= b.comps_[i];
    return a;
  }
  friend Multivector operator*(cplx s, Multivector a) {
    for (auto& c : a.comps_) c *= s;
    return a;
  }

  double distance(const Multivector& o) const {
    same_shape(o);
    double m = 0.0;
    for (std::size_t i = 0; i < comps_.size(); ++i) m = std::max(m, std::abs(comps_[i] - o.comps_[i]));
    return m;
  }

  static std::vector<std::vector<std::size_t>> increasing(std::size_t d, int k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = start; i < d; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  }

  /// Sign of the permutation sorting idx; 0 if an index repeats.
  static int permutation_sign(const std::vector<std::size_t>& idx) {
    int s = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (idx[i] == idx[j]) return 0;
        if (idx[i] > idx[j]) s = -s;
      }
    return s;
  }

 private:
  static std::size_t size_of(std::size_t d, int k) {
    std::size_t s = 1;
    for (int i = 0; i < k; ++i) s *= d;
    return s;
  }
  std::size_t flat(const std::vector<std::size_t>& idx) const {
    if (static_cast<int>(idx.size()) != degree_) throw StructuralError("index tuple length does not match degree");
    std::size_t f = 0;
    for (std::size_t i : idx) {
      if (i >= dim_) throw StructuralError("multivector index out of range");
      f = f * dim_ + i;
    }
    return f;
  }
  void unflat(std::size_t f, std::vector<std::size_t>& idx) const {
    for (int p = degree_ - 1; p >= 0; --p) {
      idx[static_cast<std::size_t>(p)] = f % dim_;
      f /= dim_;
    }
  }
  void same_shape(const Multivector& o) const {
    if (o.dim_ != dim_ || o.degree_ != degree_) throw StructuralError("multivectors of different shape");
  }

  std::size_t dim_;
  int degree_;
  std::vector<cplx> comps_;
};

/// [X_1^...^X_k, Y_1^...^Y_l] = sum_{i,j} (-1)^{i+j} [X_i, Y_j] ^ X_1..^X_i..X_k ^ Y_1..^Y_j..Y_l
/// on basis decomposables, extended bilinearly.
inline Multivector schouten(const Multivector& a, const Multivector& b, const LieAlgebra& g) {
  if (a.dim() != g.dim() || b.dim() != g.dim()) throw StructuralError("multivector dimension does not match algebra");
  const int k = a.degree(), l = b.degree();
  if (k < 1 || l < 1) throw RefusedError("schouten bracket of constant multivectors needs degrees >= 1");
  const std::size_t d = g.dim();
  std::map<std::vector<std::size_t>, cplx> out;
  for (const auto& I : Multivector::increasing(d, k)) {
    const cplx ca = a.at(I);
    if (ca == cplx(0.0)) continue;
    for (const auto& J : Multivector::increasing(d, l)) {
      const cplx cb = b.at(J);
      if (cb == cplx(0.0)) continue;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < l; ++j) {
          std::vector<std::size_t> rest;
          for (int p = 0; p < k; ++p)
            if (p != i) rest.push_back(I[static_cast<std::size_t>(p)]);
          for (int q = 0; q < l; ++q)
            if (q != j) rest.push_back(J[static_cast<std::size_t>(q)]);
          if (Multivector::permutation_sign(rest) == 0) continue;
          const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
          for (std::size_t m = 0; m < d; ++m) {
            const cplx v = g.c(I[static_cast<std::size_t>(i)], J[static_cast<std::size_t>(j)], m);
            if (v == cplx(0.0)) continue;
            std::vector<std::size_t> K{m};
            K.insert(K.end(), rest.begin(), rest.end());
            const int s = Multivector::permutation_sign(K);
            if (s == 0) continue;
            std::sort(K.begin(), K.end());
            out[K] += sign * static_cast<double>(s) * ca * cb * v;
          }
        }
    }
  }
  return Multivector::from_coefficients(d, k + l - 1, out);
}

struct SchoutenSelf {
  Multivector value;
  /// max over basis x of |[x, [pi, pi]]|; zero when [pi, pi] is ad-invariant.
  double invariance_residual = 0.0;
};

inline SchoutenSelf schouten_self(const Multivector& pi, const LieAlgebra& g) {
  if (pi.degree() != 2) throw StructuralError("schouten_self expects a bivector");
  Multivector v = schouten(pi, pi, g);
  double inv = 0.0;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Vec e = Vec::Zero(static_cast<Eigen::Index>(g.dim()));
    e[static_cast<Eigen::Index>(i)] = 1.0;
    inv = std::max(inv, schouten(Multivector::vector(e), v, g).max_abs());
  }
  return SchoutenSelf{std::move(v), inv};
}

}  // namespace liebi
