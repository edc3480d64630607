#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "liebi/catalog.hpp"
#include "liebi/loop_fourier.hpp"

using namespace liebi;

namespace {

LoopAlgebraPtr scalar_loops() { return LoopAlgebra::current(share(LieAlgebra::abelian(1, Field::complex))); }

Vec scalar(cplx c) {
  Vec v(1);
  v[0] = c;
  return v;
}

LoopElement synthesized(const std::function<double(int)>& coeff, int M) {
  std::map<int, Vec> modes;
  for (int m = -M; m <= M; ++m) modes[m] = scalar(coeff(m));
  return loop_element(scalar_loops(), std::move(modes));
}

LoopElement random_loop(const LoopAlgebraPtr& L, int lo, int hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::map<int, Vec> modes;
  for (int m = lo; m <= hi; ++m) {
    Vec v(static_cast<Eigen::Index>(L->dim()));
    for (auto& x : v) x = cplx(u(rng), u(rng));
    modes[m] = v;
  }
  return loop_element(L, std::move(modes));
}

std::vector<int> range(int a, int b) {
  std::vector<int> r;
  for (int m = a; m <= b; ++m) r.push_back(m);
  return r;
}

}  // namespace

TEST(LoopFourier, WittModeBracket) {
  const auto W = LoopAlgebra::witt();
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n) {
      const auto b = loop_bracket(loop_mode(W, m, scalar(1.0)), loop_mode(W, n, scalar(1.0)));
      EXPECT_EQ(b.coefficient(m + n)[0], cplx(0.0, m - n));
    }
}

TEST(LoopFourier, WittJacobiOnModeTriples) {
  const auto W = LoopAlgebra::witt();
  double worst = 0.0;
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n)
      for (int p = -4; p <= 4; ++p) {
        const auto a = loop_mode(W, m, scalar(1.0)), b = loop_mode(W, n, scalar(1.0)), c = loop_mode(W, p, scalar(1.0));
        const auto j1 = loop_bracket(a, loop_bracket(b, c));
        const auto j2 = loop_bracket(b, loop_bracket(c, a));
        const auto j3 = loop_bracket(c, loop_bracket(a, b));
        const int k = m + n + p;
        worst = std::max(worst, std::abs(j1.coefficient(k)[0] + j2.coefficient(k)[0] + j3.coefficient(k)[0]));
      }
  EXPECT_EQ(worst, 0.0);
}

TEST(LoopFourier, ConstantLoopsReduceToBaseBracket) {
  const auto s = catalog::sl2();
  const auto L = LoopAlgebra::current(s.algebra);
  const Vec H = Vec::Unit(3, 0), E = Vec::Unit(3, 1);
  const auto b = loop_bracket(loop_mode(L, 0, H), loop_mode(L, 0, E));
  EXPECT_EQ(b.coefficient(0), s.algebra->bracket(H, E));
  // Support grows additively.
  const auto c = loop_bracket(loop_mode(L, 3, H), loop_mode(L, 2, E));
  EXPECT_EQ(c.support_bound(), 5);
}

TEST(LoopFourier, ProjectionOrthogonality) {
  const auto L = scalar_loops();
  const auto s = sample(loop_mode(L, 0, scalar(2.5)), 64);
  EXPECT_LT(std::abs(fourier_project(s, 0)[0] - 2.5), 1e-14);
  for (int m = 1; m <= 20; ++m) EXPECT_LT(fourier_project(s, m).norm(), 1e-14);

  const auto t = sample(loop_mode(L, 3, scalar(cplx(0.3, -1.1))), 64);
  EXPECT_LT(std::abs(fourier_project(t, 3)[0] - cplx(0.3, -1.1)), 1e-14);
  EXPECT_LT(fourier_project(t, 2).norm(), 1e-14);
}

TEST(LoopFourier, GeometricCoefficients) {
  // s(theta) = sum_{m >= 0} r^m e^{im theta} x in closed form x / (1 - r e^{i theta}).
  const double r = 0.5;
  const std::size_t S = 256;
  const Vec x = (Vec(2) << cplx(1.0, 0.5), cplx(-0.25, 2.0)).finished();
  std::vector<Vec> values;
  for (std::size_t j = 0; j < S; ++j) {
    const double th = SampledLoop::theta(j, S);
    values.push_back(x / (1.0 - r * std::exp(cplx(0.0, th))));
  }
  const auto s = make_sampled_loop(values);
  for (int m = -20; m <= 20; ++m) {
    const Vec expect = m >= 0 ? Vec(std::pow(r, m) * x) : Vec(Vec::Zero(2));
    EXPECT_LT((fourier_project(s, m) - expect).norm(), 1e-10) << m;
  }
}

TEST(LoopFourier, NyquistRefusal) {
  const auto s = sample(loop_mode(scalar_loops(), 1, scalar(1.0)), 9);
  EXPECT_EQ(s.nyquist(), 4);
  EXPECT_NO_THROW(fourier_project(s, 4));
  EXPECT_THROW(fourier_project(s, 5), RefusedError);
  EXPECT_THROW(fourier_project(s, -5), RefusedError);
}

TEST(LoopFourier, SampleProjectRoundTrip) {
  std::mt19937_64 rng(12);
  const auto L = LoopAlgebra::current(catalog::sl3().algebra);
  const auto a = random_loop(L, -6, 6, rng);
  const auto s = sample(a, 31);
  for (int m = -15; m <= 15; ++m) EXPECT_LT((fourier_project(s, m) - a.coefficient(m)).norm(), 1e-12);
}

TEST(LoopFourier, DecayFitAnalytic) {
  for (double lr : {0.3, 0.5, 1.0}) {
    const double r = std::exp(-lr);
    const auto s = sample(synthesized([r](int m) { return std::pow(r, std::abs(m)); }, 127), 256);
    const auto fit = decay_fit(s, range(0, 20), DecayRegime::analytic);
    EXPECT_NEAR(fit.fitted, lr, 0.05 * lr);
  }
}

TEST(LoopFourier, DecayFitSmooth) {
  for (int k : {2, 3, 4}) {
    const auto s = sample(synthesized([k](int m) { return m == 0 ? 1.0 : std::pow(std::abs(m), -k); }, 64), 256);
    const auto fit = decay_fit(s, range(1, 64), DecayRegime::smooth);
    EXPECT_GE(-fit.slope, k - 0.3);
    EXPECT_LE(-fit.slope, k + 0.3);
  }
}

TEST(LoopFourier, DecayFitRefusesSingleMode) {
  const auto s = sample(loop_mode(scalar_loops(), 2, scalar(1.0)), 32);
  EXPECT_THROW(decay_fit(s, range(0, 10), DecayRegime::analytic), RefusedError);
}

TEST(LoopFourier, PartialSumTailBound) {
  for (int k : {2, 3, 4}) {
    const auto s = sample(synthesized([k](int m) { return m == 0 ? 1.0 : std::pow(std::abs(m), -k); }, 127), 256);
    const double sem = seminorm(s, k);
    for (int N : {4, 8, 16, 32}) {
      const double err = partial_sum_error(s, N);
      EXPECT_LE(err, tail_bound(sem, k, N) * 1.1) << "k=" << k << " N=" << N;
    }
  }
}

TEST(LoopFourier, SpectralDerivativeIsExact) {
  std::mt19937_64 rng(13);
  const auto a = random_loop(scalar_loops(), -5, 5, rng);
  const auto d = spectral_derivative(sample(a, 33), 1);
  const auto expect = sample(a.derivative(), 33);
  for (std::size_t j = 0; j < 33; ++j) EXPECT_LT((d.values[j] - expect.values[j]).norm(), 1e-12);
}

TEST(LoopFourier, PairingMatchesQuadrature) {
  const auto s = catalog::sl2();
  const auto L = LoopAlgebra::current(s.algebra);
  const Mat& K = *s.algebra->form();
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_loop(L, -4, 4, rng), b = random_loop(L, -4, 4, rng);
    const std::size_t S = 512;
    cplx quad = 0.0;
    for (std::size_t j = 0; j < S; ++j) {
      const double th = SampledLoop::theta(j, S);
      quad += (a(th).transpose() * K * b(th))(0, 0);
    }
    quad /= static_cast<double>(S);
    EXPECT_LT(std::abs(loop_pairing(a, b) - quad), 1e-12);
  }
  const Vec H = Vec::Unit(3, 0);
  EXPECT_EQ(loop_pairing(loop_mode(L, 2, H), loop_mode(L, 1, H)), cplx(0.0));
  EXPECT_EQ(loop_pairing(loop_mode(L, 0, H), loop_mode(L, 0, H)), K(0, 0));
  EXPECT_THROW(loop_pairing(loop_mode(scalar_loops(), 0, scalar(1.0)), loop_mode(scalar_loops(), 0, scalar(1.0))),
               StructuralError);
  const auto nf = LoopAlgebra::current(share(LieAlgebra::abelian(1)));
  EXPECT_THROW(loop_pairing(loop_mode(nf, 0, scalar(1.0)), loop_mode(nf, 0, scalar(1.0))), RefusedError);
}

TEST(LoopFourier, WittTruncationShape) {
  const auto w = catalog::witt(4);
  EXPECT_EQ(w.triple.double_algebra->dim(), 18u);
  EXPECT_EQ(w.triple.p1.cols(), 9);
  EXPECT_EQ(w.triple.p2.cols(), 9);
  const auto r = verify_manin(w.triple, 1e-12);
  EXPECT_LT(r.residual("isotropy_p1"), 1e-12);
  EXPECT_LT(r.residual("isotropy_p2"), 1e-12);
  EXPECT_LT(r.residual("closure_p1"), 1e-12);
  EXPECT_LT(r.residual("closure_p2"), 1e-12);
  // The Witt algebra has no invariant symmetric form: F([e_m,e_n],e_p) + F(e_n,[e_m,e_p])
  // equals 3im on m + n + p = 0, so the largest value in the truncation is 3N.
  EXPECT_NEAR(r.residual("invariance"), 12.0, 1e-12);
}

TEST(LoopFourier, Sl2LoopRootSplit) {
  const auto l = catalog::sl2_loop(2);
  EXPECT_TRUE(check_weighting(l.weighting).pass);
  EXPECT_TRUE(verify_manin(l.triple).pass);
}

TEST(LoopFourier, FourierSplitRefusesNonabelianZeroMode) {
  const auto L = LoopAlgebra::current(catalog::sl2().algebra);
  EXPECT_THROW(loop_manin(L, 2, LoopSplit::fourier), RefusedError);
}

namespace {

// (1/2pi) int omega(X [xi, zeta]) - omega(X [eta, chi]) by trapezoid quadrature on
// pointwise matrix values.
cplx cobracket_quadrature_matrix(const MatrixRealization& rep, const LoopElement& X, const LoopElement& xi,
                                 const LoopElement& eta, const LoopElement& zeta, const LoopElement& chi,
                                 std::size_t S) {
  cplx sum = 0.0;
  const double n = static_cast<double>(rep.n());
  for (std::size_t j = 0; j < S; ++j) {
    const double th = SampledLoop::theta(j, S);
    const Mat x = rep.matrix(X(th)), a = rep.matrix(xi(th)), b = rep.matrix(zeta(th));
    const Mat c = rep.matrix(eta(th)), d = rep.matrix(chi(th));
    sum += (x * (a * b - b * a)).trace() / n - (x * (c * d - d * c)).trace() / n;
  }
  return sum / static_cast<double>(S);
}

// Witt fields f d/dtheta: [f, g] = f'g - g'f, omega(fg) = mean of the product.
cplx cobracket_quadrature_witt(const LoopElement& X, const LoopElement& xi, const LoopElement& eta,
                               const LoopElement& zeta, const LoopElement& chi, std::size_t S) {
  const auto dxi = xi.derivative(), deta = eta.derivative(), dzeta = zeta.derivative(), dchi = chi.derivative();
  cplx sum = 0.0;
  for (std::size_t j = 0; j < S; ++j) {
    const double th = SampledLoop::theta(j, S);
    const cplx up = dxi(th)[0] * zeta(th)[0] - dzeta(th)[0] * xi(th)[0];
    const cplx lo = deta(th)[0] * chi(th)[0] - dchi(th)[0] * eta(th)[0];
    sum += X(th)[0] * (up - lo);
  }
  return sum / static_cast<double>(S);
}

}  // namespace

TEST(LoopFourier, CobracketTrivialCases) {
  const auto m2 = catalog::matrix_algebra({1, 0});
  const Mat form = TraceState(m2.realization).gram();
  const auto L = LoopAlgebra::current(m2.algebra);
  std::mt19937_64 rng(15);
  const auto zero = loop_element(L, {});
  const auto xi = random_loop(L, 0, 3, rng), zeta = random_loop(L, 0, 3, rng);
  const auto eta = random_loop(L, -3, 0, rng), chi = random_loop(L, -3, 0, rng);
  EXPECT_EQ(cobracket_modes(zero, xi, eta, zeta, chi, form), cplx(0.0));

  // Zero modes in the abelian diagonal.
  auto diag = [&](int m) {
    Vec v = Vec::Zero(4);
    v[0] = std::uniform_real_distribution<double>(-1, 1)(rng);
    v[3] = std::uniform_real_distribution<double>(-1, 1)(rng);
    return loop_mode(L, m, v);
  };
  const auto X = random_loop(L, -3, 3, rng);
  EXPECT_EQ(cobracket_modes(X, diag(0), diag(0), diag(0), diag(0), form), cplx(0.0));

  EXPECT_THROW(cobracket_modes(X, eta, eta, zeta, chi, form), RefusedError);
  EXPECT_THROW(cobracket_modes(X, xi, xi, zeta, chi, form), RefusedError);
}

TEST(LoopFourier, CobracketSingleModeM2) {
  const auto m2 = catalog::matrix_algebra({1, 0});
  const Mat form = TraceState(m2.realization).gram();
  const auto L = LoopAlgebra::current(m2.algebra);
  std::mt19937_64 rng(16);
  const auto X = random_loop(L, -1, -1, rng), xi = random_loop(L, 0, 0, rng), zeta = random_loop(L, 1, 1, rng);
  const auto zero = loop_element(L, {});
  const cplx mode = cobracket_modes(X, xi, zero, zeta, zero, form);
  const Vec br = m2.algebra->bracket(xi.coefficient(0), zeta.coefficient(1));
  const cplx direct = (X.coefficient(-1).transpose() * form * br)(0, 0);
  EXPECT_LT(std::abs(mode - direct), 1e-14);
  EXPECT_LT(std::abs(mode - cobracket_quadrature_matrix(m2.realization, X, xi, zero, zeta, zero, 256)), 1e-12);
}

TEST(LoopFourier, CobracketMatchesQuadrature) {
  const auto m2 = catalog::matrix_algebra({1, 0});
  const Mat form = TraceState(m2.realization).gram();
  const auto L = LoopAlgebra::current(m2.algebra);
  const auto W = LoopAlgebra::witt();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> sup(0, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const int a = sup(rng), b = sup(rng), c = sup(rng), d = sup(rng), e = sup(rng);
    {
      const auto X = random_loop(L, -e, e, rng), xi = random_loop(L, 0, a, rng), zeta = random_loop(L, 0, b, rng);
      const auto eta = random_loop(L, -c, 0, rng), chi = random_loop(L, -d, 0, rng);
      const cplx v = cobracket_modes(X, xi, eta, zeta, chi, form);
      EXPECT_LT(std::abs(v - cobracket_quadrature_matrix(m2.realization, X, xi, eta, zeta, chi, 256)), 1e-10);
    }
    {
      const auto X = random_loop(W, -e, e, rng), xi = random_loop(W, 0, a, rng), zeta = random_loop(W, 0, b, rng);
      const auto eta = random_loop(W, -c, 0, rng), chi = random_loop(W, -d, 0, rng);
      const cplx v = cobracket_modes(X, xi, eta, zeta, chi);
      EXPECT_LT(std::abs(v - cobracket_quadrature_witt(X, xi, eta, zeta, chi, 256)), 1e-10);
    }
  }
}
