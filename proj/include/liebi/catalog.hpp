#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liebi/bialgebra.hpp"
#include "liebi/error.hpp"
#include "liebi/group_flow.hpp"
#include "liebi/lie_core.hpp"
#include "liebi/loop_fourier.hpp"
#include "liebi/torus_weight.hpp"

namespace liebi::catalog {

inline Mat unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

/// A Lie algebra with a faithful matrix realization, root weights and a group tag.
struct MatrixAlgebra {
  std::string name;
  AlgebraPtr algebra;
  MatrixRealization realization;
  std::vector<int> weights;
  std::string group;
};

inline MatrixAlgebra make_matrix_algebra(std::string name, std::vector<Mat> basis, std::vector<std::string> labels,
                                         Field field, std::vector<int> weights, std::string group) {
  AlgebraPtr g = share(algebra_from_matrices(basis, std::move(labels), field));
  g = share(g->with_form(killing_form(*g)));
  MatrixRealization rep(g, std::move(basis));
  return MatrixAlgebra{std::move(name), g, std::move(rep), std::move(weights), std::move(group)};
}

inline MatrixAlgebra sl2() {
  Mat H = unit(2, 0, 0) - unit(2, 1, 1);
  return make_matrix_algebra("sl2", {H, unit(2, 0, 1), unit(2, 1, 0)}, {"H", "E", "F"}, Field::real, {0, 2, -2},
                             "SL2R");
}

/// sl3 with Cartan H1, H2 and root vectors E_ij weighted by k = (2,1,0).
inline MatrixAlgebra sl3() {
  const std::vector<int> k{2, 1, 0};
  std::vector<Mat> basis{unit(3, 0, 0) - unit(3, 1, 1), unit(3, 1, 1) - unit(3, 2, 2)};
  std::vector<std::string> labels{"H1", "H2"};
  std::vector<int> w{0, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        basis.push_back(unit(3, i, j));
        labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
        w.push_back(k[static_cast<std::size_t>(i)] - k[static_cast<std::size_t>(j)]);
      }
  return make_matrix_algebra("sl3", basis, labels, Field::real, w, "SL3");
}

/// Real form with e_k = -(i/2) sigma_k, so [e1, e2] = e3 cyclically.
inline MatrixAlgebra su2() {
  const cplx I(0.0, 1.0);
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  return make_matrix_algebra("su2", {-0.5 * I * s1, -0.5 * I * s2, -0.5 * I * s3}, {"e1", "e2", "e3"}, Field::real,
                             {0, 0, 0}, "SU2");
}

inline MatrixAlgebra heisenberg3() {
  return make_matrix_algebra("heisenberg3", {unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)}, {"x", "y", "z"},
                             Field::real, {1, 1, 2}, "upper");
}

/// Upper-triangular traceless 2x2 matrices.
inline MatrixAlgebra borel2() {
  return make_matrix_algebra("borel2", {unit(2, 0, 0) - unit(2, 1, 1), unit(2, 0, 1)}, {"H", "E"}, Field::real,
                             {0, 2}, "upper");
}

inline MatrixAlgebra torus(Eigen::Index n) {
  std::vector<Mat> basis;
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < n; ++i) {
    basis.push_back(unit(n, i, i));
    labels.push_back("T" + std::to_string(i + 1));
  }
  return make_matrix_algebra("torus" + std::to_string(n), basis, labels, Field::real,
                             std::vector<int>(static_cast<std::size_t>(n), 0), "torus");
}

/// M_n(C) with basis E_ij (row-major) and weights k_i - k_j.
inline MatrixAlgebra matrix_algebra(const std::vector<int>& k) {
  const auto n = static_cast<Eigen::Index>(k.size());
  if (n < 1 || n > 4) throw StructuralError("M_n is catalogued for 1 <= n <= 4");
  std::vector<Mat> basis;
  std::vector<std::string> labels;
  std::vector<int> w;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      basis.push_back(unit(n, i, j));
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      w.push_back(k[static_cast<std::size_t>(i)] - k[static_cast<std::size_t>(j)]);
    }
  AlgebraPtr g = share(algebra_from_matrices(basis, labels, Field::complex));
  MatrixRealization rep(g, basis);
  return MatrixAlgebra{"m" + std::to_string(n), g, std::move(rep), std::move(w), "GL"};
}

/// Weighted double of a matrix algebra under the normalized trace.
struct WeightedDouble {
  MatrixAlgebra base;
  TorusWeighting weighting;
  ManinTriple triple;
};

inline WeightedDouble weighted_double(MatrixAlgebra base) {
  TorusWeighting w(base.algebra, base.weights);
  TraceState state(base.realization);
  ManinTriple t = build_double_manin(w, state);
  return WeightedDouble{std::move(base), std::move(w), std::move(t)};
}

inline WeightedDouble m_n_double(const std::vector<int>& k) { return weighted_double(matrix_algebra(k)); }

struct BialgebraEntry {
  std::string name;
  GroupModel model;
  std::optional<ManinTriple> source;
};

inline BialgebraEntry from_weighted(const std::string& name, const WeightedDouble& wd) {
  FromManin fm = from_manin(wd.triple, wd.base.algebra->labels());
  MatrixRealization rep(fm.bialgebra.g(), wd.base.realization.basis());
  return BialgebraEntry{name, GroupModel(wd.base.group, fm.bialgebra, std::move(rep)), wd.triple};
}

inline BialgebraEntry with_zero_cobracket(const std::string& name, const MatrixAlgebra& a) {
  return BialgebraEntry{name, GroupModel(a.group, Bialgebra::zero(a.algebra), a.realization), std::nullopt};
}

/// Abelian g whose dual bracket is sl2, realized on the diagonal torus.
inline BialgebraEntry sl2_dual() {
  const MatrixAlgebra s = sl2();
  const MatrixAlgebra t = torus(3);
  const std::size_t n = 3;
  std::vector<cplx> d(n * n * n, cplx(0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) d[(i * n + a) * n + b] = s.algebra->c(a, b, i);
  return BialgebraEntry{"sl2-dual", GroupModel(t.group, Bialgebra(t.algebra, d), t.realization), std::nullopt};
}

/// su2 with the coboundary cobracket of r = e1 ^ e2.
inline BialgebraEntry su2_standard() {
  const MatrixAlgebra s = su2();
  Mat r = Mat::Zero(3, 3);
  r(0, 1) = 1.0;
  r(1, 0) = -1.0;
  return BialgebraEntry{"su2-standard", GroupModel(s.group, Bialgebra(s.algebra, coboundary(*s.algebra, r)), s.realization),
                        std::nullopt};
}

inline std::vector<std::string> bialgebra_names() {
  return {"m2", "sl2", "sl3", "sl2-cotangent", "sl2-dual", "heisenberg-cotangent", "su2-standard"};
}

inline BialgebraEntry bialgebra(const std::string& name) {
  if (name == "m2") return from_weighted(name, m_n_double({1, 0}));
  if (name == "sl2") return from_weighted(name, weighted_double(sl2()));
  if (name == "sl3") return from_weighted(name, weighted_double(sl3()));
  if (name == "sl2-cotangent") return with_zero_cobracket(name, sl2());
  if (name == "sl2-dual") return sl2_dual();
  if (name == "heisenberg-cotangent") return with_zero_cobracket(name, heisenberg3());
  if (name == "su2-standard") return su2_standard();
  throw StructuralError("unknown catalog bialgebra '" + name + "'");
}

inline std::vector<std::string> algebra_names() {
  return {"sl2", "sl3", "su2", "heisenberg3", "borel2", "torus2", "m1", "m2", "m3", "m4", "witt", "sl2-loop"};
}

/// Parses "m<n>" into n, or returns 0.
inline int matrix_size(const std::string& name) {
  if (name.size() == 2 && name[0] == 'm' && name[1] >= '1' && name[1] <= '4') return name[1] - '0';
  return 0;
}

/// Default weights k = (n-1, ..., 1, 0), distinct so the zero mode is the diagonal.
inline std::vector<int> default_weights(int n) {
  std::vector<int> k;
  for (int i = n - 1; i >= 0; --i) k.push_back(i);
  return k;
}

inline MatrixAlgebra matrix_algebra_by_name(const std::string& name, const std::vector<int>& k = {}) {
  if (name == "sl2") return sl2();
  if (name == "sl3") return sl3();
  if (name == "su2") return su2();
  if (name == "heisenberg3") return heisenberg3();
  if (name == "borel2") return borel2();
  if (name == "torus2") return torus(2);
  if (int n = matrix_size(name)) return matrix_algebra(k.empty() ? default_weights(n) : k);
  throw StructuralError("unknown catalog matrix algebra '" + name + "'");
}

/// Witt truncation with Fourier-mode weights and the pairing omega(fg).
inline LoopManin witt(int N) { return loop_manin(LoopAlgebra::witt(), N, LoopSplit::fourier); }

/// sl2-valued loops with the root split and the Killing form.
inline LoopManin sl2_loop(int N) {
  const MatrixAlgebra s = sl2();
  return loop_manin(LoopAlgebra::current(s.algebra), N, LoopSplit::root, s.weights);
}

}  // namespace liebi::catalog
