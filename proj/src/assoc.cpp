#include "jwb/assoc.hpp"

#include "jwb/prng.hpp"

namespace jwb {

namespace {

Vec basis_vec(const TowerPtr& t, int n, int i) {
  Vec v = vec_zero(t, n);
  v[i] = Scalar::one(t);
  return v;
}

// Multiplication-by-a matrix; rows index the output coordinate.
std::vector<std::vector<Scalar>> mult_matrix(const AssocAlgebra& alg, const Vec& a) {
  const int n = alg.dim();
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar::zero(alg.tower())));
  for (int j = 0; j < n; ++j) {
    Vec col = alg.mul(a, basis_vec(alg.tower(), n, j));
    for (int i = 0; i < n; ++i) m[i][j] = col[i];
  }
  return m;
}

Scalar det3(const std::vector<std::vector<Scalar>>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// adj(M) applied to a vector, for 3x3.
Vec adj3_apply(const std::vector<std::vector<Scalar>>& m, const Vec& v) {
  auto cof = [&](int i, int j) {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
  };
  Vec out = vec_zero(v[0].tower(), 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += cof(j, i) * v[j];  // adjugate = transposed cofactors
  return out;
}

}  // namespace

AssocAlgebra::AssocAlgebra(TowerPtr tower, int n, std::vector<Vec> mult, Vec unit)
    : tower_(std::move(tower)), n_(n), mult_(std::move(mult)), unit_(std::move(unit)) {
  if (static_cast<int>(mult_.size()) != n_ * n_) throw Error("structure constant table has wrong size");
  // Associativity on all basis triples, and the unit law, exactly.
  for (int i = 0; i < n_; ++i) {
    if (!vec_eq(mul(unit_, basis_vec(tower_, n_, i)), basis_vec(tower_, n_, i)) ||
        !vec_eq(mul(basis_vec(tower_, n_, i), unit_), basis_vec(tower_, n_, i)))
      throw Error("unit vector is not a unit");
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        Vec lhs = mul(mult_[i * n_ + j], basis_vec(tower_, n_, k));
        Vec rhs = mul(basis_vec(tower_, n_, i), mult_[j * n_ + k]);
        if (!vec_eq(lhs, rhs)) throw Error("structure constants are not associative");
      }
  }
}

Vec AssocAlgebra::mul(const Vec& a, const Vec& b) const {
  if (static_cast<int>(a.size()) != n_ || static_cast<int>(b.size()) != n_)
    throw Error("dimension mismatch");
  Vec r = vec_zero(tower_, n_);
  for (int i = 0; i < n_; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (b[j].is_zero()) continue;
      Scalar ab = a[i] * b[j];
      const Vec& m = mult_[i * n_ + j];
      for (int k = 0; k < n_; ++k) {
        if (m[k].is_zero()) continue;
        r[k].addmul(ab, m[k]);
      }
    }
  }
  return r;
}

void AssocAlgebra::set_involution(std::vector<Vec> tau_columns) {
  tau_ = std::move(tau_columns);
  for (int i = 0; i < n_; ++i) {
    Vec ei = basis_vec(tower_, n_, i);
    if (!vec_eq(tau(tau(ei)), ei)) throw Error("involution is not of order 2");
    for (int j = 0; j < n_; ++j) {
      Vec lhs = tau(mult_[i * n_ + j]);
      Vec rhs = mul(tau(basis_vec(tower_, n_, j)), tau(ei));
      if (!vec_eq(lhs, rhs)) throw Error("involution is not anti-multiplicative");
    }
  }
}

Vec AssocAlgebra::tau(const Vec& a) const {
  if (tau_.empty()) throw Error("algebra has no involution");
  Vec r = vec_zero(tower_, n_);
  for (int i = 0; i < n_; ++i) {
    if (a[i].is_zero()) continue;
    for (int k = 0; k < n_; ++k) r[k].addmul(a[i], tau_[i][k]);
  }
  return r;
}

void AssocAlgebra::set_degree3(CubicMap theta, QuadraticVecMap sharp) {
  theta_ = std::move(theta);
  sharp_ = std::move(sharp);
  SplitMix64 rng(0xde63u);
  for (int s = 0; s < 40; ++s) {
    Vec x = vec_zero(tower_, n_), y = vec_zero(tower_, n_);
    for (int i = 0; i < n_; ++i) {
      x[i] = Scalar(rng.range(-3, 3));
      y[i] = Scalar(rng.range(-3, 3));
    }
    if (norm(mul(x, y)) != norm(x) * norm(y))
      throw Error("cubic norm is not multiplicative");
    if (!vec_eq(mul(x, adjoint(x)), vec_scale(norm(x), unit_)))
      throw Error("adjoint does not satisfy x x# = N(x) 1");
  }
}

CubicForm AssocAlgebra::plus_form() const {
  if (!has_degree3()) throw Error("algebra lacks degree-3 data");
  return CubicForm{tower_, n_, *theta_, *sharp_, unit_};
}

CubicJordanAlgebra AssocAlgebra::plus() const { return CubicJordanAlgebra(plus_form()); }

AssocAlgebra base_field_algebra(const TowerPtr& tower) {
  Scalar one = Scalar::one(tower);
  AssocAlgebra a(tower, 1, {Vec{one}}, Vec{one});
  auto n_eval = [](const Vec& x) { return x[0] * x[0] * x[0]; };
  auto s_eval = [](const Vec& x) { return Vec{x[0] * x[0]}; };
  a.set_degree3(polarize(n_eval, 1, tower), QuadraticVecMap::from_evaluator(s_eval, 1, tower));
  return a;
}

AssocAlgebra matrix_algebra(const TowerPtr& tower, int size) {
  if (size != 3) throw Error("unsupported matrix size (only 3)");
  const int n = 9;  // basis E_rc at index 3r + c
  Scalar zero = Scalar::zero(tower), one = Scalar::one(tower);
  std::vector<Vec> mult(n * n, vec_zero(tower, n));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int r2 = 0; r2 < 3; ++r2)
        for (int c2 = 0; c2 < 3; ++c2)
          if (c == r2) mult[(3 * r + c) * n + (3 * r2 + c2)][3 * r + c2] = one;
  Vec unit = vec_zero(tower, n);
  unit[0] = unit[4] = unit[8] = one;
  AssocAlgebra a(tower, n, std::move(mult), unit);

  auto entry = [&](const Vec& x, int r, int c) -> const Scalar& { return x[3 * r + c]; };
  auto det_eval = [&](const Vec& x) {
    return entry(x, 0, 0) * (entry(x, 1, 1) * entry(x, 2, 2) - entry(x, 1, 2) * entry(x, 2, 1)) -
           entry(x, 0, 1) * (entry(x, 1, 0) * entry(x, 2, 2) - entry(x, 1, 2) * entry(x, 2, 0)) +
           entry(x, 0, 2) * (entry(x, 1, 0) * entry(x, 2, 1) - entry(x, 1, 1) * entry(x, 2, 0));
  };
  auto adj_eval = [&](const Vec& x) {
    Vec out = vec_zero(tower, n);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        int r0 = (c + 1) % 3, r1 = (c + 2) % 3, c0 = (r + 1) % 3, c1 = (r + 2) % 3;
        out[3 * r + c] = entry(x, r0, c0) * entry(x, r1, c1) - entry(x, r0, c1) * entry(x, r1, c0);
      }
    return out;
  };
  a.set_degree3(polarize(det_eval, n, tower), QuadraticVecMap::from_evaluator(adj_eval, n, tower));
  std::vector<Vec> tau_cols(n, vec_zero(tower, n));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) tau_cols[3 * r + c][3 * c + r] = one;
  a.set_involution(std::move(tau_cols));
  return a;
}

AssocAlgebra etale_split3(const TowerPtr& tower) {
  const int n = 3;
  Scalar one = Scalar::one(tower);
  std::vector<Vec> mult(n * n, vec_zero(tower, n));
  for (int i = 0; i < 3; ++i) mult[i * n + i][i] = one;
  Vec unit(3, one);
  AssocAlgebra a(tower, n, std::move(mult), unit);
  auto n_eval = [tower](const Vec& x) { return x[0] * x[1] * x[2]; };
  auto s_eval = [tower](const Vec& x) {
    return Vec{x[1] * x[2], x[0] * x[2], x[0] * x[1]};
  };
  a.set_degree3(polarize(n_eval, n, tower), QuadraticVecMap::from_evaluator(s_eval, n, tower));
  return a;
}

namespace {
// Shared by the commutative rank-3 factories: N = det of the regular
// representation, # = its adjugate applied to the unit.
void attach_regular_degree3(AssocAlgebra& a) {
  const TowerPtr tower = a.tower();
  auto n_eval = [&a](const Vec& x) { return det3(mult_matrix(a, x)); };
  auto s_eval = [&a](const Vec& x) { return adj3_apply(mult_matrix(a, x), a.unit()); };
  a.set_degree3(polarize(n_eval, 3, tower), QuadraticVecMap::from_evaluator(s_eval, 3, tower));
}
}  // namespace

AssocAlgebra etale_k_quadratic(const TowerPtr& tower, const Rat& b, const Rat& c) {
  // Basis (1,0), (0,1), (0,g) with g^2 = -b g - c in the quadratic factor.
  const int n = 3;
  Scalar one = Scalar::one(tower);
  std::vector<Vec> mult(n * n, vec_zero(tower, n));
  mult[0 * n + 0][0] = one;
  mult[1 * n + 1][1] = one;
  mult[1 * n + 2][2] = one;
  mult[2 * n + 1][2] = one;
  mult[2 * n + 2][1] = Scalar(Rat(-c));
  mult[2 * n + 2][2] = Scalar(Rat(-b));
  Vec unit = vec_zero(tower, n);
  unit[0] = one;
  unit[1] = one;
  AssocAlgebra a(tower, n, std::move(mult), unit);
  attach_regular_degree3(a);
  return a;
}

AssocAlgebra cubic_field_algebra(const TowerPtr& tower, const Rat& c0, const Rat& c1,
                                 const Rat& c2) {
  // Reuse the tower validation for irreducibility.
  FieldTower::make({Extension{"g", {c0, c1, c2}, {}}});
  const int n = 3;
  Scalar one = Scalar::one(tower);
  std::vector<Vec> mult(n * n, vec_zero(tower, n));
  // g^i g^j with g^3 = -c2 g^2 - c1 g - c0 and g^4 = g g^3.
  std::vector<Vec> powers(5, vec_zero(tower, n));
  powers[0][0] = one;
  powers[1][1] = one;
  powers[2][2] = one;
  powers[3][0] = Scalar(Rat(-c0));
  powers[3][1] = Scalar(Rat(-c1));
  powers[3][2] = Scalar(Rat(-c2));
  {
    // g^4 = g * g^3, reduced.
    Vec g4 = vec_zero(tower, n);
    g4[1] = powers[3][0];
    g4[2] = powers[3][1];
    const Scalar& top = powers[3][2];
    g4[0] -= top * Scalar(Rat(c0));
    g4[1] -= top * Scalar(Rat(c1));
    g4[2] -= top * Scalar(Rat(c2));
    powers[4] = g4;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mult[i * n + j] = powers[i + j];
  Vec unit = vec_zero(tower, n);
  unit[0] = one;
  AssocAlgebra a(tower, n, std::move(mult), unit);
  attach_regular_degree3(a);
  return a;
}

}  // namespace jwb
