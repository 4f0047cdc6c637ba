#include "jwb/constructions.hpp"

namespace jwb {

CubicJordanAlgebra hermitian_h3(const CompositionAlgebra& c, const HermitianParams& gamma) {
  if (gamma.g1.is_zero() || gamma.g2.is_zero() || gamma.g3.is_zero())
    throw Error("hermitian parameters must be invertible");
  const TowerPtr& tower = c.tower();
  const int d = c.dim();
  const int n = 3 + 3 * d;

  auto diag = [&](const Vec& x, int i) { return x[i]; };
  auto block = [&](const Vec& x, int i) {  // c_i, i in {0,1,2}
    Vec b = vec_zero(tower, d);
    for (int k = 0; k < d; ++k) b[k] = x[3 + i * d + k];
    return b;
  };
  Scalar r23 = gamma.g2 * gamma.g3.inv();
  Scalar r31 = gamma.g3 * gamma.g1.inv();
  Scalar r12 = gamma.g1 * gamma.g2.inv();

  auto n_eval = [&](const Vec& x) {
    Vec c1 = block(x, 0), c2 = block(x, 1), c3 = block(x, 2);
    Scalar v = diag(x, 0) * diag(x, 1) * diag(x, 2);
    v += c.trace(c.mul(c.mul(c3, c1), c2));
    v -= diag(x, 0) * r23 * c.norm(c1);
    v -= diag(x, 1) * r31 * c.norm(c2);
    v -= diag(x, 2) * r12 * c.norm(c3);
    return v;
  };

  CubicMap theta = polarize(n_eval, n, tower);
  Vec basepoint = vec_zero(tower, n);
  basepoint[0] = basepoint[1] = basepoint[2] = Scalar::one(tower);
  BilinearForm t = derive_trace(theta, basepoint);
  if (tensor_rank(t) != n) throw Error("hermitian construction: degenerate trace form");

  // Solve T(x#, y) = DyN(x) for the adjoint on the coordinate basis.
  QuadraticVecMap sharp(tower, n);
  auto basis = [&](int i) {
    Vec v = vec_zero(tower, n);
    v[i] = Scalar::one(tower);
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // rhs_k = 3 theta(e_i, e_j, e_k)
      Vec rhs = theta.partial(basis(i), basis(j));
      for (int k = 0; k < n; ++k) rhs[k] = Scalar(3) * rhs[k];
      Vec sol = solve_bilinear(t, rhs);
      for (int k = 0; k < n; ++k) sharp.set_sym(k, i, j, sol[k]);
    }

  CubicForm cf{tower, n, std::move(theta), std::move(sharp), std::move(basepoint)};
  VerifyOptions gate;
  gate.samples = 8;
  if (!verify_cfabp(cf, gate).all_pass())
    throw Error("hermitian construction failed the cubic-form axioms (sign convention?)");
  CubicJordanAlgebra alg(std::move(cf));
  if (!verify_jordan(alg, gate).all_pass())
    throw Error("hermitian construction failed the Jordan axioms (sign convention?)");
  return alg;
}

CubicJordanAlgebra first_tits(const AssocAlgebra& a, const Scalar& mu) {
  if (mu.is_zero()) throw Error("mu must be invertible");
  if (!a.has_degree3()) throw Error("first Tits construction needs degree-3 data");
  const TowerPtr& tower = a.tower();
  const int m = a.dim();
  const int n = 3 * m;
  Scalar mu_inv = mu.inv();
  BilinearForm ta = derive_trace(a.plus_form());

  auto part = [&](const Vec& x, int b) {
    Vec v = vec_zero(tower, m);
    for (int k = 0; k < m; ++k) v[k] = x[b * m + k];
    return v;
  };
  auto join = [&](const Vec& x, const Vec& y, const Vec& z) {
    Vec v = vec_zero(tower, n);
    for (int k = 0; k < m; ++k) {
      v[k] = x[k];
      v[m + k] = y[k];
      v[2 * m + k] = z[k];
    }
    return v;
  };

  auto n_eval = [&](const Vec& x) {
    Vec av = part(x, 0), w = part(x, 1), wc = part(x, 2);
    Scalar v = a.norm(av) + mu * a.norm(w) + mu_inv * a.norm(wc);
    v -= ta.eval(av, a.mul(w, wc));
    return v;
  };
  auto s_eval = [&](const Vec& x) {
    Vec av = part(x, 0), w = part(x, 1), wc = part(x, 2);
    Vec first = vec_sub(a.adjoint(av), a.mul(w, wc));
    Vec second = vec_sub(vec_scale(mu_inv, a.adjoint(wc)), a.mul(av, w));
    Vec third = vec_sub(vec_scale(mu, a.adjoint(w)), a.mul(wc, av));
    return join(first, second, third);
  };

  Vec basepoint = vec_zero(tower, n);
  for (int k = 0; k < m; ++k) basepoint[k] = a.unit()[k];
  CubicForm cf{tower, n, polarize(n_eval, n, tower),
               QuadraticVecMap::from_evaluator(s_eval, n, tower), std::move(basepoint)};
  return CubicJordanAlgebra(std::move(cf));
}

CubicForm restrict_block(const CubicForm& cf, int lo, int m) {
  const TowerPtr& tower = cf.tower;
  auto in_block = [&](int k) { return k >= lo && k < lo + m; };
  for (int k = 0; k < cf.n; ++k)
    if (!in_block(k) && !cf.basepoint[k].is_zero())
      throw Error("base point leaves the block");
  CubicMap theta(tower, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int k = j; k < m; ++k) theta.set_sym(i, j, k, cf.theta.at(lo + i, lo + j, lo + k));
  QuadraticVecMap sharp(tower, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      for (int k = 0; k < cf.n; ++k)
        if (!in_block(k) && !cf.sharp.at(k, lo + i, lo + j).is_zero())
          throw Error("adjoint leaves the block");
      for (int k = 0; k < m; ++k) sharp.set_sym(k, i, j, cf.sharp.at(lo + k, lo + i, lo + j));
    }
  Vec basepoint = vec_zero(tower, m);
  for (int k = 0; k < m; ++k) basepoint[k] = cf.basepoint[lo + k];
  return CubicForm{tower, m, std::move(theta), std::move(sharp), std::move(basepoint)};
}

}  // namespace jwb
