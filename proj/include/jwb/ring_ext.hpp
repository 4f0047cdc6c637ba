#ifndef JWB_RING_EXT_HPP
#define JWB_RING_EXT_HPP

#include <string>
#include <vector>

#include "jwb/multilinear.hpp"
#include "jwb/tower.hpp"

namespace jwb {

// Free rank-2 ring extension k[t]/(t^2 - lam): lam = 0 gives dual numbers,
// a nonsquare lam a quadratic field. Both are commutative associative base
// changes, which is all the Jordan axioms quantify over.
struct Ext2 {
  Scalar a, b;
  long lam = 0;

  bool operator==(const Ext2& o) const { return lam == o.lam && a == o.a && b == o.b; }
};

struct ScalarCtx {
  using E = Scalar;
  TowerPtr tower;

  E zero() const { return Scalar::zero(tower); }
  E from(const Scalar& s) const { return s; }
  E from_int(long v) const { return Scalar::constant(tower, Rat(v)); }
  E add(const E& x, const E& y) const { return x + y; }
  E sub(const E& x, const E& y) const { return x - y; }
  E mul(const E& x, const E& y) const { return x * y; }
  void addmul(E& acc, const E& x, const E& y) const { acc.addmul(x, y); }
  void addmul_sc(E& acc, const Scalar& s, const E& y) const { acc.addmul(s, y); }
  bool eq(const E& x, const E& y) const { return x == y; }
  std::string str(const E& x) const { return x.str(); }
};

struct Ext2Ctx {
  using E = Ext2;
  TowerPtr tower;
  long lam = 0;

  E zero() const { return {Scalar::zero(tower), Scalar::zero(tower), lam}; }
  E from(const Scalar& s) const { return {s, Scalar::zero(tower), lam}; }
  E from_int(long v) const { return from(Scalar::constant(tower, Rat(v))); }
  E add(const E& x, const E& y) const { return {x.a + y.a, x.b + y.b, lam}; }
  E sub(const E& x, const E& y) const { return {x.a - y.a, x.b - y.b, lam}; }
  E mul(const E& x, const E& y) const {
    Scalar hi = x.a * y.b + x.b * y.a;
    Scalar lo = x.a * y.a;
    lo.addmul(Scalar(lam) * x.b, y.b);
    return {std::move(lo), std::move(hi), lam};
  }
  void addmul(E& acc, const E& x, const E& y) const { acc = add(acc, mul(x, y)); }
  void addmul_sc(E& acc, const Scalar& s, const E& y) const {
    acc.a.addmul(s, y.a);
    acc.b.addmul(s, y.b);
  }
  bool eq(const E& x, const E& y) const { return x == y; }
  std::string str(const E& x) const { return x.a.str() + " + (" + x.b.str() + ")t"; }
};

// Tensor evaluations over an arbitrary commutative ring extension; the
// tensors themselves stay over the base field.
template <class Ctx>
std::vector<typename Ctx::E> ring_sharp(const Ctx& cx, const QuadraticVecMap& B,
                                        const std::vector<typename Ctx::E>& x) {
  const int n = B.dim();
  std::vector<typename Ctx::E> r(n, cx.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto xij = cx.mul(x[i], x[j]);
      for (int k = 0; k < n; ++k) {
        const Scalar& b = B.at(k, i, j);
        if (b.is_zero()) continue;
        cx.addmul_sc(r[k], b, xij);
      }
    }
  return r;
}

template <class Ctx>
std::vector<typename Ctx::E> ring_cross(const Ctx& cx, const QuadraticVecMap& B,
                                        const std::vector<typename Ctx::E>& x,
                                        const std::vector<typename Ctx::E>& y) {
  const int n = B.dim();
  std::vector<typename Ctx::E> r(n, cx.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto xy = cx.mul(x[i], y[j]);
      xy = cx.add(xy, xy);
      for (int k = 0; k < n; ++k) {
        const Scalar& b = B.at(k, i, j);
        if (b.is_zero()) continue;
        cx.addmul_sc(r[k], b, xy);
      }
    }
  return r;
}

template <class Ctx>
typename Ctx::E ring_bilinear(const Ctx& cx, const BilinearForm& T,
                              const std::vector<typename Ctx::E>& x,
                              const std::vector<typename Ctx::E>& y) {
  const int n = T.dim();
  auto acc = cx.zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Scalar& t = T.at(i, j);
      if (t.is_zero()) continue;
      auto xy = cx.mul(x[i], y[j]);
      cx.addmul_sc(acc, t, xy);
    }
  return acc;
}

// U_x(y) = T(x,y) x - x# cross y.
template <class Ctx>
std::vector<typename Ctx::E> ring_u(const Ctx& cx, const QuadraticVecMap& B,
                                    const BilinearForm& T,
                                    const std::vector<typename Ctx::E>& x,
                                    const std::vector<typename Ctx::E>& y) {
  auto t = ring_bilinear(cx, T, x, y);
  auto xs = ring_sharp(cx, B, x);
  auto c = ring_cross(cx, B, xs, y);
  std::vector<typename Ctx::E> r(x.size(), cx.zero());
  for (size_t k = 0; k < x.size(); ++k) r[k] = cx.sub(cx.mul(t, x[k]), c[k]);
  return r;
}

// Matrix of U_x in the module basis, rows indexed first.
template <class Ctx>
std::vector<std::vector<typename Ctx::E>> ring_u_matrix(const Ctx& cx, const QuadraticVecMap& B,
                                                        const BilinearForm& T,
                                                        const std::vector<typename Ctx::E>& x) {
  const int n = B.dim();
  auto xs = ring_sharp(cx, B, x);
  std::vector<typename Ctx::E> tx(n, cx.zero());  // tx_j = T(x, e_j)
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Scalar& t = T.at(i, j);
      if (t.is_zero()) continue;
      cx.addmul_sc(tx[j], t, x[i]);
    }
  std::vector<std::vector<typename Ctx::E>> m(n, std::vector<typename Ctx::E>(n, cx.zero()));
  for (int j = 0; j < n; ++j) {
    // column j: T(x,e_j) x - x# cross e_j, with (x# cross e_j)_k = 2 B_k(x#, e_j).
    for (int k = 0; k < n; ++k) {
      auto cr = cx.zero();
      for (int i = 0; i < n; ++i) {
        const Scalar& b = B.at(k, i, j);
        if (b.is_zero()) continue;
        cx.addmul_sc(cr, b, xs[i]);
      }
      cr = cx.add(cr, cr);
      m[k][j] = cx.sub(cx.mul(tx[j], x[k]), cr);
    }
  }
  return m;
}

template <class Ctx>
std::vector<std::vector<typename Ctx::E>> ring_mat_mul(
    const Ctx& cx, const std::vector<std::vector<typename Ctx::E>>& a,
    const std::vector<std::vector<typename Ctx::E>>& b) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<typename Ctx::E>> r(n, std::vector<typename Ctx::E>(n, cx.zero()));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const auto& aik = a[i][k];
      for (int j = 0; j < n; ++j) cx.addmul(r[i][j], aik, b[k][j]);
    }
  return r;
}

}  // namespace jwb

#endif
