#include "jwb/composition.hpp"

namespace jwb {

CompositionAlgebra::CompositionAlgebra(TowerPtr tower, int n, std::vector<Vec> mult, Vec unit,
                                       BilinearForm norm_gram)
    : tower_(std::move(tower)), n_(n), mult_(std::move(mult)), unit_(std::move(unit)),
      gram_(std::move(norm_gram)) {
  if (n != 1 && n != 2 && n != 4 && n != 8)
    throw Error("composition algebras exist only in ranks 1, 2, 4, 8");
  if (tensor_rank(gram_) != n_) throw Error("norm polar form is degenerate");
  if (norm(unit_) != Scalar(1)) throw Error("unit must have norm 1");
}

Vec CompositionAlgebra::mul(const Vec& a, const Vec& b) const {
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

Scalar CompositionAlgebra::polar(const Vec& x, const Vec& y) const {
  return Scalar(2) * gram_.eval(x, y);
}

Vec CompositionAlgebra::conj(const Vec& x) const {
  return vec_sub(vec_scale(trace(x), unit_), x);
}

CompositionAlgebra comp_base(const TowerPtr& tower) {
  Scalar one = Scalar::one(tower);
  std::vector<Vec> mult{Vec{one}};
  BilinearForm g(tower, 1);
  g.set(0, 0, one);
  return CompositionAlgebra(tower, 1, std::move(mult), Vec{one}, std::move(g));
}

CompositionAlgebra cayley_dickson(const CompositionAlgebra& d, const Scalar& mu) {
  if (mu.is_zero()) throw Error("mu must be invertible");
  if (d.dim() == 8) throw Error("cannot double a rank-8 composition algebra");
  const TowerPtr& tower = d.tower();
  const int half = d.dim();
  const int n = 2 * half;
  auto lift = [&](const Vec& u, const Vec& v) {
    Vec r = vec_zero(tower, n);
    for (int i = 0; i < half; ++i) {
      r[i] = u[i];
      r[half + i] = v[i];
    }
    return r;
  };
  auto basis_half = [&](int i) {
    Vec v = vec_zero(tower, half);
    v[i] = Scalar::one(tower);
    return v;
  };
  Vec zero_half = vec_zero(tower, half);
  std::vector<Vec> mult(n * n, vec_zero(tower, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec u = i < half ? basis_half(i) : zero_half;
      Vec v = i < half ? zero_half : basis_half(i - half);
      Vec u2 = j < half ? basis_half(j) : zero_half;
      Vec v2 = j < half ? zero_half : basis_half(j - half);
      Vec first = vec_add(d.mul(u, u2), vec_scale(mu, d.mul(d.conj(v2), v)));
      Vec second = vec_add(d.mul(v2, u), d.mul(v, d.conj(u2)));
      mult[i * n + j] = lift(first, second);
    }
  BilinearForm g(tower, n);
  for (int i = 0; i < half; ++i)
    for (int j = 0; j < half; ++j) {
      g.set(i, j, d.gram().at(i, j));
      g.set(half + i, half + j, -(mu * d.gram().at(i, j)));
    }
  return CompositionAlgebra(tower, n, std::move(mult), lift(d.unit(), zero_half), std::move(g));
}

CompositionAlgebra zorn(const TowerPtr& tower) {
  // Coordinates (a, v1, v2, v3, w1, w2, w3, b).
  const int n = 8;
  Scalar one = Scalar::one(tower);
  auto cross3 = [&](const Vec& x, const Vec& y) {
    return Vec{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
  };
  auto dot3 = [&](const Vec& x, const Vec& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; };
  auto vpart = [&](const Vec& x) { return Vec{x[1], x[2], x[3]}; };
  auto wpart = [&](const Vec& x) { return Vec{x[4], x[5], x[6]}; };
  auto assemble = [&](const Scalar& a, const Vec& v, const Vec& w, const Scalar& b) {
    return Vec{a, v[0], v[1], v[2], w[0], w[1], w[2], b};
  };
  auto product = [&](const Vec& x, const Vec& y) {
    Scalar a1 = x[0], b1 = x[7], a2 = y[0], b2 = y[7];
    Vec v1 = vpart(x), w1 = wpart(x), v2 = vpart(y), w2 = wpart(y);
    Scalar a = a1 * a2 + dot3(v1, w2);
    Vec v = vec_add(vec_add(vec_scale(a1, v2), vec_scale(b2, v1)), vec_scale(Scalar(-1), cross3(w1, w2)));
    Vec w = vec_add(vec_add(vec_scale(a2, w1), vec_scale(b1, w2)), cross3(v1, v2));
    Scalar b = b1 * b2 + dot3(w1, v2);
    return assemble(a, v, w, b);
  };
  std::vector<Vec> mult(n * n, vec_zero(tower, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec ei = vec_zero(tower, n), ej = vec_zero(tower, n);
      ei[i] = one;
      ej[j] = one;
      mult[i * n + j] = product(ei, ej);
    }
  Vec unit = vec_zero(tower, n);
  unit[0] = one;
  unit[7] = one;
  BilinearForm g(tower, n);
  Scalar mh = Scalar(Rat(-1, 2)), h = Scalar(Rat(1, 2));
  g.set(0, 7, h);
  for (int i = 1; i <= 3; ++i) g.set(i, i + 3, mh);
  return CompositionAlgebra(tower, n, std::move(mult), unit, std::move(g));
}

}  // namespace jwb
