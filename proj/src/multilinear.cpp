#include "jwb/multilinear.hpp"

#include "jwb/prng.hpp"

namespace jwb {

Vec vec_zero(const TowerPtr& t, int n) { return Vec(n, Scalar::zero(t)); }

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch");
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch");
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Scalar& c, const Vec& a) {
  Vec r = a;
  for (Scalar& s : r) s = c * s;
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const Scalar& s : a)
    if (!s.is_zero()) return false;
  return true;
}

bool vec_eq(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::string vec_str(const Vec& a) {
  std::string s = "[";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ", ";
    s += a[i].str();
  }
  return s + "]";
}

CubicMap::CubicMap(TowerPtr tower, int n)
    : tower_(std::move(tower)), n_(n), t_(static_cast<size_t>(n) * n * n, Scalar::zero(tower_)) {}

void CubicMap::set_sym(int i, int j, int k, const Scalar& v) {
  int idx[3] = {i, j, k};
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& p : perms)
    t_[(static_cast<size_t>(idx[p[0]]) * n_ + idx[p[1]]) * n_ + idx[p[2]]] = v;
}

Scalar CubicMap::eval(const Vec& x) const { return eval3(x, x, x); }

Scalar CubicMap::eval3(const Vec& x, const Vec& y, const Vec& z) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_ ||
      static_cast<int>(z.size()) != n_)
    throw Error("dimension mismatch");
  Scalar acc = Scalar::zero(tower_);
  for (int i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar xy = x[i] * y[j];
      Scalar row = Scalar::zero(tower_);
      const Scalar* base = &t_[(static_cast<size_t>(i) * n_ + j) * n_];
      for (int k = 0; k < n_; ++k) {
        if (z[k].is_zero() || base[k].is_zero()) continue;
        row.addmul(base[k], z[k]);
      }
      acc.addmul(xy, row);
    }
  }
  return acc;
}

Vec CubicMap::partial(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw Error("dimension mismatch");
  Vec g = vec_zero(tower_, n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar xy = x[i] * y[j];
      const Scalar* base = &t_[(static_cast<size_t>(i) * n_ + j) * n_];
      for (int k = 0; k < n_; ++k) {
        if (base[k].is_zero()) continue;
        g[k].addmul(xy, base[k]);
      }
    }
  }
  return g;
}

CubicMap polarize(const std::function<Scalar(const Vec&)>& n_eval, int n, const TowerPtr& tower) {
  CubicMap theta(tower, n);
  auto basis = [&](int i) {
    Vec v = vec_zero(tower, n);
    v[i] = Scalar::one(tower);
    return v;
  };
  // Cache N on single and pair sums.
  std::vector<Scalar> n1(n, Scalar::zero(tower));
  std::vector<Scalar> n2(static_cast<size_t>(n) * n, Scalar::zero(tower));
  for (int i = 0; i < n; ++i) n1[i] = n_eval(basis(i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) n2[i * n + j] = n_eval(vec_add(basis(i), basis(j)));
  auto pair_val = [&](int i, int j) { return i <= j ? n2[i * n + j] : n2[j * n + i]; };

  Rat sixth(1, 6);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Vec s = vec_add(vec_add(basis(i), basis(j)), basis(k));
        Scalar v = n_eval(s) - pair_val(i, j) - pair_val(i, k) - pair_val(j, k) + n1[i] + n1[j] +
                   n1[k];
        theta.set_sym(i, j, k, Scalar(sixth) * v);
      }

  // The seven-term formula yields theta(x,x,x) = N(x) only for genuinely
  // cubic evaluators; spot-check on deterministic sample vectors.
  SplitMix64 rng(0x9c0de5u);
  for (int s = 0; s < 5; ++s) {
    Vec x = vec_zero(tower, n);
    for (int i = 0; i < n; ++i) x[i] = Scalar(rng.range(-3, 3));
    if (theta.eval(x) != n_eval(x)) throw Error("evaluator is not a cubic form");
  }
  return theta;
}

Scalar directional_derivative(const CubicMap& theta, const Vec& x, const Vec& y) {
  return Scalar(3) * theta.eval3(x, x, y);
}

QuadraticVecMap::QuadraticVecMap(TowerPtr tower, int n)
    : tower_(std::move(tower)), n_(n), b_(static_cast<size_t>(n) * n * n, Scalar::zero(tower_)) {}

void QuadraticVecMap::set_sym(int k, int i, int j, const Scalar& v) {
  b_[(static_cast<size_t>(k) * n_ + i) * n_ + j] = v;
  b_[(static_cast<size_t>(k) * n_ + j) * n_ + i] = v;
}

Vec QuadraticVecMap::eval(const Vec& x) const { return bilinear(x, x); }

Vec QuadraticVecMap::bilinear(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw Error("dimension mismatch");
  Vec r = vec_zero(tower_, n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar xy = x[i] * y[j];
      for (int k = 0; k < n_; ++k) {
        const Scalar& b = at(k, i, j);
        if (b.is_zero()) continue;
        r[k].addmul(xy, b);
      }
    }
  }
  return r;
}

Vec QuadraticVecMap::cross(const Vec& x, const Vec& y) const {
  return vec_scale(Scalar(2), bilinear(x, y));
}

QuadraticVecMap QuadraticVecMap::from_evaluator(const std::function<Vec(const Vec&)>& q, int n,
                                                const TowerPtr& tower) {
  QuadraticVecMap b(tower, n);
  auto basis = [&](int i) {
    Vec v = vec_zero(tower, n);
    v[i] = Scalar::one(tower);
    return v;
  };
  std::vector<Vec> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = q(basis(i));
  Scalar half(Rat(1, 2));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec v = i == j ? diag[i]
                     : vec_scale(half, vec_sub(vec_sub(q(vec_add(basis(i), basis(j))), diag[i]),
                                               diag[j]));
      for (int k = 0; k < n; ++k) b.set_sym(k, i, j, v[k]);
    }
  return b;
}

BilinearForm::BilinearForm(TowerPtr tower, int n)
    : tower_(std::move(tower)), n_(n), m_(static_cast<size_t>(n) * n, Scalar::zero(tower_)) {}

void BilinearForm::set(int i, int j, const Scalar& v) {
  m_[i * n_ + j] = v;
  m_[j * n_ + i] = v;
}

Scalar BilinearForm::eval(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw Error("dimension mismatch");
  Scalar acc = Scalar::zero(tower_);
  for (int i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    Scalar row = Scalar::zero(tower_);
    for (int j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      row.addmul(at(i, j), y[j]);
    }
    acc.addmul(x[i], row);
  }
  return acc;
}

Vec BilinearForm::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != n_) throw Error("dimension mismatch");
  Vec r = vec_zero(tower_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (x[j].is_zero() || at(i, j).is_zero()) continue;
      r[i].addmul(at(i, j), x[j]);
    }
  return r;
}

int tensor_rank(const BilinearForm& form) {
  const int n = form.dim();
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar::zero(form.tower())));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = form.at(i, j);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int row = rank; row < n; ++row)
      if (!m[row][col].is_zero()) {
        piv = row;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    Scalar inv = m[rank][col].inv();
    for (int row = rank + 1; row < n; ++row) {
      if (m[row][col].is_zero()) continue;
      Scalar f = m[row][col] * inv;
      for (int j = col; j < n; ++j) m[row][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

Vec solve_bilinear(const BilinearForm& form, const Vec& rhs) {
  const int n = form.dim();
  if (static_cast<int>(rhs.size()) != n) throw Error("dimension mismatch");
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n + 1, Scalar::zero(form.tower())));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = form.at(i, j);
    m[i][n] = rhs[i];
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (!m[row][col].is_zero()) {
        piv = row;
        break;
      }
    if (piv < 0) throw Error("degenerate bilinear form");
    std::swap(m[col], m[piv]);
    Scalar inv = m[col][col].inv();
    for (int j = col; j <= n; ++j) m[col][j] = inv * m[col][j];
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      Scalar f = m[row][col];
      for (int j = col; j <= n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  Vec x = vec_zero(form.tower(), n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

}  // namespace jwb
