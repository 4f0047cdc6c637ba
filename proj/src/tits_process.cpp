#include "jwb/tits_process.hpp"

#include "jwb/constructions.hpp"
#include "jwb/prng.hpp"

namespace jwb {

QuadEtale QuadEtale::split(const TowerPtr& tower) {
  return QuadEtale{tower, Scalar::zero(tower), Scalar::one(tower)};
}

QuadEtale QuadEtale::from_minpoly(const TowerPtr& tower, const Rat& b, const Rat& c) {
  return QuadEtale{tower, Scalar::constant(tower, -c), Scalar::constant(tower, -b)};
}

KElem QuadEtale::inv(const Elem& a) const {
  // (c0 + c1 w)(x0 + x1 w) = 1 as a 2x2 linear system.
  Scalar det = a.c0 * a.c0 + t * a.c0 * a.c1 - s * (a.c1 * a.c1);
  if (det.is_zero()) throw Error("non-invertible element of the quadratic etale algebra");
  Scalar d = det.inv();
  return {(a.c0 + t * a.c1) * d, -(a.c1 * d)};
}

Scalar QuadEtale::to_base(const Elem& a) const {
  if (!a.c1.is_zero()) throw Error("element does not lie in the base field");
  return a.c0;
}

std::string QuadEtale::str(const Elem& a) const {
  return "(" + a.c0.str() + ") + (" + a.c1.str() + ")w";
}

namespace {

KVec kvec_zero(const QuadEtale& k, int n) { return KVec(n, k.zero()); }

KVec kvec_basis(const QuadEtale& k, int n, int i) {
  KVec v = kvec_zero(k, n);
  v[i] = k.one();
  return v;
}

}  // namespace

KAlgebra::KAlgebra(QuadEtale k, int n, std::vector<KVec> mult, KVec unit,
                   std::vector<KVec> tau_cols, std::vector<KElem> theta,
                   std::vector<KElem> sharp)
    : k_(std::move(k)), n_(n), mult_(std::move(mult)), unit_(std::move(unit)),
      tau_(std::move(tau_cols)), theta_(std::move(theta)), sharp_(std::move(sharp)) {
  if (static_cast<int>(mult_.size()) != n_ * n_ || static_cast<int>(theta_.size()) != n_ * n_ * n_ ||
      static_cast<int>(sharp_.size()) != n_ * n_ * n_)
    throw Error("K-algebra tables have wrong sizes");

  for (int i = 0; i < n_; ++i) {
    KVec ei = kvec_basis(k_, n_, i);
    if (!eq(mul(unit_, ei), ei) || !eq(mul(ei, unit_), ei)) throw Error("unit is not a unit");
    for (int j = 0; j < n_; ++j)
      for (int l = 0; l < n_; ++l) {
        KVec lhs = mul(mult_[i * n_ + j], kvec_basis(k_, n_, l));
        KVec rhs = mul(ei, mult_[j * n_ + l]);
        if (!eq(lhs, rhs)) throw Error("K-algebra is not associative");
      }
    if (!eq(tau(tau(ei)), ei)) throw Error("involution is not of order 2");
    for (int j = 0; j < n_; ++j)
      if (!eq(tau(mult_[i * n_ + j]), mul(tau(kvec_basis(k_, n_, j)), tau(ei))))
        throw Error("involution is not anti-multiplicative");
  }
  if (!(norm(unit_) == k_.one())) throw Error("N_B(1) != 1");

  // Derived trace matrix over K.
  tmat_.assign(n_ * n_, k_.zero());
  KVec v(n_, k_.zero());  // v_k = theta(1,1,e_k)
  for (int kk = 0; kk < n_; ++kk)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        v[kk] = k_.add(v[kk], k_.mul(theta_at(i, j, kk), k_.mul(unit_[i], unit_[j])));
  KElem nine = k_.from(Scalar(9)), six = k_.from(Scalar(6));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      KElem m = k_.zero();  // theta(1, e_i, e_j)
      for (int l = 0; l < n_; ++l) m = k_.add(m, k_.mul(theta_at(l, i, j), unit_[l]));
      tmat_[i * n_ + j] = k_.sub(k_.mul(nine, k_.mul(v[i], v[j])), k_.mul(six, m));
    }

  // Degree-3 sanity on sampled elements.
  SplitMix64 rng(0x7175ULL);
  for (int s = 0; s < 25; ++s) {
    KVec x(n_, k_.zero()), y(n_, k_.zero());
    for (int i = 0; i < n_; ++i) {
      x[i] = KElem{Scalar(rng.range(-2, 2)), Scalar(rng.range(-2, 2))};
      y[i] = KElem{Scalar(rng.range(-2, 2)), Scalar(rng.range(-2, 2))};
    }
    if (!(norm(mul(x, y)) == k_.mul(norm(x), norm(y))))
      throw Error("N_B is not multiplicative");
    if (!eq(mul(x, adjoint(x)), scale(norm(x), unit_)))
      throw Error("adjoint does not satisfy x x# = N_B(x) 1");
    if (!(norm(tau(x)) == k_.conj(norm(x)))) throw Error("N_B(tau x) != N_B(x)*");
  }
}

KVec KAlgebra::mul(const KVec& a, const KVec& b) const {
  KVec r = kvec_zero(k_, n_);
  for (int i = 0; i < n_; ++i) {
    if (a[i].c0.is_zero() && a[i].c1.is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (b[j].c0.is_zero() && b[j].c1.is_zero()) continue;
      KElem ab = k_.mul(a[i], b[j]);
      const KVec& m = mult_[i * n_ + j];
      for (int l = 0; l < n_; ++l) {
        if (m[l].c0.is_zero() && m[l].c1.is_zero()) continue;
        r[l] = k_.add(r[l], k_.mul(ab, m[l]));
      }
    }
  }
  return r;
}

KVec KAlgebra::tau(const KVec& a) const {
  KVec r = kvec_zero(k_, n_);
  for (int i = 0; i < n_; ++i) {
    KElem c = k_.conj(a[i]);
    if (c.c0.is_zero() && c.c1.is_zero()) continue;
    for (int l = 0; l < n_; ++l) r[l] = k_.add(r[l], k_.mul(c, tau_[i][l]));
  }
  return r;
}

KVec KAlgebra::scale(const KElem& c, const KVec& a) const {
  KVec r = a;
  for (KElem& e : r) e = k_.mul(c, e);
  return r;
}

KVec KAlgebra::add(const KVec& a, const KVec& b) const {
  KVec r = a;
  for (int i = 0; i < n_; ++i) r[i] = k_.add(r[i], b[i]);
  return r;
}

KVec KAlgebra::sub(const KVec& a, const KVec& b) const {
  KVec r = a;
  for (int i = 0; i < n_; ++i) r[i] = k_.sub(r[i], b[i]);
  return r;
}

bool KAlgebra::eq(const KVec& a, const KVec& b) const {
  for (int i = 0; i < n_; ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

KElem KAlgebra::norm(const KVec& x) const {
  KElem acc = k_.zero();
  for (int i = 0; i < n_; ++i) {
    if (x[i].c0.is_zero() && x[i].c1.is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (x[j].c0.is_zero() && x[j].c1.is_zero()) continue;
      KElem xij = k_.mul(x[i], x[j]);
      for (int l = 0; l < n_; ++l) {
        const KElem& th = theta_at(i, j, l);
        if ((th.c0.is_zero() && th.c1.is_zero()) || (x[l].c0.is_zero() && x[l].c1.is_zero()))
          continue;
        acc = k_.add(acc, k_.mul(k_.mul(xij, x[l]), th));
      }
    }
  }
  return acc;
}

KVec KAlgebra::adjoint(const KVec& x) const {
  KVec r = kvec_zero(k_, n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i].c0.is_zero() && x[i].c1.is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (x[j].c0.is_zero() && x[j].c1.is_zero()) continue;
      KElem xij = k_.mul(x[i], x[j]);
      for (int l = 0; l < n_; ++l) {
        const KElem& b = sharp_[(l * n_ + i) * n_ + j];
        if (b.c0.is_zero() && b.c1.is_zero()) continue;
        r[l] = k_.add(r[l], k_.mul(xij, b));
      }
    }
  }
  return r;
}

KElem KAlgebra::trace_bilinear(const KVec& x, const KVec& y) const {
  KElem acc = k_.zero();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const KElem& t = tmat_[i * n_ + j];
      if (t.c0.is_zero() && t.c1.is_zero()) continue;
      acc = k_.add(acc, k_.mul(t, k_.mul(x[i], y[j])));
    }
  return acc;
}

KVec KAlgebra::kvec_inv_via_adjoint(const KVec& x) const {
  return scale(k_.inv(norm(x)), adjoint(x));
}

namespace {

// Polarization and quadratic-map recovery with K coefficients; mirrors the
// scalar versions in multilinear.cpp.
std::vector<KElem> polarize_k(const QuadEtale& k, int n,
                              const std::function<KElem(const KVec&)>& n_eval) {
  std::vector<KElem> theta(static_cast<size_t>(n) * n * n, k.zero());
  auto set_sym = [&](int i, int j, int l, const KElem& v) {
    int idx[3] = {i, j, l};
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& p : perms)
      theta[(static_cast<size_t>(idx[p[0]]) * n + idx[p[1]]) * n + idx[p[2]]] = v;
  };
  std::vector<KElem> n1(n, k.zero());
  std::vector<KElem> n2(static_cast<size_t>(n) * n, k.zero());
  for (int i = 0; i < n; ++i) n1[i] = n_eval(kvec_basis(k, n, i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      KVec v = kvec_basis(k, n, i);
      v[j] = k.add(v[j], k.one());
      n2[i * n + j] = n_eval(v);
    }
  auto pair_val = [&](int i, int j) { return i <= j ? n2[i * n + j] : n2[j * n + i]; };
  KElem sixth = k.from(Scalar(Rat(1, 6)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int l = j; l < n; ++l) {
        KVec s = kvec_basis(k, n, i);
        s[j] = k.add(s[j], k.one());
        s[l] = k.add(s[l], k.one());
        KElem v = n_eval(s);
        v = k.sub(v, pair_val(i, j));
        v = k.sub(v, pair_val(i, l));
        v = k.sub(v, pair_val(j, l));
        v = k.add(v, k.add(n1[i], k.add(n1[j], n1[l])));
        set_sym(i, j, l, k.mul(sixth, v));
      }
  return theta;
}

std::vector<KElem> quadmap_k(const QuadEtale& k, int n,
                             const std::function<KVec(const KVec&)>& q_eval) {
  std::vector<KElem> b(static_cast<size_t>(n) * n * n, k.zero());
  auto set_sym = [&](int l, int i, int j, const KElem& v) {
    b[(static_cast<size_t>(l) * n + i) * n + j] = v;
    b[(static_cast<size_t>(l) * n + j) * n + i] = v;
  };
  std::vector<KVec> diag(n, kvec_zero(k, n));
  for (int i = 0; i < n; ++i) diag[i] = q_eval(kvec_basis(k, n, i));
  KElem half = k.from(Scalar(Rat(1, 2)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      KVec v;
      if (i == j) {
        v = diag[i];
      } else {
        KVec s = kvec_basis(k, n, i);
        s[j] = k.add(s[j], k.one());
        v = q_eval(s);
        for (int l = 0; l < n; ++l)
          v[l] = k.mul(half, k.sub(k.sub(v[l], diag[i][l]), diag[j][l]));
      }
      for (int l = 0; l < n; ++l) set_sym(l, i, j, v[l]);
    }
  return b;
}

}  // namespace

KAlgebra kalgebra_mat3(const QuadEtale& k) {
  const int n = 9;  // E_rc at 3r + c
  std::vector<KVec> mult(n * n, kvec_zero(k, n));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int r2 = 0; r2 < 3; ++r2)
        for (int c2 = 0; c2 < 3; ++c2)
          if (c == r2) mult[(3 * r + c) * n + (3 * r2 + c2)][3 * r + c2] = k.one();
  KVec unit = kvec_zero(k, n);
  unit[0] = unit[4] = unit[8] = k.one();
  std::vector<KVec> tau_cols(n, kvec_zero(k, n));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) tau_cols[3 * r + c][3 * c + r] = k.one();

  auto entry = [&](const KVec& x, int r, int c) { return x[3 * r + c]; };
  auto det_eval = [&](const KVec& x) {
    auto m2 = [&](int r0, int c0, int r1, int c1) {
      return k.sub(k.mul(entry(x, r0, c0), entry(x, r1, c1)),
                   k.mul(entry(x, r0, c1), entry(x, r1, c0)));
    };
    KElem v = k.mul(entry(x, 0, 0), m2(1, 1, 2, 2));
    v = k.sub(v, k.mul(entry(x, 0, 1), m2(1, 0, 2, 2)));
    return k.add(v, k.mul(entry(x, 0, 2), m2(1, 0, 2, 1)));
  };
  auto adj_eval = [&](const KVec& x) {
    KVec out = kvec_zero(k, n);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        int r0 = (c + 1) % 3, r1 = (c + 2) % 3, c0 = (r + 1) % 3, c1 = (r + 2) % 3;
        out[3 * r + c] = k.sub(k.mul(entry(x, r0, c0), entry(x, r1, c1)),
                               k.mul(entry(x, r0, c1), entry(x, r1, c0)));
      }
    return out;
  };
  return KAlgebra(k, n, std::move(mult), std::move(unit), std::move(tau_cols),
                  polarize_k(k, n, det_eval), quadmap_k(k, n, adj_eval));
}

KAlgebra kalgebra_double(const AssocAlgebra& a) {
  const TowerPtr& tower = a.tower();
  QuadEtale k = QuadEtale::split(tower);
  const int n = a.dim();
  std::vector<KVec> mult(n * n, kvec_zero(k, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        mult[i * n + j][l] = k.from_pair(a.basis_product(i, j)[l], a.basis_product(j, i)[l]);
  KVec unit = kvec_zero(k, n);
  for (int l = 0; l < n; ++l) unit[l] = k.from(a.unit()[l]);
  std::vector<KVec> tau_cols(n, kvec_zero(k, n));
  for (int i = 0; i < n; ++i) tau_cols[i][i] = k.one();  // swap is identity on (x, x) basis
  std::vector<KElem> theta(static_cast<size_t>(n) * n * n, k.zero());
  std::vector<KElem> sharp(static_cast<size_t>(n) * n * n, k.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        theta[(i * n + j) * n + l] = k.from(a.theta().at(i, j, l));
        sharp[(static_cast<size_t>(l) * n + i) * n + j] = k.from(a.sharp_map().at(l, i, j));
      }
  return KAlgebra(std::move(k), n, std::move(mult), std::move(unit), std::move(tau_cols),
                  std::move(theta), std::move(sharp));
}

TitsProcess::TitsProcess(KAlgebra b, KVec u, KElem mu) : b_(std::move(b)), u_(std::move(u)), mu_(mu) {
  const QuadEtale& k = b_.field();
  const TowerPtr& tower = k.tower;
  const int n = b_.dim();

  if (!b_.eq(b_.tau(u_), u_)) throw Error("u is not hermitian");
  KElem nu = b_.norm(u_);
  if (!(nu == k.mul(mu_, k.conj(mu_)))) throw Error("admissibility fails: N_B(u) != mu mu*");
  u_inv_ = b_.scale(k.inv(nu), b_.adjoint(u_));

  // k-basis of H(B,tau) = ker(tau - id) on the 2n-dimensional k-module.
  const int m = 2 * n;
  auto kvec_to_coords = [&](const KVec& v) {
    std::vector<Rat> out;  // only valid over the trivial part of the scalars
    out.reserve(m);
    for (int i = 0; i < n; ++i) {
      if (!v[i].c0.is_rational() || !v[i].c1.is_rational())
        throw Error("tits process: expected rational coordinates");
      out.push_back(v[i].c0.rational_part());
      out.push_back(v[i].c1.rational_part());
    }
    return out;
  };
  std::vector<std::vector<Rat>> tmat(m, std::vector<Rat>(m, Rat(0)));  // columns of tau - id
  for (int col = 0; col < m; ++col) {
    KVec e = kvec_zero(k, n);
    if (col % 2 == 0)
      e[col / 2] = k.one();
    else
      e[col / 2] = k.gen();
    std::vector<Rat> img = kvec_to_coords(b_.tau(e));
    for (int row = 0; row < m; ++row) tmat[row][col] = img[row] - (row == col ? Rat(1) : Rat(0));
  }
  // Nullspace by row reduction.
  {
    std::vector<std::vector<Rat>> mm = tmat;
    std::vector<int> pivot_col_of_row;
    std::vector<bool> is_pivot(m, false);
    int row = 0;
    for (int col = 0; col < m && row < m; ++col) {
      int piv = -1;
      for (int r = row; r < m; ++r)
        if (mm[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(mm[row], mm[piv]);
      Rat p = mm[row][col];
      for (int j = 0; j < m; ++j) mm[row][j] /= p;
      for (int r = 0; r < m; ++r) {
        if (r == row || mm[r][col] == 0) continue;
        Rat f = mm[r][col];
        for (int j = 0; j < m; ++j) mm[r][j] -= f * mm[row][j];
      }
      pivot_col_of_row.push_back(col);
      is_pivot[col] = true;
      ++row;
    }
    for (int col = 0; col < m; ++col) {
      if (is_pivot[col]) continue;
      std::vector<Rat> v(m, Rat(0));
      v[col] = 1;
      for (size_t r = 0; r < pivot_col_of_row.size(); ++r) v[pivot_col_of_row[r]] = -mm[r][col];
      KVec h = kvec_zero(k, n);
      for (int i = 0; i < n; ++i) h[i] = KElem{Scalar(v[2 * i]), Scalar(v[2 * i + 1])};
      h_basis_.push_back(std::move(h));
    }
  }
  if (static_cast<int>(h_basis_.size()) != n)
    throw Error("hermitian part has unexpected dimension " + std::to_string(h_basis_.size()));

  // Row-major matrix of the H basis in k-coordinates, for h_coords solves.
  h_solver_.assign(m, std::vector<Rat>(n, Rat(0)));
  for (int j = 0; j < n; ++j) {
    std::vector<Rat> co = kvec_to_coords(h_basis_[j]);
    for (int i = 0; i < m; ++i) h_solver_[i][j] = co[i];
  }

  const int total = 3 * n;
  auto n_eval = [this, &k](const Vec& x) {
    auto [a, w] = split(x);
    KElem mn = k.mul(mu_, b_.norm(w));
    KElem v = k.add(b_.norm(a), k.add(mn, k.conj(mn)));
    v = k.sub(v, b_.trace_bilinear(a, pairing(w, w)));
    return k.to_base(v);
  };
  auto s_eval = [this](const Vec& x) {
    auto [a, w] = split(x);
    KVec first = b_.sub(b_.adjoint(a), pairing(w, w));
    KVec second = b_.sub(p_sharp(w), b_.mul(a, w));
    return join(first, second);
  };
  Vec basepoint = join(b_.unit(), kvec_zero(k, n));
  CubicForm cf{tower, total, polarize(n_eval, total, tower),
               QuadraticVecMap::from_evaluator(s_eval, total, tower), std::move(basepoint)};
  alg_ = std::make_unique<CubicJordanAlgebra>(std::move(cf));
}

std::pair<KVec, KVec> TitsProcess::split(const Vec& x) const {
  const QuadEtale& k = b_.field();
  const int n = b_.dim();
  KVec a = kvec_zero(k, n);
  for (int h = 0; h < h_dim(); ++h) {
    if (x[h].is_zero()) continue;
    for (int i = 0; i < n; ++i) {
      a[i].c0 += x[h] * h_basis_[h][i].c0;
      a[i].c1 += x[h] * h_basis_[h][i].c1;
    }
  }
  KVec w = kvec_zero(k, n);
  for (int i = 0; i < n; ++i) w[i] = KElem{x[h_dim() + 2 * i], x[h_dim() + 2 * i + 1]};
  return {a, w};
}

Vec TitsProcess::h_coords(const KVec& hermitian) const {
  const int n = b_.dim();
  const int m = 2 * n;
  // Solve h_solver_ * c = coords(hermitian) exactly.
  std::vector<std::vector<Rat>> aug(m, std::vector<Rat>(n + 1, Rat(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) aug[i][j] = h_solver_[i][j];
  for (int i = 0; i < n; ++i) {
    if (!hermitian[i].c0.is_rational() || !hermitian[i].c1.is_rational())
      throw Error("tits process: expected rational coordinates");
    aug[2 * i][n] = hermitian[i].c0.rational_part();
    aug[2 * i + 1][n] = hermitian[i].c1.rational_part();
  }
  std::vector<int> pivot_row_of_col(n, -1);
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int piv = -1;
    for (int r = row; r < m; ++r)
      if (aug[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(aug[row], aug[piv]);
    Rat p = aug[row][col];
    for (int j = 0; j <= n; ++j) aug[row][j] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      Rat f = aug[r][col];
      for (int j = 0; j <= n; ++j) aug[r][j] -= f * aug[row][j];
    }
    pivot_row_of_col[col] = row;
    ++row;
  }
  Vec c = vec_zero(b_.field().tower, n);
  for (int col = 0; col < n; ++col)
    if (pivot_row_of_col[col] >= 0) c[col] = Scalar(aug[pivot_row_of_col[col]][n]);
  // Consistency: the residual must vanish (i.e. the input was hermitian).
  for (int r = row; r < m; ++r)
    if (aug[r][n] != 0) throw Error("element is not in the hermitian part");
  return c;
}

Vec TitsProcess::join(const KVec& a, const KVec& w) const {
  const int n = b_.dim();
  Vec x = vec_zero(b_.field().tower, total_dim());
  Vec hc = h_coords(a);
  for (int h = 0; h < h_dim(); ++h) x[h] = hc[h];
  for (int i = 0; i < n; ++i) {
    x[h_dim() + 2 * i] = w[i].c0;
    x[h_dim() + 2 * i + 1] = w[i].c1;
  }
  return x;
}

KVec TitsProcess::pairing(const KVec& v, const KVec& w) const {
  return b_.mul(b_.mul(v, u_), b_.tau(w));
}

KElem TitsProcess::p_norm(const KVec& w) const { return b_.field().mul(mu_, b_.norm(w)); }

KVec TitsProcess::p_sharp(const KVec& w) const {
  return b_.scale(b_.field().conj(mu_), b_.mul(b_.adjoint(b_.tau(w)), u_inv_));
}

KVec TitsProcess::p_sharp_check(const KVec& wd) const { return p_sharp(wd); }

KElem TitsProcess::p_norm_dual(const KVec& wd) const {
  return b_.field().conj(p_norm(wd));
}

Vec TitsProcess::kvec_to_module(const KVec& v) const {
  Vec out = vec_zero(b_.field().tower, 2 * b_.dim());
  for (int i = 0; i < b_.dim(); ++i) {
    out[2 * i] = v[i].c0;
    out[2 * i + 1] = v[i].c1;
  }
  return out;
}

EmbeddingCertificate embed_first_in_process(const AssocAlgebra& a, const Scalar& mu,
                                            long random_vectors) {
  EmbeddingCertificate cert;
  const TowerPtr& tower = a.tower();
  const int m = a.dim();
  const int n = 3 * m;

  CubicJordanAlgebra first = first_tits(a, mu);
  KAlgebra bb = kalgebra_double(a);
  const QuadEtale k = bb.field();
  KElem mu_tilde = k.from_pair(mu, mu.inv());
  TitsProcess proc(bb, bb.unit(), mu_tilde);

  // Column i: image of the i-th basis vector of A + P + P-dual.
  std::vector<std::vector<Rat>> cols(n);
  auto to_rats = [&](const Vec& v) {
    std::vector<Rat> out;
    for (const Scalar& s : v) {
      if (!s.is_rational()) throw Error("embedding certificate needs rational coordinates");
      out.push_back(s.rational_part());
    }
    return out;
  };
  for (int i = 0; i < m; ++i) {
    KVec diag = kvec_zero(k, m);
    diag[i] = k.one();  // (e_i, e_i)
    cols[i] = to_rats(proc.join(diag, kvec_zero(k, m)));
    KVec w1 = kvec_zero(k, m);
    w1[i] = k.from_pair(Scalar(1), Scalar(0));  // (e_i, 0)
    cols[m + i] = to_rats(proc.join(kvec_zero(k, m), w1));
    KVec w2 = kvec_zero(k, m);
    w2[i] = k.from_pair(Scalar(0), Scalar(1));  // (0, e_i)
    cols[2 * m + i] = to_rats(proc.join(kvec_zero(k, m), w2));
  }
  cert.map = cols;
  auto apply = [&](const Vec& x) {
    Vec out = vec_zero(tower, n);
    for (int i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (int r = 0; r < n; ++r) out[r] += Scalar(cols[i][r]) * x[i];
    }
    return out;
  };
  auto basis = [&](int i) {
    Vec v = vec_zero(tower, n);
    v[i] = Scalar::one(tower);
    return v;
  };

  if (!vec_eq(apply(first.form().basepoint), proc.algebra().form().basepoint)) {
    cert.detail = "base point is not transported";
    return cert;
  }
  // Norm transport on the whole theta tensor.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int l = j; l < n; ++l) {
        Scalar lhs = first.form().theta.at(i, j, l);
        Scalar rhs = proc.algebra().form().theta.eval3(apply(basis(i)), apply(basis(j)),
                                                       apply(basis(l)));
        if (lhs != rhs) {
          cert.detail = "theta mismatch at basis triple (" + std::to_string(i) + "," +
                        std::to_string(j) + "," + std::to_string(l) + "): " + lhs.str() +
                        " vs " + rhs.str();
          return cert;
        }
      }
  // Adjoint transport on all polarization pairs.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec lhs = apply(first.form().sharp.bilinear(basis(i), basis(j)));
      Vec rhs = proc.algebra().form().sharp.bilinear(apply(basis(i)), apply(basis(j)));
      if (!vec_eq(lhs, rhs)) {
        cert.detail = "adjoint mismatch at basis pair (" + std::to_string(i) + "," +
                      std::to_string(j) + ")";
        return cert;
      }
    }
  // And on random vectors, per the acceptance statement.
  SplitMix64 rng(0xe3bedULL);
  for (long s = 0; s < random_vectors; ++s) {
    Vec x = vec_zero(tower, n);
    for (int i = 0; i < n; ++i) x[i] = Scalar(rng.range(-3, 3));
    if (proc.algebra().norm(apply(x)) != first.norm(x)) {
      cert.detail = "norm mismatch at x = " + vec_str(x);
      return cert;
    }
    if (!vec_eq(apply(first.adjoint(x)), proc.algebra().adjoint(apply(x)))) {
      cert.detail = "adjoint mismatch at x = " + vec_str(x);
      return cert;
    }
  }
  cert.pass = true;
  return cert;
}

}  // namespace jwb
