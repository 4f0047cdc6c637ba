#include "jwb/tower.hpp"

#include <algorithm>
#include <cassert>

namespace jwb {

namespace {

bool is_rational_square(const Rat& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
         mpz_perfect_square_p(q.get_den().get_mpz_t());
}

std::vector<mpz_class> divisors_of(const mpz_class& n0) {
  mpz_class n = abs(n0);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      out.push_back(n / d);
    }
  }
  return out;
}

// Monic polynomial with rational coefficients, given by the non-leading
// coefficients c. Returns true iff it has a rational root.
bool has_rational_root(const std::vector<Rat>& c) {
  const int d = static_cast<int>(c.size());
  mpz_class den(1);
  for (const Rat& q : c) den = lcm(den, q.get_den());
  // a_d = den (leading), a_i = c_i * den, all integers.
  std::vector<mpz_class> a(d + 1);
  a[d] = den;
  for (int i = 0; i < d; ++i) a[i] = mpz_class(c[i].get_num() * (den / c[i].get_den()));
  if (a[0] == 0) return true;  // root 0
  auto eval = [&](const Rat& x) {
    Rat v(0);
    for (int i = d; i >= 0; --i) v = v * x + Rat(a[i]);
    return v;
  };
  for (const mpz_class& p : divisors_of(a[0]))
    for (const mpz_class& q : divisors_of(a[d]))
      for (int sgn : {1, -1}) {
        Rat cand(sgn * p, q);
        cand.canonicalize();
        if (eval(cand) == 0) return true;
      }
  return false;
}

// Univariate helpers in Q[x]/(minpoly); vectors have length deg(minpoly).
std::vector<Rat> poly_mulmod(const std::vector<Rat>& a, const std::vector<Rat>& b,
                             const std::vector<std::vector<Rat>>& powtab) {
  const int d = static_cast<int>(a.size());
  std::vector<Rat> wide(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) wide[i + j] += a[i] * b[j];
  std::vector<Rat> out(d, Rat(0));
  for (int e = 0; e < 2 * d - 1; ++e) {
    if (wide[e] == 0) continue;
    for (int t = 0; t < d; ++t) out[t] += wide[e] * powtab[e][t];
  }
  return out;
}

std::vector<Rat> poly_subst(const std::vector<Rat>& p, const std::vector<Rat>& v,
                            const std::vector<std::vector<Rat>>& powtab) {
  const int d = static_cast<int>(v.size());
  std::vector<Rat> acc(d, Rat(0));
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    acc = poly_mulmod(acc, v, powtab);
    acc[0] += p[i];
  }
  return acc;
}

}  // namespace

TowerPtr FieldTower::rationals() {
  static TowerPtr t = [] {
    auto p = std::shared_ptr<FieldTower>(new FieldTower());
    p->dim_ = 1;
    return TowerPtr(p);
  }();
  return t;
}

TowerPtr FieldTower::make(std::vector<Extension> exts) {
  auto t = std::shared_ptr<FieldTower>(new FieldTower());
  t->exts_ = std::move(exts);
  t->dim_ = 1;
  for (const auto& e : t->exts_) {
    const int d = e.degree();
    if (d != 2 && d != 3) throw Error("extension '" + e.name + "': degree must be 2 or 3");
    t->stride_.push_back(t->dim_);
    t->dim_ *= d;
  }
  for (size_t i = 0; i < t->exts_.size(); ++i)
    for (size_t j = i + 1; j < t->exts_.size(); ++j) {
      if (t->exts_[i].name == t->exts_[j].name)
        throw Error("duplicate extension name '" + t->exts_[i].name + "'");
      if (t->exts_[i].degree() == t->exts_[j].degree())
        throw Error("at most one extension of each degree is supported");
    }

  // Irreducibility over Q; coprime degrees keep each step irreducible over
  // the preceding field.
  for (const auto& e : t->exts_) {
    if (e.degree() == 2) {
      Rat disc = e.minpoly[1] * e.minpoly[1] - 4 * e.minpoly[0];
      if (is_rational_square(disc))
        throw Error("minimal polynomial of '" + e.name + "' is reducible (square discriminant)");
    } else {
      if (has_rational_root(e.minpoly))
        throw Error("minimal polynomial of '" + e.name + "' is reducible (rational root)");
    }
  }

  // Power reduction tables gen^k for k <= 2(d-1).
  for (const auto& e : t->exts_) {
    const int d = e.degree();
    std::vector<std::vector<Rat>> tab;
    for (int k = 0; k < d; ++k) {
      std::vector<Rat> row(d, Rat(0));
      row[k] = 1;
      tab.push_back(row);
    }
    for (int k = d; k <= 2 * (d - 1); ++k) {
      // gen^k = gen * gen^{k-1}, then substitute gen^d = -c[d-1]g^{d-1}-...-c0.
      const std::vector<Rat>& prev = tab[k - 1];
      std::vector<Rat> row(d, Rat(0));
      for (int i = 0; i + 1 < d; ++i) row[i + 1] += prev[i];
      const Rat& top = prev[d - 1];
      if (top != 0)
        for (int i = 0; i < d; ++i) row[i] -= top * e.minpoly[i];
      tab.push_back(row);
    }
    t->powtab_.push_back(std::move(tab));
  }

  // Automorphism validation: the image must be a root of the minimal
  // polynomial, and iterating must return to the generator within d steps.
  for (size_t ei = 0; ei < t->exts_.size(); ++ei) {
    const auto& e = t->exts_[ei];
    const int d = e.degree();
    std::vector<Rat> mp(e.minpoly);
    mp.push_back(Rat(1));  // full monic coefficient list
    std::vector<Rat> x(d, Rat(0));
    x[1] = 1;
    for (const auto& [name, image] : e.autos) {
      if (static_cast<int>(image.size()) != d)
        throw Error("automorphism '" + name + "': image must have " + std::to_string(d) +
                    " coefficients");
      std::vector<Rat> val = poly_subst(mp, image, t->powtab_[ei]);
      if (val != std::vector<Rat>(d, Rat(0)))
        throw Error("automorphism '" + name + "': image is not a root of the minimal polynomial");
      std::vector<Rat> v = image;
      int order = 1;
      while (v != x && order <= d) {
        v = poly_subst(image, v, t->powtab_[ei]);
        ++order;
      }
      if (v != x)
        throw Error("automorphism '" + name + "': does not have finite order <= " +
                    std::to_string(d));
    }
  }

  // Tower-level automorphism matrices (extend by fixing the other generators).
  TowerPtr tp(t);
  for (size_t ei = 0; ei < t->exts_.size(); ++ei) {
    const auto& e = t->exts_[ei];
    for (const auto& [name, image] : e.autos) {
      if (t->automats_.count(name))
        throw Error("duplicate automorphism name '" + name + "'");
      Scalar img = Scalar::zero(tp);
      {
        std::vector<Rat> co(t->dim_, Rat(0));
        for (int k = 0; k < e.degree(); ++k) co[k * t->stride_[ei]] = image[k];
        img = Scalar(tp, std::move(co));
      }
      std::vector<std::vector<Rat>> mat(t->dim_);
      for (int flat = 0; flat < t->dim_; ++flat) {
        Scalar m = Scalar::one(tp);
        for (size_t k = 0; k < t->exts_.size(); ++k) {
          int expo = t->exponent_of(flat, static_cast<int>(k));
          Scalar g = (k == ei) ? img : Scalar::gen(tp, t->exts_[k].name);
          for (int c = 0; c < expo; ++c) m = m * g;
        }
        mat[flat] = m.coeffs();
      }
      t->automats_[name] = std::move(mat);
    }
  }
  return tp;
}

int FieldTower::ext_index(const std::string& name) const {
  for (size_t i = 0; i < exts_.size(); ++i)
    if (exts_[i].name == name) return static_cast<int>(i);
  throw Error("unknown extension '" + name + "'");
}

int FieldTower::exponent_of(int flat, int ext) const {
  return (flat / stride_[ext]) % exts_[ext].degree();
}

const std::vector<std::vector<Rat>>& FieldTower::auto_matrix(const std::string& name) const {
  auto it = automats_.find(name);
  if (it == automats_.end()) throw Error("unknown automorphism '" + name + "'");
  return it->second;
}

Scalar::Scalar() : tower_(FieldTower::rationals()), c_(1, Rat(0)) {}
Scalar::Scalar(const Rat& q) : tower_(FieldTower::rationals()), c_(1, q) {}
Scalar::Scalar(long v) : tower_(FieldTower::rationals()), c_(1, Rat(v)) {}

Scalar::Scalar(TowerPtr tower, std::vector<Rat> coeffs) : tower_(std::move(tower)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != tower_->dim()) throw Error("coefficient vector has wrong length");
}

Scalar Scalar::zero(const TowerPtr& t) { return Scalar(t, std::vector<Rat>(t->dim(), Rat(0))); }
Scalar Scalar::one(const TowerPtr& t) { return constant(t, Rat(1)); }

Scalar Scalar::constant(const TowerPtr& t, const Rat& q) {
  std::vector<Rat> c(t->dim(), Rat(0));
  c[0] = q;
  return Scalar(t, std::move(c));
}

Scalar Scalar::gen(const TowerPtr& t, const std::string& ext_name) {
  int e = t->ext_index(ext_name);
  std::vector<Rat> c(t->dim(), Rat(0));
  c[t->stride(e)] = 1;
  return Scalar(t, std::move(c));
}

bool Scalar::is_zero() const {
  for (const Rat& q : c_)
    if (q != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Scalar Scalar::promoted_to(const TowerPtr& t) const {
  if (!is_rational()) throw Error("tower mismatch");
  return Scalar::constant(t, c_[0]);
}

std::pair<const Scalar*, Scalar> Scalar::align(const Scalar& a, const Scalar& b) {
  // Returns (lhs, rhs-in-lhs-tower). Rational constants promote.
  if (a.tower_ == b.tower_) return {&a, b};
  if (b.tower_->num_exts() == 0) return {&a, b.promoted_to(a.tower_)};
  if (a.tower_->num_exts() == 0) return {&b, a.promoted_to(b.tower_)};
  throw Error("tower mismatch");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (Rat& q : r.c_) q = -q;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  auto [l, r] = align(*this, o);
  Scalar out = *l;
  for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += r.c_[i];
  return out;
}

Scalar Scalar::operator-(const Scalar& o) const {
  auto [l, r] = align(*this, o);
  if (l == this) {
    Scalar out = *l;
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] -= r.c_[i];
    return out;
  }
  Scalar out = -*l;
  for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += r.c_[i];
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }

Scalar Scalar::operator*(const Scalar& o) const {
  auto [lp, r] = align(*this, o);
  const Scalar& l = *lp;
  const FieldTower& t = *l.tower_;
  const int dim = t.dim();
  if (t.num_exts() == 0) return Scalar(l.tower_, {Rat(l.c_[0] * r.c_[0])});

  // Convolution in exponent space, then per-axis reduction by the minimal
  // polynomials.
  const int ne = t.num_exts();
  std::vector<int> w(ne), bstride(ne);
  int bufsize = 1;
  for (int k = 0; k < ne; ++k) {
    w[k] = 2 * t.ext(k).degree() - 1;
    bstride[k] = bufsize;
    bufsize *= w[k];
  }
  auto widen = [&](int flat) {
    int idx = 0;
    for (int k = 0; k < ne; ++k) idx += t.exponent_of(flat, k) * bstride[k];
    return idx;
  };
  std::vector<Rat> buf(bufsize, Rat(0));
  for (int i = 0; i < dim; ++i) {
    if (l.c_[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (r.c_[j] == 0) continue;
      buf[widen(i) + widen(j)] += l.c_[i] * r.c_[j];
    }
  }
  for (int k = 0; k < ne; ++k) {
    const int d = t.ext(k).degree();
    for (int idx = 0; idx < bufsize; ++idx) {
      int e = (idx / bstride[k]) % w[k];
      if (e < d || buf[idx] == 0) continue;
      const std::vector<Rat>& red = t.power_reduction(k, e);
      int base = idx - e * bstride[k];
      for (int tt = 0; tt < d; ++tt)
        if (red[tt] != 0) buf[base + tt * bstride[k]] += buf[idx] * red[tt];
      buf[idx] = 0;
    }
  }
  std::vector<Rat> out(dim, Rat(0));
  for (int i = 0; i < dim; ++i) out[i] = buf[widen(i)];
  return Scalar(l.tower_, std::move(out));
}

void Scalar::addmul(const Scalar& a, const Scalar& b) {
  if (tower_ == a.tower_ && tower_ == b.tower_ && tower_->num_exts() == 0) {
    c_[0] += a.c_[0] * b.c_[0];
    return;
  }
  *this += a * b;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error("division by zero");
  const FieldTower& t = *tower_;
  const int n = t.dim();
  if (n == 1) return Scalar(tower_, {Rat(1 / c_[0])});
  // Solve M_a x = e0 where M_a is multiplication by this element.
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1, Rat(0)));
  for (int j = 0; j < n; ++j) {
    std::vector<Rat> ej(n, Rat(0));
    ej[j] = 1;
    Scalar col = *this * Scalar(tower_, std::move(ej));
    for (int i = 0; i < n; ++i) m[i][j] = col.coeffs()[i];
  }
  m[0][n] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) throw Error("non-invertible element (tower validation failure)");
    std::swap(m[col], m[piv]);
    Rat p = m[col][col];
    for (int j = col; j <= n; ++j) m[col][j] /= p;
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rat f = m[row][col];
      for (int j = col; j <= n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n];
  return Scalar(tower_, std::move(x));
}

bool Scalar::operator==(const Scalar& o) const {
  auto [l, r] = align(*this, o);
  return l->c_ == r.c_;
}

Scalar Scalar::conj(const std::string& auto_name) const {
  const auto& mat = tower_->auto_matrix(auto_name);
  const int n = tower_->dim();
  std::vector<Rat> out(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < n; ++j) out[j] += c_[i] * mat[i][j];
  }
  return Scalar(tower_, std::move(out));
}

namespace {
// Splits an element of F_e by the exponent of gen_e; each part lies in F_{e-1}.
std::vector<Scalar> split_by_generator(const Scalar& a, int e) {
  const FieldTower& t = *a.tower();
  const int d = t.ext(e).degree();
  std::vector<std::vector<Rat>> parts(d, std::vector<Rat>(t.dim(), Rat(0)));
  for (int flat = 0; flat < t.dim(); ++flat) {
    if (a.coeffs()[flat] == 0) continue;
    int expo = t.exponent_of(flat, e);
    parts[expo][flat - expo * t.stride(e)] = a.coeffs()[flat];
  }
  std::vector<Scalar> out;
  for (int k = 0; k < d; ++k) out.emplace_back(a.tower(), std::move(parts[k]));
  return out;
}

Scalar det_small(const std::vector<std::vector<Scalar>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}
}  // namespace

Scalar Scalar::field_norm(const std::string& ext_name) const {
  const FieldTower& t = *tower_;
  const int e = t.ext_index(ext_name);
  for (int flat = 0; flat < t.dim(); ++flat)
    if (c_[flat] != 0)
      for (int k = e + 1; k < t.num_exts(); ++k)
        if (t.exponent_of(flat, k) != 0)
          throw Error("element not in the named extension '" + ext_name + "'");
  const int d = t.ext(e).degree();
  Scalar g = Scalar::gen(tower_, ext_name);
  std::vector<std::vector<Scalar>> m(d, std::vector<Scalar>(d, Scalar::zero(tower_)));
  Scalar col = *this;
  for (int j = 0; j < d; ++j) {
    std::vector<Scalar> parts = split_by_generator(col, e);
    for (int i = 0; i < d; ++i) m[i][j] = parts[i];
    if (j + 1 < d) col = col * g;
  }
  return det_small(m);
}

Scalar Scalar::field_trace(const std::string& ext_name) const {
  const FieldTower& t = *tower_;
  const int e = t.ext_index(ext_name);
  for (int flat = 0; flat < t.dim(); ++flat)
    if (c_[flat] != 0)
      for (int k = e + 1; k < t.num_exts(); ++k)
        if (t.exponent_of(flat, k) != 0)
          throw Error("element not in the named extension '" + ext_name + "'");
  const int d = t.ext(e).degree();
  Scalar g = Scalar::gen(tower_, ext_name);
  Scalar tr = Scalar::zero(tower_);
  Scalar col = *this;
  for (int j = 0; j < d; ++j) {
    tr += split_by_generator(col, e)[j];
    if (j + 1 < d) col = col * g;
  }
  return tr;
}

std::string Scalar::str() const {
  const FieldTower& t = *tower_;
  std::string out;
  for (int flat = 0; flat < t.dim(); ++flat) {
    if (c_[flat] == 0) continue;
    std::string term = rat_str(c_[flat]);
    for (int k = 0; k < t.num_exts(); ++k) {
      int e = t.exponent_of(flat, k);
      if (e == 0) continue;
      term += "*" + t.ext(k).name;
      if (e > 1) term += "^" + std::to_string(e);
    }
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out.empty() ? "0" : out;
}

Scalar operator*(const Rat& q, const Scalar& s) { return Scalar(q) * s; }

}  // namespace jwb
