#include "jwb/cubic_jordan.hpp"

#include "jwb/prng.hpp"
#include "jwb/ring_ext.hpp"

namespace jwb {

namespace {

Vec basis_vec(const TowerPtr& t, int n, int i) {
  Vec v = vec_zero(t, n);
  v[i] = Scalar::one(t);
  return v;
}

Vec sample_vec(SplitMix64& rng, const TowerPtr& t, int n, long box) {
  Vec v = vec_zero(t, n);
  for (int i = 0; i < n; ++i) v[i] = Scalar(rng.range(-box, box));
  return v;
}

std::vector<Ext2> sample_ext_vec(SplitMix64& rng, const Ext2Ctx& cx, int n, long box) {
  std::vector<Ext2> v(n, cx.zero());
  for (int i = 0; i < n; ++i)
    v[i] = Ext2{Scalar(rng.range(-box, box)), Scalar(rng.range(-box, box)), cx.lam};
  return v;
}

}  // namespace

BilinearForm derive_trace(const CubicMap& theta, const Vec& basepoint) {
  if (theta.eval(basepoint) != Scalar(1)) throw Error("N(basepoint) != 1");
  const int n = theta.dim();
  const TowerPtr& tw = theta.tower();
  Vec v = theta.partial(basepoint, basepoint);  // v_k = theta(1,1,e_k)
  BilinearForm t(tw, n);
  Scalar nine(9), six(6);
  for (int j = 0; j < n; ++j) {
    Vec row = theta.partial(basepoint, basis_vec(tw, n, j));  // theta(1,e_j,e_k)
    for (int k = j; k < n; ++k) t.set(j, k, nine * v[j] * v[k] - six * row[k]);
  }
  return t;
}

BilinearForm derive_trace(const CubicForm& cf) { return derive_trace(cf.theta, cf.basepoint); }

CubicJordanAlgebra::CubicJordanAlgebra(CubicForm cf) : cf_(std::move(cf)), trace_(derive_trace(cf_)) {}

Vec CubicJordanAlgebra::u(const Vec& x, const Vec& y) const {
  Scalar t = trace_.eval(x, y);
  return vec_sub(vec_scale(t, x), cf_.sharp.cross(cf_.sharp.eval(x), y));
}

std::vector<Vec> CubicJordanAlgebra::u_matrix_columns(const Vec& x) const {
  ScalarCtx cx{cf_.tower};
  auto m = ring_u_matrix(cx, cf_.sharp, trace_, x);
  std::vector<Vec> cols(cf_.n, vec_zero(cf_.tower, cf_.n));
  for (int i = 0; i < cf_.n; ++i)
    for (int j = 0; j < cf_.n; ++j) cols[j][i] = m[i][j];
  return cols;
}

Vec CubicJordanAlgebra::invert(const Vec& x) const {
  Scalar nx = norm(x);
  if (nx.is_zero()) throw Error("non-invertible section: N(x) = 0");
  return vec_scale(nx.inv(), adjoint(x));
}

Report verify_cfabp(const CubicForm& cf, const VerifyOptions& opt) {
  Report rep;
  const int n = cf.n;
  const TowerPtr& tw = cf.tower;
  Scalar one = Scalar::one(tw);

  bool unit_ok = cf.norm(cf.basepoint) == one;
  rep.add("cfabp.norm-basepoint", unit_ok, 0,
          unit_ok ? "" : "N(1) = " + cf.norm(cf.basepoint).str());
  bool sharp_unit_ok = vec_eq(cf.adjoint(cf.basepoint), cf.basepoint);
  rep.add("cfabp.adjoint-basepoint", sharp_unit_ok, 0,
          sharp_unit_ok ? "" : "1# = " + vec_str(cf.adjoint(cf.basepoint)));

  {
    SplitMix64 rng(opt.seed ^ 0xad301ceULL);
    bool ok = true;
    std::string wit;
    for (long s = 0; s < opt.samples && ok; ++s) {
      Vec x = sample_vec(rng, tw, n, opt.coeff_box);
      Vec lhs = cf.adjoint(cf.adjoint(x));
      Vec rhs = vec_scale(cf.norm(x), x);
      if (!vec_eq(lhs, rhs)) {
        ok = false;
        wit = "x = " + vec_str(x) + "; x## = " + vec_str(lhs) + "; N(x)x = " + vec_str(rhs);
      }
    }
    rep.add("cfabp.adjoint-identity", ok, opt.samples, wit);
  }

  if (!unit_ok) {
    rep.add("cfabp.gradient-identity", false, 0, "trace undefined: N(basepoint) != 1");
    rep.add("cfabp.unit-cross", false, 0, "trace undefined: N(basepoint) != 1");
    return rep;
  }
  BilinearForm t = derive_trace(cf);
  {
    SplitMix64 rng(opt.seed ^  0x66ad1eULL);
    bool ok = true;
    std::string wit;
    for (long s = 0; s < opt.samples && ok; ++s) {
      Vec x = sample_vec(rng, tw, n, opt.coeff_box);
      Vec y = sample_vec(rng, tw, n, opt.coeff_box);
      Scalar lhs = t.eval(cf.adjoint(x), y);
      Scalar rhs = directional_derivative(cf.theta, x, y);
      if (lhs != rhs) {
        ok = false;
        wit = "x = " + vec_str(x) + "; y = " + vec_str(y) + "; T(x#,y) = " + lhs.str() +
              "; DyN(x) = " + rhs.str();
      }
    }
    rep.add("cfabp.gradient-identity", ok, opt.samples, wit);
  }
  {
    SplitMix64 rng(opt.seed ^ 0xc2055ULL);
    bool ok = true;
    std::string wit;
    for (long s = 0; s < opt.samples && ok; ++s) {
      Vec y = sample_vec(rng, tw, n, opt.coeff_box);
      Vec lhs = cf.cross(cf.basepoint, y);
      Vec rhs = vec_sub(vec_scale(t.eval(y, cf.basepoint), cf.basepoint), y);
      if (!vec_eq(lhs, rhs)) {
        ok = false;
        wit = "y = " + vec_str(y) + "; 1xy = " + vec_str(lhs) + "; T(y)1-y = " + vec_str(rhs);
      }
    }
    rep.add("cfabp.unit-cross", ok, opt.samples, wit);
  }
  return rep;
}

namespace {

template <class Ctx>
bool axiom3_holds(const Ctx& cx, const QuadraticVecMap& B, const BilinearForm& T,
                  const std::vector<typename Ctx::E>& x, const std::vector<typename Ctx::E>& y) {
  auto ux = ring_u_matrix(cx, B, T, x);
  auto uy = ring_u_matrix(cx, B, T, y);
  auto uxy = ring_u(cx, B, T, x, y);
  auto lhs = ring_u_matrix(cx, B, T, uxy);
  auto rhs = ring_mat_mul(cx, ux, ring_mat_mul(cx, uy, ux));
  for (size_t i = 0; i < lhs.size(); ++i)
    for (size_t j = 0; j < lhs.size(); ++j)
      if (!cx.eq(lhs[i][j], rhs[i][j])) return false;
  return true;
}

template <class Ctx>
bool axiom4_holds(const Ctx& cx, const QuadraticVecMap& B, const BilinearForm& T,
                  const std::vector<typename Ctx::E>& x, const std::vector<typename Ctx::E>& y,
                  const std::vector<typename Ctx::E>& z) {
  const size_t n = x.size();
  // U_{y,z}(x) = U_{y+z}(x) - U_y(x) - U_z(x)
  std::vector<typename Ctx::E> yz(n, cx.zero());
  for (size_t i = 0; i < n; ++i) yz[i] = cx.add(y[i], z[i]);
  auto uyz_x = ring_u(cx, B, T, yz, x);
  auto uy_x = ring_u(cx, B, T, y, x);
  auto uz_x = ring_u(cx, B, T, z, x);
  std::vector<typename Ctx::E> bil(n, cx.zero());
  for (size_t i = 0; i < n; ++i) bil[i] = cx.sub(cx.sub(uyz_x[i], uy_x[i]), uz_x[i]);
  auto lhs = ring_u(cx, B, T, x, bil);

  // U_{x, U_x(z)}(y)
  auto uxz = ring_u(cx, B, T, x, z);
  std::vector<typename Ctx::E> xpu(n, cx.zero());
  for (size_t i = 0; i < n; ++i) xpu[i] = cx.add(x[i], uxz[i]);
  auto a = ring_u(cx, B, T, xpu, y);
  auto b = ring_u(cx, B, T, x, y);
  auto c = ring_u(cx, B, T, uxz, y);
  for (size_t i = 0; i < n; ++i) {
    auto rhs = cx.sub(cx.sub(a[i], b[i]), c[i]);
    if (!cx.eq(lhs[i], rhs)) return false;
  }
  return true;
}

}  // namespace

Report verify_jordan(const CubicJordanAlgebra& alg, const VerifyOptions& opt) {
  Report rep;
  const int n = alg.dim();
  const TowerPtr& tw = alg.tower();
  const QuadraticVecMap& B = alg.form().sharp;
  const BilinearForm& T = alg.trace();
  ScalarCtx cx{tw};

  {  // axiom (2): U_1 = id, exact matrix check
    auto m = ring_u_matrix(cx, B, T, alg.form().basepoint);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        ok = m[i][j] == (i == j ? Scalar(1) : Scalar(0));
    rep.add("jordan.axiom2-unit", ok);
  }

  {  // axiom (1): x -> U_x is a quadratic map
    SplitMix64 rng(opt.seed ^ 0x0a1ULL);
    bool ok = true;
    std::string wit;
    for (long s = 0; s < opt.samples && ok; ++s) {
      Vec x = sample_vec(rng, tw, n, opt.coeff_box);
      Vec y = sample_vec(rng, tw, n, opt.coeff_box);
      Vec z = sample_vec(rng, tw, n, opt.coeff_box);
      Vec w = sample_vec(rng, tw, n, opt.coeff_box);
      Vec two_x = vec_scale(Scalar(2), x);
      if (!vec_eq(alg.u(two_x, w), vec_scale(Scalar(4), alg.u(x, w)))) {
        ok = false;
        wit = "U_{2x} != 4U_x at x = " + vec_str(x) + ", w = " + vec_str(w);
        break;
      }
      Vec acc = alg.u(vec_add(vec_add(x, y), z), w);
      acc = vec_sub(acc, alg.u(vec_add(x, y), w));
      acc = vec_sub(acc, alg.u(vec_add(x, z), w));
      acc = vec_sub(acc, alg.u(vec_add(y, z), w));
      acc = vec_add(acc, alg.u(x, w));
      acc = vec_add(acc, alg.u(y, w));
      acc = vec_add(acc, alg.u(z, w));
      if (!vec_is_zero(acc)) {
        ok = false;
        wit = "third difference of U nonzero at x = " + vec_str(x) + ", y = " + vec_str(y) +
              ", z = " + vec_str(z);
      }
    }
    rep.add("jordan.axiom1-quadratic", ok, opt.samples, wit);
  }

  {  // axiom (3)
    SplitMix64 rng(opt.seed ^ 0x0a3ULL);
    bool ok = true;
    std::string wit;
    for (long s = 0; s < opt.samples && ok; ++s) {
      Vec x = sample_vec(rng, tw, n, opt.coeff_box);
      Vec y = sample_vec(rng, tw, n, opt.coeff_box);
      if (!axiom3_holds(cx, B, T, x, y)) {
        ok = false;
        wit = "x = " + vec_str(x) + "; y = " + vec_str(y);
      }
    }
    rep.add("jordan.axiom3-fundamental", ok, opt.samples, wit);
  }

  {  // axiom (4)
    SplitMix64 rng(opt.seed ^ 0x0a4ULL);
    bool ok = true;
    std::string wit;
    for (long s = 0; s < opt.samples && ok; ++s) {
      Vec x = sample_vec(rng, tw, n, opt.coeff_box);
      Vec y = sample_vec(rng, tw, n, opt.coeff_box);
      Vec z = sample_vec(rng, tw, n, opt.coeff_box);
      if (!axiom4_holds(cx, B, T, x, y, z)) {
        ok = false;
        wit = "x = " + vec_str(x) + "; y = " + vec_str(y) + "; z = " + vec_str(z);
      }
    }
    rep.add("jordan.axiom4-commuting", ok, opt.samples, wit);
  }

  // axiom (5) surrogate: (3) and (4) after base change to k[t]/(t^2) and to
  // k[t]/(t^2 - disc); these catch exactly the linearization failures the
  // axiom quantifies over.
  long ext_samples = opt.samples / 8 + 1;
  for (long lam : {0L, opt.base_change_disc}) {
    Ext2Ctx ecx{tw, lam};
    SplitMix64 rng(opt.seed ^ (0x0a5ULL + static_cast<std::uint64_t>(lam)));
    bool ok = true;
    std::string wit;
    for (long s = 0; s < ext_samples && ok; ++s) {
      auto x = sample_ext_vec(rng, ecx, n, opt.coeff_box);
      auto y = sample_ext_vec(rng, ecx, n, opt.coeff_box);
      auto z = sample_ext_vec(rng, ecx, n, opt.coeff_box);
      if (!axiom3_holds(ecx, B, T, x, y)) {
        ok = false;
        wit = "axiom (3) fails after base change";
      } else if (!axiom4_holds(ecx, B, T, x, y, z)) {
        ok = false;
        wit = "axiom (4) fails after base change";
      }
    }
    rep.add(lam == 0 ? "jordan.axiom5-dual-numbers" : "jordan.axiom5-quadratic-ext", ok,
            ext_samples, wit);
  }
  return rep;
}

Report verify_full(const CubicJordanAlgebra& alg, const VerifyOptions& opt) {
  Report rep = verify_cfabp(alg.form(), opt);
  rep.merge(verify_jordan(alg, opt));
  int rank = tensor_rank(alg.trace());
  rep.add("trace.nondegenerate", rank == alg.dim(), 0,
          rank == alg.dim() ? "" : "rank = " + std::to_string(rank));
  return rep;
}

}  // namespace jwb
