#ifndef JWB_MULTILINEAR_HPP
#define JWB_MULTILINEAR_HPP

#include <functional>
#include <vector>

#include "jwb/tower.hpp"

namespace jwb {

using Vec = std::vector<Scalar>;

Vec vec_zero(const TowerPtr& t, int n);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& a);
bool vec_is_zero(const Vec& a);
bool vec_eq(const Vec& a, const Vec& b);
std::string vec_str(const Vec& a);

// Dense symmetric trilinear tensor; represents a cubic form N via
// N(x) = theta(x,x,x).
class CubicMap {
 public:
  CubicMap(TowerPtr tower, int n);

  int dim() const { return n_; }
  const TowerPtr& tower() const { return tower_; }

  const Scalar& at(int i, int j, int k) const { return t_[(i * n_ + j) * n_ + k]; }
  void set_sym(int i, int j, int k, const Scalar& v);

  Scalar eval(const Vec& x) const;                              // theta(x,x,x)
  Scalar eval3(const Vec& x, const Vec& y, const Vec& z) const;
  // g with g_k = theta(x,y,e_k).
  Vec partial(const Vec& x, const Vec& y) const;

 private:
  TowerPtr tower_;
  int n_;
  std::vector<Scalar> t_;
};

// The unique symmetric trilinear form with theta(x,x,x) = N(x), computed by
// the seven-term polarization formula on basis triples. Spot-checks that the
// evaluator really is cubic and throws otherwise.
CubicMap polarize(const std::function<Scalar(const Vec&)>& n_eval, int n, const TowerPtr& tower);

// 3*theta(x,x,y).
Scalar directional_derivative(const CubicMap& theta, const Vec& x, const Vec& y);

// Quadratic map J -> J stored via its full polarization: q(x) = B(x,x) with
// B symmetric bilinear and vector-valued.
class QuadraticVecMap {
 public:
  QuadraticVecMap(TowerPtr tower, int n);

  int dim() const { return n_; }
  const TowerPtr& tower() const { return tower_; }

  const Scalar& at(int k, int i, int j) const { return b_[(k * n_ + i) * n_ + j]; }
  void set_sym(int k, int i, int j, const Scalar& v);

  Vec eval(const Vec& x) const;                    // q(x) = B(x,x)
  Vec bilinear(const Vec& x, const Vec& y) const;  // B(x,y)
  // x cross y = q(x+y) - q(x) - q(y) = 2B(x,y).
  Vec cross(const Vec& x, const Vec& y) const;

  static QuadraticVecMap from_evaluator(const std::function<Vec(const Vec&)>& q, int n,
                                        const TowerPtr& tower);

 private:
  TowerPtr tower_;
  int n_;
  std::vector<Scalar> b_;
};

// Symmetric bilinear form as a dense matrix.
class BilinearForm {
 public:
  BilinearForm(TowerPtr tower, int n);

  int dim() const { return n_; }
  const TowerPtr& tower() const { return tower_; }
  const Scalar& at(int i, int j) const { return m_[i * n_ + j]; }
  void set(int i, int j, const Scalar& v);

  Scalar eval(const Vec& x, const Vec& y) const;
  Vec apply(const Vec& x) const;  // y with y_i = sum_j m_ij x_j

 private:
  TowerPtr tower_;
  int n_;
  std::vector<Scalar> m_;
};

// Rank over the fraction field by exact Gaussian elimination.
int tensor_rank(const BilinearForm& form);

// Solves form * x = rhs exactly; throws if the form is degenerate.
Vec solve_bilinear(const BilinearForm& form, const Vec& rhs);

}  // namespace jwb

#endif
