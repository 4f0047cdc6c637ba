#ifndef JWB_ASSOC_HPP
#define JWB_ASSOC_HPP

#include <optional>

#include "jwb/cubic_jordan.hpp"
#include "jwb/multilinear.hpp"

namespace jwb {

// Structure-constant associative algebra over the tower field, optionally
// with a linear involution and degree-3 data (multiplicative cubic norm with
// its adjoint). Input to both Tits constructions.
class AssocAlgebra {
 public:
  AssocAlgebra(TowerPtr tower, int n, std::vector<Vec> mult, Vec unit);

  int dim() const { return n_; }
  const TowerPtr& tower() const { return tower_; }
  const Vec& unit() const { return unit_; }
  const Vec& basis_product(int i, int j) const { return mult_[i * n_ + j]; }

  Vec mul(const Vec& a, const Vec& b) const;

  void set_involution(std::vector<Vec> tau_columns);  // validates tau^2 = id, anti-mult
  bool has_involution() const { return !tau_.empty(); }
  Vec tau(const Vec& a) const;

  // Degree-3 data; validates N multiplicativity on sampled pairs and
  // x x# = N(x) 1 on basis sums.
  void set_degree3(CubicMap theta, QuadraticVecMap sharp);
  bool has_degree3() const { return theta_.has_value(); }
  const CubicMap& theta() const { return *theta_; }
  const QuadraticVecMap& sharp_map() const { return *sharp_; }
  Scalar norm(const Vec& x) const { return theta_->eval(x); }
  Vec adjoint(const Vec& x) const { return sharp_->eval(x); }

  // The Jordan algebra A+ = J(N, #, 1).
  CubicJordanAlgebra plus() const;
  CubicForm plus_form() const;

 private:
  TowerPtr tower_;
  int n_;
  std::vector<Vec> mult_;
  Vec unit_;
  std::vector<Vec> tau_;  // columns tau(e_i)
  std::optional<CubicMap> theta_;
  std::optional<QuadraticVecMap> sharp_;
};

// The base field itself, with N(x) = x^3.
AssocAlgebra base_field_algebra(const TowerPtr& tower);

// 3x3 matrices with determinant norm and adjugate; unit = identity,
// involution = transpose. Only size 3 is supported.
AssocAlgebra matrix_algebra(const TowerPtr& tower, int size = 3);

// Split cubic etale algebra k x k x k with the product norm.
AssocAlgebra etale_split3(const TowerPtr& tower);

// k x (quadratic etale k[g]/(g^2 + b g + c)); the quadratic factor
// contributes its field norm.
AssocAlgebra etale_k_quadratic(const TowerPtr& tower, const Rat& b, const Rat& c);

// Cubic field k[g]/(g^3 + c2 g^2 + c1 g + c0) as a 3-dimensional algebra;
// throws if the polynomial has a rational root.
AssocAlgebra cubic_field_algebra(const TowerPtr& tower, const Rat& c0, const Rat& c1,
                                 const Rat& c2);

}  // namespace jwb

#endif
