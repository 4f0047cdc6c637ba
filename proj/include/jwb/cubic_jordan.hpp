#ifndef JWB_CUBIC_JORDAN_HPP
#define JWB_CUBIC_JORDAN_HPP

#include <optional>

#include "jwb/multilinear.hpp"
#include "jwb/report.hpp"

namespace jwb {

// Sampling parameters for the identity checkers. Identities are polynomial,
// so exact failure on a dense deterministic sample is decisive.
struct VerifyOptions {
  std::uint64_t seed = 0;
  long samples = 200;
  long coeff_box = 3;       // coefficients drawn from {-box..box}
  long base_change_disc = 5;  // t^2 = disc for the quadratic base change
};

// A cubic form with adjoint and base point (N, #, 1) on a free module.
struct CubicForm {
  TowerPtr tower;
  int n;
  CubicMap theta;        // N(x) = theta(x,x,x)
  QuadraticVecMap sharp;  // x# = B(x,x)
  Vec basepoint;

  Scalar norm(const Vec& x) const { return theta.eval(x); }
  Vec adjoint(const Vec& x) const { return sharp.eval(x); }
  Vec cross(const Vec& x, const Vec& y) const { return sharp.cross(x, y); }
};

// T(x,y) = -DxDy log N at the base point; requires N(1) = 1.
BilinearForm derive_trace(const CubicMap& theta, const Vec& basepoint);
BilinearForm derive_trace(const CubicForm& cf);

class CubicJordanAlgebra {
 public:
  explicit CubicJordanAlgebra(CubicForm cf);

  const CubicForm& form() const { return cf_; }
  const BilinearForm& trace() const { return trace_; }
  const TowerPtr& tower() const { return cf_.tower; }
  int dim() const { return cf_.n; }

  Scalar norm(const Vec& x) const { return cf_.norm(x); }
  Vec adjoint(const Vec& x) const { return cf_.adjoint(x); }
  Scalar trace_bilinear(const Vec& x, const Vec& y) const { return trace_.eval(x, y); }
  Scalar trace_linear(const Vec& x) const { return trace_.eval(x, cf_.basepoint); }

  // U_x(y) = T(x,y) x - x# cross y.
  Vec u(const Vec& x, const Vec& y) const;
  std::vector<Vec> u_matrix_columns(const Vec& x) const;

  // x^{-1} = N(x)^{-1} x#; throws on N(x) = 0 (non-invertible section).
  Vec invert(const Vec& x) const;

 private:
  CubicForm cf_;
  BilinearForm trace_;
};

// Checks the defining identities of a cubic form with adjoint and base
// point: x## = N(x)x, T(x#,y) = DyN(x), N(1) = 1, 1# = 1, 1 cross y =
// T(y)1 - y. Failures are report content, never exceptions.
Report verify_cfabp(const CubicForm& cf, const VerifyOptions& opt = {});

// Checks the Jordan axioms for U_x derived from the cubic form, including
// axioms (3) and (4) after base change to dual numbers and to a quadratic
// ring extension.
Report verify_jordan(const CubicJordanAlgebra& alg, const VerifyOptions& opt = {});

// Convenience: cfabp + jordan + trace-rank check.
Report verify_full(const CubicJordanAlgebra& alg, const VerifyOptions& opt = {});

}  // namespace jwb

#endif
