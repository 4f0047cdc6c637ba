#ifndef JWB_TOWER_HPP
#define JWB_TOWER_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jwb/rational.hpp"

namespace jwb {

// One extension step Q(..)(g) with g a root of a monic polynomial of degree 2
// or 3 with rational coefficients. Automorphisms are given by the image of
// the generator, as a polynomial in the generator.
struct Extension {
  std::string name;
  std::vector<Rat> minpoly;  // x^d + c[d-1] x^{d-1} + ... + c[0]; stores c, size d
  std::map<std::string, std::vector<Rat>> autos;  // name -> image coeffs, size d

  int degree() const { return static_cast<int>(minpoly.size()); }
};

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

// Exact field tower Q c Q(g1) c Q(g1,g2), degrees 2 and 3, at most one of
// each. Elements are coefficient vectors in the power basis g1^i g2^j.
class FieldTower {
 public:
  // The trivial tower (plain rationals); shared so Scalars compare towers by
  // pointer.
  static TowerPtr rationals();
  // Validates irreducibility (degree 2: non-square discriminant, degree 3:
  // no rational root) and all declared automorphisms.
  static TowerPtr make(std::vector<Extension> exts);

  int dim() const { return dim_; }
  int num_exts() const { return static_cast<int>(exts_.size()); }
  const Extension& ext(int i) const { return exts_[i]; }
  int ext_index(const std::string& name) const;  // throws on unknown name

  // Automorphism of the whole tower extending the named generator map; the
  // other generators are fixed. Throws on unknown name.
  const std::vector<std::vector<Rat>>& auto_matrix(const std::string& name) const;

  // Internal layout helpers.
  int stride(int ext) const { return stride_[ext]; }
  int exponent_of(int flat, int ext) const;
  // Reduction of gen_e^k as a coefficient vector of length degree(e).
  const std::vector<Rat>& power_reduction(int ext, int k) const { return powtab_[ext][k]; }

 private:
  friend class Scalar;
  FieldTower() = default;

  std::vector<Extension> exts_;
  int dim_ = 1;
  std::vector<int> stride_;
  std::vector<std::vector<std::vector<Rat>>> powtab_;
  std::map<std::string, std::vector<std::vector<Rat>>> automats_;
};

// Immutable element of a field tower. Arithmetic is exact; rational
// constants promote into any tower.
class Scalar {
 public:
  Scalar();  // zero over the trivial tower
  explicit Scalar(const Rat& q);
  explicit Scalar(long v);
  Scalar(TowerPtr tower, std::vector<Rat> coeffs);

  static Scalar zero(const TowerPtr& t);
  static Scalar one(const TowerPtr& t);
  static Scalar constant(const TowerPtr& t, const Rat& q);
  // The generator of the named extension as a tower element.
  static Scalar gen(const TowerPtr& t, const std::string& ext_name);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;  // supported on the constant basis vector only
  const Rat& rational_part() const { return c_[0]; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  // this += a*b without a named temporary; the workhorse of tensor loops.
  void addmul(const Scalar& a, const Scalar& b);
  Scalar inv() const;  // throws on zero
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Galois conjugation by a declared automorphism.
  Scalar conj(const std::string& auto_name) const;

  // Norm and trace over the step F_e / F_{e-1} of the named extension.
  // Requires the element to lie in F_e (no support above it).
  Scalar field_norm(const std::string& ext_name) const;
  Scalar field_trace(const std::string& ext_name) const;

  std::string str() const;

 private:
  static std::pair<const Scalar*, Scalar> align(const Scalar& a, const Scalar& b);
  Scalar promoted_to(const TowerPtr& t) const;

  TowerPtr tower_;
  std::vector<Rat> c_;
};

Scalar operator*(const Rat& q, const Scalar& s);

}  // namespace jwb

#endif
