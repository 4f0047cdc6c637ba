#ifndef JWB_COMPOSITION_HPP
#define JWB_COMPOSITION_HPP

#include "jwb/multilinear.hpp"

namespace jwb {

// Unital algebra with a multiplicative quadratic norm whose polar form is
// nondegenerate; ranks 1, 2, 4, 8 only.
class CompositionAlgebra {
 public:
  CompositionAlgebra(TowerPtr tower, int n, std::vector<Vec> mult, Vec unit,
                     BilinearForm norm_gram);

  int dim() const { return n_; }
  const TowerPtr& tower() const { return tower_; }
  const Vec& unit() const { return unit_; }

  Vec mul(const Vec& a, const Vec& b) const;
  Scalar norm(const Vec& x) const { return gram_.eval(x, x); }
  Scalar polar(const Vec& x, const Vec& y) const;  // n(x+y) - n(x) - n(y)
  Scalar trace(const Vec& x) const { return polar(x, unit_); }
  Vec conj(const Vec& x) const;  // t(x) 1 - x
  const BilinearForm& gram() const { return gram_; }

 private:
  TowerPtr tower_;
  int n_;
  std::vector<Vec> mult_;
  Vec unit_;
  BilinearForm gram_;
};

// The base field as the rank-1 composition algebra.
CompositionAlgebra comp_base(const TowerPtr& tower);

// Cayley-Dickson doubling: (u,v)(u',v') = (uu' + mu conj(v')v, v'u + v conj(u')),
// n(u,v) = n(u) - mu n(v). Doubling a rank-8 algebra would lose composition
// and is rejected.
CompositionAlgebra cayley_dickson(const CompositionAlgebra& d, const Scalar& mu);

// Split octonions as Zorn vector matrices [[a, v], [w, b]] with
// n = ab - v.w.
CompositionAlgebra zorn(const TowerPtr& tower);

}  // namespace jwb

#endif
