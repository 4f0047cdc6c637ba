#ifndef JWB_TITS_PROCESS_HPP
#define JWB_TITS_PROCESS_HPP

#include "jwb/assoc.hpp"
#include "jwb/cubic_jordan.hpp"

namespace jwb {

// Quadratic etale algebra K = k[w]/(w^2 - t w - s) with the conjugation
// w* = t - w. Covers both a quadratic field (irreducible x^2 - tx - s) and
// the split case k x k (w^2 = w).
struct QuadEtale {
  TowerPtr tower;
  Scalar s, t;

  struct Elem {
    Scalar c0, c1;  // c0 + c1 w
    bool operator==(const Elem& o) const { return c0 == o.c0 && c1 == o.c1; }
  };

  static QuadEtale split(const TowerPtr& tower);
  // From a monic quadratic x^2 + b x + c (so w^2 = -c - b w).
  static QuadEtale from_minpoly(const TowerPtr& tower, const Rat& b, const Rat& c);

  Elem zero() const { return {Scalar::zero(tower), Scalar::zero(tower)}; }
  Elem one() const { return {Scalar::one(tower), Scalar::zero(tower)}; }
  Elem from(const Scalar& v) const { return {v, Scalar::zero(tower)}; }
  Elem gen() const { return {Scalar::zero(tower), Scalar::one(tower)}; }
  // Split case: element with components (x, y) on the idempotents w, 1-w.
  Elem from_pair(const Scalar& x, const Scalar& y) const { return {y, x - y}; }

  Elem add(const Elem& a, const Elem& b) const { return {a.c0 + b.c0, a.c1 + b.c1}; }
  Elem sub(const Elem& a, const Elem& b) const { return {a.c0 - b.c0, a.c1 - b.c1}; }
  Elem neg(const Elem& a) const { return {-a.c0, -a.c1}; }
  Elem mul(const Elem& a, const Elem& b) const {
    return {a.c0 * b.c0 + s * (a.c1 * b.c1), a.c0 * b.c1 + a.c1 * b.c0 + t * (a.c1 * b.c1)};
  }
  Elem conj(const Elem& a) const { return {a.c0 + t * a.c1, -a.c1}; }
  Elem inv(const Elem& a) const;  // throws on non-units
  bool is_base(const Elem& a) const { return a.c1.is_zero(); }
  Scalar to_base(const Elem& a) const;  // asserts is_base
  std::string str(const Elem& a) const;
};

using KElem = QuadEtale::Elem;
using KVec = std::vector<KElem>;

// Associative algebra of K-dimension n with an involution of the second
// kind (semilinear over the conjugation of K) and degree-3 data over K.
class KAlgebra {
 public:
  KAlgebra(QuadEtale k, int n, std::vector<KVec> mult, KVec unit, std::vector<KVec> tau_cols,
           std::vector<KElem> theta, std::vector<KElem> sharp);

  const QuadEtale& field() const { return k_; }
  int dim() const { return n_; }
  const KVec& unit() const { return unit_; }

  KVec mul(const KVec& a, const KVec& b) const;
  KVec tau(const KVec& a) const;  // semilinear involution
  KVec scale(const KElem& c, const KVec& a) const;
  KVec add(const KVec& a, const KVec& b) const;
  KVec sub(const KVec& a, const KVec& b) const;
  bool eq(const KVec& a, const KVec& b) const;

  KElem norm(const KVec& x) const;          // N_B, cubic over K
  KVec adjoint(const KVec& x) const;        // x^{#_B}
  KElem trace_bilinear(const KVec& x, const KVec& y) const;
  KVec kvec_inv_via_adjoint(const KVec& x) const;  // N(x)^{-1} x#

  const KElem& theta_at(int i, int j, int k) const { return theta_[(i * n_ + j) * n_ + k]; }

 private:
  QuadEtale k_;
  int n_;
  std::vector<KVec> mult_;
  KVec unit_;
  std::vector<KVec> tau_;
  std::vector<KElem> theta_;   // n^3 symmetric
  std::vector<KElem> sharp_;   // B_k(i,j), n^3
  std::vector<KElem> tmat_;    // derived trace matrix, n^2
};

// Mat3 over K with the conjugate-transpose involution.
KAlgebra kalgebra_mat3(const QuadEtale& k);
// A + A^op over the split K = k x k with the swap involution.
KAlgebra kalgebra_double(const AssocAlgebra& a);

// The Tits process J(B, H(B,tau), P, N, *) concretized with P = B and
// pairing <v, w*> = v u tau(w); requires tau(u) = u and N_B(u) = mu mu*.
// The resulting k-module is H(B,tau) + B with an explicit k-basis.
class TitsProcess {
 public:
  TitsProcess(KAlgebra b, KVec u, KElem mu);

  const CubicJordanAlgebra& algebra() const { return *alg_; }
  const KAlgebra& b() const { return b_; }
  const std::vector<KVec>& h_basis() const { return h_basis_; }
  const KVec& u() const { return u_; }
  const KElem& mu() const { return mu_; }
  int h_dim() const { return static_cast<int>(h_basis_.size()); }
  int total_dim() const { return h_dim() + 2 * b_.dim(); }

  // Coordinate bridges between the k-module and (a, w) over K.
  std::pair<KVec, KVec> split(const Vec& x) const;
  Vec join(const KVec& a, const KVec& w) const;  // a must be hermitian
  Vec h_coords(const KVec& hermitian) const;

  // The concrete pairing, P-norm, and P-adjoint used by the construction.
  KVec pairing(const KVec& v, const KVec& w) const;  // <v, w*> = v u tau(w)
  KElem p_norm(const KVec& w) const;                 // N(w) = mu N_B(w)
  KVec p_sharp(const KVec& w) const;   // image of w under # : P -> P-dual, as an element of P
  KVec p_sharp_check(const KVec& wd) const;  // #-check : P-dual -> P on a represented element
  KElem p_norm_dual(const KVec& wd) const;   // N-check on P-dual, N*(v*) = mu* N_B(v)*

 private:
  KAlgebra b_;
  KVec u_, u_inv_;
  KElem mu_;
  std::vector<KVec> h_basis_;
  std::vector<std::vector<Rat>> h_solver_;  // row-reduced system for h_coords
  std::vector<int> h_pivots_;
  std::unique_ptr<CubicJordanAlgebra> alg_;

  Vec kvec_to_module(const KVec& v) const;  // 2n k-coordinates of an element of B
};

struct EmbeddingCertificate {
  bool pass = false;
  std::string detail;                 // first mismatch, exact values
  std::vector<std::vector<Rat>> map;  // the bijection, column per first-construction basis vector
};

// Realizes J(A, mu) inside the Tits process over K = k x k with
// B = A + A^op, u = (1,1), mu~ = (mu, mu^{-1}), and certifies that the
// explicit bijection transports the norm, adjoint and base point exactly.
EmbeddingCertificate embed_first_in_process(const AssocAlgebra& a, const Scalar& mu,
                                            long random_vectors = 100);

}  // namespace jwb

#endif
