#ifndef JWB_BUNDLES_HPP
#define JWB_BUNDLES_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jwb/rational.hpp"

namespace jwb::bundles {

// Raised when a tensor product has no registered Krull-Schmidt
// decomposition (e.g. E0 * E0); carries the irreducible subterm.
struct NoRuleApplies : Error {
  explicit NoRuleApplies(const std::string& subterm)
      : Error("no rewrite rule applies to " + subterm), term(subterm) {}
  std::string term;
};

struct ExtensionDecl {
  std::string name;
  int degree = 2;
  bool galois = true;                  // quadratic is always Galois
  bool splitting = false;              // genus 0: splitting field of the quaternion algebra
  std::vector<std::string> aut_names;  // nontrivial automorphisms (1 for quadratic, 2 for cubic)
};

struct SymbolDecl {
  std::string name;
  int order = 0;  // 0 = free, else 2 or 3
  long degree = 0;
  std::string home;  // "" = base curve, else extension name
};

struct IndecDecl {
  std::string name;
  int rank = 2;
  long degree = 0;
  std::string home;
  std::string dual_name;  // dual symbol (often the symbol itself)
  bool absolutely_indec = true;
};

enum class EllipticType { I, II, III };

// Declared curve and Picard-group data: the calculus is purely symbolic, so
// everything it may mention must be declared up front.
class CurveContext {
 public:
  static CurveContext genus0(bool rational);
  static CurveContext elliptic(EllipticType type);

  int genus = 0;
  bool rational = true;  // genus 0 only
  EllipticType type = EllipticType::I;
  std::string name = "ctx";

  void add_extension(ExtensionDecl e);
  void add_symbol(SymbolDecl s);
  void add_indec(IndecDecl d);
  // Image of an extension-home symbol under an automorphism, as a word
  // symbol -> exponent (every extension symbol needs one per automorphism).
  void set_galois_image(const std::string& aut, const std::string& symbol,
                        std::map<std::string, int> image_word);
  void validate() const;  // torsion counts per type, image completeness

  const ExtensionDecl& extension(const std::string& name) const;
  const SymbolDecl& symbol(const std::string& name) const;
  const IndecDecl* find_indec(const std::string& name) const;
  bool has_extension(const std::string& name) const;
  bool has_symbol(const std::string& name) const;
  const std::map<std::string, int>& galois_image(const std::string& aut,
                                                 const std::string& symbol) const;

  std::map<std::string, ExtensionDecl> extensions;
  std::map<std::string, SymbolDecl> symbols;
  std::map<std::string, IndecDecl> indecs;
  std::map<std::string, std::map<std::string, int>> galois;  // key "aut/symbol"
};

// A line bundle as a formal word: integer degree part (genus 0: multiples
// of the minimal point P0; over an extension: its own integer grading) plus
// a multiset of declared symbols.
struct LineWord {
  std::string home;
  long deg = 0;
  std::map<std::string, int> sym;

  bool trivial() const { return deg == 0 && sym.empty(); }
};

struct Atom {
  enum class Kind { Line, F, E0, Ind, Trace };
  Kind kind = Kind::Line;
  int r = 0;            // F rank
  bool e0dual = false;  // E0-dual twist family (kept distinct from E0; see R6)
  std::string ind;      // Ind symbol name
  LineWord twist;       // the line itself for Kind::Line
  std::string trace_ext;
  std::shared_ptr<Atom> payload;  // single canonical atom over trace_ext

  const std::string& home() const { return twist.home; }
};

bool atom_eq(const Atom& a, const Atom& b);
bool atom_less(const Atom& a, const Atom& b);  // (rank, degree, kind, word)
int atom_rank(const CurveContext& ctx, const Atom& a);
long atom_degree(const CurveContext& ctx, const Atom& a);
std::string atom_str(const CurveContext& ctx, const Atom& a);

// Krull-Schmidt normal form: a canonically sorted multiset of atoms.
struct BundleNF {
  std::vector<Atom> atoms;

  int rank(const CurveContext& ctx) const;
  long degree(const CurveContext& ctx) const;
  std::string str(const CurveContext& ctx) const;  // deterministic, golden-file stable
};

bool ks_equal(const BundleNF& a, const BundleNF& b);

// Formal expression tree over atoms.
struct Expr {
  enum class Op { Leaf, Sum, Tensor, Dual, Det, Hom, End, Trace, Res, Pow };
  Op op = Op::Leaf;
  Atom atom;               // Leaf
  std::vector<Expr> kids;
  std::string ext;         // Trace / Res
  long pw = 1;             // Pow: direct-sum power
};

// Expression builders.
Expr e_line(long deg, std::map<std::string, int> sym = {});
Expr e_O();
Expr e_F(int r);
Expr e_E0(bool dualized = false);
Expr e_ind(const std::string& name);
Expr e_sum(std::vector<Expr> kids);
Expr e_tensor(std::vector<Expr> kids);
Expr e_dual(Expr e);
Expr e_det(Expr e);
Expr e_hom(Expr a, Expr b);
Expr e_end(Expr e);
Expr e_trace(const std::string& ext, Expr e);
Expr e_res(const std::string& ext, Expr e);
Expr e_pow(Expr e, long k);

Expr operator+(Expr a, Expr b);
Expr operator*(Expr a, Expr b);

// Applies the rewrite system to a fixpoint, innermost first, and returns the
// canonical multiset of indecomposables. Throws NoRuleApplies on products
// outside the calculus.
BundleNF normalize(const Expr& e, const CurveContext& ctx);

// Module shapes of the two constructions: A + P + P-dual and A + P.
BundleNF first_tits_shape(const Expr& a, const Expr& p, const CurveContext& ctx);
BundleNF tits_process_shape(const Expr& a, const Expr& p, const CurveContext& ctx);

// Galois conjugate of an atom over its home extension.
Atom galois_apply(const CurveContext& ctx, const std::string& aut, const Atom& a);

// Expression parser for the CLI grammar; reports the failing offset.
Expr parse_expr(const std::string& text, const CurveContext& ctx);

}  // namespace jwb::bundles

#endif
