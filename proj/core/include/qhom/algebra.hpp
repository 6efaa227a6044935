#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhom {

using Element = int;

struct qhom_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// n x n operation table over elements {0..n-1}; entry at (a,b) is a*b.
class BinaryOp {
 public:
  BinaryOp(int n, std::vector<Element> entries);

  /// a *_0 b = a.
  static BinaryOp trivial(int n);

  int size() const { return n_; }
  Element at(Element a, Element b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
  const std::vector<Element>& table() const { return table_; }

  bool operator==(const BinaryOp&) const = default;

 private:
  int n_;
  std::vector<Element> table_;
};

struct WitnessTriple {
  Element a = -1, b = -1, c = -1;
};

struct AxiomCheck {
  bool ok = true;
  std::optional<WitnessTriple> witness;  // lexicographically first failure
};

/// Verdicts for the axiom ladder shelf -> rack -> quandle, plus the
/// quasigroup (left-division) property.
struct AxiomReport {
  AxiomCheck shelf;       // (a*b)*c == (a*c)*(b*c)
  AxiomCheck rack;        // every right translation is a bijection
  AxiomCheck quandle;     // a*a == a
  AxiomCheck quasigroup;  // a*x == b uniquely solvable in x

  bool is_shelf() const { return shelf.ok; }
  bool is_rack() const { return shelf.ok && rack.ok; }
  bool is_quandle() const { return shelf.ok && rack.ok && quandle.ok; }
};

AxiomReport validate(const BinaryOp& op);

/// A validated finite quandle with cached orbit partition, quasigroup flag
/// and inverse right translations. Immutable after construction.
class Quandle {
 public:
  /// Throws qhom_error (with witness) unless op satisfies the quandle axioms.
  Quandle(BinaryOp op, std::string label);

  int size() const { return op_.size(); }
  Element star(Element a, Element b) const { return op_.at(a, b); }
  /// a \bar* b, the inverse right translation.
  Element unstar(Element a, Element b) const { return inv_[static_cast<size_t>(a) * size() + b]; }

  const BinaryOp& op() const { return op_; }
  const std::vector<std::vector<Element>>& orbits() const { return orbits_; }
  bool quasigroup() const { return quasigroup_; }
  bool connected() const { return orbits_.size() == 1; }
  const std::string& label() const { return label_; }

 private:
  BinaryOp op_;
  std::vector<Element> inv_;
  std::vector<std::vector<Element>> orbits_;
  bool quasigroup_;
  std::string label_;
};

/// Orbit partition of {0..n-1} under a -> a*b and a -> a \bar* b for all b.
/// Blocks are sorted; block order is by smallest member. Requires a rack.
std::vector<std::vector<Element>> orbits(const BinaryOp& op);

/// Order of the permutation group generated by all right translations,
/// by naive closure. Intended for small quandles (|group| up to a few
/// thousand).
unsigned long inner_group_order(const Quandle& q);

// ---- catalog -------------------------------------------------------------

/// R_n: Z_n with a*b = 2b - a mod n.
Quandle dihedral(int n);

/// Takasaki quandle of the abelian group Z_{f1} x ... x Z_{fk}, elements
/// enumerated lexicographically by coordinates, a*b = 2b - a componentwise.
Quandle takasaki(const std::vector<int>& factors);

/// Z_n with a*b = t*a + (1-t)*b mod n; requires gcd(t, n) = 1.
Quandle alexander(int n, int t);

/// Conjugation quandle on the given permutations: a*b = b^{-1} a b.
/// The list must be closed under conjugation; elements are indexed by
/// their position in the input.
Quandle conjugation(const std::vector<std::vector<int>>& class_elements);

/// The conjugation quandle on the 6 transpositions of the symmetric group
/// on 4 letters, in lexicographic order of the transposed pairs.
Quandle conj_s4_transpositions();

/// Parse a catalog name: "R<n>", "T(<n1>x<n2>x...)", "Alex(<n>,<t>)",
/// "ConjS4T". Throws qhom_error if the name is not recognized.
Quandle quandle_by_name(const std::string& name);

/// Load a quandle from the plain-text table format:
///   line 1: n
///   next n lines: n space-separated entries, row a holds a*0 .. a*(n-1)
///   '#' lines are comments.
/// Parse errors carry the 1-based line number.
Quandle load_quandle_file(const std::string& path);

/// Catalog lookup falling back to file load if the name is not recognized
/// but the path exists.
Quandle resolve_quandle(const std::string& name_or_path);

/// SHA-256 of the canonical table serialization ("n\n" then rows), hex.
std::string table_sha256(const BinaryOp& op);

std::string sha256_hex(const std::string& data);

// ---- distributive sets ---------------------------------------------------

/// An ordered family of mutually right-distributive operations on the same
/// carrier; ops[0] must be the trivial operation.
struct DistributiveSet {
  std::vector<BinaryOp> ops;

  int size() const { return ops.empty() ? 0 : ops.front().size(); }
};

struct PairFailure {
  int i = -1, j = -1;  // op indices
  WitnessTriple witness;
};

struct DistributiveReport {
  std::vector<PairFailure> pair_failures;       // (a*_i b)*_j c != (a*_j c)*_i (b*_j c)
  std::vector<AxiomReport> op_reports;          // per op, index aligned
  bool trivial_first = true;                    // ops[0] is a*b = a
  bool ok() const;                              // all pairs pass, ops[i>=1] quandles
};

/// Exhaustive pairwise distributivity and per-op axiom check.
/// Throws qhom_error on carrier-size mismatch.
DistributiveReport validate_distributive_set(const DistributiveSet& s);

}  // namespace qhom
