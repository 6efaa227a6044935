#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qhom/algebra.hpp"

namespace qhom {

using Int = boost::multiprecision::cpp_int;

/// A degree-n basis element of C_n: an n-tuple of quandle elements.
using Tuple = std::vector<Element>;

/// Formal integer linear combination of tuples of a common degree.
/// Zero coefficients are never stored.
class Chain {
 public:
  explicit Chain(int degree) : degree_(degree) {}
  Chain(int degree, const Tuple& t, Int coeff = 1) : degree_(degree) { add(t, coeff); }

  int degree() const { return degree_; }
  const std::map<Tuple, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Tuple& t, const Int& coeff);

  Chain& operator+=(const Chain& o);
  Chain& operator-=(const Chain& o);
  Chain& operator*=(const Int& k);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(const Int& k, Chain c) { return c *= k; }
  bool operator==(const Chain& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

  std::string str() const;

 private:
  int degree_;
  std::map<Tuple, Int> terms_;
};

/// Lexicographic rank of a tuple among all |Q|^n tuples of its degree.
std::uint64_t tuple_rank(const Tuple& t, int q);
Tuple tuple_unrank(std::uint64_t r, int degree, int q);

// ---- face maps and boundaries ---------------------------------------------

/// Trivial face d_i^{(*_0)}: delete the i-th entry (1-based).
Tuple face_trivial(int i, const Tuple& t);

/// Operation face d_i^{(*)}: act on the prefix by the deleted entry,
/// (x_1*x_i, ..., x_{i-1}*x_i, x_{i+1}, ..., x_n).
Tuple face_star(const BinaryOp& op, int i, const Tuple& t);

/// Face under op variant: op == nullptr means the trivial face.
Tuple face(const BinaryOp* op, int i, const Tuple& t);

/// One-term differential: sum_{i=1}^n (-1)^i d_i^{(*)}, with the trivial
/// operation when op == nullptr. Degree-1 chains map to zero (C_0 = 0).
Chain one_term_boundary(const BinaryOp* op, const Chain& c);

/// Rack differential: sum (-1)^i (d_i^{(*_0)} - d_i^{(*)}).
Chain rack_boundary(const Quandle& q, const Chain& c);

/// True iff two adjacent entries coincide.
bool is_degenerate(const Tuple& t);

/// The differential sum a_i partial^{(*_i)} of a multi-quandle.
struct MultiTermSpec {
  DistributiveSet dset;
  std::vector<long long> coeffs;  // aligned with dset.ops

  MultiTermSpec(DistributiveSet d, std::vector<long long> c);
  int carrier_size() const { return dset.size(); }
};

Chain multi_term_boundary(const MultiTermSpec& spec, const Chain& c);

// ---- sparse matrices -------------------------------------------------------

/// Exact-integer sparse matrix in (row, col) -> value form; no zeros stored.
class SparseIntMatrix {
 public:
  SparseIntMatrix(long rows, long cols) : rows_(rows), cols_(cols) {}

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const std::map<std::pair<long, long>, Int>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  void add(long r, long c, const Int& v);
  Int at(long r, long c) const;

  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;
  bool is_zero() const { return entries_.empty(); }

  /// "rows cols nnz" header, then "row col value" lines sorted by (row, col).
  std::string to_triplet_text() const;
  static SparseIntMatrix from_triplet_text(const std::string& text);

  bool operator==(const SparseIntMatrix&) const = default;

 private:
  long rows_, cols_;
  std::map<std::pair<long, long>, Int> entries_;
};

// ---- complexes -------------------------------------------------------------

enum class Theory { Rack, Degenerate, Quandle, ReducedQuandle };

std::string theory_name(Theory t);
Theory theory_from_name(const std::string& name);

/// Basis tuples of the theory at the given degree, in lexicographic order.
/// Rack: all tuples. Degenerate: tuples with an adjacent repeat.
/// Quandle / ReducedQuandle: tuples without one.
std::vector<Tuple> theory_basis(int q_size, Theory theory, int degree);

/// Matrix of the degree-n differential in the lexicographic tuple basis.
/// For ReducedQuandle at n = 1 this is the augmentation row (all ones);
/// otherwise ReducedQuandle agrees with Quandle. Throws if n < 1, or if a
/// degenerate-theory boundary leaves the degenerate span.
SparseIntMatrix boundary_matrix(const Quandle& q, Theory theory, int n);

/// Matrix of the multi-term differential on the full tuple basis.
SparseIntMatrix boundary_matrix(const MultiTermSpec& spec, int n);

}  // namespace qhom
