#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhom/chains.hpp"

namespace qhom {

constexpr std::size_t kDefaultBudget = 10000;

// ---- the proof's chain maps and homotopies ---------------------------------

/// Repeater chain map: |Q| * (x_j, ..., x_j, x_{j+1}, ..., x_n), j copies of
/// x_j. 1 <= j <= n.
Chain f_r(const Quandle& q, int j, const Tuple& t);

/// Symmetrizer chain map: sum_y (y, ..., y, x_{j+1}, ..., x_n), j leading
/// copies of y. 0 <= j <= n.
Chain f_s(const Quandle& q, int j, const Tuple& t);

/// Degree +1 homotopy: sum_y (x_j, ..., x_j, y, x_{j+1}, ..., x_n) with j
/// copies of x_j before y.
Chain homotopy_D(const Quandle& q, int j, const Tuple& t);

/// Degree +1 homotopy: sum_y (x_j, ..., x_j, y, x_j, x_{j+1}, ..., x_n) with
/// j-1 copies of x_j before y. The slot of y is pinned by the identities
/// d_j^{(*_0)} F = f_r^j and d_j^{(*)} F = f_s^{j-1}.
Chain homotopy_F(const Quandle& q, int j, const Tuple& t);

/// G_n = sum_{j=1}^{n} (-1)^j (D_n^j + F_n^j).
Chain composite_G(const Quandle& q, const Tuple& t);

// ---- verification reports ---------------------------------------------------

struct ClauseResult {
  std::string name;
  bool pass = true;
  bool informational = false;  // probe of an index variant: recorded, not gating
  bool exhaustive = true;
  std::size_t checked = 0;
  std::string witness;  // first failing tuple, empty on pass
  std::string lhs, rhs; // both sides expanded at the witness
  std::string note;
};

struct VerificationReport {
  std::string subject;
  std::vector<ClauseResult> clauses;

  bool all_pass() const;
  const ClauseResult* find(const std::string& name) const;
  nlohmann::json to_json() const;
  std::string render_text() const;
};

// ---- identity verifiers ------------------------------------------------------

/// boundary D + D boundary = (-1)^j (f_s^j - f_r^j), exhaustively on degree-n
/// tuples within budget, evenly-spaced deterministic sampling beyond it.
VerificationReport verify_homotopy_identity_D(const Quandle& q, int j, int n,
                                              std::size_t budget = kDefaultBudget);

/// boundary F + F boundary = (-1)^j (f_r^j - f_s^{j-1}).
VerificationReport verify_homotopy_identity_F(const Quandle& q, int j, int n,
                                              std::size_t budget = kDefaultBudget);

/// boundary G_n + G_{n-1} boundary = f_s^n - |Q| Id.
VerificationReport verify_composite_G(const Quandle& q, int n,
                                      std::size_t budget = kDefaultBudget);

/// The identity ledger: clause (1') block equalities for D, (1'') for F,
/// (2) as printed plus nearby index variants (informational), (3) the
/// commutation relations, for all valid indices at degree n.
VerificationReport verify_corollary_identities(const Quandle& q, int n,
                                               std::size_t budget = kDefaultBudget);

/// Face commutation d_i^eps d_j^delta = d_{j-1}^delta d_i^eps for
/// 1 <= i < j <= n, both operation variants.
VerificationReport verify_precubic_relations(const Quandle& q, int n,
                                             std::size_t budget = kDefaultBudget);

// ---- generic precubic homotopy ----------------------------------------------

/// A precubic module with candidate homotopy data, everything given on basis
/// tuples over a finite alphabet and extended linearly. eps is 0 or 1.
struct PrecubicHomotopyData {
  int alphabet = 0;
  std::function<Chain(int eps, int i, const Tuple&)> face;  // degree -1
  std::function<Chain(int eps, int i, const Tuple&)> h;     // degree +1
  std::function<Chain(const Tuple&)> f, g;                  // endpoints
};

/// The (d^{(*_0)}, d^{(*)}, D, F, |Q| Id, f_s^n) instantiation.
PrecubicHomotopyData rack_precubic_data(const Quandle& q);

/// Checks the face families satisfy the precubic relations (throws
/// qhom_error with witness otherwise), then the four homotopy conditions,
/// then independently the chain-homotopy conclusion
/// boundary H' + H' boundary = g - f with H' = sum (-1)^i (h_i^0 + h_i^1).
VerificationReport verify_precubic_homotopy(const PrecubicHomotopyData& data, int n,
                                            std::size_t budget = kDefaultBudget);

// ---- multi-term homotopies ----------------------------------------------------

/// Throws qhom_error naming the first violated theorem hypothesis:
/// coefficient sum zero, a_0 nonzero, trivial first op, quasigroup quandle
/// ops.
void check_multi_term_hypotheses(const MultiTermSpec& spec);

/// Generalized D and F blocks for a multi-quandle (checked hypotheses:
/// coefficient sum zero, a_0 nonzero, trivial first op, quasigroup quandle
/// ops). Throws qhom_error naming the violated hypothesis.
std::pair<Chain, Chain> multi_term_homotopies(const MultiTermSpec& spec, int j, const Tuple& t);

/// boundary D + D boundary = (-1)^j a_0 (f_s^j - f_r^j) and
/// boundary F + F boundary = (-1)^j a_0 (f_r^j - f_s^{j-1}) for the
/// multi-term differential; chaining over j gives the homotopy between
/// a_0 |X| Id and a_0 sum_y (y, ..., y).
VerificationReport verify_multi_term_homotopy(const MultiTermSpec& spec, int j, int n,
                                              std::size_t budget = kDefaultBudget);

}  // namespace qhom
