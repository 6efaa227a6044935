#pragma once

#include <optional>
#include <vector>

#include "qhom/chains.hpp"

namespace qhom {

enum class PivotStrategy { MinFill, FirstNonzero };

/// Invariant factors d_1 | d_2 | ... | d_r of an integer matrix (zeros
/// trimmed), optionally with unimodular U, V such that U*A*V = diag(d).
struct SmithDecomposition {
  std::vector<Int> factors;  // positive, divisibility chain
  long rank() const { return static_cast<long>(factors.size()); }

  // dense transforms, only populated when requested
  std::optional<std::vector<std::vector<Int>>> U, V;
};

/// Smith normal form over Z. keep_transforms switches to the dense
/// transform-tracking path (intended for small matrices).
SmithDecomposition smith_normal_form(const SparseIntMatrix& m, bool keep_transforms = false,
                                     PivotStrategy strategy = PivotStrategy::MinFill);

struct HomologyGroup {
  long free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility chain

  bool operator==(const HomologyGroup&) const = default;
};

/// H = ker(boundary_out) / im(boundary_in). Checks boundary_out *
/// boundary_in = 0 and throws (with the first offending column) otherwise.
HomologyGroup homology(const SparseIntMatrix& boundary_out, const SparseIntMatrix& boundary_in,
                       PivotStrategy strategy = PivotStrategy::MinFill);

/// Homology with Z/m coefficients via universal coefficients: the group is
/// a direct sum of cyclic pieces Z/gcd(d, m); `dimension` counts the
/// summands (the F_p-dimension when m is prime).
struct ModHomology {
  long dimension = 0;
  std::vector<Int> divisors;  // cyclic orders > 1, one per summand
};

ModHomology homology_mod(const SparseIntMatrix& boundary_out, const SparseIntMatrix& boundary_in,
                         const Int& m);

/// The exponent of the torsion subgroup (largest invariant factor), or
/// nullopt when the group is torsion-free.
std::optional<Int> annihilation_exponent(const HomologyGroup& h);

/// Convert invariant factors to primary (prime-power) decomposition,
/// sorted ascending. For display.
std::vector<Int> primary_decomposition(const std::vector<Int>& invariant_factors);

/// Rank of the matrix over F_p by Gaussian elimination (p prime). Used as
/// an independent oracle for the mod-m homology path.
long rank_mod_p(const SparseIntMatrix& m, long p);

}  // namespace qhom
