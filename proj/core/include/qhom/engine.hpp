#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qhom/homology.hpp"

namespace qhom {

inline constexpr const char* kEngineVersion = "0.1.0";

/// Default desk-scale cap: refuse when |Q|^{n_max+1} exceeds this unless
/// forced.
inline constexpr std::uint64_t kDefaultBasisGuard = 20000;
/// Hard guard, never crossed.
inline constexpr std::uint64_t kHardBasisGuard = 5000000;

/// One computed homology group, bound to the exact input table by hash.
struct ResultRecord {
  std::string label;
  int size = 0;
  std::string table_hash;
  std::string theory;
  int degree = 0;
  long free_rank = 0;
  std::vector<Int> torsion;
  std::optional<Int> exponent;  // nullopt = torsion-free
  long long ms = 0;

  nlohmann::json to_json() const;
  static ResultRecord from_json(const nlohmann::json& j);
  std::string csv_row() const;
  static std::string csv_header();
};

/// Throws when |Q|^{n_max+1} exceeds the guard (the default one unless
/// force, the hard one always).
void check_basis_guard(int q_size, int n_max, bool force);

/// Homology of the given theory at one degree, with timing.
ResultRecord compute_record(const Quandle& q, Theory theory, int degree,
                            PivotStrategy strategy = PivotStrategy::MinFill);

/// Multi-term homology at one degree; `label` names the distributive set.
ResultRecord compute_multiterm_record(const MultiTermSpec& spec, const std::string& label,
                                      int degree, PivotStrategy strategy = PivotStrategy::MinFill);

/// File-per-record JSON cache keyed by (table hash, theory, degree, engine
/// version). A warm hit returns the stored bytes unchanged.
class ResultCache {
 public:
  explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}

  std::optional<ResultRecord> get(const std::string& table_hash, const std::string& theory,
                                  int degree) const;
  void put(const ResultRecord& rec) const;

  static std::string default_dir();  // QHOM_CACHE or ".qhom-cache"

 private:
  std::string path_for(const std::string& table_hash, const std::string& theory, int degree) const;
  std::string dir_;
};

}  // namespace qhom
