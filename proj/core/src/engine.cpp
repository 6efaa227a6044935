#include "qhom/engine.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qhom {

nlohmann::json ResultRecord::to_json() const {
  nlohmann::json j;
  j["quandle"] = {{"label", label}, {"size", size}, {"table_sha256", table_hash}};
  j["theory"] = theory;
  j["degree"] = degree;
  j["free_rank"] = free_rank;
  j["torsion"] = nlohmann::json::array();
  for (const auto& d : torsion) j["torsion"].push_back(std::stoll(d.str()));
  if (exponent)
    j["exponent"] = std::stoll(exponent->str());
  else
    j["exponent"] = "free";
  j["ms"] = ms;
  j["engine"] = kEngineVersion;
  return j;
}

ResultRecord ResultRecord::from_json(const nlohmann::json& j) {
  ResultRecord r;
  r.label = j.at("quandle").at("label").get<std::string>();
  r.size = j.at("quandle").at("size").get<int>();
  r.table_hash = j.at("quandle").at("table_sha256").get<std::string>();
  r.theory = j.at("theory").get<std::string>();
  r.degree = j.at("degree").get<int>();
  r.free_rank = j.at("free_rank").get<long>();
  for (const auto& d : j.at("torsion")) r.torsion.push_back(Int(d.get<long long>()));
  if (j.at("exponent").is_number()) r.exponent = Int(j.at("exponent").get<long long>());
  r.ms = j.at("ms").get<long long>();
  return r;
}

std::string ResultRecord::csv_header() {
  return "label,size,table_sha256,theory,degree,free_rank,torsion,exponent,ms";
}

std::string ResultRecord::csv_row() const {
  std::ostringstream os;
  os << label << "," << size << "," << table_hash << "," << theory << "," << degree << ","
     << free_rank << ",";
  for (size_t i = 0; i < torsion.size(); ++i) os << (i ? ";" : "") << torsion[i].str();
  os << "," << (exponent ? exponent->str() : "free") << "," << ms;
  return os.str();
}

void check_basis_guard(int q_size, int n_max, bool force) {
  Int est = 1;
  for (int i = 0; i <= n_max; ++i) est *= q_size;
  if (est > Int(kHardBasisGuard))
    throw qhom_error("refusing: estimated basis " + est.str() +
                     " exceeds the hard guard (" + std::to_string(kHardBasisGuard) +
                     "); lower the degree");
  if (!force && est > Int(kDefaultBasisGuard))
    throw qhom_error("refusing: estimated basis " + est.str() +
                     " exceeds the default guard (" + std::to_string(kDefaultBasisGuard) +
                     "); rerun with --force or lower the degree");
}

namespace {

ResultRecord finish(ResultRecord rec, const SparseIntMatrix& out, const SparseIntMatrix& in,
                    PivotStrategy strategy,
                    const std::chrono::steady_clock::time_point& start) {
  HomologyGroup h = homology(out, in, strategy);
  rec.free_rank = h.free_rank;
  rec.torsion = h.torsion;
  rec.exponent = annihilation_exponent(h);
  rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
               .count();
  return rec;
}

}  // namespace

ResultRecord compute_record(const Quandle& q, Theory theory, int degree, PivotStrategy strategy) {
  auto start = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.label = q.label();
  rec.size = q.size();
  rec.table_hash = table_sha256(q.op());
  rec.theory = theory_name(theory);
  rec.degree = degree;
  SparseIntMatrix out = boundary_matrix(q, theory, degree);
  // the incoming boundary at degree+1 never sees the augmentation row
  Theory in_theory = (theory == Theory::ReducedQuandle) ? Theory::Quandle : theory;
  SparseIntMatrix in = boundary_matrix(q, in_theory, degree + 1);
  return finish(std::move(rec), out, in, strategy, start);
}

ResultRecord compute_multiterm_record(const MultiTermSpec& spec, const std::string& label,
                                      int degree, PivotStrategy strategy) {
  auto start = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.label = label;
  rec.size = spec.carrier_size();
  std::ostringstream hash_src;
  for (const auto& op : spec.dset.ops) hash_src << table_sha256(op);
  for (long long a : spec.coeffs) hash_src << "," << a;
  rec.table_hash = sha256_hex(hash_src.str());
  std::ostringstream th;
  th << "multiterm(";
  for (size_t i = 0; i < spec.coeffs.size(); ++i) th << (i ? "," : "") << spec.coeffs[i];
  th << ")";
  rec.theory = th.str();
  rec.degree = degree;
  SparseIntMatrix out = boundary_matrix(spec, degree);
  SparseIntMatrix in = boundary_matrix(spec, degree + 1);
  return finish(std::move(rec), out, in, strategy, start);
}

// ---- cache -----------------------------------------------------------------

std::string ResultCache::default_dir() {
  if (const char* env = std::getenv("QHOM_CACHE")) return env;
  return ".qhom-cache";
}

std::string ResultCache::path_for(const std::string& table_hash, const std::string& theory,
                                  int degree) const {
  std::string t = theory;
  for (char& c : t)
    if (c == '(' || c == ')' || c == ',' || c == '-') c = '_';
  return dir_ + "/" + table_hash.substr(0, 16) + "-" + t + "-" + std::to_string(degree) + "-v" +
         kEngineVersion + ".json";
}

std::optional<ResultRecord> ResultCache::get(const std::string& table_hash,
                                             const std::string& theory, int degree) const {
  std::ifstream in(path_for(table_hash, theory, degree));
  if (!in) return std::nullopt;
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  ResultRecord rec = ResultRecord::from_json(j);
  if (rec.table_hash != table_hash) return std::nullopt;  // hash collision in the short key
  return rec;
}

void ResultCache::put(const ResultRecord& rec) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  std::ofstream out(path_for(rec.table_hash, rec.theory, rec.degree));
  out << rec.to_json().dump(2) << "\n";
}

}  // namespace qhom
