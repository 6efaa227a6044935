// qhom: validate quandles, compute their homology, and machine-check the
// chain-homotopy identities behind the torsion-annihilation results.
//
// Exit codes: 0 success (or an expected failure), 1 a checked statement was
// violated, 2 usage or input error.
#include <atomic>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qhom/engine.hpp"
#include "qhom/homotopy.hpp"

using namespace qhom;

namespace {

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw qhom_error("unknown format: " + s);
}

void print_records(const std::vector<ResultRecord>& recs, Format fmt) {
  switch (fmt) {
    case Format::Json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : recs) arr.push_back(r.to_json());
      std::cout << arr.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      std::cout << ResultRecord::csv_header() << "\n";
      for (const auto& r : recs) std::cout << r.csv_row() << "\n";
      break;
    case Format::Text:
      for (const auto& r : recs) {
        std::cout << r.label << " " << r.theory << " H_" << r.degree << ": free rank "
                  << r.free_rank << ", torsion";
        if (r.torsion.empty())
          std::cout << " none";
        else
          for (const auto& d : r.torsion) std::cout << " Z/" << d;
        std::cout << ", exponent " << (r.exponent ? r.exponent->str() : std::string("free"))
                  << " (" << r.ms << " ms)\n";
      }
      break;
  }
}

// Compute one record per degree, up to `jobs` at a time; results are
// returned in degree order regardless of completion order.
std::vector<ResultRecord> records_for_range(
    int n_min, int n_max, unsigned jobs,
    const std::function<ResultRecord(int)>& compute) {
  const int count = n_max - n_min + 1;
  std::vector<ResultRecord> out(count);
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) out[i] = compute(n_min + i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::future<void>> workers;
  std::mutex error_mutex;
  std::exception_ptr first_error;
  for (unsigned w = 0; w < std::min<unsigned>(jobs, count); ++w)
    workers.push_back(std::async(std::launch::async, [&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          out[i] = compute(n_min + i);
        } catch (...) {
          std::scoped_lock lk(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    }));
  for (auto& w : workers) w.get();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

struct DegreeRange {
  int lo = 1, hi = 1;
};

DegreeRange parse_degrees(const std::string& s) {
  DegreeRange r;
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(s);
    } else {
      r.lo = std::stoi(s.substr(0, dots));
      r.hi = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw qhom_error("bad degree range: " + s + " (expected N or A..B)");
  }
  if (r.lo < 1 || r.hi < r.lo) throw qhom_error("bad degree range: " + s);
  return r;
}

int cmd_validate(const std::string& source, bool inner) {
  Quandle q = [&] {
    try {
      return resolve_quandle(source);
    } catch (const qhom_error&) {
      // surface axiom failure detail for explicit tables too
      if (source.find('/') != std::string::npos || source.find('.') != std::string::npos)
        return load_quandle_file(source);
      throw;
    }
  }();
  AxiomReport rep = validate(q.op());
  auto verdict = [](const AxiomCheck& c) { return c.ok ? "yes" : "no"; };
  std::cout << q.label() << ": size " << q.size() << "\n"
            << "  shelf:      " << verdict(rep.shelf) << "\n"
            << "  rack:       " << verdict(rep.rack) << "\n"
            << "  quandle:    " << verdict(rep.quandle) << "\n"
            << "  quasigroup: " << verdict(rep.quasigroup) << "\n"
            << "  orbits:     " << q.orbits().size() << (q.connected() ? " (connected)" : "")
            << "\n";
  if (inner) std::cout << "  inner group order: " << inner_group_order(q) << "\n";
  return 0;
}

int cmd_homology(const std::string& source, const std::string& theory_str,
                 const std::string& degrees, Format fmt, unsigned jobs, bool force, bool no_cache,
                 const std::string& strategy_str) {
  Quandle q = resolve_quandle(source);
  Theory theory = theory_from_name(theory_str);
  DegreeRange range = parse_degrees(degrees);
  PivotStrategy strategy =
      strategy_str == "first-nonzero" ? PivotStrategy::FirstNonzero : PivotStrategy::MinFill;
  check_basis_guard(q.size(), range.hi, force);

  std::optional<ResultCache> cache;
  if (!no_cache) cache.emplace(ResultCache::default_dir());
  const std::string hash = table_sha256(q.op());
  const std::string tname = theory_name(theory);

  auto recs = records_for_range(range.lo, range.hi, jobs, [&](int n) {
    if (cache)
      if (auto hit = cache->get(hash, tname, n)) return *hit;
    ResultRecord rec = compute_record(q, theory, n, strategy);
    if (cache) cache->put(rec);
    return rec;
  });
  print_records(recs, fmt);
  return 0;
}

int cmd_verify(const std::string& source, const std::string& identity, int degree,
               std::size_t budget, bool sample, bool expect_failure, Format fmt) {
  Quandle q = resolve_quandle(source);
  std::uint64_t space = 1;
  for (int i = 0; i < degree; ++i) space *= static_cast<std::uint64_t>(q.size());
  if (space > budget && !sample)
    throw qhom_error("basis of " + std::to_string(space) + " tuples exceeds budget " +
                     std::to_string(budget) + "; pass --sample to check a deterministic sample");
  const bool needs_quasigroup =
      identity == "D" || identity == "F" || identity == "G" || identity == "corollary";
  if (needs_quasigroup && !q.quasigroup() && !expect_failure)
    throw qhom_error(q.label() +
                     " is not a quasigroup; the identity is expected to fail there "
                     "(pass --expect-failure to probe it anyway)");

  std::vector<VerificationReport> reports;
  if (identity == "D" || identity == "F") {
    for (int j = 1; j <= degree; ++j)
      reports.push_back(identity == "D" ? verify_homotopy_identity_D(q, j, degree, budget)
                                        : verify_homotopy_identity_F(q, j, degree, budget));
  } else if (identity == "G") {
    reports.push_back(verify_composite_G(q, degree, budget));
  } else if (identity == "corollary") {
    reports.push_back(verify_corollary_identities(q, degree, budget));
  } else if (identity == "precubic") {
    reports.push_back(verify_precubic_homotopy(rack_precubic_data(q), degree, budget));
  } else {
    throw qhom_error("unknown identity: " + identity + " (use D, F, G, corollary, or precubic)");
  }

  bool all = true;
  for (const auto& rep : reports) {
    all = all && rep.all_pass();
    if (fmt == Format::Json)
      std::cout << rep.to_json().dump(2) << "\n";
    else
      std::cout << rep.render_text();
  }
  if (expect_failure) {
    if (all) {
      std::cout << "expected a failure but every clause passed\n";
      return 1;
    }
    return 0;
  }
  return all ? 0 : 1;
}

int cmd_theorem(const std::vector<std::string>& sources, int n_max, const std::string& theory_str,
                unsigned jobs, bool force, bool no_cache) {
  Theory theory = theory_from_name(theory_str);
  std::optional<ResultCache> cache;
  if (!no_cache) cache.emplace(ResultCache::default_dir());
  bool violated = false;
  std::cout << "quandle,degree,free_rank,torsion,exponent,divides_|Q|\n";
  for (const auto& source : sources) {
    Quandle q = resolve_quandle(source);
    check_basis_guard(q.size(), n_max, force);
    const std::string hash = table_sha256(q.op());
    const std::string tname = theory_name(theory);
    const bool applicable = q.quasigroup();
    const Int bound = applicable ? Int(q.size()) : Int(inner_group_order(q));
    auto recs = records_for_range(1, n_max, jobs, [&](int n) {
      if (cache)
        if (auto hit = cache->get(hash, tname, n)) return *hit;
      ResultRecord rec = compute_record(q, theory, n);
      if (cache) cache->put(rec);
      return rec;
    });
    for (const auto& rec : recs) {
      bool ok = true;
      for (const auto& d : rec.torsion) ok = ok && (bound % d == 0);
      std::string flag = applicable ? (ok ? "yes" : "no") : "N-A";
      if (applicable && !ok) violated = true;
      std::ostringstream tor;
      for (size_t i = 0; i < rec.torsion.size(); ++i) tor << (i ? ";" : "") << rec.torsion[i];
      std::cout << rec.label << "," << rec.degree << "," << rec.free_rank << "," << tor.str()
                << "," << (rec.exponent ? rec.exponent->str() : std::string("free")) << "," << flag;
      if (!applicable)
        std::cout << " (not a quasigroup; compared against inner group order " << bound << ": "
                  << (ok ? "annihilates" : "does NOT annihilate") << ")";
      std::cout << "\n";
    }
  }
  if (violated) std::cout << "THEOREM VIOLATION: some quasigroup torsion escapes |Q|\n";
  return violated ? 1 : 0;
}

int cmd_multiterm(const std::vector<std::string>& sources, const std::vector<long long>& coeffs,
                  int n_max, unsigned jobs) {
  if (sources.empty()) throw qhom_error("multiterm needs at least one operation");
  std::vector<BinaryOp> ops;
  std::string label = "(*0";
  for (const auto& s : sources) {
    Quandle q = resolve_quandle(s);
    ops.push_back(q.op());
    label += "," + q.label();
  }
  label += ")";
  DistributiveSet dset;
  dset.ops.push_back(BinaryOp::trivial(ops[0].size()));
  for (auto& op : ops) dset.ops.push_back(std::move(op));
  DistributiveReport drep = validate_distributive_set(dset);
  if (!drep.ok()) {
    std::string msg = "operations are not mutually distributive";
    if (!drep.pair_failures.empty()) {
      const auto& pf = drep.pair_failures.front();
      msg += ": ops (" + std::to_string(pf.i) + "," + std::to_string(pf.j) + ") at (" +
             std::to_string(pf.witness.a) + "," + std::to_string(pf.witness.b) + "," +
             std::to_string(pf.witness.c) + ")";
    }
    throw qhom_error(msg);
  }
  MultiTermSpec spec(std::move(dset), coeffs);
  check_multi_term_hypotheses(spec);
  check_basis_guard(spec.carrier_size(), n_max, false);
  const Int bound = Int(std::abs(coeffs.at(0))) * spec.carrier_size();

  bool violated = false;
  std::cout << "system,degree,free_rank,torsion,exponent,divides_a0|X|\n";
  auto recs = records_for_range(1, n_max, jobs,
                                [&](int n) { return compute_multiterm_record(spec, label, n); });
  for (const auto& rec : recs) {
    bool ok = true;
    for (const auto& d : rec.torsion) ok = ok && (bound % d == 0);
    if (!ok) violated = true;
    std::ostringstream tor;
    for (size_t i = 0; i < rec.torsion.size(); ++i) tor << (i ? ";" : "") << rec.torsion[i];
    std::cout << rec.label << "," << rec.degree << "," << rec.free_rank << "," << tor.str() << ","
              << (rec.exponent ? rec.exponent->str() : std::string("free")) << ","
              << (ok ? "yes" : "no") << "\n";
  }
  if (violated) std::cout << "THEOREM VIOLATION: some torsion escapes a0*|X| = " << bound << "\n";
  return violated ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact homology of finite quandles and multi-quandles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kEngineVersion);

  std::string source, theory = "rack", degrees = "1..3", format = "text", identity = "D";
  std::string strategy = "min-fill";
  std::vector<std::string> sources;
  std::vector<long long> coeffs;
  unsigned jobs = 1;
  int degree = 2, n_max = 3;
  std::size_t budget = kDefaultBudget;
  bool force = false, no_cache = false, sample = false, expect_failure = false, inner = false;

  auto* validate_cmd = app.add_subcommand("validate", "check the axioms of a quandle table");
  validate_cmd->add_option("quandle", source, "catalog name (R3, T(2x4), Alex(5,2), ConjS4T) or file")
      ->required();
  validate_cmd->add_flag("--inner-group", inner, "also report the inner automorphism group order");

  auto* hom_cmd = app.add_subcommand("homology", "integral homology over a degree range");
  hom_cmd->add_option("quandle", source)->required();
  hom_cmd->add_option("--theory", theory, "rack|degenerate|quandle|reduced-quandle");
  hom_cmd->add_option("--degrees", degrees, "N or A..B");
  hom_cmd->add_option("--format", format, "text|json|csv");
  hom_cmd->add_option("--jobs", jobs, "degrees computed concurrently");
  hom_cmd->add_option("--strategy", strategy, "min-fill|first-nonzero pivot choice");
  hom_cmd->add_flag("--force", force, "allow bases beyond the default guard");
  hom_cmd->add_flag("--no-cache", no_cache);

  auto* verify_cmd = app.add_subcommand("verify", "machine-check the chain-homotopy identities");
  verify_cmd->add_option("quandle", source)->required();
  verify_cmd->add_option("--identity", identity, "D|F|G|corollary|precubic");
  verify_cmd->add_option("--degree", degree, "chain degree n");
  verify_cmd->add_option("--budget", budget, "max tuples checked per clause");
  verify_cmd->add_option("--format", format, "text|json");
  verify_cmd->add_flag("--sample", sample, "allow deterministic sampling beyond the budget");
  verify_cmd->add_flag("--expect-failure", expect_failure,
                       "succeed when a witness is found (negative controls)");

  auto* thm_cmd =
      app.add_subcommand("theorem", "does |Q| annihilate the torsion? one row per degree");
  thm_cmd->add_option("quandles", sources, "catalog names or files")->required();
  thm_cmd->add_option("--n-max", n_max, "largest degree");
  thm_cmd->add_option("--theory", theory, "rack|degenerate|quandle|reduced-quandle");
  thm_cmd->add_option("--jobs", jobs);
  thm_cmd->add_flag("--force", force);
  thm_cmd->add_flag("--no-cache", no_cache);

  auto* multi_cmd = app.add_subcommand(
      "multiterm", "multi-term homology of mutually distributive operations (trivial op implied)");
  multi_cmd->add_option("ops", sources, "operations *_1..*_k (the trivial *_0 is prepended)")
      ->required();
  multi_cmd->add_option("--coeffs", coeffs, "a_0 a_1 ... a_k, summing to zero")->required();
  multi_cmd->add_option("--n-max", n_max);
  multi_cmd->add_option("--jobs", jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(source, inner);
    if (*hom_cmd)
      return cmd_homology(source, theory, degrees, parse_format(format), jobs, force, no_cache,
                          strategy);
    if (*verify_cmd)
      return cmd_verify(source, identity, degree, budget, sample, expect_failure,
                        parse_format(format));
    if (*thm_cmd) return cmd_theorem(sources, n_max, theory, jobs, force, no_cache);
    if (*multi_cmd) return cmd_multiterm(sources, coeffs, n_max, jobs);
  } catch (const qhom_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
