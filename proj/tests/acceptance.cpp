// Acceptance gate: one pass/fail line per criterion, exit 0 only if all pass.
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "qhom/engine.hpp"
#include "qhom/homotopy.hpp"

using namespace qhom;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                  start)
                .count();
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << title << " ("
            << ms << " ms)";
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!ok) ++failures;
}

HomologyGroup group_of(const Quandle& q, Theory th, int n, PivotStrategy strategy) {
  return homology(boundary_matrix(q, th, n), boundary_matrix(q, th, n + 1), strategy);
}

bool divides(const Int& d, const Int& m) { return d != 0 && m % d == 0; }

long ipow(long b, int e) {
  long r = 1;
  while (e--) r *= b;
  return r;
}

std::string torsion_str(const std::vector<Int>& t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

// ---- exact helpers for the matrix criteria ----------------------------------

using Dense = std::vector<std::vector<Int>>;

Int det(const Dense& a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Int sum = 0;
  for (size_t k = 0; k < n; ++k) {
    if (a[0][k] == 0) continue;
    Dense minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Int> row;
      for (size_t c = 0; c < n; ++c)
        if (c != k) row.push_back(a[r][c]);
      minor.push_back(std::move(row));
    }
    Int term = a[0][k] * det(minor);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

std::vector<Int> snf_by_minor_gcds(const SparseIntMatrix& m) {
  const long rows = m.rows(), cols = m.cols();
  Dense a(rows, std::vector<Int>(cols, 0));
  for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
  std::vector<Int> gcds;
  for (long k = 1; k <= std::min(rows, cols); ++k) {
    Int g = 0;
    std::vector<long> ri(k), ci(k);
    std::iota(ri.begin(), ri.end(), 0);
    for (bool more_r = true; more_r;) {
      std::iota(ci.begin(), ci.end(), 0);
      for (bool more_c = true; more_c;) {
        Dense sub(k, std::vector<Int>(k));
        for (long i = 0; i < k; ++i)
          for (long j = 0; j < k; ++j) sub[i][j] = a[ri[i]][ci[j]];
        g = gcd(g, det(sub));
        more_c = false;
        for (long i = k - 1; i >= 0; --i)
          if (ci[i] < cols - (k - i)) {
            ++ci[i];
            for (long j = i + 1; j < k; ++j) ci[j] = ci[j - 1] + 1;
            more_c = true;
            break;
          }
      }
      more_r = false;
      for (long i = k - 1; i >= 0; --i)
        if (ri[i] < rows - (k - i)) {
          ++ri[i];
          for (long j = i + 1; j < k; ++j) ri[j] = ri[j - 1] + 1;
          more_r = true;
          break;
        }
    }
    if (g == 0) break;
    gcds.push_back(g);
  }
  std::vector<Int> factors;
  for (size_t k = 0; k < gcds.size(); ++k)
    factors.push_back(k == 0 ? gcds[0] : gcds[k] / gcds[k - 1]);
  return factors;
}

SparseIntMatrix random_matrix(std::mt19937& rng, long rows, long cols) {
  std::uniform_int_distribution<int> val(-9, 9);
  SparseIntMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) m.add(r, c, Int(val(rng)));
  return m;
}

SparseIntMatrix scramble(std::mt19937& rng, const SparseIntMatrix& m) {
  const long rows = m.rows(), cols = m.cols();
  Dense a(rows, std::vector<Int>(cols, 0));
  for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<long> rr(0, rows - 1), cc(0, cols - 1);
  for (int step = 0; step < 40; ++step) {
    long i = rr(rng), j = rr(rng);
    Int k(coef(rng));
    if (i != j)
      for (long c = 0; c < cols; ++c) a[i][c] += k * a[j][c];
    i = cc(rng);
    j = cc(rng);
    Int k2(coef(rng));
    if (i != j)
      for (long r = 0; r < rows; ++r) a[r][i] += k2 * a[r][j];
  }
  SparseIntMatrix out(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) out.add(r, c, a[r][c]);
  return out;
}

}  // namespace

int main() {
  // 1. free-rank formulas in terms of the orbit count
  criterion(1, "free ranks match the orbit-count formulas", [](std::string& detail) {
    struct Row {
      Quandle q;
      int n_max;
    };
    const std::vector<Row> rows = {
        {dihedral(3), 4}, {dihedral(5), 3}, {alexander(5, 2), 3}, {dihedral(4), 3}};
    for (const auto& [q, n_max] : rows) {
      const long orb = static_cast<long>(q.orbits().size());
      for (int n = 1; n <= n_max; ++n) {
        long rack = group_of(q, Theory::Rack, n, PivotStrategy::MinFill).free_rank;
        long quandle = group_of(q, Theory::Quandle, n, PivotStrategy::MinFill).free_rank;
        long degen = group_of(q, Theory::Degenerate, n, PivotStrategy::MinFill).free_rank;
        long want_rack = ipow(orb, n);
        long want_quandle = orb * ipow(orb - 1, n - 1);
        if (rack != want_rack || quandle != want_quandle || degen != want_rack - want_quandle) {
          detail = q.label() + " n=" + std::to_string(n) + ": got (" + std::to_string(rack) + "," +
                   std::to_string(quandle) + "," + std::to_string(degen) + ")";
          return false;
        }
      }
    }
    return true;
  });

  // 2. every torsion invariant factor of rack homology divides |Q|
  criterion(2, "rack torsion divides the quandle order", [](std::string& detail) {
    struct Row {
      Quandle q;
      int n_max;
    };
    const std::vector<Row> rows = {
        {dihedral(3), 5}, {dihedral(5), 4}, {alexander(5, 2), 4}, {alexander(7, 3), 3}};
    for (const auto& [q, n_max] : rows) {
      check_basis_guard(q.size(), n_max, /*force=*/true);
      for (int n = 1; n <= n_max; ++n) {
        ResultRecord rec = compute_record(q, Theory::Rack, n);
        for (const auto& d : rec.torsion)
          if (!divides(d, Int(q.size()))) {
            detail = q.label() + " n=" + std::to_string(n) + ": factor " + d.str() +
                     " does not divide " + std::to_string(q.size());
            return false;
          }
      }
    }
    return true;
  });

  // 3. degree-3 rack torsion of R3 exists with exponent exactly 3,
  //    double-computed under both pivot strategies
  criterion(3, "R3 degree-3 torsion has exponent exactly 3 (two strategies)",
            [](std::string& detail) {
              Quandle r3 = dihedral(3);
              HomologyGroup a = group_of(r3, Theory::Rack, 3, PivotStrategy::MinFill);
              HomologyGroup b = group_of(r3, Theory::Rack, 3, PivotStrategy::FirstNonzero);
              if (a != b) {
                detail = "strategies disagree: " + torsion_str(a.torsion) + " vs " +
                         torsion_str(b.torsion);
                return false;
              }
              auto exp = annihilation_exponent(a);
              if (a.torsion.empty() || !exp || *exp != 3) {
                detail = "torsion " + torsion_str(a.torsion);
                return false;
              }
              return true;
            });

  // 4. reduced quandle homology: free rank 0, exponent divides |Q|
  criterion(4, "reduced quandle homology is torsion annihilated by |Q|", [](std::string& detail) {
    struct Row {
      Quandle q;
      int n_max;
    };
    const std::vector<Row> rows = {{dihedral(3), 4}, {dihedral(5), 3}};
    for (const auto& [q, n_max] : rows)
      for (int n = 1; n <= n_max; ++n) {
        HomologyGroup h = group_of(q, Theory::ReducedQuandle, n, PivotStrategy::MinFill);
        bool ok = h.free_rank == 0;
        for (const auto& d : h.torsion) ok = ok && divides(d, Int(q.size()));
        if (!ok) {
          detail = q.label() + " n=" + std::to_string(n) + ": rank " +
                   std::to_string(h.free_rank) + ", torsion " + torsion_str(h.torsion);
          return false;
        }
      }
    return true;
  });

  // 5. homotopy identity suite, exhaustive, with an even-order negative control
  criterion(5, "homotopy identities hold exhaustively; R4 control fails", [](std::string& detail) {
    struct Row {
      Quandle q;
      int n_max;
    };
    const std::vector<Row> rows = {{dihedral(3), 4}, {dihedral(5), 3}, {alexander(7, 3), 2}};
    for (const auto& [q, n_max] : rows) {
      PrecubicHomotopyData data = rack_precubic_data(q);
      for (int n = 1; n <= n_max; ++n) {
        std::vector<VerificationReport> reps;
        for (int j = 1; j <= n; ++j) {
          reps.push_back(verify_homotopy_identity_D(q, j, n));
          reps.push_back(verify_homotopy_identity_F(q, j, n));
        }
        reps.push_back(verify_composite_G(q, n));
        reps.push_back(verify_precubic_homotopy(data, n));
        for (const auto& rep : reps) {
          if (!rep.all_pass()) {
            detail = rep.subject + " failed";
            return false;
          }
          for (const auto& c : rep.clauses)
            if (!c.informational && !c.exhaustive) {
              detail = rep.subject + ": clause " + c.name + " was sampled, not exhaustive";
              return false;
            }
        }
      }
    }
    VerificationReport control = verify_homotopy_identity_D(dihedral(4), 1, 1);
    if (control.all_pass()) {
      detail = "R4 negative control unexpectedly passed";
      return false;
    }
    for (const auto& c : control.clauses)
      if (!c.pass && c.witness.empty()) {
        detail = "R4 failure lacks a witness";
        return false;
      }
    return true;
  });

  // 6. boundary-squared vanishes matrix-level; face commutation relations hold
  criterion(6, "d∘d = 0 at matrix level and face relations hold", [](std::string& detail) {
    struct Row {
      Quandle q;
      int n_max;
    };
    const std::vector<Row> rows = {{dihedral(3), 4},
                                   {dihedral(5), 3},
                                   {alexander(5, 2), 3},
                                   {dihedral(4), 3},
                                   {alexander(7, 3), 2}};
    for (const auto& [q, n_max] : rows)
      for (Theory th : {Theory::Rack, Theory::Degenerate, Theory::Quandle, Theory::ReducedQuandle})
        for (int n = 1; n <= n_max; ++n) {
          SparseIntMatrix out = boundary_matrix(q, th, n);
          SparseIntMatrix in = boundary_matrix(q, th, n + 1);
          if (!out.multiply(in).is_zero()) {
            detail = q.label() + " " + theory_name(th) + " n=" + std::to_string(n) +
                     ": composition nonzero";
            return false;
          }
        }
    for (const auto& q : {dihedral(3), dihedral(5)})
      for (int n = 2; n <= 4; ++n) {
        VerificationReport rep = verify_precubic_relations(q, n);
        if (!rep.all_pass()) {
          detail = rep.subject + " failed";
          return false;
        }
      }
    return true;
  });

  // 7. multi-term torsion is annihilated by a_0 * |X|; (1,-1) specializes to rack
  criterion(7, "multi-term torsion divides a0*|X|; (1,-1) matches rack", [](std::string& detail) {
    MultiTermSpec mixed({{BinaryOp::trivial(5), alexander(5, 2).op(), alexander(5, 3).op()}},
                        {2, -1, -1});
    for (int n = 1; n <= 3; ++n) {
      ResultRecord rec = compute_multiterm_record(mixed, "two-affine", n);
      for (const auto& d : rec.torsion)
        if (!divides(d, Int(10))) {
          detail = "n=" + std::to_string(n) + ": factor " + d.str() + " does not divide 10";
          return false;
        }
    }
    Quandle r3 = dihedral(3);
    MultiTermSpec rack_spec({{BinaryOp::trivial(3), r3.op()}}, {1, -1});
    for (int n = 1; n <= 5; ++n) {
      ResultRecord mt = compute_multiterm_record(rack_spec, "rack-two-term", n);
      ResultRecord rk = compute_record(r3, Theory::Rack, n);
      if (mt.free_rank != rk.free_rank || mt.torsion != rk.torsion) {
        detail = "n=" + std::to_string(n) + ": (1,-1) gave rank " + std::to_string(mt.free_rank) +
                 " torsion " + torsion_str(mt.torsion) + ", rack gave rank " +
                 std::to_string(rk.free_rank) + " torsion " + torsion_str(rk.torsion);
        return false;
      }
    }
    return true;
  });

  // 8. exploratory report on the six transpositions under conjugation
  criterion(8, "transposition quandle degree-3 report produced", [](std::string& detail) {
    Quandle q = conj_s4_transpositions();
    long inner = inner_group_order(q);
    if (inner != 24) {
      detail = "inner group order " + std::to_string(inner) + ", expected 24";
      return false;
    }
    ResultRecord rec = compute_record(q, Theory::Quandle, 3);
    bool is_z24 = rec.free_rank == 0 && rec.torsion == std::vector<Int>{24};
    for (const auto& d : rec.torsion)
      if (!divides(d, Int(inner))) {
        detail = "factor " + d.str() + " not annihilated by the inner group order";
        return false;
      }
    detail = "H_3 = Z^" + std::to_string(rec.free_rank) + " + " + torsion_str(rec.torsion) +
             ", equals Z/24: " + (is_z24 ? "yes" : "no");
    return true;
  });

  // 9. Smith normal form unit suite
  criterion(9, "SNF: scramble canonicity, exact transforms, minor-gcd oracle",
            [](std::string& detail) {
              std::mt19937 rng(20240817);
              for (int trial = 0; trial < 100; ++trial) {
                SparseIntMatrix m = random_matrix(rng, 6, 6);
                auto base = smith_normal_form(m).factors;
                if (smith_normal_form(scramble(rng, m)).factors != base) {
                  detail = "scramble trial " + std::to_string(trial) + " changed the factors";
                  return false;
                }
              }
              for (long size = 2; size <= 8; ++size) {
                SparseIntMatrix m = random_matrix(rng, size, size);
                SmithDecomposition d = smith_normal_form(m, true);
                if (!d.U || !d.V || abs(det(*d.U)) != 1 || abs(det(*d.V)) != 1) {
                  detail = "transforms not unimodular at size " + std::to_string(size);
                  return false;
                }
                Dense a(size, std::vector<Int>(size, 0));
                for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
                for (long r = 0; r < size; ++r)
                  for (long c = 0; c < size; ++c) {
                    Int sum = 0;
                    for (long i = 0; i < size; ++i)
                      for (long j = 0; j < size; ++j) sum += (*d.U)[r][i] * a[i][j] * (*d.V)[j][c];
                    Int expect = (r == c && r < d.rank()) ? d.factors[r] : Int(0);
                    if (sum != expect) {
                      detail = "U*A*V mismatch at size " + std::to_string(size);
                      return false;
                    }
                  }
              }
              for (int trial = 0; trial < 40; ++trial) {
                long rows = 1 + trial % 5, cols = 1 + (trial * 7) % 6;
                SparseIntMatrix m = random_matrix(rng, rows, cols);
                if (smith_normal_form(m).factors != snf_by_minor_gcds(m)) {
                  detail = "minor-gcd oracle disagrees on trial " + std::to_string(trial);
                  return false;
                }
              }
              return true;
            });

  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criterion(s) failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
