#include "qhom/homology.hpp"

#include <algorithm>
#include <set>

namespace qhom {

namespace {

using Dense = std::vector<std::vector<Int>>;

Dense identity_matrix(long n) {
  Dense id(n, std::vector<Int>(n, 0));
  for (long i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

struct DenseSnf {
  std::vector<Int> factors;
  Dense U, V;
};

// Textbook SNF by unimodular row/column operations. At the end of step t the
// pivot divides every entry of the trailing submatrix, so the divisibility
// chain holds by construction.
DenseSnf dense_snf(Dense a, bool transforms, PivotStrategy strategy) {
  const long m = static_cast<long>(a.size());
  const long n = m ? static_cast<long>(a[0].size()) : 0;
  DenseSnf out;
  if (transforms) {
    out.U = identity_matrix(m);
    out.V = identity_matrix(n);
  }

  auto swap_rows = [&](long i, long j) {
    std::swap(a[i], a[j]);
    if (transforms) std::swap(out.U[i], out.U[j]);
  };
  auto swap_cols = [&](long i, long j) {
    for (long r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    if (transforms)
      for (long r = 0; r < n; ++r) std::swap(out.V[r][i], out.V[r][j]);
  };
  auto row_sub = [&](long r, long src, const Int& q) {  // row r -= q * row src
    for (long c = 0; c < n; ++c) a[r][c] -= q * a[src][c];
    if (transforms)
      for (long c = 0; c < m; ++c) out.U[r][c] -= q * out.U[src][c];
  };
  auto col_sub = [&](long c, long src, const Int& q) {  // col c -= q * col src
    for (long r = 0; r < m; ++r) a[r][c] -= q * a[r][src];
    if (transforms)
      for (long r = 0; r < n; ++r) out.V[r][c] -= q * out.V[r][src];
  };
  auto negate_row = [&](long r) {
    for (long c = 0; c < n; ++c) a[r][c] = -a[r][c];
    if (transforms)
      for (long c = 0; c < m; ++c) out.U[r][c] = -out.U[r][c];
  };

  for (long t = 0; t < std::min(m, n); ++t) {
    // pivot search in the trailing submatrix
    long pr = -1, pc = -1;
    for (long r = t; r < m; ++r)
      for (long c = t; c < n; ++c) {
        if (a[r][c] == 0) continue;
        if (pr < 0 || (strategy == PivotStrategy::MinFill && abs(a[r][c]) < abs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
        if (strategy == PivotStrategy::FirstNonzero) goto found;
        if (abs(a[pr][pc]) == 1) goto found;
      }
  found:
    if (pr < 0) break;
    if (pr != t) swap_rows(pr, t);
    if (pc != t) swap_cols(pc, t);

    for (bool dirty = true; dirty;) {
      dirty = false;
      for (long r = t + 1; r < m; ++r) {
        if (a[r][t] == 0) continue;
        Int q = a[r][t] / a[t][t];
        row_sub(r, t, q);
        if (a[r][t] != 0) {  // remainder became the smaller pivot
          swap_rows(r, t);
          dirty = true;
          break;
        }
      }
      if (dirty) continue;
      for (long c = t + 1; c < n; ++c) {
        if (a[t][c] == 0) continue;
        Int q = a[t][c] / a[t][t];
        col_sub(c, t, q);
        if (a[t][c] != 0) {
          swap_cols(c, t);
          dirty = true;
          break;
        }
      }
      if (dirty) continue;
      // force divisibility of the trailing submatrix by the pivot
      for (long r = t + 1; r < m && !dirty; ++r)
        for (long c = t + 1; c < n && !dirty; ++c)
          if (a[r][c] % a[t][t] != 0) {
            row_sub(t, r, Int(-1));  // row t += row r, reintroduces column work
            dirty = true;
          }
    }
    if (a[t][t] < 0) negate_row(t);
    out.factors.push_back(a[t][t]);
  }
  while (!out.factors.empty() && out.factors.back() == 0) out.factors.pop_back();
  return out;
}

// Sparse phase: peel off +-1 pivots by exact row elimination (each such
// pivot contributes an invariant factor 1); hand the residue to the dense
// routine.
struct SparseWork {
  std::vector<std::map<long, Int>> rows;
  std::vector<std::set<long>> col_rows;
  std::vector<char> row_alive, col_alive;

  explicit SparseWork(const SparseIntMatrix& m)
      : rows(m.rows()), col_rows(m.cols()), row_alive(m.rows(), 1), col_alive(m.cols(), 1) {
    for (const auto& [rc, v] : m.entries()) {
      rows[rc.first][rc.second] = v;
      col_rows[rc.second].insert(rc.first);
    }
  }

  void set(long r, long c, Int v) {
    auto& row = rows[r];
    if (v == 0) {
      if (row.erase(c)) col_rows[c].erase(r);
    } else {
      if (row.emplace(c, v).second)
        col_rows[c].insert(r);
      else
        row[c] = std::move(v);
    }
  }
};

long unit_pivots(SparseWork& w, PivotStrategy strategy) {
  long ones = 0;
  for (;;) {
    long pr = -1, pc = -1;
    unsigned long best_cost = 0;
    for (long r = 0; r < static_cast<long>(w.rows.size()); ++r) {
      if (!w.row_alive[r]) continue;
      for (const auto& [c, v] : w.rows[r]) {
        if (v != 1 && v != -1) continue;
        unsigned long cost = (w.rows[r].size() - 1) * (w.col_rows[c].size() - 1);
        if (pr < 0 || cost < best_cost) {
          pr = r;
          pc = c;
          best_cost = cost;
        }
        if (strategy == PivotStrategy::FirstNonzero || best_cost == 0) goto chosen;
      }
    }
  chosen:
    if (pr < 0) return ones;

    const Int pv = w.rows[pr][pc];  // +-1
    const auto pivot_row = w.rows[pr];
    const auto in_col = w.col_rows[pc];
    for (long r : in_col) {
      if (r == pr) continue;
      Int mult = w.rows[r][pc] * pv;  // entry / pivot
      for (const auto& [c2, v2] : pivot_row) {
        Int nv = -mult * v2;
        auto it = w.rows[r].find(c2);
        if (it != w.rows[r].end()) nv += it->second;
        w.set(r, c2, std::move(nv));
      }
    }
    for (const auto& [c2, v2] : pivot_row) w.col_rows[c2].erase(pr);
    w.rows[pr].clear();
    w.row_alive[pr] = 0;
    w.col_alive[pc] = 0;
    ++ones;
  }
}

}  // namespace

SmithDecomposition smith_normal_form(const SparseIntMatrix& m, bool keep_transforms,
                                     PivotStrategy strategy) {
  SmithDecomposition out;
  const bool small = m.rows() * m.cols() <= 4096;
  if (keep_transforms || small) {
    Dense a(m.rows(), std::vector<Int>(m.cols(), 0));
    for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
    DenseSnf d = dense_snf(std::move(a), keep_transforms, strategy);
    out.factors = std::move(d.factors);
    if (keep_transforms) {
      out.U = std::move(d.U);
      out.V = std::move(d.V);
    }
    return out;
  }

  SparseWork w(m);
  long ones = unit_pivots(w, strategy);
  out.factors.assign(ones, Int(1));

  // compress the residue into a dense matrix
  std::vector<long> live_cols;
  std::vector<long> col_pos(m.cols(), -1);
  for (long c = 0; c < m.cols(); ++c)
    if (w.col_alive[c] && !w.col_rows[c].empty()) {
      col_pos[c] = static_cast<long>(live_cols.size());
      live_cols.push_back(c);
    }
  Dense rest;
  for (long r = 0; r < static_cast<long>(w.rows.size()); ++r) {
    if (!w.row_alive[r] || w.rows[r].empty()) continue;
    std::vector<Int> row(live_cols.size(), 0);
    for (const auto& [c, v] : w.rows[r]) row[col_pos[c]] = v;
    rest.push_back(std::move(row));
  }
  if (!rest.empty()) {
    DenseSnf d = dense_snf(std::move(rest), false, strategy);
    for (auto& f : d.factors) out.factors.push_back(std::move(f));
  }
  return out;
}

HomologyGroup homology(const SparseIntMatrix& boundary_out, const SparseIntMatrix& boundary_in,
                       PivotStrategy strategy) {
  if (boundary_out.cols() != boundary_in.rows())
    throw qhom_error("boundary maps not composable: " + std::to_string(boundary_out.cols()) +
                     " columns vs " + std::to_string(boundary_in.rows()) + " rows");
  SparseIntMatrix prod = boundary_out.multiply(boundary_in);
  if (!prod.is_zero())
    throw qhom_error("broken complex: boundary composition nonzero at column " +
                     std::to_string(prod.entries().begin()->first.second));

  SmithDecomposition snf_out = smith_normal_form(boundary_out, false, strategy);
  SmithDecomposition snf_in = smith_normal_form(boundary_in, false, strategy);

  HomologyGroup h;
  h.free_rank = boundary_out.cols() - snf_out.rank() - snf_in.rank();
  for (const auto& d : snf_in.factors)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

ModHomology homology_mod(const SparseIntMatrix& boundary_out, const SparseIntMatrix& boundary_in,
                         const Int& m) {
  if (m < 2) throw qhom_error("modulus must be >= 2");
  HomologyGroup h = homology(boundary_out, boundary_in);
  SmithDecomposition snf_out = smith_normal_form(boundary_out);

  ModHomology out;
  // free part tensored with Z/m
  for (long i = 0; i < h.free_rank; ++i) out.divisors.push_back(m);
  // torsion of H_n tensored with Z/m
  for (const auto& d : h.torsion) {
    Int g = gcd(d, m);
    if (g > 1) out.divisors.push_back(g);
  }
  // Tor(H_{n-1}, Z/m): torsion of the previous group = factors of boundary_out
  for (const auto& d : snf_out.factors) {
    Int g = gcd(d, m);
    if (g > 1) out.divisors.push_back(g);
  }
  std::sort(out.divisors.begin(), out.divisors.end());
  out.dimension = static_cast<long>(out.divisors.size());
  return out;
}

std::optional<Int> annihilation_exponent(const HomologyGroup& h) {
  if (h.torsion.empty()) return std::nullopt;
  return h.torsion.back();
}

std::vector<Int> primary_decomposition(const std::vector<Int>& invariant_factors) {
  std::vector<Int> out;
  for (Int d : invariant_factors) {
    for (Int p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      Int pk = 1;
      while (d % p == 0) {
        pk *= p;
        d /= p;
      }
      out.push_back(pk);
    }
    if (d > 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

long rank_mod_p(const SparseIntMatrix& m, long p) {
  std::vector<std::vector<long>> a(m.rows(), std::vector<long>(m.cols(), 0));
  for (const auto& [rc, v] : m.entries()) {
    Int r = v % p;
    if (r < 0) r += p;
    a[rc.first][rc.second] = r.convert_to<long>();
  }
  long rank = 0;
  for (long c = 0; c < m.cols() && rank < m.rows(); ++c) {
    long piv = -1;
    for (long r = rank; r < m.rows(); ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    // normalize pivot to 1
    long inv = 1, base = a[rank][c] % p, e = p - 2;  // Fermat, p prime
    long acc = base;
    for (; e; e >>= 1) {
      if (e & 1) inv = (inv * acc) % p;
      acc = (acc * acc) % p;
    }
    for (long cc = c; cc < m.cols(); ++cc) a[rank][cc] = (a[rank][cc] * inv) % p;
    for (long r = 0; r < m.rows(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      long f = a[r][c];
      for (long cc = c; cc < m.cols(); ++cc)
        a[r][cc] = ((a[r][cc] - f * a[rank][cc]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace qhom
