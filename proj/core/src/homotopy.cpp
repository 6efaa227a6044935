#include "qhom/homotopy.hpp"

#include <numeric>
#include <sstream>

namespace qhom {

namespace {

std::string tuple_str(const Tuple& t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

// f_r, f_s and the homotopies only need the carrier size, not the quandle
// structure; the multi-term verifier reuses these.
Chain repeater(int q_size, int j, const Tuple& t) {
  const int n = static_cast<int>(t.size());
  if (j < 1 || j > n) throw qhom_error("f_r index out of range: j=" + std::to_string(j));
  Tuple u = t;
  for (int k = 0; k < j; ++k) u[k] = t[j - 1];
  return Chain(n, u, Int(q_size));
}

Chain symmetrizer(int q_size, int j, const Tuple& t) {
  const int n = static_cast<int>(t.size());
  if (j < 0 || j > n) throw qhom_error("f_s index out of range: j=" + std::to_string(j));
  Chain out(n);
  Tuple u = t;
  for (Element y = 0; y < q_size; ++y) {
    for (int k = 0; k < j; ++k) u[k] = y;
    out.add(u, 1);
  }
  return out;
}

Chain block_D(int q_size, int j, const Tuple& t) {
  const int n = static_cast<int>(t.size());
  if (j < 1 || j > n) throw qhom_error("D index out of range: j=" + std::to_string(j));
  Chain out(n + 1);
  for (Element y = 0; y < q_size; ++y) {
    Tuple u;
    u.reserve(n + 1);
    for (int k = 0; k < j; ++k) u.push_back(t[j - 1]);
    u.push_back(y);
    for (int k = j; k < n; ++k) u.push_back(t[k]);
    out.add(u, 1);
  }
  return out;
}

Chain block_F(int q_size, int j, const Tuple& t) {
  const int n = static_cast<int>(t.size());
  if (j < 1 || j > n) throw qhom_error("F index out of range: j=" + std::to_string(j));
  Chain out(n + 1);
  for (Element y = 0; y < q_size; ++y) {
    Tuple u;
    u.reserve(n + 1);
    for (int k = 0; k < j - 1; ++k) u.push_back(t[j - 1]);
    u.push_back(y);
    u.push_back(t[j - 1]);
    for (int k = j; k < n; ++k) u.push_back(t[k]);
    out.add(u, 1);
  }
  return out;
}

using TupleOp = std::function<Chain(const Tuple&)>;

Chain apply_linear(const TupleOp& op, const Chain& c, int out_degree) {
  Chain out(out_degree);
  for (const auto& [t, v] : c.terms()) {
    Chain img = op(t);
    img *= v;
    out += img;
  }
  return out;
}

// Enumerate degree-n tuples: exhaustive when q^n fits the budget, otherwise
// an evenly spaced deterministic sample of `budget` ranks.
struct TupleRange {
  int q, n;
  std::size_t budget;

  std::uint64_t total() const {
    std::uint64_t tot = 1;
    for (int i = 0; i < n; ++i) tot *= static_cast<std::uint64_t>(q);
    return tot;
  }
  bool exhaustive() const { return total() <= budget; }

  template <class Fn>
  std::size_t visit(Fn&& fn) const {  // fn(tuple) -> bool keep_going
    const std::uint64_t tot = total();
    std::size_t checked = 0;
    if (exhaustive()) {
      for (std::uint64_t r = 0; r < tot; ++r, ++checked)
        if (!fn(tuple_unrank(r, n, q))) return checked + 1;
    } else {
      for (std::size_t k = 0; k < budget; ++k, ++checked) {
        std::uint64_t r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(tot) * k) / budget);
        if (!fn(tuple_unrank(r, n, q))) return checked + 1;
      }
    }
    return checked;
  }
};

// Run one clause: op_lhs and op_rhs produce chains per tuple; record the
// lexicographically first mismatch.
ClauseResult check_clause(const std::string& name, const TupleRange& range,
                          const std::function<Chain(const Tuple&)>& lhs,
                          const std::function<Chain(const Tuple&)>& rhs) {
  ClauseResult res;
  res.name = name;
  res.exhaustive = range.exhaustive();
  res.checked = range.visit([&](const Tuple& t) {
    Chain l = lhs(t);
    Chain r = rhs(t);
    if (l == r) return true;
    res.pass = false;
    res.witness = tuple_str(t);
    res.lhs = l.str();
    res.rhs = r.str();
    return false;
  });
  return res;
}

}  // namespace

Chain f_r(const Quandle& q, int j, const Tuple& t) { return repeater(q.size(), j, t); }
Chain f_s(const Quandle& q, int j, const Tuple& t) { return symmetrizer(q.size(), j, t); }
Chain homotopy_D(const Quandle& q, int j, const Tuple& t) { return block_D(q.size(), j, t); }
Chain homotopy_F(const Quandle& q, int j, const Tuple& t) { return block_F(q.size(), j, t); }

Chain composite_G(const Quandle& q, const Tuple& t) {
  const int n = static_cast<int>(t.size());
  Chain out(n + 1);
  for (int j = 1; j <= n; ++j) {
    Chain part = homotopy_D(q, j, t);
    part += homotopy_F(q, j, t);
    if (j % 2) part *= Int(-1);
    out += part;
  }
  return out;
}

// ---- reports ----------------------------------------------------------------

bool VerificationReport::all_pass() const {
  for (const auto& c : clauses)
    if (!c.informational && !c.pass) return false;
  return true;
}

const ClauseResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : clauses)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["subject"] = subject;
  j["pass"] = all_pass();
  j["clauses"] = nlohmann::json::array();
  for (const auto& c : clauses) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["informational"] = c.informational;
    jc["exhaustive"] = c.exhaustive;
    jc["checked"] = c.checked;
    if (!c.pass) {
      jc["witness"] = c.witness;
      jc["lhs"] = c.lhs;
      jc["rhs"] = c.rhs;
    }
    if (!c.note.empty()) jc["note"] = c.note;
    j["clauses"].push_back(std::move(jc));
  }
  return j;
}

std::string VerificationReport::render_text() const {
  std::ostringstream os;
  os << subject << "\n";
  for (const auto& c : clauses) {
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << " (" << c.checked
       << (c.exhaustive ? " tuples, exhaustive" : " tuples, sampled") << ")";
    if (c.informational) os << " [informational]";
    if (!c.note.empty()) os << " -- " << c.note;
    os << "\n";
    if (!c.pass) {
      os << "        witness " << c.witness << "\n";
      os << "        lhs = " << c.lhs << "\n";
      os << "        rhs = " << c.rhs << "\n";
    }
  }
  return os.str();
}

// ---- identity verifiers -------------------------------------------------------

namespace {

// D^j and F^j vanish below degree j: the graded operators are only defined
// from C_j upward.
Chain graded_D(const Quandle& q, int j, const Chain& c) {
  if (c.degree() < j) return Chain(c.degree() + 1);
  return apply_linear([&](const Tuple& t) { return homotopy_D(q, j, t); }, c, c.degree() + 1);
}

Chain graded_F(const Quandle& q, int j, const Chain& c) {
  if (c.degree() < j) return Chain(c.degree() + 1);
  return apply_linear([&](const Tuple& t) { return homotopy_F(q, j, t); }, c, c.degree() + 1);
}

}  // namespace

VerificationReport verify_homotopy_identity_D(const Quandle& q, int j, int n, std::size_t budget) {
  if (j < 1 || j > n) throw qhom_error("D identity: need 1 <= j <= n");
  VerificationReport rep;
  rep.subject = q.label() + ": D identity, j=" + std::to_string(j) + ", n=" + std::to_string(n);
  TupleRange range{q.size(), n, budget};
  auto lhs = [&](const Tuple& t) {
    Chain dD = rack_boundary(q, homotopy_D(q, j, t));
    Chain Dd = graded_D(q, j, rack_boundary(q, Chain(n, t)));
    return dD + Dd;
  };
  auto rhs = [&](const Tuple& t) {
    Chain r = f_s(q, j, t) - f_r(q, j, t);
    if (j % 2) r *= Int(-1);
    return r;
  };
  auto clause = check_clause("dD + Dd = (-1)^j (f_s^j - f_r^j)", range, lhs, rhs);
  if (!clause.pass && !q.quasigroup())
    clause.note = "input is not a quasigroup quandle: sum_y x*y = sum_y y fails";
  rep.clauses.push_back(std::move(clause));
  return rep;
}

VerificationReport verify_homotopy_identity_F(const Quandle& q, int j, int n, std::size_t budget) {
  if (j < 1 || j > n) throw qhom_error("F identity: need 1 <= j <= n");
  VerificationReport rep;
  rep.subject = q.label() + ": F identity, j=" + std::to_string(j) + ", n=" + std::to_string(n);
  TupleRange range{q.size(), n, budget};
  auto lhs = [&](const Tuple& t) {
    Chain dF = rack_boundary(q, homotopy_F(q, j, t));
    Chain Fd = graded_F(q, j, rack_boundary(q, Chain(n, t)));
    return dF + Fd;
  };
  auto rhs = [&](const Tuple& t) {
    Chain r = f_r(q, j, t) - f_s(q, j - 1, t);
    if (j % 2) r *= Int(-1);
    return r;
  };
  auto clause = check_clause("dF + Fd = (-1)^j (f_r^j - f_s^{j-1})", range, lhs, rhs);
  if (!clause.pass && !q.quasigroup())
    clause.note = "input is not a quasigroup quandle: sum_y x*y = sum_y y fails";
  rep.clauses.push_back(std::move(clause));
  return rep;
}

VerificationReport verify_composite_G(const Quandle& q, int n, std::size_t budget) {
  if (n < 1) throw qhom_error("G identity: need n >= 1");
  VerificationReport rep;
  rep.subject = q.label() + ": composite G identity, n=" + std::to_string(n);
  TupleRange range{q.size(), n, budget};
  auto lhs = [&](const Tuple& t) {
    Chain dG = rack_boundary(q, composite_G(q, t));
    Chain bd = rack_boundary(q, Chain(n, t));
    Chain Gd(n);
    if (n >= 2) Gd = apply_linear([&](const Tuple& u) { return composite_G(q, u); }, bd, n);
    return dG + Gd;
  };
  auto rhs = [&](const Tuple& t) {
    Chain r = f_s(q, n, t);
    r.add(t, -Int(q.size()));
    return r;
  };
  rep.clauses.push_back(check_clause("dG + Gd = f_s^n - |Q| Id", range, lhs, rhs));
  return rep;
}

VerificationReport verify_precubic_relations(const Quandle& q, int n, std::size_t budget) {
  if (n < 2) throw qhom_error("precubic relations need n >= 2");
  VerificationReport rep;
  rep.subject = q.label() + ": precubic face relations, n=" + std::to_string(n);
  const BinaryOp* variants[2] = {nullptr, &q.op()};
  const char* vname[2] = {"*0", "*"};
  TupleRange range{q.size(), n, budget};
  for (int e = 0; e < 2; ++e)
    for (int d = 0; d < 2; ++d)
      for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          std::ostringstream name;
          name << "d_" << i << "^(" << vname[e] << ") d_" << j << "^(" << vname[d] << ") = d_"
               << (j - 1) << "^(" << vname[d] << ") d_" << i << "^(" << vname[e] << ")";
          rep.clauses.push_back(check_clause(
              name.str(), range,
              [&, e, d, i, j](const Tuple& t) {
                return Chain(n - 2, face(variants[e], i, face(variants[d], j, t)));
              },
              [&, e, d, i, j](const Tuple& t) {
                return Chain(n - 2, face(variants[d], j - 1, face(variants[e], i, t)));
              }));
        }
  return rep;
}

VerificationReport verify_corollary_identities(const Quandle& q, int n, std::size_t budget) {
  if (n < 1) throw qhom_error("corollary identities need n >= 1");
  VerificationReport rep;
  rep.subject = q.label() + ": corollary identity ledger, n=" + std::to_string(n);
  const int s = q.size();
  const BinaryOp* variants[2] = {nullptr, &q.op()};
  const char* vname[2] = {"*0", "*"};
  TupleRange range{s, n, budget};

  // (1') everything that should equal sum_y (x_j x (j-1), y, x_{j+1..n})
  for (int j = 1; j <= n; ++j) {
    auto target = [&, j](const Tuple& t) {
      Chain out(n);
      for (Element y = 0; y < s; ++y) {
        Tuple u;
        u.reserve(n);
        for (int k = 0; k < j - 1; ++k) u.push_back(t[j - 1]);
        u.push_back(y);
        for (int k = j; k < static_cast<int>(t.size()); ++k) u.push_back(t[k]);
        out.add(u, 1);
      }
      return out;
    };
    for (int v = 0; v < 2; ++v) {
      for (int i = 1; i <= j; ++i)
        rep.clauses.push_back(check_clause(
            "(1') d_" + std::to_string(i) + "^(" + vname[v] + ") D^" + std::to_string(j), range,
            [&, v, i, j](const Tuple& t) {
              return apply_linear([&](const Tuple& u) { return Chain(n, face(variants[v], i, u)); },
                                  homotopy_D(q, j, t), n);
            },
            target));
      for (int i = 1; i < j; ++i)
        rep.clauses.push_back(check_clause(
            "(1') D^" + std::to_string(j - 1) + " d_" + std::to_string(i) + "^(" + vname[v] + ")",
            range,
            [&, v, i, j](const Tuple& t) { return block_D(s, j - 1, face(variants[v], i, t)); },
            target));
      rep.clauses.push_back(check_clause(
          "(1') d_" + std::to_string(j + 1) + "^(" + vname[v] + ") F^" + std::to_string(j), range,
          [&, v, j](const Tuple& t) {
            return apply_linear([&](const Tuple& u) { return Chain(n, face(variants[v], j + 1, u)); },
                                homotopy_F(q, j, t), n);
          },
          target));
    }
  }

  // (1'') everything that should equal sum_y (x_j x (j-2), y, x_j, x_{j+1..n})
  for (int j = 2; j <= n; ++j) {
    auto target = [&, j](const Tuple& t) {
      Chain out(n);
      for (Element y = 0; y < s; ++y) {
        Tuple u;
        u.reserve(n);
        for (int k = 0; k < j - 2; ++k) u.push_back(t[j - 1]);
        u.push_back(y);
        u.push_back(t[j - 1]);
        for (int k = j; k < static_cast<int>(t.size()); ++k) u.push_back(t[k]);
        out.add(u, 1);
      }
      return out;
    };
    for (int v = 0; v < 2; ++v) {
      for (int i = 1; i < j; ++i) {
        rep.clauses.push_back(check_clause(
            "(1'') d_" + std::to_string(i) + "^(" + vname[v] + ") F^" + std::to_string(j), range,
            [&, v, i, j](const Tuple& t) {
              return apply_linear([&](const Tuple& u) { return Chain(n, face(variants[v], i, u)); },
                                  homotopy_F(q, j, t), n);
            },
            target));
        rep.clauses.push_back(check_clause(
            "(1'') F^" + std::to_string(j - 1) + " d_" + std::to_string(i) + "^(" + vname[v] + ")",
            range,
            [&, v, i, j](const Tuple& t) { return block_F(s, j - 1, face(variants[v], i, t)); },
            target));
      }
    }
  }

  // (2) as printed, plus nearby variants as informational probes
  for (int i = 1; i <= n; ++i) {
    if (i + 1 <= n)
      rep.clauses.push_back(check_clause(
          "(2) d_" + std::to_string(i + 1) + "^(*) D^" + std::to_string(i) + " = d_" +
              std::to_string(i + 1) + "^(*) F^" + std::to_string(i + 1),
          range,
          [&, i](const Tuple& t) {
            return apply_linear([&](const Tuple& u) { return Chain(n, face_star(q.op(), i + 1, u)); },
                                homotopy_D(q, i, t), n);
          },
          [&, i](const Tuple& t) {
            return apply_linear([&](const Tuple& u) { return Chain(n, face_star(q.op(), i + 1, u)); },
                                homotopy_F(q, i + 1, t), n);
          }));
    rep.clauses.push_back(check_clause(
        "(2) d_" + std::to_string(i + 1) + "^(*0) D^" + std::to_string(i) + " = d_" +
            std::to_string(i) + "^(*0) F^" + std::to_string(i),
        range,
        [&, i](const Tuple& t) {
          return apply_linear([&](const Tuple& u) { return Chain(n, face_trivial(i + 1, u)); },
                              homotopy_D(q, i, t), n);
        },
        [&, i](const Tuple& t) {
          return apply_linear([&](const Tuple& u) { return Chain(n, face_trivial(i, u)); },
                              homotopy_F(q, i, t), n);
        }));
    // variant probe: same-index F on the starred equation
    auto probe = check_clause(
        "(2 variant) d_" + std::to_string(i + 1) + "^(*) D^" + std::to_string(i) + " = d_" +
            std::to_string(i + 1) + "^(*) F^" + std::to_string(i),
        range,
        [&, i](const Tuple& t) {
          return apply_linear([&](const Tuple& u) { return Chain(n, face_star(q.op(), i + 1, u)); },
                              homotopy_D(q, i, t), n);
        },
        [&, i](const Tuple& t) {
          return apply_linear([&](const Tuple& u) { return Chain(n, face_star(q.op(), i + 1, u)); },
                              homotopy_F(q, i, t), n);
        });
    probe.informational = true;
    probe.note = "index variant probe, outcome recorded only";
    rep.clauses.push_back(std::move(probe));
  }

  // (3) d_{i+1} D^j = D^j d_i and d_{i+1} F^j = F^j d_i for j+1 <= i <= n
  for (int j = 1; j <= n; ++j)
    for (int i = j + 1; i <= n; ++i)
      for (int v = 0; v < 2; ++v) {
        rep.clauses.push_back(check_clause(
            "(3) d_" + std::to_string(i + 1) + "^(" + vname[v] + ") D^" + std::to_string(j) +
                " = D^" + std::to_string(j) + " d_" + std::to_string(i) + "^(" + vname[v] + ")",
            range,
            [&, v, i, j](const Tuple& t) {
              return apply_linear([&](const Tuple& u) { return Chain(n, face(variants[v], i + 1, u)); },
                                  homotopy_D(q, j, t), n);
            },
            [&, v, i, j](const Tuple& t) { return block_D(s, j, face(variants[v], i, t)); }));
        rep.clauses.push_back(check_clause(
            "(3) d_" + std::to_string(i + 1) + "^(" + vname[v] + ") F^" + std::to_string(j) +
                " = F^" + std::to_string(j) + " d_" + std::to_string(i) + "^(" + vname[v] + ")",
            range,
            [&, v, i, j](const Tuple& t) {
              return apply_linear([&](const Tuple& u) { return Chain(n, face(variants[v], i + 1, u)); },
                                  homotopy_F(q, j, t), n);
            },
            [&, v, i, j](const Tuple& t) { return block_F(s, j, face(variants[v], i, t)); }));
      }

  return rep;
}

// ---- generic precubic homotopy --------------------------------------------------

PrecubicHomotopyData rack_precubic_data(const Quandle& q) {
  PrecubicHomotopyData data;
  data.alphabet = q.size();
  const BinaryOp op = q.op();
  data.face = [op](int eps, int i, const Tuple& t) {
    return Chain(static_cast<int>(t.size()) - 1, face(eps ? &op : nullptr, i, t));
  };
  const int s = q.size();
  data.h = [s](int eps, int i, const Tuple& t) {
    return eps ? block_F(s, i, t) : block_D(s, i, t);
  };
  data.f = [s](const Tuple& t) { return Chain(static_cast<int>(t.size()), t, Int(s)); };
  data.g = [s](const Tuple& t) {
    return symmetrizer(s, static_cast<int>(t.size()), t);
  };
  return data;
}

VerificationReport verify_precubic_homotopy(const PrecubicHomotopyData& data, int n,
                                            std::size_t budget) {
  if (n < 1) throw qhom_error("precubic homotopy check needs n >= 1");
  VerificationReport rep;
  rep.subject = "precubic homotopy conditions, n=" + std::to_string(n);
  const int s = data.alphabet;

  auto face_chain = [&](int eps, int i, const Chain& c) {
    return apply_linear([&](const Tuple& t) { return data.face(eps, i, t); }, c, c.degree() - 1);
  };
  auto h_chain = [&](int eps, int i, const Chain& c) {
    return apply_linear([&](const Tuple& t) { return data.h(eps, i, t); }, c, c.degree() + 1);
  };

  // precubic relations on the degrees the homotopy conditions touch
  for (int deg : {n, n + 1}) {
    if (deg < 2) continue;
    TupleRange range{s, deg, budget};
    for (int e = 0; e < 2; ++e)
      for (int d = 0; d < 2; ++d)
        for (int i = 1; i < deg; ++i)
          for (int j = i + 1; j <= deg; ++j) {
            ClauseResult res = check_clause(
                "faces", range,
                [&](const Tuple& t) { return face_chain(e, i, data.face(d, j, t)); },
                [&](const Tuple& t) { return face_chain(d, j - 1, data.face(e, i, t)); });
            if (!res.pass)
              throw qhom_error("precubic face relations fail at degree " + std::to_string(deg) +
                               ", (eps,delta,i,j)=(" + std::to_string(e) + "," + std::to_string(d) +
                               "," + std::to_string(i) + "," + std::to_string(j) + "), witness " +
                               res.witness);
          }
  }

  TupleRange range{s, n, budget};

  // (1) d_i^delta h_j^eps = h_{j-1}^eps d_i^delta for i < j
  for (int e = 0; e < 2; ++e)
    for (int d = 0; d < 2; ++d)
      for (int j = 2; j <= n; ++j)
        for (int i = 1; i < j; ++i)
          rep.clauses.push_back(check_clause(
              "(1) d_" + std::to_string(i) + "^" + std::to_string(d) + " h_" + std::to_string(j) +
                  "^" + std::to_string(e),
              range,
              [&, e, d, i, j](const Tuple& t) { return face_chain(d, i, data.h(e, j, t)); },
              [&, e, d, i, j](const Tuple& t) { return h_chain(e, j - 1, data.face(d, i, t)); }));

  // (2) the three diagonal equations
  for (int i = 1; i <= n; ++i) {
    for (int e = 0; e < 2; ++e)
      rep.clauses.push_back(check_clause(
          "(2) d_" + std::to_string(i) + "^" + std::to_string(e) + " h_" + std::to_string(i) +
              "^0 = d_" + std::to_string(i + 1) + "^" + std::to_string(e) + " h_" +
              std::to_string(i) + "^1",
          range, [&, e, i](const Tuple& t) { return face_chain(e, i, data.h(0, i, t)); },
          [&, e, i](const Tuple& t) { return face_chain(e, i + 1, data.h(1, i, t)); }));
    rep.clauses.push_back(check_clause(
        "(2) d_" + std::to_string(i) + "^0 h_" + std::to_string(i) + "^1 = d_" +
            std::to_string(i + 1) + "^0 h_" + std::to_string(i) + "^0",
        range, [&, i](const Tuple& t) { return face_chain(0, i, data.h(1, i, t)); },
        [&, i](const Tuple& t) { return face_chain(0, i + 1, data.h(0, i, t)); }));
    if (i >= 2)
      rep.clauses.push_back(check_clause(
          "(2) d_" + std::to_string(i) + "^1 h_" + std::to_string(i) + "^1 = d_" +
              std::to_string(i) + "^1 h_" + std::to_string(i - 1) + "^0",
          range, [&, i](const Tuple& t) { return face_chain(1, i, data.h(1, i, t)); },
          [&, i](const Tuple& t) { return face_chain(1, i, data.h(0, i - 1, t)); }));
  }

  // (3) d_i^delta h_j^eps = h_j^eps d_{i-1}^delta for i > j+1
  for (int e = 0; e < 2; ++e)
    for (int d = 0; d < 2; ++d)
      for (int j = 1; j < n; ++j)
        for (int i = j + 2; i <= n + 1; ++i)
          rep.clauses.push_back(check_clause(
              "(3) d_" + std::to_string(i) + "^" + std::to_string(d) + " h_" + std::to_string(j) +
                  "^" + std::to_string(e),
              range,
              [&, e, d, i, j](const Tuple& t) { return face_chain(d, i, data.h(e, j, t)); },
              [&, e, d, i, j](const Tuple& t) { return h_chain(e, j, data.face(d, i - 1, t)); }));

  // (4) endpoints
  rep.clauses.push_back(check_clause(
      "(4) d_1^1 h_1^1 = f", range,
      [&](const Tuple& t) { return face_chain(1, 1, data.h(1, 1, t)); },
      [&](const Tuple& t) { return data.f(t); }));
  rep.clauses.push_back(check_clause(
      "(4) d_" + std::to_string(n + 1) + "^1 h_" + std::to_string(n) + "^0 = g", range,
      [&](const Tuple& t) { return face_chain(1, n + 1, data.h(0, n, t)); },
      [&](const Tuple& t) { return data.g(t); }));

  // the homotopy conclusion, checked independently of the conditions above:
  // dH' + H'd = g - f with H' = sum_i (-1)^i (h_i^0 + h_i^1).
  auto boundary = [&](const Chain& c) {
    Chain out(c.degree() - 1);
    if (c.degree() < 1) return out;
    for (int i = 1; i <= c.degree(); ++i) {
      Chain diff = face_chain(0, i, c) - face_chain(1, i, c);
      if (i % 2) diff *= Int(-1);
      out += diff;
    }
    return out;
  };
  auto big_h = [&](const Chain& c) {
    Chain out(c.degree() + 1);
    for (int i = 1; i <= c.degree(); ++i) {
      Chain part = h_chain(0, i, c) + h_chain(1, i, c);
      if (i % 2) part *= Int(-1);
      out += part;
    }
    return out;
  };
  rep.clauses.push_back(check_clause(
      "conclusion: dH' + H'd = g - f", range,
      [&](const Tuple& t) {
        Chain c(n, t);
        Chain dH = boundary(big_h(c));
        Chain Hd = (n >= 2) ? big_h(boundary(c)) : Chain(n);
        return dH + Hd;
      },
      [&](const Tuple& t) { return data.g(t) - data.f(t); }));

  return rep;
}

// ---- multi-term ------------------------------------------------------------------

void check_multi_term_hypotheses(const MultiTermSpec& spec) {
  long long sum = std::accumulate(spec.coeffs.begin(), spec.coeffs.end(), 0LL);
  if (sum != 0) throw qhom_error("multi-term hypothesis (i) violated: coefficient sum nonzero");
  if (spec.coeffs.empty() || spec.coeffs[0] == 0)
    throw qhom_error("multi-term hypothesis (ii) violated: a_0 must be nonzero");
  if (spec.dset.ops.empty() || spec.dset.ops[0] != BinaryOp::trivial(spec.carrier_size()))
    throw qhom_error("multi-term hypothesis (ii) violated: op 0 must be trivial");
  for (size_t i = 1; i < spec.dset.ops.size(); ++i) {
    AxiomReport rep = validate(spec.dset.ops[i]);
    if (!rep.is_quandle())
      throw qhom_error("multi-term hypothesis (iii) violated: op " + std::to_string(i) +
                       " is not a quandle");
    if (!rep.quasigroup.ok)
      throw qhom_error("multi-term hypothesis (iii) violated: op " + std::to_string(i) +
                       " is not a quasigroup");
  }
}

std::pair<Chain, Chain> multi_term_homotopies(const MultiTermSpec& spec, int j, const Tuple& t) {
  check_multi_term_hypotheses(spec);
  const int s = spec.carrier_size();
  return {block_D(s, j, t), block_F(s, j, t)};
}

VerificationReport verify_multi_term_homotopy(const MultiTermSpec& spec, int j, int n,
                                              std::size_t budget) {
  check_multi_term_hypotheses(spec);
  if (j < 1 || j > n) throw qhom_error("multi-term homotopy: need 1 <= j <= n");
  const int s = spec.carrier_size();
  const Int a0(spec.coeffs[0]);

  VerificationReport rep;
  rep.subject = "multi-term homotopy identities, j=" + std::to_string(j) + ", n=" + std::to_string(n);
  TupleRange range{s, n, budget};

  auto bnd = [&](const Chain& c) { return multi_term_boundary(spec, c); };
  auto graded = [&](const std::function<Chain(int, int, const Tuple&)>& block, const Chain& c) {
    if (c.degree() < j) return Chain(c.degree() + 1);
    return apply_linear([&](const Tuple& u) { return block(s, j, u); }, c, c.degree() + 1);
  };

  rep.clauses.push_back(check_clause(
      "dD + Dd = (-1)^j a_0 (f_s^j - f_r^j)", range,
      [&](const Tuple& t) {
        return bnd(block_D(s, j, t)) +
               graded([](int q, int jj, const Tuple& u) { return block_D(q, jj, u); },
                      bnd(Chain(n, t)));
      },
      [&](const Tuple& t) {
        Chain r = symmetrizer(s, j, t) - repeater(s, j, t);
        r *= (j % 2) ? -a0 : a0;
        return r;
      }));

  rep.clauses.push_back(check_clause(
      "dF + Fd = (-1)^j a_0 (f_r^j - f_s^{j-1})", range,
      [&](const Tuple& t) {
        return bnd(block_F(s, j, t)) +
               graded([](int q, int jj, const Tuple& u) { return block_F(q, jj, u); },
                      bnd(Chain(n, t)));
      },
      [&](const Tuple& t) {
        Chain r = repeater(s, j, t) - symmetrizer(s, j - 1, t);
        r *= (j % 2) ? -a0 : a0;
        return r;
      }));

  return rep;
}

}  // namespace qhom
