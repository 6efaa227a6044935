#include <doctest.h>

#include <cmath>
#include <utility>

#include "qhom/homotopy.hpp"

using namespace qhom;

namespace {

Chain apply_face(const Quandle& q, bool star, int i, const Chain& c) {
  Chain out(c.degree() - 1);
  for (const auto& [t, coeff] : c.terms())
    out.add(face(star ? &q.op() : nullptr, i, t), coeff);
  return out;
}

// duplication homotopy data on deletion faces: both face families delete
// entry i, both homotopies copy entry i in place. All four conditions hold
// with f = g = Id, so dH' + H'd telescopes to zero.
PrecubicHomotopyData duplication_data(int alphabet) {
  PrecubicHomotopyData data;
  data.alphabet = alphabet;
  data.face = [](int, int i, const Tuple& t) {
    return Chain(static_cast<int>(t.size()) - 1, face_trivial(i, t));
  };
  data.h = [](int, int i, const Tuple& t) {
    Tuple u = t;
    u.insert(u.begin() + i, t[i - 1]);
    return Chain(static_cast<int>(t.size()) + 1, u);
  };
  data.f = [](const Tuple& t) { return Chain(static_cast<int>(t.size()), t); };
  data.g = [](const Tuple& t) { return Chain(static_cast<int>(t.size()), t); };
  return data;
}

}  // namespace

TEST_CASE("repeater and symmetrizer values on R_3") {
  Quandle r3 = dihedral(3);

  Chain fr = f_r(r3, 2, {0, 1, 2});
  CHECK(fr == Chain(3, {1, 1, 2}, 3));

  Chain fs = f_s(r3, 1, {0, 1});
  Chain fs_expect(2);
  for (Element y = 0; y < 3; ++y) fs_expect.add({y, 1}, 1);
  CHECK(fs == fs_expect);

  // j = 0 symmetrizer is |Q| times the identity
  CHECK(f_s(r3, 0, {0, 1}) == Chain(2, {0, 1}, 3));
}

TEST_CASE("homotopy values on R_3") {
  Quandle r3 = dihedral(3);

  Chain d = homotopy_D(r3, 1, {0, 1});
  Chain d_expect(3);
  d_expect.add({0, 0, 1}, 1);
  d_expect.add({0, 1, 1}, 1);
  d_expect.add({0, 2, 1}, 1);
  CHECK(d == d_expect);

  Chain f = homotopy_F(r3, 1, {0, 1});
  Chain f_expect(3);
  f_expect.add({0, 0, 1}, 1);
  f_expect.add({1, 0, 1}, 1);
  f_expect.add({2, 0, 1}, 1);
  CHECK(f == f_expect);

  CHECK_THROWS_AS(homotopy_D(r3, 3, {0, 1}), qhom_error);
  CHECK_THROWS_AS(f_r(r3, 0, {0, 1}), qhom_error);
}

TEST_CASE("F is anchored by its j-th faces") {
  // d_j^{(*_0)} F^j = f_r^j and d_j^{(*)} F^j = f_s^{j-1}, pointwise
  for (const auto& q : {dihedral(3), alexander(5, 2)})
    for (int n = 1; n <= 2; ++n)
      for (int j = 1; j <= n; ++j)
        for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(std::pow(q.size(), n)); ++r) {
          Tuple t = tuple_unrank(r, n, q.size());
          Chain F = homotopy_F(q, j, t);
          CHECK(apply_face(q, false, j, F) == f_r(q, j, t));
          CHECK(apply_face(q, true, j, F) == f_s(q, j - 1, t));
        }
}

TEST_CASE("f_r and f_s are chain maps") {
  for (const auto& q : {dihedral(3), dihedral(5), alexander(5, 2)})
    for (int n = 1; n <= 3; ++n)
      for (int j = 1; j <= n; ++j)
        for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(std::pow(q.size(), n)); ++r) {
          Tuple t = tuple_unrank(r, n, q.size());
          for (int which = 0; which < 2; ++which) {
            auto f = [&](const Tuple& u) { return which ? f_s(q, j, u) : f_r(q, j, u); };
            Chain lhs = rack_boundary(q, f(t));
            Chain rhs(n - 1);
            Chain dt = rack_boundary(q, Chain(n, t));
            if (n - 1 >= j)  // f_r^j, f_s^j vanish below degree j
              for (const auto& [u, c] : dt.terms()) rhs += c * f(u);
            CHECK(lhs == rhs);
          }
        }
}

TEST_CASE("D and F identities hold on odd dihedral and affine quandles") {
  for (const auto& q : {dihedral(3), dihedral(5), dihedral(7), alexander(5, 2)})
    for (int n = 1; n <= 3; ++n)
      for (int j = 1; j <= n; ++j) {
        VerificationReport rd = verify_homotopy_identity_D(q, j, n);
        VerificationReport rf = verify_homotopy_identity_F(q, j, n);
        CHECK_MESSAGE(rd.all_pass(), rd.render_text());
        CHECK_MESSAGE(rf.all_pass(), rf.render_text());
      }
}

TEST_CASE("sampling kicks in above the budget and still passes") {
  Quandle r5 = dihedral(5);
  VerificationReport rep = verify_homotopy_identity_D(r5, 2, 4, 100);
  CHECK(rep.all_pass());
  for (const auto& c : rep.clauses) {
    CHECK_FALSE(c.exhaustive);
    CHECK(c.checked <= 100);
    CHECK(c.checked > 0);
  }
}

TEST_CASE("composite G identity") {
  for (const auto& q : {dihedral(3), dihedral(5)})
    for (int n = 1; n <= 3; ++n) {
      VerificationReport rep = verify_composite_G(q, n);
      CHECK_MESSAGE(rep.all_pass(), rep.render_text());
    }
}

TEST_CASE("even dihedral is a negative control with a recorded witness") {
  // R_4 is not a quasigroup, and the identities genuinely fail there
  Quandle r4 = dihedral(4);
  VerificationReport rep = verify_homotopy_identity_D(r4, 1, 1);
  CHECK_FALSE(rep.all_pass());
  bool saw_witness = false;
  for (const auto& c : rep.clauses)
    if (!c.pass) {
      CHECK_FALSE(c.witness.empty());
      CHECK_FALSE(c.lhs.empty());
      CHECK_FALSE(c.rhs.empty());
      saw_witness = true;
    }
  CHECK(saw_witness);
}

TEST_CASE("identity ledger: gating clauses pass on quasigroup quandles") {
  for (const auto& q : {dihedral(3), alexander(5, 2)})
    for (int n = 2; n <= 3; ++n) {
      VerificationReport rep = verify_corollary_identities(q, n);
      CHECK_MESSAGE(rep.all_pass(), rep.render_text());
      // informational probes are present and flagged, whatever their outcome
      bool saw_probe = false;
      for (const auto& c : rep.clauses) saw_probe |= c.informational;
      CHECK(saw_probe);
    }
}

TEST_CASE("precubic face relations") {
  for (const auto& q : {dihedral(3), dihedral(4), alexander(5, 2)}) {
    VerificationReport rep = verify_precubic_relations(q, 3);
    CHECK_MESSAGE(rep.all_pass(), rep.render_text());
  }
  CHECK_THROWS_AS(verify_precubic_relations(dihedral(3), 1), qhom_error);
}

TEST_CASE("report serialization carries the verdict") {
  VerificationReport rep = verify_homotopy_identity_D(dihedral(3), 1, 2);
  nlohmann::json j = rep.to_json();
  CHECK(j["pass"] == true);
  CHECK(j["clauses"].is_array());
  CHECK_FALSE(j["clauses"].empty());
  CHECK(rep.render_text().find("pass") != std::string::npos);
}

TEST_CASE("generic precubic homotopy on the rack instantiation") {
  for (const auto& q : {dihedral(3), alexander(5, 2)}) {
    PrecubicHomotopyData data = rack_precubic_data(q);
    for (int n = 1; n <= 2; ++n) {
      VerificationReport rep = verify_precubic_homotopy(data, n);
      CHECK_MESSAGE(rep.all_pass(), rep.render_text());
    }
  }
}

TEST_CASE("generic precubic homotopy on synthetic duplication data") {
  PrecubicHomotopyData data = duplication_data(3);
  for (int n = 1; n <= 3; ++n) {
    VerificationReport rep = verify_precubic_homotopy(data, n);
    CHECK_MESSAGE(rep.all_pass(), rep.render_text());
  }
}

TEST_CASE("perturbed homotopy data fails the right condition") {
  PrecubicHomotopyData data = duplication_data(3);
  auto good_h = data.h;
  data.h = [good_h](int eps, int i, const Tuple& t) {
    if (eps == 1 && i == 1) return Chain(static_cast<int>(t.size()) + 1);  // dropped block
    return good_h(eps, i, t);
  };
  VerificationReport rep = verify_precubic_homotopy(data, 2);
  CHECK_FALSE(rep.all_pass());
  const ClauseResult* endpoint = rep.find("(4) d_1^1 h_1^1 = f");
  REQUIRE(endpoint);
  CHECK_FALSE(endpoint->pass);
}

TEST_CASE("perturbed faces are rejected outright") {
  PrecubicHomotopyData data = duplication_data(3);
  data.face = [](int eps, int i, const Tuple& t) {
    Tuple u = face_trivial(i, t);
    if (eps == 1 && u.size() >= 2) std::swap(u[0], u[1]);  // breaks the face relations
    return Chain(static_cast<int>(t.size()) - 1, u);
  };
  CHECK_THROWS_WITH_AS(verify_precubic_homotopy(data, 2), doctest::Contains("face relations"),
                       qhom_error);
}

TEST_CASE("multi-term homotopies specialize to the one-quandle case") {
  Quandle r5 = dihedral(5);
  MultiTermSpec spec({{BinaryOp::trivial(5), r5.op()}}, {1, -1});
  for (int j = 1; j <= 2; ++j) {
    auto [d, f] = multi_term_homotopies(spec, j, {0, 1, 2});
    CHECK(d == homotopy_D(r5, j, {0, 1, 2}));
    CHECK(f == homotopy_F(r5, j, {0, 1, 2}));
  }
}

TEST_CASE("multi-term homotopy identities on a three-operation system") {
  MultiTermSpec spec({{BinaryOp::trivial(5), dihedral(5).op(), alexander(5, 2).op()}},
                     {2, -1, -1});
  for (int n = 1; n <= 2; ++n)
    for (int j = 1; j <= n; ++j) {
      VerificationReport rep = verify_multi_term_homotopy(spec, j, n);
      CHECK_MESSAGE(rep.all_pass(), rep.render_text());
    }
}

TEST_CASE("multi-term hypothesis violations are named") {
  BinaryOp triv = BinaryOp::trivial(5);
  BinaryOp r5 = dihedral(5).op();
  CHECK_THROWS_WITH_AS(verify_multi_term_homotopy(MultiTermSpec({{triv, r5}}, {1, -2}), 1, 1),
                       doctest::Contains("coefficient sum"), qhom_error);
  CHECK_THROWS_WITH_AS(verify_multi_term_homotopy(MultiTermSpec({{triv, r5}}, {0, 0}), 1, 1),
                       doctest::Contains("a_0"), qhom_error);
  CHECK_THROWS_WITH_AS(verify_multi_term_homotopy(MultiTermSpec({{r5, triv}}, {1, -1}), 1, 1),
                       doctest::Contains("trivial"), qhom_error);
  BinaryOp r4 = dihedral(4).op();
  CHECK_THROWS_WITH_AS(
      verify_multi_term_homotopy(MultiTermSpec({{BinaryOp::trivial(4), r4}}, {1, -1}), 1, 1),
      doctest::Contains("quasigroup"), qhom_error);
}
