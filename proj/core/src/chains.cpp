#include "qhom/chains.hpp"

#include <sstream>

namespace qhom {

void Chain::add(const Tuple& t, const Int& coeff) {
  if (coeff == 0) return;
  if (static_cast<int>(t.size()) != degree_)
    throw qhom_error("chain degree mismatch: tuple of size " + std::to_string(t.size()) +
                     " added to degree-" + std::to_string(degree_) + " chain");
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(t, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Chain& Chain::operator+=(const Chain& o) {
  if (degree_ != o.degree_ && !o.is_zero())
    throw qhom_error("chain degree mismatch in addition");
  for (const auto& [t, v] : o.terms_) add(t, v);
  return *this;
}

Chain& Chain::operator-=(const Chain& o) {
  if (degree_ != o.degree_ && !o.is_zero())
    throw qhom_error("chain degree mismatch in subtraction");
  for (const auto& [t, v] : o.terms_) add(t, -v);
  return *this;
}

Chain& Chain::operator*=(const Int& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= k;
  return *this;
}

std::string Chain::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, v] : terms_) {
    if (!first) os << (v > 0 ? " + " : " - ");
    else if (v < 0) os << "-";
    first = false;
    Int a = abs(v);
    if (a != 1) os << a.str() << "*";
    os << "(";
    for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ")";
  }
  return os.str();
}

std::uint64_t tuple_rank(const Tuple& t, int q) {
  std::uint64_t r = 0;
  for (Element e : t) r = r * q + static_cast<std::uint64_t>(e);
  return r;
}

Tuple tuple_unrank(std::uint64_t r, int degree, int q) {
  Tuple t(degree);
  for (int i = degree; i-- > 0;) {
    t[i] = static_cast<Element>(r % q);
    r /= q;
  }
  return t;
}

Tuple face_trivial(int i, const Tuple& t) {
  const int n = static_cast<int>(t.size());
  if (i < 1 || i > n) throw qhom_error("face index out of range: " + std::to_string(i));
  Tuple out;
  out.reserve(n - 1);
  for (int k = 0; k < n; ++k)
    if (k != i - 1) out.push_back(t[k]);
  return out;
}

Tuple face_star(const BinaryOp& op, int i, const Tuple& t) {
  const int n = static_cast<int>(t.size());
  if (i < 1 || i > n) throw qhom_error("face index out of range: " + std::to_string(i));
  Tuple out;
  out.reserve(n - 1);
  const Element xi = t[i - 1];
  for (int k = 0; k < i - 1; ++k) out.push_back(op.at(t[k], xi));
  for (int k = i; k < n; ++k) out.push_back(t[k]);
  return out;
}

Tuple face(const BinaryOp* op, int i, const Tuple& t) {
  return op ? face_star(*op, i, t) : face_trivial(i, t);
}

Chain one_term_boundary(const BinaryOp* op, const Chain& c) {
  Chain out(c.degree() - 1);
  if (c.degree() <= 1) return Chain(0);  // C_0 = 0
  for (const auto& [t, v] : c.terms()) {
    const int n = static_cast<int>(t.size());
    for (int i = 1; i <= n; ++i) out.add(face(op, i, t), (i % 2 == 0) ? v : -v);
  }
  return out;
}

Chain rack_boundary(const Quandle& q, const Chain& c) {
  Chain out = one_term_boundary(nullptr, c);
  out -= one_term_boundary(&q.op(), c);
  return out;
}

bool is_degenerate(const Tuple& t) {
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return true;
  return false;
}

MultiTermSpec::MultiTermSpec(DistributiveSet d, std::vector<long long> c)
    : dset(std::move(d)), coeffs(std::move(c)) {
  if (coeffs.size() != dset.ops.size())
    throw qhom_error("multi-term spec: " + std::to_string(coeffs.size()) + " coefficients for " +
                     std::to_string(dset.ops.size()) + " operations");
}

Chain multi_term_boundary(const MultiTermSpec& spec, const Chain& c) {
  Chain out(c.degree() - 1);
  if (c.degree() <= 1) return Chain(0);
  for (size_t i = 0; i < spec.dset.ops.size(); ++i) {
    if (spec.coeffs[i] == 0) continue;
    const BinaryOp* op = (i == 0) ? nullptr : &spec.dset.ops[i];
    Chain part = one_term_boundary(op, c);
    part *= Int(spec.coeffs[i]);
    out += part;
  }
  return out;
}

// ---- sparse matrices -------------------------------------------------------

void SparseIntMatrix::add(long r, long c, const Int& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw qhom_error("matrix index out of bounds: (" + std::to_string(r) + "," +
                     std::to_string(c) + ") in " + std::to_string(rows_) + "x" +
                     std::to_string(cols_));
  if (v == 0) return;
  auto key = std::make_pair(r, c);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, v);
  } else {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

Int SparseIntMatrix::at(long r, long c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Int(0) : it->second;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw qhom_error("matrix product shape mismatch: " + std::to_string(cols_) +
                     " != " + std::to_string(rhs.rows_));
  // index lhs by column for the sparse product
  std::map<long, std::vector<std::pair<long, Int>>> lhs_by_col;
  for (const auto& [rc, v] : entries_) lhs_by_col[rc.second].emplace_back(rc.first, v);
  SparseIntMatrix out(rows_, rhs.cols_);
  for (const auto& [rc, v] : rhs.entries_) {
    auto it = lhs_by_col.find(rc.first);
    if (it == lhs_by_col.end()) continue;
    for (const auto& [r, lv] : it->second) out.add(r, rc.second, lv * v);
  }
  return out;
}

std::string SparseIntMatrix::to_triplet_text() const {
  std::ostringstream os;
  os << rows_ << " " << cols_ << " " << entries_.size() << "\n";
  for (const auto& [rc, v] : entries_)
    os << rc.first << " " << rc.second << " " << v.str() << "\n";
  return os.str();
}

SparseIntMatrix SparseIntMatrix::from_triplet_text(const std::string& text) {
  std::istringstream is(text);
  long rows, cols;
  std::size_t nnz;
  if (!(is >> rows >> cols >> nnz)) throw qhom_error("triplet format: bad header");
  SparseIntMatrix m(rows, cols);
  for (std::size_t k = 0; k < nnz; ++k) {
    long r, c;
    std::string v;
    if (!(is >> r >> c >> v)) throw qhom_error("triplet format: truncated at entry " + std::to_string(k));
    m.add(r, c, Int(v));
  }
  return m;
}

// ---- complexes -------------------------------------------------------------

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::Rack: return "rack";
    case Theory::Degenerate: return "degenerate";
    case Theory::Quandle: return "quandle";
    case Theory::ReducedQuandle: return "reduced-quandle";
  }
  return "?";
}

Theory theory_from_name(const std::string& name) {
  if (name == "rack") return Theory::Rack;
  if (name == "degenerate") return Theory::Degenerate;
  if (name == "quandle") return Theory::Quandle;
  if (name == "reduced-quandle") return Theory::ReducedQuandle;
  throw qhom_error("unknown theory: " + name);
}

std::vector<Tuple> theory_basis(int q_size, Theory theory, int degree) {
  std::vector<Tuple> out;
  if (degree < 1) return out;
  std::uint64_t total = 1;
  for (int i = 0; i < degree; ++i) total *= static_cast<std::uint64_t>(q_size);
  for (std::uint64_t r = 0; r < total; ++r) {
    Tuple t = tuple_unrank(r, degree, q_size);
    switch (theory) {
      case Theory::Rack:
        out.push_back(std::move(t));
        break;
      case Theory::Degenerate:
        if (is_degenerate(t)) out.push_back(std::move(t));
        break;
      case Theory::Quandle:
      case Theory::ReducedQuandle:
        if (!is_degenerate(t)) out.push_back(std::move(t));
        break;
    }
  }
  return out;
}

namespace {

// rank -> basis position for a filtered basis, -1 where excluded
std::vector<long> index_by_rank(const std::vector<Tuple>& basis, int q_size, int degree) {
  std::uint64_t total = 1;
  for (int i = 0; i < degree; ++i) total *= static_cast<std::uint64_t>(q_size);
  std::vector<long> idx(total, -1);
  for (size_t k = 0; k < basis.size(); ++k) idx[tuple_rank(basis[k], q_size)] = static_cast<long>(k);
  return idx;
}

SparseIntMatrix assemble(const std::vector<Tuple>& col_basis, int q_size, Theory theory, int n,
                         const std::function<Chain(const Tuple&)>& boundary) {
  const auto row_basis = theory_basis(q_size, theory == Theory::ReducedQuandle ? Theory::Quandle : theory, n - 1);
  const auto row_index = (n >= 2) ? index_by_rank(row_basis, q_size, n - 1) : std::vector<long>{};
  SparseIntMatrix m(static_cast<long>(row_basis.size()), static_cast<long>(col_basis.size()));
  for (size_t j = 0; j < col_basis.size(); ++j) {
    Chain img = boundary(col_basis[j]);
    for (const auto& [t, v] : img.terms()) {
      long row = row_index[tuple_rank(t, q_size)];
      if (row < 0) {
        if (theory == Theory::Degenerate)
          throw qhom_error("degenerate subcomplex not closed under the boundary (column " +
                           std::to_string(j) + ")");
        continue;  // quandle quotient: drop degenerate images
      }
      m.add(row, static_cast<long>(j), v);
    }
  }
  return m;
}

}  // namespace

SparseIntMatrix boundary_matrix(const Quandle& q, Theory theory, int n) {
  if (n < 1) throw qhom_error("boundary matrix requires degree >= 1");
  const int s = q.size();
  const auto col_basis = theory_basis(s, theory, n);
  if (theory == Theory::ReducedQuandle && n == 1) {
    SparseIntMatrix m(1, static_cast<long>(col_basis.size()));
    for (long j = 0; j < m.cols(); ++j) m.add(0, j, 1);  // augmentation
    return m;
  }
  return assemble(col_basis, s, theory, n,
                  [&](const Tuple& t) { return rack_boundary(q, Chain(n, t)); });
}

SparseIntMatrix boundary_matrix(const MultiTermSpec& spec, int n) {
  if (n < 1) throw qhom_error("boundary matrix requires degree >= 1");
  const int s = spec.carrier_size();
  const auto col_basis = theory_basis(s, Theory::Rack, n);
  return assemble(col_basis, s, Theory::Rack, n,
                  [&](const Tuple& t) { return multi_term_boundary(spec, Chain(n, t)); });
}

}  // namespace qhom
