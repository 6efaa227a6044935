#include "qhom/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace qhom {

BinaryOp::BinaryOp(int n, std::vector<Element> entries) : n_(n), table_(std::move(entries)) {
  if (n <= 0) throw qhom_error("operation table size must be positive");
  if (table_.size() != static_cast<size_t>(n) * n)
    throw qhom_error("operation table dimension mismatch: expected " + std::to_string(n) + "x" +
                     std::to_string(n) + ", got " + std::to_string(table_.size()) + " entries");
  for (size_t k = 0; k < table_.size(); ++k)
    if (table_[k] < 0 || table_[k] >= n)
      throw qhom_error("entry out of range at (" + std::to_string(k / n) + "," +
                       std::to_string(k % n) + "): " + std::to_string(table_[k]));
}

BinaryOp BinaryOp::trivial(int n) {
  std::vector<Element> t(static_cast<size_t>(n) * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t[static_cast<size_t>(a) * n + b] = a;
  return BinaryOp(n, std::move(t));
}

AxiomReport validate(const BinaryOp& op) {
  const int n = op.size();
  AxiomReport rep;

  for (Element a = 0; a < n && rep.shelf.ok; ++a)
    for (Element b = 0; b < n && rep.shelf.ok; ++b)
      for (Element c = 0; c < n && rep.shelf.ok; ++c)
        if (op.at(op.at(a, b), c) != op.at(op.at(a, c), op.at(b, c))) {
          rep.shelf.ok = false;
          rep.shelf.witness = WitnessTriple{a, b, c};
        }

  // rack: each column a -> a*b injective
  for (Element b = 0; b < n && rep.rack.ok; ++b) {
    std::vector<char> seen(n, 0);
    for (Element a = 0; a < n; ++a) {
      Element v = op.at(a, b);
      if (seen[v]) {
        rep.rack.ok = false;
        // witness: the colliding pair in (a, b, _) form; c = earlier preimage
        Element first = 0;
        while (op.at(first, b) != v) ++first;
        rep.rack.witness = WitnessTriple{a, b, first};
        break;
      }
      seen[v] = 1;
    }
  }

  for (Element a = 0; a < n && rep.quandle.ok; ++a)
    if (op.at(a, a) != a) {
      rep.quandle.ok = false;
      rep.quandle.witness = WitnessTriple{a, a, -1};
    }

  // quasigroup: each row a -> a*x surjective (equivalently injective)
  for (Element a = 0; a < n && rep.quasigroup.ok; ++a) {
    std::vector<char> seen(n, 0);
    for (Element x = 0; x < n; ++x) seen[op.at(a, x)] = 1;
    for (Element b = 0; b < n; ++b)
      if (!seen[b]) {
        rep.quasigroup.ok = false;
        rep.quasigroup.witness = WitnessTriple{a, b, -1};
        break;
      }
  }

  return rep;
}

std::vector<std::vector<Element>> orbits(const BinaryOp& op) {
  const int n = op.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // a and a*b are in the same orbit; the inverse action adds nothing new
  // to the partition generated this way.
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      int ra = find(a), rb = find(op.at(a, b));
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  std::map<int, std::vector<Element>> blocks;
  for (Element a = 0; a < n; ++a) blocks[find(a)].push_back(a);
  std::vector<std::vector<Element>> out;
  out.reserve(blocks.size());
  for (auto& [root, blk] : blocks) out.push_back(std::move(blk));
  return out;
}

static std::string witness_str(const WitnessTriple& w) {
  std::ostringstream os;
  os << "(" << w.a << "," << w.b << "," << w.c << ")";
  return os.str();
}

Quandle::Quandle(BinaryOp op, std::string label) : op_(std::move(op)), label_(std::move(label)) {
  AxiomReport rep = validate(op_);
  if (!rep.shelf.ok)
    throw qhom_error(label_ + ": not self-distributive, witness " + witness_str(*rep.shelf.witness));
  if (!rep.rack.ok)
    throw qhom_error(label_ + ": right translation by " + std::to_string(rep.rack.witness->b) +
                     " is not a bijection");
  if (!rep.quandle.ok)
    throw qhom_error(label_ + ": not idempotent at " + std::to_string(rep.quandle.witness->a));
  quasigroup_ = rep.quasigroup.ok;
  const int n = op_.size();
  inv_.assign(static_cast<size_t>(n) * n, -1);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) inv_[static_cast<size_t>(op_.at(a, b)) * n + b] = a;
  orbits_ = qhom::orbits(op_);
}

unsigned long inner_group_order(const Quandle& q) {
  const int n = q.size();
  std::vector<std::vector<int>> gens;
  for (Element b = 0; b < n; ++b) {
    std::vector<int> perm(n);
    for (Element a = 0; a < n; ++a) perm[a] = q.star(a, b);
    gens.push_back(std::move(perm));
  }
  std::set<std::vector<int>> group;
  std::vector<std::vector<int>> frontier;
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  group.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        std::vector<int> pg(n);
        for (int i = 0; i < n; ++i) pg[i] = g[p[i]];
        if (group.insert(pg).second) next.push_back(std::move(pg));
      }
    frontier = std::move(next);
  }
  return group.size();
}

// ---- catalog ---------------------------------------------------------------

static int mod(long long v, int n) {
  int r = static_cast<int>(v % n);
  return r < 0 ? r + n : r;
}

Quandle dihedral(int n) {
  if (n <= 0) throw qhom_error("dihedral quandle requires n >= 1");
  std::vector<Element> t(static_cast<size_t>(n) * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t[static_cast<size_t>(a) * n + b] = mod(2LL * b - a, n);
  return Quandle(BinaryOp(n, std::move(t)), "R" + std::to_string(n));
}

Quandle takasaki(const std::vector<int>& factors) {
  if (factors.empty()) throw qhom_error("takasaki quandle requires at least one cyclic factor");
  for (int f : factors)
    if (f <= 0) throw qhom_error("takasaki factor orders must be >= 1");
  int n = 1;
  for (int f : factors) n *= f;
  const size_t k = factors.size();
  auto decode = [&](int e) {
    std::vector<int> coords(k);
    for (size_t i = k; i-- > 0;) {
      coords[i] = e % factors[i];
      e /= factors[i];
    }
    return coords;
  };
  auto encode = [&](const std::vector<int>& coords) {
    int e = 0;
    for (size_t i = 0; i < k; ++i) e = e * factors[i] + coords[i];
    return e;
  };
  std::vector<Element> t(static_cast<size_t>(n) * n);
  for (Element a = 0; a < n; ++a) {
    auto ca = decode(a);
    for (Element b = 0; b < n; ++b) {
      auto cb = decode(b);
      std::vector<int> cc(k);
      for (size_t i = 0; i < k; ++i) cc[i] = mod(2LL * cb[i] - ca[i], factors[i]);
      t[static_cast<size_t>(a) * n + b] = encode(cc);
    }
  }
  std::string label = "T(";
  for (size_t i = 0; i < k; ++i) label += (i ? "x" : "") + std::to_string(factors[i]);
  label += ")";
  return Quandle(BinaryOp(n, std::move(t)), label);
}

Quandle alexander(int n, int t) {
  if (n <= 0) throw qhom_error("alexander quandle requires n >= 1");
  if (std::gcd(mod(t, n), n) != 1)
    throw qhom_error("alexander quandle requires gcd(t, n) = 1, got t=" + std::to_string(t) +
                     ", n=" + std::to_string(n));
  std::vector<Element> tab(static_cast<size_t>(n) * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      tab[static_cast<size_t>(a) * n + b] = mod(1LL * t * a + 1LL * (1 - t) * b, n);
  return Quandle(BinaryOp(n, std::move(tab)), "Alex(" + std::to_string(n) + "," + std::to_string(t) + ")");
}

Quandle conjugation(const std::vector<std::vector<int>>& class_elements) {
  if (class_elements.empty()) throw qhom_error("conjugation quandle requires at least one element");
  const int n = static_cast<int>(class_elements.size());
  const size_t m = class_elements.front().size();
  for (const auto& p : class_elements)
    if (p.size() != m) throw qhom_error("conjugation: permutations act on different sets");
  auto invert = [&](const std::vector<int>& p) {
    std::vector<int> inv(m);
    for (size_t i = 0; i < m; ++i) inv[p[i]] = static_cast<int>(i);
    return inv;
  };
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[class_elements[i]] = i;
  std::vector<Element> tab(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& pa = class_elements[a];
      const auto& pb = class_elements[b];
      auto pbinv = invert(pb);
      std::vector<int> conj(m);  // b^{-1} a b as a map i -> binv(a(b(i)))
      for (size_t i = 0; i < m; ++i) conj[i] = pbinv[pa[pb[i]]];
      auto it = index.find(conj);
      if (it == index.end())
        throw qhom_error("conjugation: class not closed, witness pair (" + std::to_string(a) + "," +
                         std::to_string(b) + ")");
      tab[static_cast<size_t>(a) * n + b] = it->second;
    }
  return Quandle(BinaryOp(n, std::move(tab)), "Conj" + std::to_string(n));
}

Quandle conj_s4_transpositions() {
  std::vector<std::vector<int>> cls;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::vector<int> p{0, 1, 2, 3};
      std::swap(p[i], p[j]);
      cls.push_back(std::move(p));
    }
  Quandle q = conjugation(cls);
  return Quandle(q.op(), "ConjS4T");
}

Quandle quandle_by_name(const std::string& name) {
  if (name == "ConjS4T") return conj_s4_transpositions();
  if (name.size() > 1 && name[0] == 'R') {
    try {
      size_t pos = 0;
      int n = std::stoi(name.substr(1), &pos);
      if (pos == name.size() - 1) return dihedral(n);
    } catch (const std::logic_error&) {
    }
  }
  if (name.rfind("T(", 0) == 0 && name.back() == ')') {
    std::vector<int> factors;
    std::stringstream ss(name.substr(2, name.size() - 3));
    std::string part;
    while (std::getline(ss, part, 'x')) factors.push_back(std::stoi(part));
    return takasaki(factors);
  }
  if (name.rfind("Alex(", 0) == 0 && name.back() == ')') {
    std::string body = name.substr(5, name.size() - 6);
    auto comma = body.find(',');
    if (comma != std::string::npos)
      return alexander(std::stoi(body.substr(0, comma)), std::stoi(body.substr(comma + 1)));
  }
  throw qhom_error("unknown quandle name: " + name);
}

Quandle load_quandle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qhom_error("cannot open quandle file: " + path);
  int n = -1;
  std::vector<Element> entries;
  int rows_read = 0;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n) || n <= 0)
        throw qhom_error(path + ":" + std::to_string(lineno) + ": expected positive size");
      entries.reserve(static_cast<size_t>(n) * n);
      continue;
    }
    if (rows_read >= n)
      throw qhom_error(path + ":" + std::to_string(lineno) + ": extra row after " +
                       std::to_string(n) + " table rows");
    int v, got = 0;
    while (ls >> v) {
      entries.push_back(v);
      ++got;
    }
    if (got != n)
      throw qhom_error(path + ":" + std::to_string(lineno) + ": row has " + std::to_string(got) +
                       " entries, expected " + std::to_string(n));
    ++rows_read;
  }
  if (n < 0) throw qhom_error(path + ": empty file");
  if (rows_read != n)
    throw qhom_error(path + ": got " + std::to_string(rows_read) + " rows, expected " +
                     std::to_string(n));
  return Quandle(BinaryOp(n, std::move(entries)), path);
}

Quandle resolve_quandle(const std::string& name_or_path) {
  try {
    return quandle_by_name(name_or_path);
  } catch (const qhom_error&) {
    if (std::ifstream(name_or_path).good()) return load_quandle_file(name_or_path);
    throw;
  }
}

std::string table_sha256(const BinaryOp& op) {
  std::ostringstream os;
  os << op.size() << "\n";
  for (Element a = 0; a < op.size(); ++a) {
    for (Element b = 0; b < op.size(); ++b) os << (b ? " " : "") << op.at(a, b);
    os << "\n";
  }
  return sha256_hex(os.str());
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

// ---- distributive sets -----------------------------------------------------

bool DistributiveReport::ok() const {
  if (!trivial_first || !pair_failures.empty()) return false;
  for (size_t i = 1; i < op_reports.size(); ++i)
    if (!op_reports[i].is_quandle()) return false;
  return true;
}

DistributiveReport validate_distributive_set(const DistributiveSet& s) {
  if (s.ops.empty()) throw qhom_error("distributive set is empty");
  const int n = s.ops.front().size();
  for (const auto& op : s.ops)
    if (op.size() != n) throw qhom_error("distributive set: carrier size mismatch");

  DistributiveReport rep;
  rep.trivial_first = (s.ops.front() == BinaryOp::trivial(n));
  for (const auto& op : s.ops) rep.op_reports.push_back(validate(op));

  const int k = static_cast<int>(s.ops.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const auto& oi = s.ops[i];
      const auto& oj = s.ops[j];
      bool failed = false;
      for (Element a = 0; a < n && !failed; ++a)
        for (Element b = 0; b < n && !failed; ++b)
          for (Element c = 0; c < n && !failed; ++c)
            if (oj.at(oi.at(a, b), c) != oi.at(oj.at(a, c), oj.at(b, c))) {
              rep.pair_failures.push_back({i, j, WitnessTriple{a, b, c}});
              failed = true;
            }
    }
  return rep;
}

}  // namespace qhom
