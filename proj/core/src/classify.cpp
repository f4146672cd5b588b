#include "qmw/classify.hpp"

#include <algorithm>
#include <sstream>
#include <numeric>
#include <set>

#include "json.hpp"
#include "qmw/errors.hpp"
#include "qmw/io.hpp"

namespace qmw {

namespace {

std::vector<int> normalize_labels(const std::vector<int>& raw) {
  std::vector<int> map(raw.size(), -1), out(raw.size());
  int next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0 || static_cast<std::size_t>(raw[i]) >= raw.size()) {
      throw PreconditionError("partition label out of range");
    }
    if (map[raw[i]] < 0) map[raw[i]] = next++;
    out[i] = map[raw[i]];
  }
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<int> labels() {
    std::vector<int> out(parent.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = find(static_cast<int>(i));
    return out;
  }
};

// Smallest congruence containing the equivalence in `uf`.
Congruence close(const Quandle& q, UnionFind& uf) {
  int n = q.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      int r = uf.find(x);
      if (r == x) continue;
      for (int z = 0; z < n; ++z) {
        changed |= uf.unite(q(z, x), q(z, r));
        changed |= uf.unite(q(x, z), q(r, z));
      }
    }
  }
  return Congruence(uf.labels());
}

void check_cap(const Quandle& q, int cap) {
  if (q.size() > cap) {
    throw CapExceeded("congruence computations capped at size " + std::to_string(cap));
  }
}

std::vector<Congruence> principal_congruences(const Quandle& q) {
  std::set<Congruence> found;
  for (int a = 0; a < q.size(); ++a) {
    for (int b = a + 1; b < q.size(); ++b) found.insert(principal_congruence(q, a, b));
  }
  return {found.begin(), found.end()};
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

bool is_prime_power(int q) {
  if (q < 2) return false;
  int p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

int ipow(int base, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Remainder of a modulo monic b over F_p; coefficients low to high.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
  int db = static_cast<int>(b.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    int factor = a[i] % p;
    if (factor == 0) continue;
    for (int j = 0; j <= db; ++j) {
      a[i - db + j] = ((a[i - db + j] - factor * b[j]) % p + p) % p;
    }
  }
  a.resize(std::max(db, 0));
  return a;
}

}  // namespace

Congruence::Congruence(std::vector<int> labels) : labels_(normalize_labels(labels)) {}

Congruence Congruence::identity(int n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return Congruence(std::move(labels));
}

std::vector<std::vector<int>> Congruence::blocks() const {
  std::vector<std::vector<int>> out(block_count());
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(static_cast<int>(i));
  return out;
}

std::size_t Congruence::block_count() const {
  return labels_.empty() ? 0 : static_cast<std::size_t>(*std::max_element(labels_.begin(), labels_.end())) + 1;
}

bool Congruence::is_identity() const { return block_count() == labels_.size(); }
bool Congruence::is_total() const { return block_count() <= 1; }

Congruence principal_congruence(const Quandle& q, int a, int b) {
  UnionFind uf(q.size());
  uf.unite(a, b);
  return close(q, uf);
}

Congruence meet(const Congruence& x, const Congruence& y) {
  std::size_t n = x.labels().size();
  std::vector<int> raw(n);
  std::vector<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    std::pair<int, int> key{x.labels()[i], y.labels()[i]};
    auto it = std::find(seen.begin(), seen.end(), key);
    if (it == seen.end()) {
      raw[i] = static_cast<int>(seen.size());
      seen.push_back(key);
    } else {
      raw[i] = static_cast<int>(it - seen.begin());
    }
  }
  return Congruence(std::move(raw));
}

Congruence join(const Congruence& x, const Congruence& y) {
  int n = static_cast<int>(x.labels().size());
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (x.related(i, j) || y.related(i, j)) uf.unite(i, j);
    }
  }
  return Congruence(uf.labels());
}

std::vector<Congruence> congruence_lattice(const Quandle& q, int cap) {
  check_cap(q, cap);
  auto principal = principal_congruences(q);
  std::set<Congruence> all{Congruence::identity(q.size())};
  std::vector<Congruence> queue{Congruence::identity(q.size())};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& p : principal) {
      Congruence next = join(queue[head], p);
      if (all.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {all.begin(), all.end()};
}

bool is_simple(const Quandle& q, int cap) {
  check_cap(q, cap);
  if (q.size() < 2) return false;
  for (const auto& c : principal_congruences(q)) {
    if (!c.is_total()) return false;
  }
  return true;
}

bool is_subdirectly_irreducible(const Quandle& q, int cap) {
  check_cap(q, cap);
  if (q.size() < 2) return false;
  auto principal = principal_congruences(q);
  Congruence monolith = principal.front();
  for (const auto& c : principal) monolith = meet(monolith, c);
  return !monolith.is_identity();
}

bool is_irreducible(int p, const std::vector<int>& poly) {
  int k = static_cast<int>(poly.size()) - 1;
  if (k < 1) return false;
  for (int d = 1; 2 * d <= k; ++d) {
    int count = ipow(p, d);
    for (int code = 0; code < count; ++code) {
      std::vector<int> divisor(d + 1, 1);
      for (int i = 0, c = code; i < d; ++i, c /= p) divisor[i] = c % p;
      auto r = poly_mod(poly, divisor, p);
      if (std::all_of(r.begin(), r.end(), [](int v) { return v == 0; })) return false;
    }
  }
  return true;
}

Quandle simple_affine(int p, int k, const std::vector<int>& poly) {
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  if (k < 1 || static_cast<int>(poly.size()) != k + 1) {
    throw PreconditionError("poly must list k+1 coefficients");
  }
  std::vector<int> reduced;
  for (int a : poly) reduced.push_back(((a % p) + p) % p);
  if (reduced.back() != 1) throw PreconditionError("poly must be monic");
  if (reduced.front() == 0) throw PreconditionError("poly must have nonzero constant term");
  if (k == 1 && reduced[0] == p - 1 && p != 2) {
    throw PreconditionError("x - 1 gives a projection quandle, which is not simple");
  }
  if (!is_irreducible(p, reduced)) throw PreconditionError("poly is reducible over F_p");
  AbelianGroup group(std::vector<int>(k, p));
  std::vector<GroupElement> images;
  for (int t = 0; t < k; ++t) {
    GroupElement column;
    column.coords.assign(k, 0);
    if (t + 1 < k) {
      column.coords[t + 1] = 1;
    } else {
      for (int i = 0; i < k; ++i) column.coords[i] = (p - reduced[i]) % p;
    }
    images.push_back(std::move(column));
  }
  return Quandle::affine(group, Homomorphism(group, group, std::move(images)));
}

AffineMesh si_involutory_mesh(int family, int p, int k) {
  if (k < 1) throw PreconditionError("k must be >= 1");
  switch (family) {
    case 1:
      if (!is_prime(p) || p == 2) throw PreconditionError("family 1 needs an odd prime");
      return mesh_from_scalars({ipow(p, k)}, {{2}}, {{0}});
    case 2:
      if (p != 2) throw PreconditionError("family 2 is defined for p = 2");
      return mesh_from_scalars({ipow(2, k), ipow(2, k - 1)}, {{2, 2}, {2, 2}}, {{0, -1}, {1, 0}});
    case 3:
      if (p != 2) throw PreconditionError("family 3 is defined for p = 2");
      return mesh_from_scalars({ipow(2, k), ipow(2, k - 1), ipow(2, k - 1)},
                               {{2, 2, 2}, {2, 2, 2}, {2, 2, 2}},
                               {{0, -1, 0}, {1, 0, 1}, {0, -1, 0}});
    default:
      throw PreconditionError("family must be 1, 2 or 3");
  }
}

Quandle si_involutory(int family, int p, int k) {
  return sum(si_involutory_mesh(family, p, k)).quandle;
}

AffineMesh si_2reductive_mesh(int q, const std::vector<int>& constants) {
  if (!is_prime_power(q)) throw PreconditionError("fibre order must be a prime power");
  if (constants.empty()) throw PreconditionError("at least two fibres are required");
  std::set<int> distinct;
  for (int c : constants) {
    if (c < 0 || c >= q) throw PreconditionError("constants must lie in Z_q");
    distinct.insert(c);
  }
  if (distinct.size() != constants.size()) throw PreconditionError("constants must be distinct");
  std::size_t m = constants.size() + 1;
  std::vector<int> orders(m, 1);
  orders[0] = q;
  std::vector<std::vector<long long>> phi(m, std::vector<long long>(m, 0));
  std::vector<std::vector<long long>> c(m, std::vector<long long>(m, 0));
  for (std::size_t i = 1; i < m; ++i) c[i][0] = constants[i - 1];
  AffineMesh mesh = mesh_from_scalars(orders, phi, c);
  if (!is_indecomposable(mesh)) throw PreconditionError("constants must generate Z_q");
  return mesh;
}

Quandle si_2reductive(int q, const std::vector<int>& constants) {
  return sum(si_2reductive_mesh(q, constants)).quandle;
}

ClassificationReport classify(const Quandle& q, int congruence_cap) {
  auto axioms = validate(q);
  if (!axioms.ok()) throw PreconditionError("not a quandle: " + axioms.describe());
  ClassificationReport r;
  r.size = q.size();
  r.medial = is_medial(q);
  for (const auto& orb : orbits(q)) r.orbit_sizes.push_back(static_cast<int>(orb.size()));
  r.latin = is_latin(q);
  r.connected = is_connected(q);
  r.reductivity_degree = reductivity_degree(q);
  r.symmetry_order = symmetry_order(q);
  r.involutory = r.symmetry_order <= 2;
  r.two_reductive = r.reductivity_degree && *r.reductivity_degree <= 2;
  if (r.medial) {
    CanonicalMesh canonical = canonical_mesh(q);
    r.mesh = canonical.mesh;
    const AffineMesh& m = canonical.mesh;
    r.latin_orbits = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m.phi[i][i].is_bijective()) r.latin_orbits = false;
    }
    if (r.latin_orbits) {
      AffineMesh product = latin_normalize(m);
      const AbelianGroup& g = product.groups[0];
      Homomorphism translation = Homomorphism::identity(g) - product.phi[0][0];
      int k = static_cast<int>(product.size());
      Quandle target = Quandle::direct_product(Quandle::affine(g, translation),
                                               Quandle::projection(k));
      auto iso = brute_force_iso(q, target);
      if (!iso) throw ConsistencyError("latin-orbit quandle is not a product");
      r.product = ProductDecomposition{g, translation, k, *iso};
    }
  }
  if (q.size() <= congruence_cap) {
    r.simple = is_simple(q, congruence_cap);
    r.subdirectly_irreducible = is_subdirectly_irreducible(q, congruence_cap);
  }
  return r;
}

std::string ClassificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["size"] = size;
  j["medial"] = medial;
  j["orbit_sizes"] = orbit_sizes;
  j["latin"] = latin;
  j["connected"] = connected;
  if (reductivity_degree) {
    j["reductivity_degree"] = *reductivity_degree;
  } else {
    j["reductivity_degree"] = "non-reductive";
  }
  j["symmetry_order"] = symmetry_order;
  j["two_reductive"] = two_reductive;
  j["involutory"] = involutory;
  j["latin_orbits"] = latin_orbits;
  if (mesh) j["mesh"] = nullptr;  // placeholder, printed in mesh layout below
  if (product) {
    nlohmann::ordered_json p;
    p["latin_group"] = product->group.factors();
    std::vector<std::vector<int>> images;
    for (const auto& e : product->translation.images()) images.push_back(e.coords);
    p["latin_translation"] = images;
    p["projection_size"] = product->projection_size;
    p["isomorphism"] = product->iso;
    j["product"] = p;
  }
  if (simple) j["simple"] = *simple;
  if (subdirectly_irreducible) j["subdirectly_irreducible"] = *subdirectly_irreducible;
  // One field per line, compact values; the mesh keeps its file layout.
  std::ostringstream out;
  out << "{\n";
  std::size_t left = j.size();
  for (const auto& [key, value] : j.items()) {
    out << "  " << nlohmann::json(key).dump() << ": ";
    if (key == "mesh") {
      std::string text = print_mesh(*mesh);
      text.pop_back();
      for (char ch : text) {
        out << ch;
        if (ch == '\n') out << "  ";
      }
    } else {
      out << value.dump();
    }
    out << (--left ? ",\n" : "\n");
  }
  out << "}\n";
  return out.str();
}

}  // namespace qmw
