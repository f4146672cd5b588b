#include "qmw/quandle.hpp"

#include <algorithm>
#include <numeric>
#include <functional>
#include <sstream>

#include "qmw/errors.hpp"

namespace qmw {

Quandle::Quandle(int n, std::vector<int> table) : n_(n), table_(std::move(table)) {
  if (n < 0) throw PreconditionError("size must be >= 0");
  if (table_.size() != static_cast<std::size_t>(n) * n) {
    throw PreconditionError("table must have n*n entries");
  }
  for (int v : table_) {
    if (v < 0 || v >= n) throw PreconditionError("table entry out of range");
  }
}

Quandle Quandle::from_rows(const std::vector<std::vector<int>>& rows) {
  std::vector<int> table;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw PreconditionError("table must be square");
    table.insert(table.end(), r.begin(), r.end());
  }
  return Quandle(static_cast<int>(rows.size()), std::move(table));
}

Quandle Quandle::projection(int n) {
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = b;
  }
  return Quandle(n, std::move(table));
}

Quandle Quandle::affine(const AbelianGroup& group, const Homomorphism& f) {
  if (!(f.domain() == group) || !(f.codomain() == group)) {
    throw PreconditionError("affine quandle needs an endomorphism of the group");
  }
  Homomorphism g = Homomorphism::identity(group) - f;
  int n = group.order();
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) table[static_cast<std::size_t>(x) * n + y] = group.add(g(x), f(y));
  }
  return Quandle(n, std::move(table));
}

Quandle Quandle::direct_product(const Quandle& left, const Quandle& right) {
  int n1 = left.size(), n2 = right.size(), n = n1 * n2;
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      table[static_cast<std::size_t>(a) * n + b] =
          left(a / n2, b / n2) * n2 + right(a % n2, b % n2);
    }
  }
  return Quandle(n, std::move(table));
}

std::vector<int> Quandle::row(int a) const {
  return {table_.begin() + static_cast<std::ptrdiff_t>(a) * n_,
          table_.begin() + static_cast<std::ptrdiff_t>(a + 1) * n_};
}

Permutation Quandle::left(int a) const { return Permutation(row(a)); }

std::vector<int> Quandle::right(int a) const {
  std::vector<int> r(n_);
  for (int x = 0; x < n_; ++x) r[x] = (*this)(x, a);
  return r;
}

Quandle Quandle::restrict_to(const std::vector<int>& elements) const {
  std::vector<int> pos(n_, -1);
  for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<int>(i);
  int m = static_cast<int>(elements.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      int v = pos[(*this)(elements[i], elements[j])];
      if (v < 0) throw PreconditionError("element set is not closed");
      table[static_cast<std::size_t>(i) * m + j] = v;
    }
  }
  return Quandle(m, std::move(table));
}

Quandle Quandle::relabelled(const std::vector<int>& relabel) const {
  std::vector<int> table(table_.size());
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      table[static_cast<std::size_t>(relabel[a]) * n_ + relabel[b]] = relabel[(*this)(a, b)];
    }
  }
  return Quandle(n_, std::move(table));
}

std::string AxiomReport::describe() const {
  std::ostringstream out;
  if (!idempotent) out << "idempotency fails: " << *idempotent_witness << "*" << *idempotent_witness
                       << " != " << *idempotent_witness << "\n";
  if (!left_quasigroup) {
    auto [a, b1, b2] = *quasigroup_witness;
    out << "left quasigroup fails: " << a << "*" << b1 << " == " << a << "*" << b2 << "\n";
  }
  if (!left_distributive) {
    auto [a, b, c] = *distributive_witness;
    out << "left distributivity fails: " << a << "*(" << b << "*" << c << ") != (" << a << "*"
        << b << ")*(" << a << "*" << c << ")\n";
  }
  return out.str();
}

AxiomReport validate(const Quandle& q) {
  AxiomReport report;
  int n = q.size();
  for (int a = 0; a < n; ++a) {
    if (q(a, a) != a) {
      report.idempotent = false;
      report.idempotent_witness = a;
      break;
    }
  }
  for (int a = 0; a < n && report.left_quasigroup; ++a) {
    std::vector<int> first(n, -1);
    for (int b = 0; b < n; ++b) {
      int v = q(a, b);
      if (first[v] >= 0) {
        report.left_quasigroup = false;
        report.quasigroup_witness = std::array<int, 3>{a, first[v], b};
        break;
      }
      first[v] = b;
    }
  }
  for (int a = 0; a < n && report.left_distributive; ++a) {
    for (int b = 0; b < n && report.left_distributive; ++b) {
      for (int c = 0; c < n; ++c) {
        if (q(a, q(b, c)) != q(q(a, b), q(a, c))) {
          report.left_distributive = false;
          report.distributive_witness = std::array<int, 3>{a, b, c};
          break;
        }
      }
    }
  }
  return report;
}

bool is_medial_by_identity(const Quandle& q) {
  int n = q.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      int xy = q(x, y);
      for (int u = 0; u < n; ++u) {
        int xu = q(x, u);
        for (int v = 0; v < n; ++v) {
          if (q(xy, q(u, v)) != q(xu, q(y, v))) return false;
        }
      }
    }
  }
  return true;
}

std::vector<Permutation> dis_generators(const Quandle& q) {
  std::vector<Permutation> gens;
  if (q.size() == 0) return gens;
  Permutation inv0 = q.left(0).inverse();
  for (int a = 1; a < q.size(); ++a) {
    Permutation g = q.left(a) * inv0;
    if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) {
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

bool is_medial_by_displacement(const Quandle& q) {
  auto gens = dis_generators(q);
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      if (gens[a] * gens[b] != gens[b] * gens[a]) return false;
    }
  }
  return true;
}

bool is_medial(const Quandle& q) {
  bool by_identity = is_medial_by_identity(q);
  bool by_displacement = is_medial_by_displacement(q);
  if (by_identity != by_displacement) {
    throw ConsistencyError("mediality methods disagree");
  }
  return by_identity;
}

PermGroup dis(const Quandle& q, std::size_t cap) {
  return PermGroup(q.size(), dis_generators(q), cap);
}

PermGroup lmlt(const Quandle& q, std::size_t cap) {
  std::vector<Permutation> gens;
  for (int a = 0; a < q.size(); ++a) gens.push_back(q.left(a));
  return PermGroup(q.size(), std::move(gens), cap);
}

std::vector<std::vector<int>> orbits(const Quandle& q) {
  std::vector<Permutation> gens;
  for (int a = 0; a < q.size(); ++a) gens.push_back(q.left(a));
  return orbits_of(q.size(), gens);
}

Quandle OrbitChart::chart() const { return Quandle::affine(group, translation); }

namespace {

// Finds an isomorphism from the abstract group on positions 0..m-1 (with
// addition table `add`, neutral 0) onto `group`; returns position -> index.
std::optional<std::vector<int>> identify(const std::vector<int>& add, int m,
                                         const AbelianGroup& group) {
  auto plus = [&](int x, int y) { return add[static_cast<std::size_t>(x) * m + y]; };
  std::vector<int> order(m, 0);
  for (int x = 0; x < m; ++x) {
    int k = 1;
    for (int y = x; y != 0; y = plus(y, x)) ++k;
    order[x] = x == 0 ? 1 : k;
  }
  std::size_t rank = group.rank();
  std::vector<int> chosen(rank, 0);
  std::optional<std::vector<int>> result;
  std::function<void(std::size_t)> search = [&](std::size_t t) {
    if (result) return;
    if (t == rank) {
      // position of sum k_t * chosen_t for each group index
      std::vector<int> from(group.order(), 0);
      std::vector<int> to(m, -1);
      for (int g = 0; g < group.order(); ++g) {
        int x = 0;
        for (std::size_t s = 0; s < rank; ++s) {
          for (int k = 0; k < group.coord(g, s); ++k) x = plus(x, chosen[s]);
        }
        if (to[x] >= 0) return;
        to[x] = g;
        from[g] = x;
      }
      result = std::move(to);
      return;
    }
    for (int x = 0; x < m; ++x) {
      if (order[x] == group.factors()[t]) {
        chosen[t] = x;
        search(t + 1);
        if (result) return;
      }
    }
  };
  search(0);
  return result;
}

}  // namespace

OrbitChart orbit_group(const Quandle& q, int e) {
  int n = q.size();
  if (e < 0 || e >= n) throw PreconditionError("base element out of range");
  auto gens = dis_generators(q);
  // alpha[x] maps e to x; breadth-first, first discovery wins.
  std::vector<std::optional<Permutation>> alpha(n);
  alpha[e] = Permutation::identity(n);
  std::vector<int> queue{e};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (const auto& g : gens) {
      Permutation next = g * *alpha[x];
      int y = next(e);
      if (!alpha[y]) {
        alpha[y] = std::move(next);
        queue.push_back(y);
      }
    }
  }
  OrbitChart chart;
  chart.base = e;
  chart.orbit = queue;
  std::sort(chart.orbit.begin(), chart.orbit.end());
  int m = static_cast<int>(chart.orbit.size());
  std::vector<int> pos(n, -1);
  for (int i = 0; i < m; ++i) pos[chart.orbit[i]] = i;

  // Positions are relabelled so that e sits at position 0 of the abstract group.
  std::vector<int> label(m);  // abstract -> orbit position
  label[0] = pos[e];
  for (int i = 0, k = 1; i < m; ++i) {
    if (i != pos[e]) label[k++] = i;
  }
  std::vector<int> unlabel(m);
  for (int k = 0; k < m; ++k) unlabel[label[k]] = k;

  chart.add_table.resize(static_cast<std::size_t>(m) * m);
  std::vector<int> abstract_add(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      int s = pos[(*alpha[chart.orbit[i]])(chart.orbit[j])];
      if (s < 0) throw ConsistencyError("orbit addition leaves the orbit");
      chart.add_table[static_cast<std::size_t>(i) * m + j] = s;
      abstract_add[static_cast<std::size_t>(unlabel[i]) * m + unlabel[j]] = unlabel[s];
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (abstract_add[static_cast<std::size_t>(i) * m + j] !=
          abstract_add[static_cast<std::size_t>(j) * m + i]) {
        throw ConsistencyError("orbit addition is not commutative; quandle is not medial");
      }
      for (int k = 0; k < m; ++k) {
        int lhs = abstract_add[static_cast<std::size_t>(abstract_add[static_cast<std::size_t>(i) * m + j]) * m + k];
        int rhs = abstract_add[static_cast<std::size_t>(i) * m + abstract_add[static_cast<std::size_t>(j) * m + k]];
        if (lhs != rhs) throw ConsistencyError("orbit addition is not associative");
      }
    }
  }
  std::optional<std::vector<int>> iso;
  for (const auto& candidate : groups_of_order(m)) {
    iso = identify(abstract_add, m, candidate);
    if (iso) {
      chart.group = candidate;
      break;
    }
  }
  if (!iso) throw ConsistencyError("orbit addition is not an abelian group");
  chart.to_group.assign(n, -1);
  chart.from_group.assign(m, -1);
  for (int k = 0; k < m; ++k) {
    int x = chart.orbit[label[k]];
    chart.to_group[x] = (*iso)[k];
    chart.from_group[(*iso)[k]] = x;
  }
  std::vector<int> table(m);
  for (int g = 0; g < m; ++g) {
    int image = q(e, chart.from_group[g]);
    if (chart.to_group[image] < 0) throw ConsistencyError("L_e leaves the orbit");
    table[g] = chart.to_group[image];
  }
  try {
    chart.translation = Homomorphism::from_table(chart.group, chart.group, std::move(table));
  } catch (const PreconditionError&) {
    throw ConsistencyError("L_e is not additive on the orbit group; quandle is not medial");
  }
  return chart;
}

bool is_latin(const Quandle& q) {
  int n = q.size();
  for (int b = 0; b < n; ++b) {
    std::vector<char> seen(n, 0);
    for (int a = 0; a < n; ++a) {
      int v = q(a, b);
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool is_connected(const Quandle& q) { return orbits(q).size() <= 1; }

int symmetry_order(const Quandle& q) {
  int ord = 1;
  for (int a = 0; a < q.size(); ++a) ord = std::lcm(ord, q.left(a).order());
  return ord;
}

std::optional<int> reductivity_degree(const Quandle& q, std::optional<int> cap) {
  int n = q.size();
  int limit = cap.value_or(std::max(n, 1));
  std::vector<std::vector<int>> power(n);
  for (int y = 0; y < n; ++y) {
    power[y].resize(n);
    std::iota(power[y].begin(), power[y].end(), 0);
  }
  for (int m = 1; m <= limit; ++m) {
    bool all_constant = true;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        power[y][x] = q(power[y][x], y);
        if (power[y][x] != y) all_constant = false;
      }
    }
    if (all_constant) return m;
  }
  return std::nullopt;
}

}  // namespace qmw
