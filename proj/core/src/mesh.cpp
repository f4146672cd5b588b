#include "qmw/mesh.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qmw/errors.hpp"

namespace qmw {

int AffineMesh::order() const {
  int total = 0;
  for (const auto& g : groups) total += g.order();
  return total;
}

AffineMesh mesh_from_scalars(const std::vector<int>& orders,
                             const std::vector<std::vector<long long>>& phi,
                             const std::vector<std::vector<long long>>& c) {
  std::size_t k = orders.size();
  if (phi.size() != k || c.size() != k) throw PreconditionError("matrix size mismatch");
  AffineMesh m;
  for (int n : orders) m.groups.push_back(AbelianGroup::cyclic(n));
  m.phi.resize(k);
  m.c.assign(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    if (phi[i].size() != k || c[i].size() != k) throw PreconditionError("matrix size mismatch");
    for (std::size_t j = 0; j < k; ++j) {
      m.phi[i].push_back(Homomorphism::cyclic_map(m.groups[i], m.groups[j], phi[i][j]));
      long long e = orders[j];
      m.c[i][j] = static_cast<int>(((c[i][j] % e) + e) % e);
    }
  }
  return m;
}

AffineMesh constant_mesh(const std::vector<AbelianGroup>& groups,
                         const std::vector<std::vector<int>>& c) {
  AffineMesh m;
  m.groups = groups;
  m.phi.resize(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = 0; j < groups.size(); ++j) {
      m.phi[i].push_back(Homomorphism::zero(groups[i], groups[j]));
    }
  }
  m.c = c;
  return m;
}

void check_shape(const AffineMesh& m) {
  std::size_t k = m.size();
  if (k == 0) throw PreconditionError("mesh needs at least one fibre");
  if (m.phi.size() != k || m.c.size() != k) {
    throw PreconditionError("phi and c must be " + std::to_string(k) + "x" + std::to_string(k));
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (m.phi[i].size() != k || m.c[i].size() != k) {
      throw PreconditionError("row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (!(m.phi[i][j].domain() == m.groups[i]) || !(m.phi[i][j].codomain() == m.groups[j])) {
        throw PreconditionError("phi[" + std::to_string(i) + "][" + std::to_string(j) +
                                "] has the wrong domain or codomain");
      }
      if (m.c[i][j] < 0 || m.c[i][j] >= m.groups[j].order()) {
        throw PreconditionError("c[" + std::to_string(i) + "][" + std::to_string(j) +
                                "] is not an element of fibre " + std::to_string(j));
      }
    }
  }
}

MeshReport validate_mesh(const AffineMesh& m) {
  check_shape(m);
  MeshReport report;
  std::size_t k = m.size();
  auto note = [&](const std::string& text) {
    if (report.first_violation.empty()) report.first_violation = text;
  };
  for (std::size_t i = 0; i < k; ++i) {
    Homomorphism one_minus = Homomorphism::identity(m.groups[i]) - m.phi[i][i];
    if (!one_minus.is_bijective()) {
      report.m1 = false;
      note("M1 fails at i=" + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (m.c[i][i] != 0) {
      report.m2 = false;
      note("M2 fails at i=" + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < k && report.m3; ++i) {
    for (std::size_t t = 0; t < k && report.m3; ++t) {
      Homomorphism reference = m.phi[0][t] * m.phi[i][0];
      for (std::size_t j = 1; j < k; ++j) {
        if (!(m.phi[j][t] * m.phi[i][j] == reference)) {
          report.m3 = false;
          note("M3 fails at i=" + std::to_string(i) + ", j=" + std::to_string(j) +
               ", j'=0, k=" + std::to_string(t));
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < k && report.m4; ++i) {
    for (std::size_t j = 0; j < k && report.m4; ++j) {
      for (std::size_t t = 0; t < k; ++t) {
        const AbelianGroup& g = m.groups[t];
        if (m.phi[j][t](m.c[i][j]) != m.phi[t][t](g.sub(m.c[i][t], m.c[j][t]))) {
          report.m4 = false;
          note("M4 fails at i=" + std::to_string(i) + ", j=" + std::to_string(j) +
               ", k=" + std::to_string(t));
          break;
        }
      }
    }
  }
  return report;
}

bool is_indecomposable(const AffineMesh& m) {
  check_shape(m);
  for (std::size_t j = 0; j < m.size(); ++j) {
    std::vector<int> gens;
    for (std::size_t i = 0; i < m.size(); ++i) {
      gens.push_back(m.c[i][j]);
      for (int y : m.phi[i][j].image_indices()) gens.push_back(y);
    }
    auto member = subgroup_closure(m.groups[j], gens);
    if (std::find(member.begin(), member.end(), 0) != member.end()) return false;
  }
  return true;
}

MeshSum sum(const AffineMesh& m) {
  check_shape(m);
  std::size_t k = m.size();
  MeshSum out;
  out.offsets.resize(k);
  int n = 0;
  for (std::size_t i = 0; i < k; ++i) {
    out.offsets[i] = n;
    n += m.groups[i].order();
  }
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (std::size_t j = 0; j < k; ++j) {
    const AbelianGroup& g = m.groups[j];
    Homomorphism one_minus = Homomorphism::identity(g) - m.phi[j][j];
    for (std::size_t i = 0; i < k; ++i) {
      for (int a = 0; a < m.groups[i].order(); ++a) {
        int base = g.add(m.c[i][j], m.phi[i][j](a));
        for (int b = 0; b < g.order(); ++b) {
          table[static_cast<std::size_t>(out.offsets[i] + a) * n + out.offsets[j] + b] =
              out.offsets[j] + g.add(base, one_minus(b));
        }
      }
    }
  }
  out.quandle = Quandle(n, std::move(table));
  return out;
}

CanonicalMesh canonical_mesh(const Quandle& q, std::optional<std::vector<int>> transversal) {
  auto orbs = orbits(q);
  std::vector<int> orbit_of(q.size(), -1);
  for (std::size_t o = 0; o < orbs.size(); ++o) {
    for (int x : orbs[o]) orbit_of[x] = static_cast<int>(o);
  }
  CanonicalMesh out;
  if (transversal) {
    if (transversal->size() != orbs.size()) {
      throw PreconditionError("transversal must pick one element per orbit");
    }
    std::vector<char> hit(orbs.size(), 0);
    for (int e : *transversal) {
      if (e < 0 || e >= q.size() || hit[orbit_of[e]]) {
        throw PreconditionError("transversal must pick one element per orbit");
      }
      hit[orbit_of[e]] = 1;
    }
    out.transversal = *transversal;
  } else {
    for (const auto& orb : orbs) out.transversal.push_back(orb.front());
  }
  std::size_t k = out.transversal.size();
  for (int e : out.transversal) out.charts.push_back(orbit_group(q, e));

  AffineMesh& m = out.mesh;
  for (const auto& chart : out.charts) m.groups.push_back(chart.group);
  m.phi.resize(k);
  m.c.assign(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    const OrbitChart& ce = out.charts[i];
    for (std::size_t j = 0; j < k; ++j) {
      const OrbitChart& cf = out.charts[j];
      int f = cf.base;
      int ef = cf.to_group[q(ce.base, f)];
      m.c[i][j] = ef;
      std::vector<int> table(ce.group.order());
      for (int g = 0; g < ce.group.order(); ++g) {
        table[g] = cf.group.sub(cf.to_group[q(ce.from_group[g], f)], ef);
      }
      try {
        m.phi[i].push_back(Homomorphism::from_table(ce.group, cf.group, std::move(table)));
      } catch (const PreconditionError&) {
        throw ConsistencyError("canonical mesh entry is not a homomorphism; quandle is not medial");
      }
    }
  }
  int n = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (int g = 0; g < m.groups[i].order(); ++g) out.sum_to_quandle.push_back(out.charts[i].from_group[g]);
    n += m.groups[i].order();
  }
  if (n != q.size()) throw ConsistencyError("orbit charts do not cover the quandle");
  return out;
}

// ---------------------------------------------------------------------------
// Criteria

bool gcd_check(const AffineMesh& m) {
  int g = 0;
  for (const auto& a : m.groups) g = std::gcd(g, a.order());
  for (std::size_t i = 0; i < m.size(); ++i) {
    int image = m.phi[i][i].pow(2).image_size();
    if (g % image != 0) return false;
  }
  return true;
}

std::optional<int> reductivity_degree(const AffineMesh& m) {
  int worst = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    Homomorphism power = Homomorphism::identity(m.groups[i]);
    int e = 0;
    // A nilpotent endomorphism of a group of order N has index at most log2 N.
    while (!power.is_zero()) {
      if (e > m.groups[i].order()) return std::nullopt;
      power = m.phi[i][i] * power;
      ++e;
    }
    worst = std::max(worst, e);
  }
  return worst + 1;
}

bool symmetry_check(const AffineMesh& m, int n) {
  if (n < 1) throw PreconditionError("symmetry exponent must be >= 1");
  for (std::size_t i = 0; i < m.size(); ++i) {
    const AbelianGroup& g = m.groups[i];
    Homomorphism base = Homomorphism::identity(g) - m.phi[i][i];
    Homomorphism power = Homomorphism::identity(g);
    Homomorphism total = Homomorphism::zero(g, g);
    for (int r = 0; r < n; ++r) {
      total = total + power;
      power = base * power;
    }
    if (!total.is_zero()) return false;
  }
  return true;
}

bool is_2reductive(const AffineMesh& m) {
  for (const auto& row : m.phi) {
    for (const auto& f : row) {
      if (!f.is_zero()) return false;
    }
  }
  return true;
}

bool is_involutory(const AffineMesh& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(m.phi[i][i] == Homomorphism::scalar(m.groups[i], 2))) return false;
  }
  return true;
}

bool zero_column_check(const AffineMesh& m) {
  for (std::size_t t = 0; t < m.size(); ++t) {
    bool some_zero = false, some_nonzero = false;
    for (std::size_t j = 0; j < m.size(); ++j) {
      (m.phi[j][t].is_zero() ? some_zero : some_nonzero) = true;
    }
    if (some_zero && some_nonzero) return false;
  }
  return true;
}

AffineMesh latin_normalize(const AffineMesh& m) {
  check_shape(m);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(m.groups[i] == m.groups[0]) || !m.phi[i][i].is_bijective()) {
      throw PreconditionError("latin_normalize needs equal fibres with bijective diagonal");
    }
  }
  AffineMesh out;
  out.groups = m.groups;
  out.phi.assign(m.size(), std::vector<Homomorphism>(m.size(), m.phi[0][0]));
  out.c.assign(m.size(), std::vector<int>(m.size(), 0));
  if (!homologous(m, out)) {
    throw ConsistencyError("latin mesh is not homologous to its product form");
  }
  return out;
}

}  // namespace qmw
