#include <algorithm>

#include "qmw/errors.hpp"
#include "qmw/mesh.hpp"

namespace qmw {

namespace {

std::vector<int> fibre_signature(const AffineMesh& m, std::size_t i, bool constants_matter) {
  const Homomorphism& f = m.phi[i][i];
  std::vector<int> sig = m.groups[i].factors();
  sig.push_back(-1);
  sig.push_back(f.image_size());
  sig.push_back(fixed_point_count(f));
  sig.push_back(f.pow(2).image_size());
  int row_nonzero = 0, col_nonzero = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    row_nonzero += !m.phi[i][j].is_zero();
    col_nonzero += !m.phi[j][i].is_zero();
  }
  sig.push_back(row_nonzero);
  sig.push_back(col_nonzero);
  if (constants_matter) {
    std::vector<int> col_orders, row_orders;
    for (std::size_t j = 0; j < m.size(); ++j) {
      col_orders.push_back(m.groups[i].element_order(m.c[j][i]));
      row_orders.push_back(m.groups[j].order() * 1000 + m.groups[j].element_order(m.c[i][j]));
    }
    std::sort(col_orders.begin(), col_orders.end());
    std::sort(row_orders.begin(), row_orders.end());
    sig.push_back(-2);
    sig.insert(sig.end(), col_orders.begin(), col_orders.end());
    sig.push_back(-3);
    sig.insert(sig.end(), row_orders.begin(), row_orders.end());
  }
  return sig;
}

class HomologySearch {
 public:
  HomologySearch(const AffineMesh& a, const AffineMesh& b)
      : a_(a), b_(b), k_(a.size()), two_reductive_(is_2reductive(a) && is_2reductive(b)) {}

  std::optional<HomologyWitness> run() {
    if (b_.size() != k_) return std::nullopt;
    if (is_2reductive(a_) != is_2reductive(b_)) return std::nullopt;
    std::vector<std::vector<int>> sa, sb;
    for (std::size_t i = 0; i < k_; ++i) {
      sa.push_back(fibre_signature(a_, i, two_reductive_));
      sb.push_back(fibre_signature(b_, i, two_reductive_));
    }
    auto sorted_a = sa, sorted_b = sb;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) return std::nullopt;
    candidates_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        if (sa[i] == sb[j]) candidates_[i].push_back(static_cast<int>(j));
      }
    }
    pi_.assign(k_, -1);
    used_.assign(k_, 0);
    psi_.assign(k_, nullptr);
    d_.assign(k_, 0);
    if (!assign_fibre(0)) return std::nullopt;
    HomologyWitness w;
    w.pi = pi_;
    for (std::size_t i = 0; i < k_; ++i) w.psi.push_back(*psi_[i]);
    w.d = d_;
    return w;
  }

 private:
  // H1 (and H2 with d = 0 in the 2-reductive case) on the pair x -> y.
  bool pair_ok(std::size_t x, std::size_t y) const {
    const Homomorphism& f = a_.phi[x][y];
    const Homomorphism& g = b_.phi[pi_[x]][pi_[y]];
    const AbelianGroup& dom = a_.groups[x];
    for (std::size_t t = 0; t < dom.rank(); ++t) {
      int gen = dom.generator(t);
      if ((*psi_[y])(f(gen)) != g((*psi_[x])(gen))) return false;
    }
    if (two_reductive_ && (*psi_[y])(a_.c[x][y]) != b_.c[pi_[x]][pi_[y]]) return false;
    return true;
  }

  bool assign_fibre(std::size_t i) {
    if (i == k_) return two_reductive_ || assign_shift(0);
    for (int j : candidates_[i]) {
      if (used_[j]) continue;
      pi_[i] = j;
      used_[j] = 1;
      for (const auto& psi : aut_group_cached(a_.groups[i])) {
        psi_[i] = &psi;
        bool ok = true;
        for (std::size_t l = 0; l <= i && ok; ++l) {
          ok = pair_ok(l, i) && (l == i || pair_ok(i, l));
        }
        if (ok && assign_fibre(i + 1)) return true;
      }
      psi_[i] = nullptr;
      used_[j] = 0;
      pi_[i] = -1;
    }
    return false;
  }

  // H2: psi_j(c_ij) = c'_{pi i, pi j} + phi'_{pi i, pi j}(d_i) - phi'_{pi j, pi j}(d_j).
  bool shift_ok(std::size_t i, std::size_t j) const {
    const AbelianGroup& g = b_.groups[pi_[j]];
    int lhs = (*psi_[j])(a_.c[i][j]);
    int rhs = g.sub(g.add(b_.c[pi_[i]][pi_[j]], b_.phi[pi_[i]][pi_[j]](d_[i])),
                    b_.phi[pi_[j]][pi_[j]](d_[j]));
    return lhs == rhs;
  }

  bool assign_shift(std::size_t i) {
    if (i == k_) return true;
    for (int d = 0; d < b_.groups[pi_[i]].order(); ++d) {
      d_[i] = d;
      bool ok = true;
      for (std::size_t l = 0; l < i && ok; ++l) ok = shift_ok(l, i) && shift_ok(i, l);
      if (ok && assign_shift(i + 1)) return true;
    }
    d_[i] = 0;
    return false;
  }

  const AffineMesh& a_;
  const AffineMesh& b_;
  std::size_t k_;
  bool two_reductive_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> pi_;
  std::vector<char> used_;
  std::vector<const Homomorphism*> psi_;
  std::vector<int> d_;
};

void require_valid_indecomposable(const AffineMesh& m) {
  auto report = validate_mesh(m);
  if (!report.ok()) throw PreconditionError("mesh is not valid: " + report.first_violation);
  if (!is_indecomposable(m)) {
    throw PreconditionError("homology decides isomorphism only for indecomposable meshes");
  }
}

}  // namespace

std::optional<HomologyWitness> homologous(const AffineMesh& a, const AffineMesh& b) {
  require_valid_indecomposable(a);
  require_valid_indecomposable(b);
  return HomologySearch(a, b).run();
}

bool check_witness(const AffineMesh& a, const AffineMesh& b, const HomologyWitness& w) {
  std::size_t k = a.size();
  if (b.size() != k || w.pi.size() != k || w.psi.size() != k || w.d.size() != k) return false;
  std::vector<char> hit(k, 0);
  for (int p : w.pi) {
    if (p < 0 || static_cast<std::size_t>(p) >= k || hit[p]) return false;
    hit[p] = 1;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!(w.psi[i].domain() == a.groups[i]) || !(w.psi[i].codomain() == b.groups[w.pi[i]]) ||
        !w.psi[i].is_bijective()) {
      return false;
    }
    if (w.d[i] < 0 || w.d[i] >= b.groups[w.pi[i]].order()) return false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Homomorphism& g = b.phi[w.pi[i]][w.pi[j]];
      if (!(w.psi[j] * a.phi[i][j] == g * w.psi[i])) return false;
      const AbelianGroup& target = b.groups[w.pi[j]];
      int rhs = target.sub(target.add(b.c[w.pi[i]][w.pi[j]], g(w.d[i])),
                           b.phi[w.pi[j]][w.pi[j]](w.d[j]));
      if (w.psi[j](a.c[i][j]) != rhs) return false;
    }
  }
  return true;
}

AffineMesh apply_homology(const AffineMesh& m, const HomologyWitness& w) {
  check_shape(m);
  std::size_t k = m.size();
  AffineMesh out;
  out.groups.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(w.psi[i].domain() == m.groups[i]) || !(w.psi[i].codomain() == m.groups[i])) {
      throw PreconditionError("psi must be automorphisms of the fibres");
    }
    out.groups[w.pi[i]] = m.groups[i];
  }
  out.phi.assign(k, std::vector<Homomorphism>(k, Homomorphism::zero(AbelianGroup(), AbelianGroup())));
  out.c.assign(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out.phi[w.pi[i]][w.pi[j]] = w.psi[j] * m.phi[i][j] * w.psi[i].inverse();
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const AbelianGroup& g = out.groups[w.pi[j]];
      const Homomorphism& f = out.phi[w.pi[i]][w.pi[j]];
      const Homomorphism& diag = out.phi[w.pi[j]][w.pi[j]];
      out.c[w.pi[i]][w.pi[j]] = g.add(g.sub(w.psi[j](m.c[i][j]), f(w.d[i])), diag(w.d[j]));
    }
  }
  return out;
}

std::vector<int> witness_to_iso(const AffineMesh& a, const AffineMesh& b,
                                const HomologyWitness& w) {
  std::vector<int> off_a(a.size()), off_b(b.size());
  for (std::size_t i = 1; i < a.size(); ++i) {
    off_a[i] = off_a[i - 1] + a.groups[i - 1].order();
    off_b[i] = off_b[i - 1] + b.groups[i - 1].order();
  }
  std::vector<int> map(a.order());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const AbelianGroup& target = b.groups[w.pi[i]];
    for (int x = 0; x < a.groups[i].order(); ++x) {
      map[off_a[i] + x] = off_b[w.pi[i]] + target.add(w.psi[i](x), w.d[i]);
    }
  }
  return map;
}

}  // namespace qmw
