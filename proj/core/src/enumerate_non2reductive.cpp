#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <unordered_set>

#include "parallel.hpp"
#include "qmw/enumerate.hpp"
#include "qmw/errors.hpp"

namespace qmw {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1)) * 0x100000001b3ULL;
    return h;
  }
};

using MatrixSet = std::unordered_set<std::vector<int>, VectorHash>;

// All homomorphisms between two groups, addressed by index; index 0 is zero.
struct HomSpace {
  std::vector<Homomorphism> homs;
  std::map<std::vector<int>, int> index;

  HomSpace(const AbelianGroup& a, const AbelianGroup& b) : homs(all_homs(a, b)) {
    for (std::size_t h = 0; h < homs.size(); ++h) index.emplace(homs[h].image_indices(), static_cast<int>(h));
  }
  int find(const std::vector<int>& images) const { return index.at(images); }
};

// A wreath-product element: fibre i goes to pi[i] via automorphism aut[i]
// (an index into the automorphism list of fibre i's group).
struct Action {
  std::vector<int> pi;
  std::vector<int> aut;
};

class ProfileSearch {
 public:
  ProfileSearch(const FibreProfile& profile, bool involutory)
      : fibres_(profile.fibres()), k_(static_cast<int>(fibres_.size())), involutory_(involutory) {
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::shared_ptr<HomSpace>> cache;
    spaces_.resize(static_cast<std::size_t>(k_) * k_);
    for (int i = 0; i < k_; ++i) {
      for (int j = 0; j < k_; ++j) {
        auto key = std::make_pair(fibres_[i].factors(), fibres_[j].factors());
        auto& slot = cache[key];
        if (!slot) slot = std::make_shared<HomSpace>(fibres_[i], fibres_[j]);
        spaces_[idx(i, j)] = slot;
      }
    }
    int start = 0;
    for (const auto& b : profile.blocks) {
      for (int c = 0; c < b.copies; ++c) block_of_.push_back(start);
      start += b.copies;
    }
    for (int i = 0; i < k_; ++i) {
      const auto& auts = aut_group_cached(fibres_[i]);
      auts_.push_back(&auts);
      std::map<std::vector<int>, int> position;
      for (std::size_t a = 0; a < auts.size(); ++a) position.emplace(auts[a].table(), static_cast<int>(a));
      std::vector<int> inverse(auts.size());
      for (std::size_t a = 0; a < auts.size(); ++a) inverse[a] = position.at(auts[a].inverse().table());
      aut_inverse_.push_back(std::move(inverse));
    }
    int gcd_orders = 0;
    for (const auto& g : fibres_) gcd_orders = std::gcd(gcd_orders, g.order());
    diag_candidates_.resize(k_);
    zero_allowed_.resize(k_);
    for (int i = 0; i < k_; ++i) {
      const AbelianGroup& g = fibres_[i];
      const HomSpace& space = *spaces_[idx(i, i)];
      if (involutory_) {
        Homomorphism two = Homomorphism::scalar(g, 2);
        zero_allowed_[i] = two.is_zero();
        if (!two.is_zero()) diag_candidates_[i].push_back(space.find(two.image_indices()));
        continue;
      }
      zero_allowed_[i] = true;
      for (std::size_t h = 1; h < space.homs.size(); ++h) {
        const Homomorphism& f = space.homs[h];
        if (!(Homomorphism::identity(g) - f).is_bijective()) continue;
        if (gcd_orders % f.pow(2).image_size() != 0) continue;
        diag_candidates_[i].push_back(static_cast<int>(h));
      }
    }
  }

  // Minimum of the homology class of (phi, c), by walking the whole class.
  AffineMesh class_minimum(const std::vector<int>& phi, const std::vector<int>& c) {
    if (gens_.empty()) gens_ = wreath_generators();
    using Pair = std::pair<std::vector<int>, std::vector<int>>;
    std::set<Pair> seen{{phi, c}};
    std::vector<Pair> orbit{{phi, c}};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      Pair cur = orbit[head];
      auto visit = [&](Pair next) {
        if (seen.insert(next).second) orbit.push_back(std::move(next));
      };
      for (const auto& g : gens_) visit({act_on_phi(cur.first, g), act_on_constants(cur.second, g)});
      for (int i = 0; i < k_; ++i) {
        for (std::size_t s = 0; s < fibres_[i].rank(); ++s) {
          visit({cur.first, shift_constants(cur.first, cur.second, i, s)});
        }
      }
    }
    const Pair& best = *seen.begin();
    return to_mesh(best.first, best.second);
  }

  std::vector<AffineMesh> run() {
    phi_.assign(static_cast<std::size_t>(k_) * k_, -1);
    search_column(0);
    std::vector<AffineMesh> out;
    for (const auto& rep : phi_reps_) {
      auto classes = constants_for(rep);
      out.insert(out.end(), classes.begin(), classes.end());
    }
    return out;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * k_ + j; }
  const Homomorphism& hom(const std::vector<int>& phi, int i, int j) const {
    return spaces_[idx(i, j)]->homs[phi[idx(i, j)]];
  }

  // ----- homomorphism matrices --------------------------------------------

  // M3 on the pair (i, t): every available composite phi_jt phi_ij agrees.
  bool composites_agree(int i, int t) const {
    const AbelianGroup& a = fibres_[i];
    std::vector<int> first, current;
    bool have_first = false;
    for (int j = 0; j < k_; ++j) {
      if (phi_[idx(i, j)] < 0 || phi_[idx(j, t)] < 0) continue;
      const Homomorphism& f = hom(phi_, i, j);
      const Homomorphism& g = hom(phi_, j, t);
      current.clear();
      for (std::size_t s = 0; s < a.rank(); ++s) current.push_back(g(f.image_indices()[s]));
      if (!have_first) {
        first = current;
        have_first = true;
      } else if (current != first) {
        return false;
      }
    }
    return true;
  }

  bool entry_consistent(int x, int y) const {
    for (int t = 0; t < k_; ++t) {
      if (!composites_agree(x, t)) return false;
    }
    for (int i = 0; i < k_; ++i) {
      if (!composites_agree(i, y)) return false;
    }
    return true;
  }

  void search_column(int col) {
    if (col == k_) {
      finish_phi();
      return;
    }
    if (zero_allowed_[col]) {
      bool ok = true;
      for (int i = 0; i < k_; ++i) phi_[idx(i, col)] = 0;
      for (int i = 0; i < k_ && ok; ++i) ok = entry_consistent(i, col);
      if (ok) search_column(col + 1);
      for (int i = 0; i < k_; ++i) phi_[idx(i, col)] = -1;
    }
    for (int d : diag_candidates_[col]) {
      phi_[idx(col, col)] = d;
      if (entry_consistent(col, col)) search_entry(col, 0);
      phi_[idx(col, col)] = -1;
    }
  }

  // Off-diagonal entries of a nonzero column, row by row.
  void search_entry(int col, int row) {
    if (row == col) ++row;
    if (row >= k_) {
      search_column(col + 1);
      return;
    }
    const HomSpace& space = *spaces_[idx(row, col)];
    for (std::size_t h = 1; h < space.homs.size(); ++h) {
      phi_[idx(row, col)] = static_cast<int>(h);
      if (entry_consistent(row, col)) search_entry(col, row + 1);
    }
    phi_[idx(row, col)] = -1;
  }

  std::vector<int> act_on_phi(const std::vector<int>& phi, const Action& g) const {
    std::vector<int> out(phi.size(), 0);
    std::vector<int> images;
    for (int i = 0; i < k_; ++i) {
      const Homomorphism& inv = (*auts_[i])[aut_inverse_[i][g.aut[i]]];
      for (int j = 0; j < k_; ++j) {
        const Homomorphism& f = hom(phi, i, j);
        const Homomorphism& psi_j = (*auts_[j])[g.aut[j]];
        images.clear();
        for (std::size_t s = 0; s < fibres_[i].rank(); ++s) {
          images.push_back(psi_j(f(inv(fibres_[i].generator(s)))));
        }
        out[idx(g.pi[i], g.pi[j])] = spaces_[idx(i, j)]->find(images);
      }
    }
    return out;
  }

  std::vector<Action> wreath_generators() const {
    std::vector<Action> gens;
    std::vector<int> identity_pi(k_);
    std::iota(identity_pi.begin(), identity_pi.end(), 0);
    std::vector<int> identity_aut(k_);
    for (int i = 0; i < k_; ++i) {
      identity_aut[i] = 0;
      const auto& auts = *auts_[i];
      for (std::size_t a = 0; a < auts.size(); ++a) {
        if (auts[a] == Homomorphism::identity(fibres_[i])) identity_aut[i] = static_cast<int>(a);
      }
    }
    for (int i = 0; i < k_; ++i) {
      if (block_of_[i] != i) continue;
      for (std::size_t a : generating_subset(*auts_[i])) {
        Action g{identity_pi, identity_aut};
        g.aut[i] = static_cast<int>(a);
        gens.push_back(std::move(g));
      }
    }
    for (int i = 0; i + 1 < k_; ++i) {
      if (block_of_[i] == block_of_[i + 1]) {
        Action g{identity_pi, identity_aut};
        std::swap(g.pi[i], g.pi[i + 1]);
        gens.push_back(std::move(g));
      }
    }
    return gens;
  }

  void finish_phi() {
    bool any_nonzero = false, all_bijective = true;
    for (int i = 0; i < k_; ++i) {
      any_nonzero |= phi_[idx(i, i)] != 0;
      all_bijective &= hom(phi_, i, i).is_bijective();
    }
    // Matrices with every diagonal entry bijective give latin-orbit
    // quandles, which are listed in closed form.
    if (!any_nonzero || all_bijective) return;
    if (seen_phi_.count(phi_)) return;
    if (gens_.empty()) gens_ = wreath_generators();
    std::vector<std::vector<int>> orbit{phi_};
    seen_phi_.insert(phi_);
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& g : gens_) {
        auto next = act_on_phi(orbit[head], g);
        if (seen_phi_.insert(next).second) orbit.push_back(std::move(next));
      }
    }
    phi_reps_.push_back(*std::min_element(orbit.begin(), orbit.end()));
  }

  // ----- constant matrices -------------------------------------------------

  // Block-preserving (pi, psi) with psi_j phi_ij psi_i^{-1} = phi_{pi i, pi j}.
  std::vector<Action> stabilizer(const std::vector<int>& phi) const {
    std::vector<Action> out;
    Action g{std::vector<int>(k_, -1), std::vector<int>(k_, -1)};
    std::vector<char> used(k_, 0);
    auto fits = [&](int x, int y) {
      const Homomorphism& f = hom(phi, x, y);
      const Homomorphism& target = hom(phi, g.pi[x], g.pi[y]);
      const Homomorphism& px = (*auts_[x])[g.aut[x]];
      const Homomorphism& py = (*auts_[y])[g.aut[y]];
      for (std::size_t s = 0; s < fibres_[x].rank(); ++s) {
        int gen = fibres_[x].generator(s);
        if (py(f(gen)) != target(px(gen))) return false;
      }
      return true;
    };
    std::function<void(int)> rec = [&](int i) {
      if (i == k_) {
        out.push_back(g);
        return;
      }
      for (int j = block_of_[i]; j < k_ && block_of_[j] == block_of_[i]; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        g.pi[i] = j;
        for (std::size_t a = 0; a < auts_[i]->size(); ++a) {
          g.aut[i] = static_cast<int>(a);
          bool ok = true;
          for (int l = 0; l <= i && ok; ++l) ok = fits(l, i) && fits(i, l);
          if (ok) rec(i + 1);
        }
        g.aut[i] = -1;
        g.pi[i] = -1;
        used[j] = 0;
      }
    };
    rec(0);
    return out;
  }

  // M4 on (i, j, t): phi_jt(c_ij) = phi_tt(c_it - c_jt), when all are set.
  bool m4(const std::vector<int>& phi, int i, int j, int t) const {
    int cij = c_[idx(i, j)], cit = c_[idx(i, t)], cjt = c_[idx(j, t)];
    if (cij < 0 || cit < 0 || cjt < 0) return true;
    return hom(phi, j, t)(cij) == hom(phi, t, t)(fibres_[t].sub(cit, cjt));
  }

  bool constant_consistent(const std::vector<int>& phi, int x, int y) const {
    for (int t = 0; t < k_; ++t) {
      if (!m4(phi, x, y, t)) return false;
    }
    for (int j = 0; j < k_; ++j) {
      if (!m4(phi, x, j, y)) return false;
    }
    for (int i = 0; i < k_; ++i) {
      if (!m4(phi, i, x, y)) return false;
    }
    return true;
  }

  bool column_generates(const std::vector<int>& phi, int col) const {
    std::vector<int> gens;
    for (int i = 0; i < k_; ++i) {
      gens.push_back(c_[idx(i, col)]);
      const auto& images = hom(phi, i, col).image_indices();
      gens.insert(gens.end(), images.begin(), images.end());
    }
    auto member = subgroup_closure(fibres_[col], gens);
    return std::all_of(member.begin(), member.end(), [](char m) { return m != 0; });
  }

  void search_constants(const std::vector<int>& phi, int col, int row,
                        const std::function<void()>& emit) {
    if (row == col) ++row;
    if (row >= k_) {
      if (!column_generates(phi, col)) return;
      if (col + 1 == k_) {
        emit();
      } else {
        search_constants(phi, col + 1, 0, emit);
      }
      return;
    }
    for (int v = 0; v < fibres_[col].order(); ++v) {
      c_[idx(row, col)] = v;
      if (constant_consistent(phi, row, col)) search_constants(phi, col, row + 1, emit);
    }
    c_[idx(row, col)] = -1;
  }

  std::vector<int> act_on_constants(const std::vector<int>& c, const Action& g) const {
    std::vector<int> out(c.size(), 0);
    for (int i = 0; i < k_; ++i) {
      for (int j = 0; j < k_; ++j) out[idx(g.pi[i], g.pi[j])] = (*auts_[j])[g.aut[j]](c[idx(i, j)]);
    }
    return out;
  }

  // The shift by the s-th generator of fibre i.
  std::vector<int> shift_constants(const std::vector<int>& phi, const std::vector<int>& c, int i,
                                   std::size_t s) const {
    std::vector<int> out = c;
    int g = fibres_[i].generator(s);
    for (int b = 0; b < k_; ++b) {
      if (b == i) continue;
      out[idx(i, b)] = fibres_[b].sub(out[idx(i, b)], hom(phi, i, b)(g));
      out[idx(b, i)] = fibres_[i].add(out[idx(b, i)], hom(phi, i, i)(g));
    }
    return out;
  }

  AffineMesh to_mesh(const std::vector<int>& phi, const std::vector<int>& c) const {
    AffineMesh m;
    m.groups = fibres_;
    m.phi.resize(k_);
    m.c.assign(k_, std::vector<int>(k_, 0));
    for (int i = 0; i < k_; ++i) {
      for (int j = 0; j < k_; ++j) {
        m.phi[i].push_back(hom(phi, i, j));
        m.c[i][j] = c[idx(i, j)];
      }
    }
    return m;
  }

  std::vector<AffineMesh> constants_for(const std::vector<int>& phi) {
    auto stab = stabilizer(phi);
    MatrixSet seen;
    std::vector<std::vector<int>> minima;
    c_.assign(static_cast<std::size_t>(k_) * k_, -1);
    for (int i = 0; i < k_; ++i) c_[idx(i, i)] = 0;
    search_constants(phi, 0, 0, [&] {
      if (seen.count(c_)) return;
      std::vector<std::vector<int>> orbit{c_};
      seen.insert(c_);
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        auto visit = [&](std::vector<int> next) {
          if (seen.insert(next).second) orbit.push_back(std::move(next));
        };
        for (const auto& g : stab) visit(act_on_constants(orbit[head], g));
        for (int i = 0; i < k_; ++i) {
          for (std::size_t s = 0; s < fibres_[i].rank(); ++s) visit(shift_constants(phi, orbit[head], i, s));
        }
      }
      minima.push_back(*std::min_element(orbit.begin(), orbit.end()));
    });
    std::sort(minima.begin(), minima.end());
    std::vector<AffineMesh> out;
    for (const auto& c : minima) {
      AffineMesh m = to_mesh(phi, c);
      bool duplicate = false;
      for (const auto& kept : out) {
        if (homologous(kept, m)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) out.push_back(std::move(m));
    }
    return out;
  }

  std::vector<AbelianGroup> fibres_;
  int k_;
  bool involutory_;
  std::vector<std::shared_ptr<HomSpace>> spaces_;
  std::vector<int> block_of_;
  std::vector<const std::vector<Homomorphism>*> auts_;
  std::vector<std::vector<int>> aut_inverse_;
  std::vector<std::vector<int>> diag_candidates_;
  std::vector<char> zero_allowed_;
  std::vector<int> phi_;
  MatrixSet seen_phi_;
  std::vector<Action> gens_;
  std::vector<std::vector<int>> phi_reps_;
  std::vector<int> c_;
};

// ((A, ..., A); f everywhere; 0): Aff(A, 1 - f) times a projection quandle.
std::vector<AffineMesh> latin_products(int n, bool involutory) {
  std::vector<AffineMesh> out;
  for (int d = 2; d <= n; ++d) {
    if (n % d != 0) continue;
    int copies = n / d;
    for (const auto& a : groups_of_order(d)) {
      std::vector<Homomorphism> choices;
      if (involutory) {
        Homomorphism two = Homomorphism::scalar(a, 2);
        if (two.is_bijective()) choices.push_back(two);
      } else {
        for (const auto& cls : conjugacy_classes(aut_group_cached(a))) {
          if ((Homomorphism::identity(a) - cls.representative).is_bijective()) {
            choices.push_back(cls.representative);
          }
        }
      }
      if (choices.empty()) continue;
      FibreProfile profile{{FibreBlock{a, copies}}};
      ProfileSearch search(profile, involutory);
      const auto& homs = all_homs(a, a);
      for (const auto& f : choices) {
        int h = static_cast<int>(std::find(homs.begin(), homs.end(), f) - homs.begin());
        std::vector<int> phi(static_cast<std::size_t>(copies) * copies, h);
        std::vector<int> c(phi.size(), 0);
        out.push_back(search.class_minimum(phi, c));
      }
    }
  }
  return out;
}

bool searchable(const FibreProfile& p) {
  if (p.fibre_count() < 2) return false;  // one fibre: latin only
  for (const auto& b : p.blocks) {
    if (b.group.is_trivial()) return false;  // a one-element orbit forces 2-reductivity
  }
  return true;
}

}  // namespace

std::vector<Non2ReductiveClass> enumerate_non2reductive(int n, const Non2ReductiveOptions& options) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (n > options.cap) {
    throw CapExceeded("non-2-reductive enumeration capped at n = " + std::to_string(options.cap));
  }
  std::vector<FibreProfile> profiles;
  for (auto& p : fibre_profiles(n)) {
    if (searchable(p)) profiles.push_back(std::move(p));
  }
  std::vector<std::vector<AffineMesh>> found(profiles.size());
  detail::parallel_for(profiles.size(), options.workers, [&](std::size_t i) {
    found[i] = ProfileSearch(profiles[i], options.involutory).run();
  });
  std::vector<Non2ReductiveClass> out;
  for (auto& list : found) {
    for (auto& m : list) {
      bool reductive = reductivity_degree(m).has_value();
      out.push_back(Non2ReductiveClass{std::move(m), reductive, false});
    }
  }
  for (auto& m : latin_products(n, options.involutory)) {
    out.push_back(Non2ReductiveClass{std::move(m), false, true});
  }
  std::sort(out.begin(), out.end(), [](const Non2ReductiveClass& a, const Non2ReductiveClass& b) {
    return a.mesh < b.mesh;
  });
  return out;
}

}  // namespace qmw
