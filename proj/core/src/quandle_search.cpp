#include <algorithm>
#include <map>
#include <numeric>

#include "qmw/errors.hpp"
#include "qmw/quandle.hpp"

namespace qmw {

namespace {

using Signature = std::array<int, 5>;

std::vector<Signature> element_signatures(const Quandle& q) {
  int n = q.size();
  std::vector<int> orbit_size(n, 0);
  for (const auto& orb : orbits(q)) {
    for (int x : orb) orbit_size[x] = static_cast<int>(orb.size());
  }
  std::vector<Signature> sig(n);
  for (int a = 0; a < n; ++a) {
    int fixed = 0, commuting = 0;
    std::vector<char> image(n, 0);
    for (int b = 0; b < n; ++b) {
      fixed += q(a, b) == b;
      commuting += q(a, b) == q(b, a);
      image[q(b, a)] = 1;
    }
    int image_size = static_cast<int>(std::count(image.begin(), image.end(), 1));
    sig[a] = {orbit_size[a], q.left(a).order(), fixed, image_size, commuting};
  }
  return sig;
}

class IsoSearch {
 public:
  IsoSearch(const Quandle& a, const Quandle& b)
      : a_(a), b_(b), n_(a.size()), sig_a_(element_signatures(a)),
        sig_b_(element_signatures(b)) {}

  std::optional<std::vector<int>> run() {
    auto sa = sig_a_, sb = sig_b_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
    std::vector<int> map(n_, -1), inv(n_, -1);
    std::vector<int> assigned;
    if (search(map, inv, assigned)) return map;
    return std::nullopt;
  }

 private:
  bool assign(std::vector<int>& map, std::vector<int>& inv, std::vector<int>& assigned,
              int x, int y) const {
    std::vector<std::pair<int, int>> work{{x, y}};
    while (!work.empty()) {
      auto [u, v] = work.back();
      work.pop_back();
      if (map[u] >= 0) {
        if (map[u] != v) return false;
        continue;
      }
      if (inv[v] >= 0 || sig_a_[u] != sig_b_[v]) return false;
      map[u] = v;
      inv[v] = u;
      assigned.push_back(u);
      for (int w : assigned) {
        work.emplace_back(a_(u, w), b_(v, map[w]));
        work.emplace_back(a_(w, u), b_(map[w], v));
      }
    }
    return true;
  }

  bool search(std::vector<int>& map, std::vector<int>& inv, std::vector<int>& assigned) const {
    int x = -1;
    for (int i = 0; i < n_; ++i) {
      if (map[i] < 0) {
        x = i;
        break;
      }
    }
    if (x < 0) return true;
    for (int y = 0; y < n_; ++y) {
      if (inv[y] >= 0 || sig_a_[x] != sig_b_[y]) continue;
      auto map2 = map, inv2 = inv, assigned2 = assigned;
      if (assign(map2, inv2, assigned2, x, y) && search(map2, inv2, assigned2)) {
        map = std::move(map2);
        return true;
      }
    }
    return false;
  }

  const Quandle& a_;
  const Quandle& b_;
  int n_;
  std::vector<Signature> sig_a_, sig_b_;
};

}  // namespace

std::optional<std::vector<int>> brute_force_iso(const Quandle& a, const Quandle& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.size() == 0) return std::vector<int>{};
  return IsoSearch(a, b).run();
}

std::vector<Quandle> brute_force_enumerate(int n,
                                           const std::function<bool(const Quandle&)>& predicate,
                                           int cap) {
  if (n < 1) throw PreconditionError("size must be >= 1");
  if (n > cap) throw CapExceeded("brute-force enumeration capped at size " + std::to_string(cap));

  std::vector<std::vector<std::vector<int>>> row_choices(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (int a = 0; a < n; ++a) {
      if (perm[a] == a) row_choices[a].push_back(perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<int> table(static_cast<std::size_t>(n) * n, -1);
  auto at = [&](int x, int y) { return table[static_cast<std::size_t>(x) * n + y]; };
  // Distributivity on all triples whose entries are already defined.
  auto consistent = [&](int last_row) {
    for (int x = 0; x <= last_row; ++x) {
      for (int y = 0; y <= last_row; ++y) {
        int p = at(x, y);
        if (p > last_row) continue;
        for (int z = 0; z < n; ++z) {
          if (at(x, at(y, z)) != at(p, at(x, z))) return false;
        }
      }
    }
    return true;
  };

  std::vector<Quandle> reps;
  std::map<std::vector<Signature>, std::vector<std::size_t>> buckets;
  std::function<void(int)> fill = [&](int a) {
    if (a == n) {
      Quandle q(n, table);
      if (!predicate(q)) return;
      auto sig = element_signatures(q);
      std::sort(sig.begin(), sig.end());
      auto& bucket = buckets[sig];
      for (std::size_t r : bucket) {
        if (brute_force_iso(q, reps[r])) return;
      }
      bucket.push_back(reps.size());
      reps.push_back(std::move(q));
      return;
    }
    for (const auto& r : row_choices[a]) {
      std::copy(r.begin(), r.end(), table.begin() + static_cast<std::ptrdiff_t>(a) * n);
      if (consistent(a)) fill(a + 1);
    }
    std::fill(table.begin() + static_cast<std::ptrdiff_t>(a) * n,
              table.begin() + static_cast<std::ptrdiff_t>(a + 1) * n, -1);
  };
  fill(0);
  return reps;
}

}  // namespace qmw
