#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "parallel.hpp"
#include "qmw/enumerate.hpp"
#include "qmw/errors.hpp"

namespace qmw {

namespace {

BigCount factorial(int n) {
  BigCount r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigCount power(BigCount base, int e) {
  BigCount r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// A cycle type as (length, multiplicity) pairs.
using CycleType = std::vector<std::pair<int, int>>;

void cycle_types(int n, int max_part, CycleType& current, std::vector<CycleType>& out) {
  if (n == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    for (int mult = 1; mult * part <= n; ++mult) {
      current.emplace_back(part, mult);
      cycle_types(n - mult * part, part - 1, current, out);
      current.pop_back();
    }
  }
}

// n! / z_lambda: the number of permutations with this cycle type.
BigCount class_size(int n, const CycleType& type) {
  BigCount z = 1;
  for (auto [len, mult] : type) z *= power(len, mult) * factorial(mult);
  return factorial(n) / z;
}

std::uint64_t mask_of(const std::vector<char>& member) {
  std::uint64_t m = 0;
  for (std::size_t x = 0; x < member.size(); ++x) {
    if (member[x]) m |= std::uint64_t{1} << x;
  }
  return m;
}

// Per automorphism class data for one block's group.
struct ClassData {
  std::size_t class_size;
  std::vector<std::pair<long long, std::uint64_t>> coefficients;  // over invariant subgroups
  std::vector<std::uint64_t> fixed_masks;                         // fix(h^r), r = 0..max
};

struct BlockData {
  AbelianGroup group;
  int copies;
  BigCount aut_order;
  std::vector<ClassData> classes;
};

BlockData block_data(const FibreBlock& block, int max_power) {
  BlockData data{block.group, block.copies, 0, {}};
  const auto& auts = aut_group_cached(block.group);
  data.aut_order = static_cast<BigCount>(auts.size());
  auto subgroups = all_subgroups(block.group);
  for (const auto& cls : conjugacy_classes(auts)) {
    const Homomorphism& h = cls.representative;
    ClassData cd;
    cd.class_size = cls.size;
    std::vector<std::uint64_t> invariant;
    for (std::uint64_t s : subgroups) {
      bool ok = true;
      for (int x = 0; x < block.group.order() && ok; ++x) {
        if ((s >> x & 1) && !(s >> h(x) & 1)) ok = false;
      }
      if (ok) invariant.push_back(s);
    }
    cd.coefficients = generation_coefficients(block.group, invariant);
    Homomorphism p = Homomorphism::identity(block.group);
    for (int r = 0; r <= max_power; ++r) {
      std::vector<char> fixed(block.group.order(), 0);
      for (int x = 0; x < block.group.order(); ++x) fixed[x] = p(x) == x;
      cd.fixed_masks.push_back(mask_of(fixed));
      p = h * p;
    }
    data.classes.push_back(std::move(cd));
  }
  return data;
}

// Fixed generating columns along one column cycle of length L whose
// composite automorphism lies in class `cd`; `rows` lists every row cycle
// length of the permutation.
BigCount fixed_columns(const ClassData& cd, int length, const std::vector<int>& rows) {
  // (exponent r, number of free entries with values in fix(h^r))
  std::map<int, int> entries;
  bool skipped_self = false;
  for (int d : rows) {
    if (d == length && !skipped_self) {
      skipped_self = true;
      if (length > 1) entries[1] += length - 1;
      continue;
    }
    int g = std::gcd(length, d);
    entries[d / g] += g;
  }
  BigCount total = 0;
  for (auto [coef, h] : cd.coefficients) {
    BigCount term = coef;
    for (auto [r, count] : entries) {
      term *= power(__builtin_popcountll(h & cd.fixed_masks[r]), count);
    }
    total += term;
  }
  return total;
}

BigCount burnside_profile(const FibreProfile& profile) {
  int k = profile.fibre_count();
  std::vector<BlockData> blocks;
  for (const auto& b : profile.blocks) blocks.push_back(block_data(b, k));
  std::vector<std::vector<CycleType>> types(blocks.size());
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    CycleType current;
    cycle_types(blocks[t].copies, blocks[t].copies, current, types[t]);
  }
  BigCount numerator = 0;
  std::vector<std::size_t> pick(blocks.size(), 0);
  while (true) {
    std::vector<int> rows;
    for (std::size_t t = 0; t < blocks.size(); ++t) {
      for (auto [len, mult] : types[t][pick[t]]) {
        for (int i = 0; i < mult; ++i) rows.push_back(len);
      }
    }
    BigCount term = 1;
    for (std::size_t t = 0; t < blocks.size() && term != 0; ++t) {
      const CycleType& type = types[t][pick[t]];
      term *= class_size(blocks[t].copies, type);
      for (auto [len, mult] : type) {
        BigCount per_cycle = 0;
        for (const auto& cd : blocks[t].classes) {
          per_cycle += static_cast<BigCount>(cd.class_size) * fixed_columns(cd, len, rows);
        }
        per_cycle *= power(blocks[t].aut_order, len - 1);
        term *= power(per_cycle, mult);
      }
    }
    numerator += term;
    std::size_t t = 0;
    while (t < blocks.size() && ++pick[t] == types[t].size()) pick[t++] = 0;
    if (t == blocks.size()) break;
  }
  BigCount group_order = 1;
  for (const auto& b : blocks) group_order *= power(b.aut_order, b.copies) * factorial(b.copies);
  if (numerator % group_order != 0) {
    throw ConsistencyError("Burnside sum is not divisible by the group order");
  }
  return numerator / group_order;
}

// ---------------------------------------------------------------------------
// Direct orbit listing.

struct MatrixAction {
  std::vector<int> pi;
  std::vector<const Homomorphism*> psi;
};

std::vector<int> act(const std::vector<int>& c, int k, const MatrixAction& g) {
  std::vector<int> out(c.size(), 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      out[static_cast<std::size_t>(g.pi[i]) * k + g.pi[j]] = (*g.psi[j])(c[static_cast<std::size_t>(i) * k + j]);
    }
  }
  return out;
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1)) * 0x100000001b3ULL;
    return h;
  }
};

std::vector<std::vector<int>> profile_orbit_minima(const FibreProfile& profile) {
  auto fibres = profile.fibres();
  int k = static_cast<int>(fibres.size());
  std::vector<Homomorphism> identities;
  for (const auto& g : fibres) identities.push_back(Homomorphism::identity(g));

  std::vector<MatrixAction> gens;
  std::vector<int> identity_pi(k);
  std::iota(identity_pi.begin(), identity_pi.end(), 0);
  int start = 0;
  for (const auto& b : profile.blocks) {
    const auto& auts = aut_group_cached(b.group);
    for (std::size_t g : generating_subset(auts)) {
      MatrixAction a{identity_pi, {}};
      for (int i = 0; i < k; ++i) a.psi.push_back(&identities[i]);
      a.psi[start] = &auts[g];
      gens.push_back(std::move(a));
    }
    for (int s = 0; s + 1 < b.copies; ++s) {
      MatrixAction a{identity_pi, {}};
      std::swap(a.pi[start + s], a.pi[start + s + 1]);
      for (int i = 0; i < k; ++i) a.psi.push_back(&identities[i]);
      gens.push_back(std::move(a));
    }
    start += b.copies;
  }

  // Generating columns per fibre, as the list of off-diagonal entries.
  std::vector<std::vector<std::vector<int>>> columns(k);
  for (int j = 0; j < k; ++j) {
    const AbelianGroup& a = fibres[j];
    std::vector<int> entry(k - 1, 0);
    while (true) {
      auto member = subgroup_closure(a, entry);
      if (std::all_of(member.begin(), member.end(), [](char c) { return c != 0; })) {
        columns[j].push_back(entry);
      }
      std::size_t t = 0;
      while (t < entry.size() && ++entry[t] == a.order()) entry[t++] = 0;
      if (t == entry.size()) break;
    }
    if (columns[j].empty()) return {};
  }

  std::unordered_set<std::vector<int>, VectorHash> seen;
  std::vector<std::vector<int>> minima;
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    std::vector<int> c(static_cast<std::size_t>(k) * k, 0);
    for (int j = 0; j < k; ++j) {
      const auto& col = columns[j][pick[j]];
      for (int i = 0, r = 0; i < k; ++i) {
        if (i != j) c[static_cast<std::size_t>(i) * k + j] = col[r++];
      }
    }
    if (!seen.count(c)) {
      std::vector<std::vector<int>> orbit{c};
      seen.insert(c);
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        for (const auto& g : gens) {
          auto next = act(orbit[head], k, g);
          if (seen.insert(next).second) orbit.push_back(std::move(next));
        }
      }
      minima.push_back(*std::min_element(orbit.begin(), orbit.end()));
    }
    int t = 0;
    while (t < k && ++pick[t] == columns[t].size()) pick[t++] = 0;
    if (t == k) break;
  }
  std::sort(minima.begin(), minima.end());
  return minima;
}

void check_direct_cap(int n, int cap) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (n > cap) throw CapExceeded("direct orbit listing capped at n = " + std::to_string(cap));
}

BigCount latin_classes(const AbelianGroup& a) {
  BigCount count = 0;
  for (const auto& cls : conjugacy_classes(aut_group_cached(a))) {
    if ((Homomorphism::identity(a) - cls.representative).is_bijective()) ++count;
  }
  return count;
}

}  // namespace

BigCount count_2reductive(int n, bool involutory, int workers) {
  auto profiles = fibre_profiles(n, involutory);
  std::vector<BigCount> partial(profiles.size(), 0);
  detail::parallel_for(profiles.size(), workers,
                       [&](std::size_t i) { partial[i] = burnside_profile(profiles[i]); });
  BigCount total = 0;
  for (BigCount p : partial) total += p;
  return total;
}

BigCount direct_orbit_count(int n, bool involutory, int cap) {
  check_direct_cap(n, cap);
  BigCount total = 0;
  for (const auto& p : fibre_profiles(n, involutory)) {
    total += static_cast<BigCount>(profile_orbit_minima(p).size());
  }
  return total;
}

std::vector<AffineMesh> direct_orbit_representatives(int n, bool involutory, int cap) {
  check_direct_cap(n, cap);
  std::vector<AffineMesh> out;
  for (const auto& p : fibre_profiles(n, involutory)) {
    auto fibres = p.fibres();
    std::size_t k = fibres.size();
    for (const auto& flat : profile_orbit_minima(p)) {
      std::vector<std::vector<int>> c(k, std::vector<int>(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) c[i][j] = flat[i * k + j];
      }
      out.push_back(constant_mesh(fibres, c));
    }
  }
  return out;
}

BigCount count_latin(int n) {
  BigCount total = 0;
  for (const auto& a : groups_of_order(n)) total += latin_classes(a);
  return total;
}

BigCount count_latin_involutory(int n) {
  if (n % 2 == 0) return 0;
  return static_cast<BigCount>(groups_of_order(n).size());
}

BigCount count_all_orbits_latin(int n) {
  BigCount total = 0;
  for (int d = 2; d <= n; ++d) {
    if (n % d == 0) total += count_latin(d);
  }
  return total;
}

}  // namespace qmw
