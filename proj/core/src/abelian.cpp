#include "qmw/abelian.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "qmw/errors.hpp"

namespace qmw {

namespace {

constexpr int kMaxGroupOrder = 1 << 20;
constexpr int kTableOrder = 256;

std::vector<std::pair<int, int>> factorize(int n) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; static_cast<long long>(p) * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

void partitions(int n, int max_part, std::vector<int>& current,
                std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions(n - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

std::string to_string(BigCount value) {
  if (value == 0) return "0";
  bool negative = value < 0;
  __extension__ typedef unsigned __int128 Unsigned;
  Unsigned v = negative ? static_cast<Unsigned>(-value) : static_cast<Unsigned>(value);
  std::string digits;
  while (v > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup::AbelianGroup() = default;

AbelianGroup::AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
  long long order = 1;
  for (std::size_t t = 0; t < factors_.size(); ++t) {
    if (factors_[t] < 2) {
      throw PreconditionError("invariant factors must be >= 2");
    }
    if (t > 0 && factors_[t] % factors_[t - 1] != 0) {
      throw PreconditionError("invariant factors must form a divisibility chain");
    }
    order *= factors_[t];
    if (order > kMaxGroupOrder) throw CapExceeded("abelian group order too large");
  }
  order_ = static_cast<int>(order);
  strides_.assign(factors_.size(), 1);
  for (std::size_t t = factors_.size(); t-- > 1;) {
    strides_[t - 1] = strides_[t] * factors_[t];
  }
  if (order_ <= kTableOrder) {
    auto tables = std::make_shared<Tables>();
    tables->add.resize(static_cast<std::size_t>(order_) * order_);
    tables->neg.resize(order_);
    for (int a = 0; a < order_; ++a) {
      tables->neg[a] = neg_slow(a);
      for (int b = 0; b < order_; ++b) {
        tables->add[static_cast<std::size_t>(a) * order_ + b] = add_slow(a, b);
      }
    }
    tables_ = std::move(tables);
  }
}

AbelianGroup AbelianGroup::cyclic(int n) {
  if (n < 1) throw PreconditionError("cyclic group order must be >= 1");
  if (n == 1) return AbelianGroup();
  return AbelianGroup(std::vector<int>{n});
}

int AbelianGroup::index(const GroupElement& x) const {
  if (x.coords.size() != factors_.size()) {
    throw PreconditionError("element has " + std::to_string(x.coords.size()) +
                            " coordinates, group " + to_string() + " has rank " +
                            std::to_string(factors_.size()));
  }
  int idx = 0;
  for (std::size_t t = 0; t < factors_.size(); ++t) {
    if (x.coords[t] < 0 || x.coords[t] >= factors_[t]) {
      throw PreconditionError("coordinate out of range for group " + to_string());
    }
    idx += x.coords[t] * strides_[t];
  }
  return idx;
}

GroupElement AbelianGroup::element(int index) const {
  GroupElement x;
  x.coords.resize(factors_.size());
  for (std::size_t t = 0; t < factors_.size(); ++t) x.coords[t] = coord(index, t);
  return x;
}

int AbelianGroup::add_slow(int a, int b) const {
  int idx = 0;
  for (std::size_t t = 0; t < factors_.size(); ++t) {
    idx += ((coord(a, t) + coord(b, t)) % factors_[t]) * strides_[t];
  }
  return idx;
}

int AbelianGroup::neg_slow(int a) const {
  int idx = 0;
  for (std::size_t t = 0; t < factors_.size(); ++t) {
    idx += ((factors_[t] - coord(a, t)) % factors_[t]) * strides_[t];
  }
  return idx;
}

int AbelianGroup::scale(int a, long long k) const {
  int idx = 0;
  for (std::size_t t = 0; t < factors_.size(); ++t) {
    long long d = factors_[t];
    long long v = ((k % d) + d) % d * coord(a, t) % d;
    idx += static_cast<int>(v) * strides_[t];
  }
  return idx;
}

int AbelianGroup::element_order(int a) const {
  int ord = 1;
  for (std::size_t t = 0; t < factors_.size(); ++t) {
    int d = factors_[t];
    ord = std::lcm(ord, d / std::gcd(d, coord(a, t)));
  }
  return ord;
}

std::string AbelianGroup::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream out;
  for (std::size_t t = 0; t < factors_.size(); ++t) {
    if (t) out << ',';
    out << factors_[t];
  }
  return out.str();
}

AbelianGroup parse_group(const std::string& text) {
  std::vector<int> orders;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string token = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw ParseError("expected a positive integer in group '" + text + "'", 1,
                       static_cast<int>(pos) + 1);
    }
    if (used != token.size() || value < 1) {
      throw ParseError("expected a positive integer in group '" + text + "'", 1,
                       static_cast<int>(pos) + 1);
    }
    orders.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return canonicalize(orders);
}

// ---------------------------------------------------------------------------
// Homomorphism

Homomorphism::Homomorphism(AbelianGroup domain, AbelianGroup codomain,
                           std::vector<int> images, std::vector<int> table)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      images_(std::move(images)),
      table_(std::move(table)) {}

Homomorphism::Homomorphism(AbelianGroup domain, AbelianGroup codomain,
                           std::vector<GroupElement> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (images.size() != domain_.rank()) {
    throw PreconditionError("homomorphism needs one image per generator of " +
                            domain_.to_string());
  }
  images_.reserve(images.size());
  for (std::size_t t = 0; t < images.size(); ++t) {
    int y = codomain_.index(images[t]);
    if (codomain_.scale(y, domain_.factors()[t]) != 0) {
      throw PreconditionError("generator image does not respect the order of "
                              "generator " + std::to_string(t));
    }
    images_.push_back(y);
  }
  table_.assign(domain_.order(), 0);
  for (int x = 0; x < domain_.order(); ++x) {
    int y = 0;
    for (std::size_t t = 0; t < images_.size(); ++t) {
      y = codomain_.add(y, codomain_.scale(images_[t], domain_.coord(x, t)));
    }
    table_[x] = y;
  }
}

Homomorphism Homomorphism::zero(const AbelianGroup& domain, const AbelianGroup& codomain) {
  return Homomorphism(domain, codomain, std::vector<int>(domain.rank(), 0),
                      std::vector<int>(domain.order(), 0));
}

Homomorphism Homomorphism::identity(const AbelianGroup& group) {
  std::vector<int> table(group.order());
  std::iota(table.begin(), table.end(), 0);
  return from_table(group, group, std::move(table));
}

Homomorphism Homomorphism::scalar(const AbelianGroup& group, long long m) {
  std::vector<int> table(group.order());
  for (int x = 0; x < group.order(); ++x) table[x] = group.scale(x, m);
  return from_table(group, group, std::move(table));
}

Homomorphism Homomorphism::cyclic_map(const AbelianGroup& domain,
                                      const AbelianGroup& codomain, long long m) {
  if (domain.rank() > 1 || codomain.rank() > 1) {
    throw PreconditionError("cyclic_map needs cyclic groups");
  }
  std::vector<GroupElement> images;
  if (domain.rank() == 1) {
    GroupElement y;
    if (codomain.rank() == 1) {
      long long e = codomain.order();
      y.coords.push_back(static_cast<int>(((m % e) + e) % e));
    }
    images.push_back(y);
  }
  return Homomorphism(domain, codomain, std::move(images));
}

Homomorphism Homomorphism::from_table(const AbelianGroup& domain,
                                      const AbelianGroup& codomain,
                                      std::vector<int> table) {
  if (static_cast<int>(table.size()) != domain.order()) {
    throw PreconditionError("homomorphism table has the wrong length");
  }
  std::vector<int> images(domain.rank());
  for (std::size_t t = 0; t < domain.rank(); ++t) images[t] = table[domain.generator(t)];
  if (table[0] != 0) throw PreconditionError("table does not fix 0");
  for (int x = 0; x < domain.order(); ++x) {
    for (std::size_t t = 0; t < domain.rank(); ++t) {
      if (table[domain.add(x, domain.generator(t))] != codomain.add(table[x], images[t])) {
        throw PreconditionError("table is not additive");
      }
    }
  }
  return Homomorphism(domain, codomain, std::move(images), std::move(table));
}

std::vector<GroupElement> Homomorphism::images() const {
  std::vector<GroupElement> out;
  out.reserve(images_.size());
  for (int y : images_) out.push_back(codomain_.element(y));
  return out;
}

GroupElement Homomorphism::operator()(const GroupElement& x) const {
  return codomain_.element(table_[domain_.index(x)]);
}

bool Homomorphism::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](int y) { return y == 0; });
}

bool Homomorphism::is_bijective() const {
  if (domain_.order() != codomain_.order()) return false;
  std::vector<char> seen(codomain_.order(), 0);
  for (int y : table_) {
    if (seen[y]) return false;
    seen[y] = 1;
  }
  return true;
}

int Homomorphism::image_size() const {
  std::vector<char> seen(codomain_.order(), 0);
  int count = 0;
  for (int y : table_) {
    if (!seen[y]) {
      seen[y] = 1;
      ++count;
    }
  }
  return count;
}

Homomorphism operator*(const Homomorphism& f, const Homomorphism& g) {
  if (!(g.codomain_ == f.domain_)) throw PreconditionError("composition shape mismatch");
  std::vector<int> table(g.domain_.order());
  for (int x = 0; x < g.domain_.order(); ++x) table[x] = f.table_[g.table_[x]];
  std::vector<int> images(g.domain_.rank());
  for (std::size_t t = 0; t < images.size(); ++t) images[t] = f.table_[g.images_[t]];
  return Homomorphism(g.domain_, f.codomain_, std::move(images), std::move(table));
}

Homomorphism operator+(const Homomorphism& f, const Homomorphism& g) {
  if (!(f.domain_ == g.domain_) || !(f.codomain_ == g.codomain_)) {
    throw PreconditionError("sum shape mismatch");
  }
  const AbelianGroup& b = f.codomain_;
  std::vector<int> table(f.table_.size());
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = b.add(f.table_[x], g.table_[x]);
  std::vector<int> images(f.images_.size());
  for (std::size_t t = 0; t < images.size(); ++t) images[t] = b.add(f.images_[t], g.images_[t]);
  return Homomorphism(f.domain_, f.codomain_, std::move(images), std::move(table));
}

Homomorphism Homomorphism::operator-() const {
  std::vector<int> table(table_.size());
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = codomain_.neg(table_[x]);
  std::vector<int> images(images_.size());
  for (std::size_t t = 0; t < images.size(); ++t) images[t] = codomain_.neg(images_[t]);
  return Homomorphism(domain_, codomain_, std::move(images), std::move(table));
}

Homomorphism operator-(const Homomorphism& f, const Homomorphism& g) { return f + (-g); }

Homomorphism Homomorphism::pow(int exponent) const {
  if (!(domain_ == codomain_)) throw PreconditionError("pow needs an endomorphism");
  if (exponent < 0) return inverse().pow(-exponent);
  Homomorphism result = identity(domain_);
  for (int i = 0; i < exponent; ++i) result = *this * result;
  return result;
}

Homomorphism Homomorphism::inverse() const {
  if (!(domain_ == codomain_) || !is_bijective()) {
    throw PreconditionError("inverse needs a bijective endomorphism");
  }
  std::vector<int> table(table_.size());
  for (std::size_t x = 0; x < table.size(); ++x) table[table_[x]] = static_cast<int>(x);
  return from_table(domain_, codomain_, std::move(table));
}

std::strong_ordering operator<=>(const Homomorphism& a, const Homomorphism& b) {
  if (auto c = a.domain_ <=> b.domain_; c != 0) return c;
  if (auto c = a.codomain_ <=> b.codomain_; c != 0) return c;
  return a.images_ <=> b.images_;
}

// ---------------------------------------------------------------------------
// Group-level utilities

AbelianGroup canonicalize(std::span<const int> cyclic_orders) {
  std::map<int, std::vector<int>> powers;  // prime -> prime powers
  for (int n : cyclic_orders) {
    if (n < 1) throw PreconditionError("cyclic orders must be >= 1");
    for (auto [p, e] : factorize(n)) {
      int q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      powers[p].push_back(q);
    }
  }
  std::size_t length = 0;
  for (auto& [p, list] : powers) {
    std::sort(list.begin(), list.end(), std::greater<>());
    length = std::max(length, list.size());
  }
  std::vector<int> factors(length, 1);
  for (auto& [p, list] : powers) {
    for (std::size_t i = 0; i < list.size(); ++i) factors[length - 1 - i] *= list[i];
  }
  return AbelianGroup(std::move(factors));
}

std::vector<AbelianGroup> groups_of_order(int n) {
  if (n < 1) throw PreconditionError("group order must be >= 1");
  std::vector<std::vector<int>> combos{{}};
  for (auto [p, e] : factorize(n)) {
    std::vector<std::vector<int>> parts;
    std::vector<int> current;
    partitions(e, e, current, parts);
    std::vector<std::vector<int>> next;
    for (const auto& base : combos) {
      for (const auto& part : parts) {
        auto orders = base;
        for (int k : part) {
          int q = 1;
          for (int i = 0; i < k; ++i) q *= p;
          orders.push_back(q);
        }
        next.push_back(std::move(orders));
      }
    }
    combos = std::move(next);
  }
  std::vector<AbelianGroup> out;
  for (const auto& orders : combos) out.push_back(canonicalize(orders));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Homomorphism> all_homs(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<std::vector<int>> candidates(a.rank());
  for (std::size_t t = 0; t < a.rank(); ++t) {
    for (int y = 0; y < b.order(); ++y) {
      if (b.scale(y, a.factors()[t]) == 0) candidates[t].push_back(y);
    }
  }
  std::vector<Homomorphism> out;
  std::vector<std::size_t> pick(a.rank(), 0);
  while (true) {
    std::vector<GroupElement> images;
    for (std::size_t t = 0; t < a.rank(); ++t) images.push_back(b.element(candidates[t][pick[t]]));
    out.emplace_back(a, b, std::move(images));
    std::size_t t = a.rank();
    while (t > 0) {
      --t;
      if (++pick[t] < candidates[t].size()) break;
      pick[t] = 0;
      if (t == 0) return out;
    }
    if (a.rank() == 0) return out;
  }
}

std::vector<Homomorphism> all_isos(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Homomorphism> out;
  if (!(a == b)) return out;
  for (auto& h : all_homs(a, b)) {
    if (h.is_bijective()) out.push_back(std::move(h));
  }
  return out;
}

std::vector<Homomorphism> aut_group(const AbelianGroup& a) { return all_isos(a, a); }

const std::vector<Homomorphism>& aut_group_cached(const AbelianGroup& a) {
  static std::mutex mutex;
  static std::map<std::vector<int>, std::vector<Homomorphism>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(a.factors());
  if (it == cache.end()) it = cache.emplace(a.factors(), aut_group(a)).first;
  return it->second;
}

namespace {

struct TableHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

std::vector<int> compose_tables(const std::vector<int>& f, const std::vector<int>& g) {
  std::vector<int> out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = f[g[x]];
  return out;
}

std::vector<int> invert_table(const std::vector<int>& f) {
  std::vector<int> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[f[x]] = static_cast<int>(x);
  return out;
}

}  // namespace

std::vector<std::size_t> generating_subset(std::span<const Homomorphism> group) {
  std::unordered_map<std::vector<int>, std::size_t, TableHash> position;
  for (std::size_t i = 0; i < group.size(); ++i) position.emplace(group[i].table(), i);
  std::vector<std::size_t> gens;
  std::vector<char> in_span(group.size(), 0);
  std::vector<std::size_t> span;
  for (std::size_t i = 0; i < group.size(); ++i) {
    // The identity is the only idempotent.
    if (compose_tables(group[i].table(), group[i].table()) == group[i].table()) {
      in_span[i] = 1;
      span.push_back(i);
    }
  }
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (in_span[i]) continue;
    gens.push_back(i);
    // Left multiplication by every generator, until closed.
    for (std::size_t head = 0; head < span.size(); ++head) {
      for (std::size_t g : gens) {
        auto it = position.find(compose_tables(group[g].table(), group[span[head]].table()));
        if (it == position.end()) throw PreconditionError("maps do not form a group");
        if (!in_span[it->second]) {
          in_span[it->second] = 1;
          span.push_back(it->second);
        }
      }
    }
  }
  return gens;
}

std::vector<ConjugacyClass> conjugacy_classes(std::span<const Homomorphism> auts) {
  std::unordered_map<std::vector<int>, std::size_t, TableHash> position;
  for (std::size_t i = 0; i < auts.size(); ++i) position.emplace(auts[i].table(), i);
  std::vector<std::vector<int>> gens;
  for (std::size_t g : generating_subset(auts)) gens.push_back(auts[g].table());
  std::vector<std::vector<int>> gen_inverses;
  for (const auto& g : gens) gen_inverses.push_back(invert_table(g));

  std::vector<char> seen(auts.size(), 0);
  std::vector<ConjugacyClass> out;
  for (std::size_t i = 0; i < auts.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> members{i};
    seen[i] = 1;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        auto conj = compose_tables(gens[g], compose_tables(auts[members[head]].table(),
                                                           gen_inverses[g]));
        auto it = position.find(conj);
        if (it == position.end()) throw PreconditionError("automorphisms do not form a group");
        if (!seen[it->second]) {
          seen[it->second] = 1;
          members.push_back(it->second);
        }
      }
    }
    std::size_t best = members.front();
    for (std::size_t m : members) {
      if (auts[m] < auts[best]) best = m;
    }
    out.push_back(ConjugacyClass{auts[best], members.size()});
  }
  std::sort(out.begin(), out.end(), [](const ConjugacyClass& x, const ConjugacyClass& y) {
    return x.representative < y.representative;
  });
  return out;
}

std::vector<char> subgroup_closure(const AbelianGroup& a, std::span<const int> gens) {
  std::vector<char> member(a.order(), 0);
  std::vector<int> queue{0};
  member[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int g : gens) {
      int y = a.add(queue[head], g);
      if (!member[y]) {
        member[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return member;
}

std::vector<GroupElement> subgroup_generated(const AbelianGroup& a,
                                             std::span<const GroupElement> gens) {
  std::vector<int> idx;
  for (const auto& g : gens) idx.push_back(a.index(g));
  auto member = subgroup_closure(a, idx);
  std::vector<GroupElement> out;
  for (int x = 0; x < a.order(); ++x) {
    if (member[x]) out.push_back(a.element(x));
  }
  return out;
}

int fixed_point_count(const Homomorphism& h) {
  if (!(h.domain() == h.codomain())) throw PreconditionError("fixed points need an endomorphism");
  int count = 0;
  for (int x = 0; x < h.domain().order(); ++x) count += h(x) == x;
  return count;
}

namespace {

BigCount ipow(BigCount base, int exponent) {
  BigCount r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

BigCount count_non_generating(const AbelianGroup& a, const std::vector<char>& prefix,
                              int prefix_size, int remaining) {
  if (remaining == 0) return prefix_size == a.order() ? 0 : 1;
  BigCount total = 0;
  // Elements already inside the prefix subgroup do not change it.
  total += prefix_size * count_non_generating(a, prefix, prefix_size, remaining - 1);
  for (int x = 0; x < a.order(); ++x) {
    if (prefix[x]) continue;
    std::vector<int> gens;
    for (int y = 0; y < a.order(); ++y) {
      if (prefix[y]) gens.push_back(y);
    }
    gens.push_back(x);
    auto next = subgroup_closure(a, gens);
    int size = static_cast<int>(std::count(next.begin(), next.end(), 1));
    total += count_non_generating(a, next, size, remaining - 1);
  }
  return total;
}

}  // namespace

BigCount non_generating_tuple_count_brute(const AbelianGroup& a, int length) {
  if (length < 0) throw PreconditionError("tuple length must be >= 0");
  std::vector<char> trivial(a.order(), 0);
  trivial[0] = 1;
  return count_non_generating(a, trivial, 1, length);
}

std::vector<std::uint64_t> all_subgroups(const AbelianGroup& a) {
  if (a.order() > 64) throw CapExceeded("subgroup lattice needs |A| <= 64");
  auto to_mask = [](const std::vector<char>& member) {
    std::uint64_t m = 0;
    for (std::size_t x = 0; x < member.size(); ++x) {
      if (member[x]) m |= std::uint64_t{1} << x;
    }
    return m;
  };
  std::vector<std::uint64_t> out{1};
  for (std::size_t head = 0; head < out.size(); ++head) {
    std::uint64_t h = out[head];
    for (int x = 0; x < a.order(); ++x) {
      if (h >> x & 1) continue;
      std::vector<int> gens;
      for (int y = 0; y < a.order(); ++y) {
        if (h >> y & 1) gens.push_back(y);
      }
      gens.push_back(x);
      std::uint64_t next = to_mask(subgroup_closure(a, gens));
      if (std::find(out.begin(), out.end(), next) == out.end()) out.push_back(next);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<long long, std::uint64_t>> generation_coefficients(
    const AbelianGroup& a, std::span<const std::uint64_t> subgroups) {
  const std::uint64_t whole =
      a.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << a.order()) - 1;
  // Moebius function mu(H, A) on the family, computed top-down.
  std::vector<std::uint64_t> family(subgroups.begin(), subgroups.end());
  std::sort(family.begin(), family.end(), [](std::uint64_t x, std::uint64_t y) {
    int px = __builtin_popcountll(x), py = __builtin_popcountll(y);
    return px != py ? px > py : x < y;
  });
  if (family.empty() || family.front() != whole) {
    throw PreconditionError("subgroup family must contain the whole group");
  }
  std::vector<long long> mu(family.size(), 0);
  std::vector<std::pair<long long, std::uint64_t>> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i == 0) {
      mu[i] = 1;
    } else {
      long long s = 0;
      for (std::size_t j = 0; j < i; ++j) {
        if (family[j] != family[i] && (family[j] & family[i]) == family[i]) s += mu[j];
      }
      mu[i] = -s;
    }
    if (mu[i] != 0) out.emplace_back(mu[i], family[i]);
  }
  return out;
}

BigCount non_generating_tuple_count_exclusion(const AbelianGroup& a, int length) {
  if (length < 0) throw PreconditionError("tuple length must be >= 0");
  auto subgroups = all_subgroups(a);
  BigCount generating = 0;
  for (auto [coef, h] : generation_coefficients(a, subgroups)) {
    generating += coef * ipow(__builtin_popcountll(h), length);
  }
  return ipow(a.order(), length) - generating;
}

BigCount non_generating_tuple_count(const AbelianGroup& a, int length) {
  if (length < 0) throw PreconditionError("tuple length must be >= 0");
  BigCount total = ipow(a.order(), length);
  if (total <= 10'000'000) return non_generating_tuple_count_brute(a, length);
  return non_generating_tuple_count_exclusion(a, length);
}

}  // namespace qmw
