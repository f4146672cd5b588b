#include "qmw/permgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qmw/errors.hpp"

namespace qmw {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int y : images_) {
    if (y < 0 || y >= degree() || seen[y]) {
      throw PreconditionError("image list is not a permutation");
    }
    seen[y] = 1;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw PreconditionError("degree mismatch");
  Permutation r;
  r.images_.resize(q.images_.size());
  for (std::size_t x = 0; x < q.images_.size(); ++x) r.images_[x] = p.images_[q.images_[x]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) r.images_[images_[x]] = static_cast<int>(x);
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != static_cast<int>(x)) return false;
  }
  return true;
}

int Permutation::order() const {
  int ord = 1;
  std::vector<char> seen(images_.size(), 0);
  for (int x = 0; x < degree(); ++x) {
    if (seen[x]) continue;
    int len = 0;
    for (int y = x; !seen[y]; y = images_[y]) {
      seen[y] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string Permutation::cycles() const {
  std::ostringstream out;
  std::vector<char> seen(images_.size(), 0);
  for (int x = 0; x < degree(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    out << '(';
    for (int y = x; !seen[y]; y = images_[y]) {
      seen[y] = 1;
      if (y != x) out << ' ';
      out << y;
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators, std::size_t cap)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.degree() != degree_) throw PreconditionError("generator degree mismatch");
  }
  std::set<Permutation> seen{Permutation::identity(degree_)};
  std::vector<Permutation> queue{Permutation::identity(degree_)};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : generators_) {
      Permutation next = g * queue[head];
      if (seen.insert(next).second) {
        if (seen.size() > cap) {
          throw CapExceeded("group too large: more than " + std::to_string(cap) +
                            " elements");
        }
        queue.push_back(std::move(next));
      }
    }
  }
  elements_.assign(seen.begin(), seen.end());
}

bool PermGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

std::vector<std::vector<int>> orbits_of(int degree, const std::vector<Permutation>& gens) {
  std::vector<int> parent(degree);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : gens) {
    for (int x = 0; x < degree; ++x) {
      int a = find(x), b = find(g(x));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(degree, -1);
  for (int x = 0; x < degree; ++x) {
    int r = find(x);
    if (block_of[r] < 0) {
      block_of[r] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[r]].push_back(x);
  }
  return blocks;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  return orbits_of(degree_, generators_);
}

bool PermGroup::is_abelian() const {
  for (std::size_t a = 0; a < generators_.size(); ++a) {
    for (std::size_t b = a + 1; b < generators_.size(); ++b) {
      if (generators_[a] * generators_[b] != generators_[b] * generators_[a]) return false;
    }
  }
  return true;
}

PermGroup PermGroup::stabilizer(int point) const {
  std::vector<Permutation> fixing;
  for (const auto& p : elements_) {
    if (p(point) == point && !p.is_identity()) fixing.push_back(p);
  }
  return PermGroup(degree_, std::move(fixing));
}

}  // namespace qmw
