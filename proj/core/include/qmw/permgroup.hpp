#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qmw {

/// A permutation of {0..n-1} stored as its image list.
class Permutation {
 public:
  Permutation() = default;
  /// Throws PreconditionError unless `images` is a bijection of {0..n-1}.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const noexcept { return images_; }

  /// (p * q)(x) = p(q(x)).
  friend Permutation operator*(const Permutation& p, const Permutation& q);
  Permutation inverse() const;
  bool is_identity() const;
  int order() const;

  /// Cycle notation such as "(0 4 2)(1 5 3)"; the identity prints as "()".
  std::string cycles() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// A permutation group given by generators, with its full element list
/// computed by breadth-first closure.
class PermGroup {
 public:
  static constexpr std::size_t kDefaultCap = 1'000'000;

  /// Throws PreconditionError on mixed degrees and CapExceeded when the
  /// group has more than `cap` elements.
  PermGroup(int degree, std::vector<Permutation> generators,
            std::size_t cap = kDefaultCap);

  int degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  /// Sorted; the identity comes first.
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(const Permutation& p) const;

  /// Orbits of the natural action, each sorted, ordered by minimum.
  std::vector<std::vector<int>> orbits() const;
  bool is_abelian() const;
  PermGroup stabilizer(int point) const;

 private:
  int degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

/// Orbits of the group generated by `gens` without building the group.
std::vector<std::vector<int>> orbits_of(int degree, const std::vector<Permutation>& gens);

}  // namespace qmw
