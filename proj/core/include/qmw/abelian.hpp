#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qmw/count.hpp"

namespace qmw {

/// An element of a finite abelian group, as coordinates against the
/// canonical generators of its invariant-factor decomposition.
struct GroupElement {
  std::vector<int> coords;

  auto operator<=>(const GroupElement&) const = default;
};

/// A finite abelian group Z_{d_1} x ... x Z_{d_k} in invariant-factor form
/// (d_1 | d_2 | ... | d_k, all d_i > 1).  The trivial group has no factors.
///
/// Elements are addressed by their rank in lexicographic coordinate order,
/// so index order and the element total order agree.
class AbelianGroup {
 public:
  AbelianGroup();
  /// Throws PreconditionError unless `factors` is a divisibility chain of
  /// integers >= 2.
  explicit AbelianGroup(std::vector<int> factors);

  static AbelianGroup cyclic(int n);

  const std::vector<int>& factors() const noexcept { return factors_; }
  int order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  bool is_trivial() const noexcept { return order_ == 1; }
  int exponent() const noexcept { return factors_.empty() ? 1 : factors_.back(); }

  int index(const GroupElement& x) const;
  GroupElement element(int index) const;
  /// Index of the t-th canonical generator.
  int generator(std::size_t t) const { return strides_[t]; }
  int coord(int index, std::size_t t) const {
    return (index / strides_[t]) % factors_[t];
  }

  int add(int a, int b) const {
    if (tables_) return tables_->add[static_cast<std::size_t>(a) * order_ + b];
    return add_slow(a, b);
  }
  int neg(int a) const {
    if (tables_) return tables_->neg[a];
    return neg_slow(a);
  }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int scale(int a, long long k) const;
  int element_order(int a) const;

  /// "2,6" style text; the trivial group prints as "1".
  std::string to_string() const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.factors_ == b.factors_;
  }
  friend auto operator<=>(const AbelianGroup& a, const AbelianGroup& b) {
    return a.factors_ <=> b.factors_;
  }

 private:
  struct Tables {
    std::vector<int> add;
    std::vector<int> neg;
  };

  int add_slow(int a, int b) const;
  int neg_slow(int a) const;

  std::vector<int> factors_;
  std::vector<int> strides_;
  int order_ = 1;
  std::shared_ptr<const Tables> tables_;
};

/// Parses "2,6" (or "1" for the trivial group).  Arbitrary cyclic orders are
/// accepted and canonicalized.
AbelianGroup parse_group(const std::string& text);

/// A homomorphism between finite abelian groups, given by the images of the
/// domain's canonical generators.  The full value table is kept alongside.
class Homomorphism {
 public:
  /// Throws PreconditionError if an image has the wrong shape or if
  /// d_t * images[t] != 0 for some generator.
  Homomorphism(AbelianGroup domain, AbelianGroup codomain,
               std::vector<GroupElement> images);

  static Homomorphism zero(const AbelianGroup& domain,
                           const AbelianGroup& codomain);
  static Homomorphism identity(const AbelianGroup& group);
  /// x -> m*x on one group.
  static Homomorphism scalar(const AbelianGroup& group, long long m);
  /// Between cyclic (or trivial) groups: the generator of the domain is sent
  /// to m times the generator of the codomain.
  static Homomorphism cyclic_map(const AbelianGroup& domain,
                                 const AbelianGroup& codomain, long long m);
  /// Builds from a value table indexed by domain element index.  The table
  /// must describe a homomorphism.
  static Homomorphism from_table(const AbelianGroup& domain,
                                 const AbelianGroup& codomain,
                                 std::vector<int> table);

  const AbelianGroup& domain() const noexcept { return domain_; }
  const AbelianGroup& codomain() const noexcept { return codomain_; }
  const std::vector<int>& image_indices() const noexcept { return images_; }
  std::vector<GroupElement> images() const;
  const std::vector<int>& table() const noexcept { return table_; }

  int operator()(int x) const { return table_[x]; }
  GroupElement operator()(const GroupElement& x) const;

  bool is_zero() const;
  bool is_bijective() const;
  int image_size() const;

  /// Composition: (f * g)(x) = f(g(x)).
  friend Homomorphism operator*(const Homomorphism& f, const Homomorphism& g);
  friend Homomorphism operator+(const Homomorphism& f, const Homomorphism& g);
  friend Homomorphism operator-(const Homomorphism& f, const Homomorphism& g);
  Homomorphism operator-() const;
  Homomorphism pow(int exponent) const;
  /// Precondition: bijective endomorphism.
  Homomorphism inverse() const;

  friend bool operator==(const Homomorphism& a, const Homomorphism& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ &&
           a.images_ == b.images_;
  }
  /// Lexicographic on (domain, codomain, generator images).
  friend std::strong_ordering operator<=>(const Homomorphism& a,
                                          const Homomorphism& b);

 private:
  Homomorphism(AbelianGroup domain, AbelianGroup codomain,
               std::vector<int> images, std::vector<int> table);

  AbelianGroup domain_;
  AbelianGroup codomain_;
  std::vector<int> images_;
  std::vector<int> table_;
};

/// Invariant-factor form of Z_{n_1} x ... x Z_{n_r}.
AbelianGroup canonicalize(std::span<const int> cyclic_orders);

/// All abelian groups of order n up to isomorphism, lexicographic on factor
/// lists.
std::vector<AbelianGroup> groups_of_order(int n);

std::vector<Homomorphism> all_homs(const AbelianGroup& a, const AbelianGroup& b);
std::vector<Homomorphism> all_isos(const AbelianGroup& a, const AbelianGroup& b);
std::vector<Homomorphism> aut_group(const AbelianGroup& a);
/// Process-wide memoized aut_group.
const std::vector<Homomorphism>& aut_group_cached(const AbelianGroup& a);

struct ConjugacyClass {
  Homomorphism representative;  // minimum of the class
  std::size_t size;
};

/// Indices of a generating set of a group of automorphisms, chosen greedily
/// in list order.
std::vector<std::size_t> generating_subset(std::span<const Homomorphism> group);

/// Conjugacy classes of a group of automorphisms, ordered by representative.
std::vector<ConjugacyClass> conjugacy_classes(std::span<const Homomorphism> auts);

/// The subgroup generated by `gens`, in ascending element order.
std::vector<GroupElement> subgroup_generated(const AbelianGroup& a,
                                             std::span<const GroupElement> gens);

/// Index form of subgroup_generated: membership flags over element indices.
std::vector<char> subgroup_closure(const AbelianGroup& a, std::span<const int> gens);

int fixed_point_count(const Homomorphism& h);

/// Number of length-tuples over A whose entries do not generate A.
BigCount non_generating_tuple_count(const AbelianGroup& a, int length);
BigCount non_generating_tuple_count_brute(const AbelianGroup& a, int length);
BigCount non_generating_tuple_count_exclusion(const AbelianGroup& a, int length);

/// Every subgroup of A as a membership bitmask; requires |A| <= 64.
std::vector<std::uint64_t> all_subgroups(const AbelianGroup& a);
/// Moebius inversion over `subgroups` (which must be closed under
/// intersection and contain A): pairs (coefficient, subgroup)
/// such that the number of tuples from the given sets that generate A equals
/// sum(coefficient * prod |subgroup & set_o|).
std::vector<std::pair<long long, std::uint64_t>> generation_coefficients(
    const AbelianGroup& a, std::span<const std::uint64_t> subgroups);

}  // namespace qmw
