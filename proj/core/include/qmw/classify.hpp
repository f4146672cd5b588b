#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmw/mesh.hpp"
#include "qmw/quandle.hpp"

namespace qmw {

/// A partition of {0..n-1}; block labels are numbered by first occurrence,
/// so equal partitions compare equal.
class Congruence {
 public:
  explicit Congruence(std::vector<int> labels);
  static Congruence identity(int n);

  const std::vector<int>& labels() const noexcept { return labels_; }
  std::vector<std::vector<int>> blocks() const;
  std::size_t block_count() const;
  bool is_identity() const;
  bool is_total() const;
  bool related(int a, int b) const { return labels_[a] == labels_[b]; }

  friend auto operator<=>(const Congruence&, const Congruence&) = default;

 private:
  std::vector<int> labels_;
};

constexpr int kDefaultCongruenceCap = 12;

/// Finest congruence relating a and b.
Congruence principal_congruence(const Quandle& q, int a, int b);
Congruence meet(const Congruence& x, const Congruence& y);
Congruence join(const Congruence& x, const Congruence& y);
/// Every congruence, sorted; throws CapExceeded when n > cap.
std::vector<Congruence> congruence_lattice(const Quandle& q, int cap = kDefaultCongruenceCap);
bool is_simple(const Quandle& q, int cap = kDefaultCongruenceCap);
bool is_subdirectly_irreducible(const Quandle& q, int cap = kDefaultCongruenceCap);

/// Aff(Z_p^k, companion matrix of poly).  `poly` lists the coefficients of
/// x^0 .. x^k and must be monic and irreducible over F_p.
Quandle simple_affine(int p, int k, const std::vector<int>& poly);
bool is_irreducible(int p, const std::vector<int>& poly);

/// Meshes of the subdirectly irreducible involutory families (1, 2 or 3).
/// Family 1 takes an odd prime p; families 2 and 3 use p = 2.
AffineMesh si_involutory_mesh(int family, int p, int k);
Quandle si_involutory(int family, int p, int k);
/// ((Z_q, Z_1, ..., Z_1); 0; c) with c_{i,1} = constants[i-1]; q must be a
/// prime power and the constants distinct generators.
AffineMesh si_2reductive_mesh(int q, const std::vector<int>& constants);
Quandle si_2reductive(int q, const std::vector<int>& constants);

struct ProductDecomposition {
  AbelianGroup group;          // L = Aff(group, translation)
  Homomorphism translation;
  int projection_size;         // P = projection quandle of this size
  std::vector<int> iso;        // Q -> L x P
};

struct ClassificationReport {
  int size = 0;
  bool medial = false;
  std::vector<int> orbit_sizes;
  std::optional<AffineMesh> mesh;
  bool latin = false;
  bool connected = false;
  std::optional<int> reductivity_degree;
  int symmetry_order = 1;
  bool two_reductive = false;
  bool involutory = false;
  bool latin_orbits = false;
  std::optional<ProductDecomposition> product;
  std::optional<bool> simple;
  std::optional<bool> subdirectly_irreducible;

  std::string to_json() const;
};

/// Precondition: q is a quandle.  Non-medial input yields a report with
/// only the table-level fields filled.
ClassificationReport classify(const Quandle& q, int congruence_cap = kDefaultCongruenceCap);

}  // namespace qmw
