#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "qmw/abelian.hpp"
#include "qmw/quandle.hpp"

namespace qmw {

/// Fibres A_i, homomorphisms phi[i][j]: A_i -> A_j and constants
/// c[i][j] in A_j.  Constants are stored as element indices of A_j.
struct AffineMesh {
  std::vector<AbelianGroup> groups;
  std::vector<std::vector<Homomorphism>> phi;
  std::vector<std::vector<int>> c;

  std::size_t size() const noexcept { return groups.size(); }
  /// Total number of elements of the sum.
  int order() const;

  /// Lexicographic on (groups, phi, c); used to pick class representatives.
  friend auto operator<=>(const AffineMesh&, const AffineMesh&) = default;
  friend bool operator==(const AffineMesh&, const AffineMesh&) = default;
};

/// Builds a mesh over cyclic (or trivial) fibres of the given orders.
/// phi[i][j] sends the generator of A_i to phi[i][j] times the generator of
/// A_j; c[i][j] is an integer reduced into A_j.
AffineMesh mesh_from_scalars(const std::vector<int>& orders,
                             const std::vector<std::vector<long long>>& phi,
                             const std::vector<std::vector<long long>>& c);

/// The mesh with every entry zero except the constants.
AffineMesh constant_mesh(const std::vector<AbelianGroup>& groups,
                         const std::vector<std::vector<int>>& c);

struct MeshReport {
  bool m1 = true;
  bool m2 = true;
  bool m3 = true;
  bool m4 = true;
  /// Description of the first violation, with indices; empty when valid.
  std::string first_violation;

  bool ok() const { return m1 && m2 && m3 && m4; }
};

/// Throws PreconditionError on shape inconsistencies (wrong matrix sizes,
/// domains, codomains or constant ranges); reports axiom failures.
MeshReport validate_mesh(const AffineMesh& m);
void check_shape(const AffineMesh& m);

bool is_indecomposable(const AffineMesh& m);

struct MeshSum {
  Quandle quandle;
  /// offsets[i] is the index of element 0 of fibre i in the sum.
  std::vector<int> offsets;
};

/// The sum on the disjoint union of the fibres, fibre-major.
MeshSum sum(const AffineMesh& m);

struct CanonicalMesh {
  AffineMesh mesh;
  std::vector<int> transversal;
  std::vector<OrbitChart> charts;
  /// Sum element index -> quandle element; an isomorphism sum(mesh) -> Q.
  std::vector<int> sum_to_quandle;
};

/// Precondition: Q medial.  The default transversal takes the minimum of
/// each orbit, orbits ordered by minimum.
CanonicalMesh canonical_mesh(const Quandle& q,
                             std::optional<std::vector<int>> transversal = std::nullopt);

struct HomologyWitness {
  std::vector<int> pi;
  std::vector<Homomorphism> psi;  // psi[i]: A_i -> A'_{pi i}
  std::vector<int> d;             // d[i] in A'_{pi i}
};

/// Throws PreconditionError unless both meshes are valid and
/// indecomposable.
std::optional<HomologyWitness> homologous(const AffineMesh& a, const AffineMesh& b);
bool check_witness(const AffineMesh& a, const AffineMesh& b, const HomologyWitness& w);
/// The mesh obtained from `m` by a homology; psi[i] must be an automorphism
/// of A_i (fibres are canonical, so A'_{pi i} = A_i).
AffineMesh apply_homology(const AffineMesh& m, const HomologyWitness& w);
/// Element map sum(a) -> sum(b) induced by a witness.
std::vector<int> witness_to_iso(const AffineMesh& a, const AffineMesh& b,
                                const HomologyWitness& w);

/// |Im(phi_ii^2)| divides the gcd of the fibre orders, for every i.
bool gcd_check(const AffineMesh& m);
/// 1 + the least m with phi_ii^m = 0 for all i, or nullopt if some diagonal
/// entry is not nilpotent.
std::optional<int> reductivity_degree(const AffineMesh& m);
/// sum_{r<n} (1 - phi_ii)^r = 0 for every i.
bool symmetry_check(const AffineMesh& m, int n);
bool is_2reductive(const AffineMesh& m);
/// phi_ii = 2 for every i.
bool is_involutory(const AffineMesh& m);
/// Whenever phi_jk = 0 for some j, the whole column k is zero.
bool zero_column_check(const AffineMesh& m);

/// Precondition: every phi_ii bijective and all fibres equal.  Returns
/// ((A,...,A); phi_11 everywhere; 0) after confirming it is homologous to m.
AffineMesh latin_normalize(const AffineMesh& m);

}  // namespace qmw
