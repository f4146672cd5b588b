#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmw/count.hpp"
#include "qmw/mesh.hpp"

namespace qmw {

struct FibreBlock {
  AbelianGroup group;
  int copies = 0;
};

/// A multiset of fibre groups, grouped into blocks of equal groups.  Blocks
/// are ordered by group; fibres of a block are adjacent.
struct FibreProfile {
  std::vector<FibreBlock> blocks;

  std::vector<AbelianGroup> fibres() const;
  int order() const;
  int fibre_count() const;
};

/// Every profile of total order n.  With exponent_two_only, only groups of
/// exponent at most two are used.
std::vector<FibreProfile> fibre_profiles(int n, bool exponent_two_only = false);

struct Non2ReductiveOptions {
  bool involutory = false;
  int workers = 1;
  int cap = 13;
};

struct Non2ReductiveClass {
  AffineMesh mesh;
  bool reductive = false;     // every diagonal entry nilpotent
  bool latin_orbits = false;  // every diagonal entry bijective
};

/// One representative per homology class of valid indecomposable meshes of
/// order n that are not 2-reductive.  The representative is the minimum of
/// its class in the structural mesh order; the list is sorted the same way.
std::vector<Non2ReductiveClass> enumerate_non2reductive(int n, const Non2ReductiveOptions& options = {});

/// Number of 2-reductive medial quandles of size n up to isomorphism.
BigCount count_2reductive(int n, bool involutory = false, int workers = 1);

constexpr int kDirectOrbitCap = 7;
/// The same count by listing constant matrices and their orbits.
BigCount direct_orbit_count(int n, bool involutory = false, int cap = kDirectOrbitCap);
/// Orbit minima found by direct_orbit_count, as meshes.
std::vector<AffineMesh> direct_orbit_representatives(int n, bool involutory = false,
                                                     int cap = kDirectOrbitCap);

/// Latin medial quandles of size n up to isomorphism.
BigCount count_latin(int n);
/// Latin medial quandles of size n that are involutory.
BigCount count_latin_involutory(int n);
/// Products L x P with |L| > 1 and size n.
BigCount count_all_orbits_latin(int n);

struct CountRow {
  int n = 0;
  std::optional<BigCount> medial;
  BigCount two_reductive = 0;
  std::optional<BigCount> involutory;
  BigCount two_reductive_involutory = 0;
  std::optional<BigCount> non2reductive;
  std::optional<BigCount> reductive_not_2reductive;
  std::optional<BigCount> nonreductive;
  std::optional<BigCount> non2reductive_involutory;
  BigCount all_orbits_latin = 0;
  BigCount latin = 0;
};

struct TableOptions {
  int workers = 1;
  /// Non-2-reductive cells are left empty above this size.
  int non2reductive_cap = 13;
};

CountRow count_row(int n, const TableOptions& options = {});
/// Rows 1..n_max.
std::vector<CountRow> assemble_tables(int n_max, const TableOptions& options = {});

std::string csv_header();
std::string to_csv(const CountRow& row);

/// (p^{m-1} - 1)^m, checked against a brute-force count of zero-diagonal
/// m x m matrices over Z_p with nonzero columns when there are at most
/// 2^24 such matrices with zero diagonal.
BigCount matrix_count_check(int p, int m);

}  // namespace qmw
