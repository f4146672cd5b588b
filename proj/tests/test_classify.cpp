#include "doctest.h"
#include "oracles.hpp"
#include "qmw/classify.hpp"
#include "qmw/errors.hpp"

using namespace qmw;

namespace {

Quandle aff(int n, long long f) {
  AbelianGroup g = AbelianGroup::cyclic(n);
  return Quandle::affine(g, Homomorphism::scalar(g, f));
}

Quandle three_element() { return Quandle::from_rows({{0, 1, 2}, {0, 1, 2}, {1, 0, 2}}); }

// Every partition of {0..n-1} that is compatible with the operation.
std::vector<Congruence> congruences_by_partitions(const Quandle& q) {
  int n = q.size();
  std::vector<Congruence> out;
  std::vector<int> labels(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      bool ok = true;
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n && ok; ++b)
          for (int c = 0; c < n && ok; ++c)
            for (int d = 0; d < n && ok; ++d)
              if (labels[a] == labels[b] && labels[c] == labels[d]) ok = labels[q(a, c)] == labels[q(b, d)];
      if (ok) out.emplace_back(labels);
      return;
    }
    for (int l = 0; l <= used; ++l) {
      labels[i] = l;
      rec(i + 1, std::max(used, l + 1));
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("congruences of small quandles") {
  CHECK(congruence_lattice(Quandle::projection(4)).size() == 15);
  auto lattice = congruence_lattice(aff(6, -1));
  bool has_orbits = false;
  for (const auto& c : lattice) has_orbits |= c.labels() == std::vector<int>{0, 1, 0, 1, 0, 1};
  CHECK(has_orbits);
  CHECK(congruence_lattice(simple_affine(2, 2, {1, 1, 1})).size() == 2);
  CHECK_THROWS_AS(congruence_lattice(Quandle::projection(13)), CapExceeded);
  CHECK(congruence_lattice(aff(13, 2), 13).size() == 2);
}

TEST_CASE("congruence lattice equals the compatible partitions") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& q : brute_force_enumerate(n, [](const Quandle& x) { return oracle::is_medial(x); })) {
      auto lattice = congruence_lattice(q);
      std::sort(lattice.begin(), lattice.end());
      CHECK(lattice == congruences_by_partitions(q));
    }
  }
}

TEST_CASE("principal congruences, meets and joins") {
  Quandle q = aff(6, -1);
  Congruence c = principal_congruence(q, 0, 2);
  CHECK(c.related(0, 4));
  CHECK_FALSE(c.related(0, 1));
  Congruence identity = Congruence::identity(6);
  CHECK(meet(c, identity) == identity);
  CHECK(join(c, identity) == c);
  CHECK(join(principal_congruence(q, 0, 1), c).is_total());
  CHECK(c.block_count() == 2);
}

TEST_CASE("simple and subdirectly irreducible") {
  CHECK(is_simple(simple_affine(2, 2, {1, 1, 1})));
  CHECK(is_subdirectly_irreducible(Quandle::projection(2)));
  CHECK_FALSE(is_subdirectly_irreducible(Quandle::projection(3)));
  CHECK_FALSE(is_simple(Quandle::projection(1)));
  CHECK(is_simple(aff(3, 2)));
  CHECK_FALSE(is_simple(aff(9, -1)));
  CHECK(is_subdirectly_irreducible(aff(9, -1)));
  CHECK_FALSE(is_simple(three_element()));
  CHECK(is_subdirectly_irreducible(three_element()));
}

TEST_CASE("simple affine quandles from polynomials") {
  Quandle q = simple_affine(2, 2, {1, 1, 1});
  CHECK(q.size() == 4);
  CHECK(validate(q).ok());
  CHECK(is_medial(q));
  CHECK(is_irreducible(2, {1, 1, 1}));
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));
  CHECK(is_irreducible(3, {2, 1}));
  CHECK_THROWS_AS(simple_affine(2, 2, {1, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(simple_affine(2, 2, {1, 1, 2}), PreconditionError);
  CHECK_THROWS_AS(simple_affine(4, 1, {1, 1}), PreconditionError);
  for (int p : {2, 3, 5}) {
    for (int k = 1; k <= 3; ++k) {
      if (std::pow(p, k) > 12) continue;
      // every monic irreducible of degree k with nonzero constant term
      std::vector<int> poly(k + 1, 0);
      poly[k] = 1;
      std::function<void(int)> rec = [&](int i) {
        if (i == k) {
          if (poly[0] == 0 || !is_irreducible(p, poly)) return;
          if (k == 1 && p != 2 && (p - poly[0]) % p == 1) return;  // x - 1 gives a projection quandle
          CHECK(is_simple(simple_affine(p, k, poly)));
          return;
        }
        for (int v = 0; v < p; ++v) {
          poly[i] = v;
          rec(i + 1);
        }
      };
      rec(0);
    }
  }
}

TEST_CASE("subdirectly irreducible families") {
  CHECK(brute_force_iso(si_involutory(1, 3, 1), aff(3, 2)).has_value());
  CHECK(is_subdirectly_irreducible(si_involutory(1, 3, 1)));
  CHECK(si_2reductive(2, {1}) == three_element());
  CHECK(is_subdirectly_irreducible(si_2reductive(2, {1})));
  CHECK_THROWS_AS(si_2reductive(6, {1}), PreconditionError);
  CHECK_THROWS_AS(si_2reductive(4, {2}), PreconditionError);
  CHECK_THROWS_AS(si_2reductive(3, {1, 1}), PreconditionError);
  CHECK_THROWS_AS(si_involutory(1, 2, 1), PreconditionError);
  CHECK_THROWS_AS(si_involutory(4, 3, 1), PreconditionError);
  for (int k = 1; k <= 3; ++k) {
    CHECK(validate_mesh(si_involutory_mesh(2, 2, k)).ok());
    CHECK(validate_mesh(si_involutory_mesh(3, 2, k)).ok());
  }
}

TEST_CASE("classification reports") {
  ClassificationReport d = classify(aff(6, -1));
  CHECK(d.medial);
  CHECK(d.orbit_sizes == std::vector<int>{3, 3});
  CHECK(d.involutory);
  CHECK(d.symmetry_order == 2);
  CHECK_FALSE(d.reductivity_degree.has_value());
  CHECK(d.latin_orbits);
  REQUIRE(d.product.has_value());
  CHECK(d.product->group == AbelianGroup::cyclic(3));
  CHECK(d.product->translation == Homomorphism::scalar(d.product->group, -1));
  CHECK(d.product->projection_size == 2);
  Quandle target = Quandle::direct_product(aff(3, -1), Quandle::projection(2));
  CHECK(oracle::is_isomorphism(aff(6, -1), target, d.product->iso));

  ClassificationReport t = classify(three_element());
  CHECK(t.two_reductive);
  CHECK(t.orbit_sizes == std::vector<int>{2, 1});
  CHECK_FALSE(t.product.has_value());

  ClassificationReport c = classify(simple_affine(2, 2, {1, 1, 1}));
  CHECK(c.connected);
  CHECK(c.latin);
  CHECK(c.simple == true);

  CHECK(classify(Quandle::projection(13)).simple == std::nullopt);
  CHECK_THROWS_AS(classify(Quandle::from_rows({{1, 0}, {1, 0}})), PreconditionError);
  std::string json = d.to_json();
  CHECK(json.find("\"orbit_sizes\": [3,3]") != std::string::npos);
  CHECK(json.find("\"mesh\": {") != std::string::npos);
}

TEST_CASE("non-medial quandles get table-level fields only") {
  auto non_medial = brute_force_enumerate(4, [](const Quandle& q) { return !oracle::is_medial(q); });
  REQUIRE(non_medial.size() == 1);
  ClassificationReport r = classify(non_medial[0]);
  CHECK_FALSE(r.medial);
  CHECK_FALSE(r.mesh.has_value());
}
