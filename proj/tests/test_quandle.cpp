#include "doctest.h"
#include "oracles.hpp"
#include "qmw/errors.hpp"
#include "qmw/quandle.hpp"

using namespace qmw;

namespace {

// The smallest medial quandle that is not affine.
Quandle three_element() { return Quandle::from_rows({{0, 1, 2}, {0, 1, 2}, {1, 0, 2}}); }

Quandle aff(int n, long long f) {
  AbelianGroup g = AbelianGroup::cyclic(n);
  return Quandle::affine(g, Homomorphism::scalar(g, f));
}

// ((Z2^2); (1 1; 1 0); (0)) as an affine quandle: the connected one of size 4.
Quandle tetrahedral() {
  AbelianGroup v(std::vector<int>{2, 2});
  Homomorphism f(v, v, {GroupElement{{1, 1}}, GroupElement{{1, 0}}});
  return Quandle::affine(v, Homomorphism::identity(v) - f);
}

}  // namespace

TEST_CASE("axioms of small tables") {
  CHECK(validate(three_element()).ok());
  AxiomReport bad = validate(Quandle::from_rows({{0, 0, 2}, {0, 1, 2}, {0, 1, 2}}));
  CHECK_FALSE(bad.left_quasigroup);
  CHECK(bad.quasigroup_witness.has_value());
  CHECK_FALSE(bad.describe().empty());
  for (int n = 1; n <= 5; ++n) CHECK(validate(Quandle::projection(n)).ok());
  AxiomReport not_idempotent = validate(Quandle::from_rows({{1, 0}, {1, 0}}));
  CHECK_FALSE(not_idempotent.idempotent);
  CHECK(not_idempotent.idempotent_witness == 0);
  CHECK_THROWS_AS(Quandle(2, {0, 1, 2, 1}), PreconditionError);
}

TEST_CASE("validate agrees with a direct axiom check") {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    int n = oracle::uniform(rng, 1, 4);
    std::vector<int> table(n * n);
    for (int a = 0; a < n; ++a) {
      std::vector<int> row(n);
      std::iota(row.begin(), row.end(), 0);
      std::shuffle(row.begin(), row.end(), rng);
      for (int b = 0; b < n; ++b) table[a * n + b] = row[b];
      if (oracle::uniform(rng, 0, 3) > 0) {
        // make it idempotent by a swap
        int where = static_cast<int>(std::find(row.begin(), row.end(), a) - row.begin());
        std::swap(table[a * n + where], table[a * n + a]);
      }
    }
    Quandle q(n, table);
    CHECK(validate(q).ok() == oracle::is_quandle(q));
  }
}

TEST_CASE("mediality by two methods") {
  CHECK(is_medial(three_element()));
  CHECK(is_medial(aff(6, -1)));
  Quandle latin3 = Quandle::from_rows({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}});
  CHECK(is_medial_by_identity(latin3) == is_medial_by_displacement(latin3));
  CHECK(is_medial_by_identity(latin3) == oracle::is_medial(latin3));
  for (int n = 1; n <= 5; ++n) {
    for (const auto& q : brute_force_enumerate(n, [](const Quandle&) { return true; })) {
      CHECK(is_medial_by_identity(q) == is_medial_by_displacement(q));
      CHECK(is_medial(q) == oracle::is_medial(q));
    }
  }
}

TEST_CASE("a non-medial quandle is detected") {
  // Of the seven quandles of size 4, exactly one is not medial.
  auto non_medial = brute_force_enumerate(4, [](const Quandle& q) { return !oracle::is_medial(q); });
  REQUIRE(non_medial.size() == 1);
  for (const auto& q : non_medial) {
    CHECK_FALSE(is_medial(q));
    CHECK_FALSE(dis(q).is_abelian());
  }
}

TEST_CASE("translations and orbits") {
  Quandle q = aff(6, -1);
  CHECK(dis(q).size() == 3);
  CHECK(orbits(q) == std::vector<std::vector<int>>{{0, 2, 4}, {1, 3, 5}});
  Quandle p = Quandle::projection(4);
  CHECK(dis(p).size() == 1);
  CHECK(orbits(p).size() == 4);
  CHECK(orbits(three_element()) == std::vector<std::vector<int>>{{0, 1}, {2}});
  CHECK(q.left(1)(0) == q(1, 0));
  CHECK(q.right(1)[0] == q(0, 1));
}

TEST_CASE("orbit charts") {
  OrbitChart c = orbit_group(aff(6, -1), 0);
  CHECK(c.group == AbelianGroup::cyclic(3));
  CHECK(c.translation == Homomorphism::scalar(c.group, -1));
  CHECK(brute_force_iso(c.chart(), aff(3, -1)).has_value());
  CHECK(orbit_group(Quandle::projection(3), 1).group.is_trivial());
  OrbitChart s = orbit_group(three_element(), 0);
  CHECK(s.group == AbelianGroup::cyclic(2));
  CHECK(s.translation == Homomorphism::identity(s.group));
}

TEST_CASE("orbit charts are affine on every orbit") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& q : brute_force_enumerate(n, [](const Quandle& x) { return oracle::is_medial(x); })) {
      for (const auto& orbit : oracle::orbits(q)) {
        for (int e : orbit) {
          OrbitChart c = orbit_group(q, e);
          CHECK(c.orbit == orbit);
          CHECK(c.to_group[e] == 0);
          const Homomorphism& f = c.translation;
          Homomorphism one_minus = Homomorphism::identity(c.group) - f;
          for (int a : orbit) {
            for (int b : orbit) {
              int expected = c.group.add(one_minus(c.to_group[a]), f(c.to_group[b]));
              CHECK(c.to_group[q(a, b)] == expected);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("classification predicates") {
  CHECK(symmetry_order(aff(5, 2)) == 4);
  CHECK(reductivity_degree(aff(4, 3)) == 2);
  CHECK(reductivity_degree(Quandle::projection(3)) == 1);
  CHECK(symmetry_order(Quandle::projection(3)) == 1);
  CHECK(is_latin(aff(5, 2)));
  CHECK(is_connected(aff(5, 2)));
  CHECK_FALSE(is_latin(aff(6, -1)));
  CHECK_FALSE(reductivity_degree(aff(6, -1)).has_value());
  CHECK(is_latin(tetrahedral()));
}

TEST_CASE("reductivity matches a direct check") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& q : brute_force_enumerate(n, [](const Quandle& x) { return oracle::is_medial(x); })) {
      int expected = oracle::reductivity(q, n);
      auto got = reductivity_degree(q);
      CHECK(got.value_or(0) == expected);
    }
  }
}

TEST_CASE("all latin orbits of a medial quandle are isomorphic") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& q : brute_force_enumerate(n, [](const Quandle& x) { return oracle::is_medial(x); })) {
      std::vector<Quandle> latin;
      for (const auto& orbit : oracle::orbits(q)) {
        Quandle sub = q.restrict_to(orbit);
        if (is_latin(sub)) latin.push_back(sub);
      }
      for (std::size_t i = 1; i < latin.size(); ++i) CHECK(oracle::isomorphic(latin[0], latin[i]));
    }
  }
}

TEST_CASE("brute-force isomorphism") {
  Quandle q = aff(6, -1);
  auto self = brute_force_iso(q, q);
  REQUIRE(self.has_value());
  CHECK(oracle::is_isomorphism(q, q, *self));
  CHECK_FALSE(brute_force_iso(aff(4, 3), tetrahedral()).has_value());
  CHECK_FALSE(oracle::isomorphic(aff(4, 3), tetrahedral()));
  std::vector<int> relabel{3, 5, 0, 1, 4, 2};
  auto map = brute_force_iso(q, q.relabelled(relabel));
  REQUIRE(map.has_value());
  CHECK(oracle::is_isomorphism(q, q.relabelled(relabel), *map));
}

TEST_CASE("brute-force isomorphism agrees with trying all bijections") {
  for (int n = 1; n <= 4; ++n) {
    auto all = brute_force_enumerate(n, [](const Quandle&) { return true; });
    for (const auto& a : all) {
      for (const auto& b : all) {
        auto map = brute_force_iso(a, b);
        CHECK(map.has_value() == oracle::isomorphic(a, b));
        if (map) CHECK(oracle::is_isomorphism(a, b, *map));
      }
    }
  }
}

TEST_CASE("medial quandles of small size") {
  auto medial = [](const Quandle& q) { return oracle::is_medial(q); };
  CHECK(brute_force_enumerate(3, medial).size() == 3);
  CHECK(brute_force_enumerate(4, medial).size() == 6);
  CHECK(brute_force_enumerate(5, medial).size() == 18);
  CHECK(brute_force_enumerate(3, [](const Quandle&) { return true; }).size() == 3);
  CHECK(brute_force_enumerate(4, [](const Quandle&) { return true; }).size() == 7);
  CHECK_THROWS_AS(brute_force_enumerate(7, medial), CapExceeded);
}

TEST_CASE("subquandles and products") {
  Quandle q = Quandle::direct_product(aff(3, 2), Quandle::projection(2));
  CHECK(validate(q).ok());
  CHECK(q.size() == 6);
  CHECK(orbits(q).size() == 2);
  Quandle sub = q.restrict_to({0, 2, 4});
  CHECK(oracle::isomorphic(sub, aff(3, 2)));
  CHECK_THROWS_AS(q.restrict_to({0, 2}), PreconditionError);
}
