// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  All comparisons are exact.

#include <chrono>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qmw/classify.hpp"
#include "qmw/enumerate.hpp"
#include "qmw/errors.hpp"

using namespace qmw;

namespace {

struct Criterion {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (static_cast<BigCount>(got) != static_cast<BigCount>(want) && ok) {
      detail << what << ": got " << to_string(static_cast<BigCount>(got)) << ", want "
             << to_string(static_cast<BigCount>(want));
    }
    ok = ok && static_cast<BigCount>(got) == static_cast<BigCount>(want);
  }
};

int failures = 0;

template <class F>
void run(int id, const std::string& title, F body) {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail << "exception: " << e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (c.ok ? "PASS" : "FAIL") << "  " << id << ". " << title;
  std::cout << " (" << std::fixed;
  std::cout.precision(1);
  std::cout << secs << "s)";
  if (!c.ok) std::cout << ": " << c.detail.str();
  std::cout << std::endl;
  if (!c.ok) ++failures;
}

// Published counts, indexed from n = 1.
const std::vector<long long> kMedial{1, 1, 3, 6, 18, 58, 251, 1410, 10311};
const std::vector<long long> kTwoReductive{1,     1,      2,      5,       15,       55,       246,
                                           1398,  10301,  98532,  1246479,  20837171, 466087624};
const std::vector<long long> kMedialInvolutory{1, 1, 3, 4, 11, 33, 121, 597, 4017, 35103};
const std::vector<long long> kTwoReductiveInvolutory{1,    1,    2,     4,      10,      31,       120,
                                                     594,  4013, 35092, 428080, 6851545, 153025576};
const std::vector<long long> kNon2Reductive{0, 0, 1, 1, 3, 3, 5, 12, 10, 45, 9};
const std::vector<long long> kLatin{1, 0, 1, 1, 3, 0, 5, 2, 8, 0, 9, 1, 11};
const std::vector<long long> kNonReductive{0, 0, 1, 1, 3, 1, 5, 3, 10, 3};
const std::vector<long long> kReductiveNot2{0, 0, 0, 0, 0, 2, 0, 9, 0, 42};

Quandle shuffled(oracle::Rng& rng, const Quandle& q) {
  std::vector<int> p(q.size());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return q.relabelled(p);
}

// Every indecomposable mesh class of order n: 2-reductive ones listed
// directly, the rest from the search.
std::vector<AffineMesh> representatives(int n) {
  std::vector<AffineMesh> out = direct_orbit_representatives(n, false, std::max(n, kDirectOrbitCap));
  for (auto& c : enumerate_non2reductive(n)) out.push_back(c.mesh);
  return out;
}

}  // namespace

int main() {
  run(1, "medial counts n=1..9", [](Criterion& c) {
    auto rows = assemble_tables(9);
    for (int n = 1; n <= 9; ++n) {
      c.expect(rows[n - 1].medial.has_value(), "missing medial cell");
      if (rows[n - 1].medial) c.equal(*rows[n - 1].medial, kMedial[n - 1], "medial n=" + std::to_string(n));
    }
  });

  run(2, "2-reductive counts n=1..13", [](Criterion& c) {
    for (int n = 1; n <= 13; ++n) c.equal(count_2reductive(n), kTwoReductive[n - 1], "n=" + std::to_string(n));
  });

  run(3, "involutory counts (medial n<=10, 2-reductive n<=13)", [](Criterion& c) {
    auto rows = assemble_tables(10);
    for (int n = 1; n <= 10; ++n) {
      c.expect(rows[n - 1].involutory.has_value(), "missing involutory cell");
      if (rows[n - 1].involutory) {
        c.equal(*rows[n - 1].involutory, kMedialInvolutory[n - 1], "medial involutory n=" + std::to_string(n));
      }
    }
    for (int n = 1; n <= 13; ++n) {
      c.equal(count_2reductive(n, true), kTwoReductiveInvolutory[n - 1], "2-red involutory n=" + std::to_string(n));
    }
  });

  run(4, "non-2-reductive, latin and reductivity columns", [](Criterion& c) {
    for (int n = 1; n <= 11; ++n) {
      auto classes = enumerate_non2reductive(n);
      c.equal(classes.size(), kNon2Reductive[n - 1], "non-2-reductive n=" + std::to_string(n));
      if (n > 10) continue;
      long long reductive = 0;
      for (const auto& k : classes) reductive += k.reductive;
      c.equal(reductive, kReductiveNot2[n - 1], "reductive not 2-reductive n=" + std::to_string(n));
      c.equal(static_cast<long long>(classes.size()) - reductive, kNonReductive[n - 1],
              "non-reductive n=" + std::to_string(n));
    }
    for (int n = 1; n <= 13; ++n) c.equal(count_latin(n), kLatin[n - 1], "latin n=" + std::to_string(n));
  });

  run(5, "brute force agrees with the mesh pipeline", [](Criterion& c) {
    const std::vector<long long> expected{1, 1, 3, 6, 18};
    for (int n = 1; n <= 5; ++n) {
      auto brute = brute_force_enumerate(n, [](const Quandle& q) { return oracle::is_medial(q); });
      c.equal(brute.size(), expected[n - 1], "brute force n=" + std::to_string(n));
      auto reps = representatives(n);
      c.equal(reps.size(), brute.size(), "mesh classes n=" + std::to_string(n));
      // each brute-force class matches exactly one mesh class
      std::vector<int> hits(reps.size(), 0);
      for (const auto& q : brute) {
        AffineMesh m = canonical_mesh(q).mesh;
        int matched = 0;
        for (std::size_t i = 0; i < reps.size(); ++i) {
          if (homologous(m, reps[i])) {
            ++matched;
            ++hits[i];
          }
        }
        c.expect(matched == 1, "a brute-force class matched " + std::to_string(matched) + " mesh classes");
      }
      for (int h : hits) c.expect(h == 1, "a mesh class was not hit exactly once");
    }
    for (int n = 1; n <= 7; ++n) {
      for (bool inv : {false, true}) {
        c.equal(direct_orbit_count(n, inv), count_2reductive(n, inv),
                std::string("direct vs counting n=") + std::to_string(n) + (inv ? " involutory" : ""));
      }
    }
  });

  run(6, "round trip on generated meshes", [](Criterion& c) {
    oracle::Rng rng(2024);
    std::vector<AffineMesh> pool;
    // images of every non-2-reductive class up to order 10
    for (int n = 3; n <= 10; ++n) {
      for (const auto& k : enumerate_non2reductive(n)) {
        for (int t = 0; t < 3; ++t) pool.push_back(apply_homology(k.mesh, oracle::random_homology(rng, k.mesh)));
      }
    }
    while (pool.size() < 1200) {
      int n = oracle::uniform(rng, 1, 10);
      pool.push_back(oracle::random_constant_mesh(rng, oracle::random_fibres(rng, n), true));
    }
    int checked = 0;
    for (const auto& m : pool) {
      c.expect(validate_mesh(m).ok() && is_indecomposable(m), "generator produced an unusable mesh");
      MeshSum s = sum(m);
      c.expect(oracle::is_quandle(s.quandle), "sum is not a quandle");
      c.expect(oracle::is_medial(s.quandle), "sum is not medial");
      // orbits are exactly the fibres
      auto orbits = oracle::orbits(s.quandle);
      bool fibres = orbits.size() == m.size();
      for (std::size_t i = 0; fibres && i < m.size(); ++i) {
        fibres = orbits[i].front() == s.offsets[i] && static_cast<int>(orbits[i].size()) == m.groups[i].order();
      }
      c.expect(fibres, "orbits differ from fibres");
      CanonicalMesh back = canonical_mesh(shuffled(rng, s.quandle));
      c.expect(homologous(m, back.mesh).has_value(), "round trip lost the class");
      ++checked;
    }
    c.expect(checked >= 1000, "fewer than 1000 meshes");
  });

  run(7, "homology decides isomorphism up to order 7", [](Criterion& c) {
    oracle::Rng rng(7);
    std::vector<AffineMesh> pool;
    for (int n = 1; n <= 7; ++n) {
      for (const auto& m : representatives(n)) {
        pool.push_back(m);
        pool.push_back(apply_homology(m, oracle::random_homology(rng, m)));
      }
    }
    std::vector<Quandle> sums;
    for (const auto& m : pool) sums.push_back(sum(m).quandle);
    long long disagreements = 0, positives = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = 0; j < pool.size(); ++j) {
        bool h = homologous(pool[i], pool[j]).has_value();
        bool b = brute_force_iso(sums[i], sums[j]).has_value();
        disagreements += h != b;
        positives += h;
      }
    }
    c.equal(disagreements, 0, "disagreements");
    c.expect(positives >= static_cast<long long>(2 * pool.size()), "too few isomorphic pairs");
  });

  run(8, "structure theorems on enumerated meshes", [](Criterion& c) {
    for (int n = 1; n <= 10; ++n) {
      std::vector<AffineMesh> meshes;
      if (n <= 8) {
        meshes = representatives(n);
      } else {
        for (auto& k : enumerate_non2reductive(n)) meshes.push_back(k.mesh);
      }
      std::string at = " n=" + std::to_string(n);
      for (const auto& m : meshes) {
        Quandle q = sum(m).quandle;
        auto orbits = oracle::orbits(q);
        // |Im phi_ii^2| divides the gcd of the fibre orders
        int g = 0;
        for (const auto& a : m.groups) g = std::gcd(g, a.order());
        for (std::size_t i = 0; i < m.size(); ++i) {
          int image = (m.phi[i][i] * m.phi[i][i]).image_size();
          c.expect(g % image == 0, "image of a squared diagonal does not divide the gcd" + at);
        }
        c.expect(gcd_check(m), "gcd_check rejected an enumerated mesh" + at);

        int degree = oracle::reductivity(q, n + 3);  // 0: not reductive
        // coprime orbit sizes force 3-reductivity
        int og = 0;
        for (const auto& o : orbits) og = std::gcd(og, static_cast<int>(o.size()));
        if (og == 1) c.expect(degree >= 1 && degree <= 3, "coprime orbits but not 3-reductive" + at);
        // every orbit coprime to some other orbit forces 2-reductivity
        bool each_coprime = true;
        for (const auto& a : orbits) {
          bool found = false;
          for (const auto& b : orbits) found = found || std::gcd(a.size(), b.size()) == 1;
          each_coprime = each_coprime && found;
        }
        if (each_coprime) c.expect(degree >= 1 && degree <= 2, "pairwise coprime orbits but not 2-reductive" + at);

        // m-reductive iff every orbit is (m-1)-reductive
        bool all_orbits = true;
        int worst = 0, best = -1;
        for (const auto& o : orbits) {
          int r = o.size() == 1 ? 0 : oracle::reductivity(q.restrict_to(o), static_cast<int>(o.size()));
          if (o.size() > 1 && r == 0) {
            all_orbits = false;
          } else {
            worst = std::max(worst, r);
            best = best < 0 ? r : std::min(best, r);
          }
        }
        int expected = all_orbits ? worst + 1 : 0;
        c.equal(degree, expected, "table reductivity vs orbit reductivity" + at);
        c.equal(reductivity_degree(m).value_or(0), degree, "mesh reductivity vs table" + at);
        c.equal(reductivity_degree(q).value_or(0), degree, "library table reductivity" + at);
        if (best >= 0) c.expect(degree >= 1 && degree <= best + 3, "one reductive orbit but degree above m+3" + at);

        // n-symmetry on the table vs the mesh criterion
        if (n <= 8) {
          for (int k = 1; k <= 12; ++k) {
            bool table = true;
            for (int a = 0; a < q.size() && table; ++a) {
              for (int b = 0; b < q.size() && table; ++b) {
                int v = b;
                for (int r = 0; r < k; ++r) v = q(a, v);
                table = v == b;
              }
            }
            c.expect(table == symmetry_check(m, k), "symmetry mismatch" + at);
            c.expect(table == (k % symmetry_order(q) == 0), "symmetry order mismatch" + at);
          }
        }
      }
    }
    // product decomposition whenever every orbit is latin
    for (int n = 1; n <= 10; ++n) {
      BigCount seen = 0;
      for (const auto& k : enumerate_non2reductive(n)) {
        Quandle q = sum(k.mesh).quandle;
        bool latin_orbits = true;
        for (const auto& o : oracle::orbits(q)) latin_orbits = latin_orbits && is_latin(q.restrict_to(o));
        c.expect(latin_orbits == k.latin_orbits, "latin-orbit flag mismatch");
        if (!latin_orbits) continue;
        ++seen;
        ClassificationReport r = classify(q, 0);
        c.expect(r.product.has_value(), "no product decomposition reported");
        if (!r.product) continue;
        Quandle l = Quandle::affine(r.product->group, r.product->translation);
        Quandle lp = Quandle::direct_product(l, Quandle::projection(r.product->projection_size));
        c.expect(is_latin(l), "factor is not latin");
        c.expect(oracle::is_isomorphism(q, lp, r.product->iso), "reported map is not an isomorphism");
        c.expect(brute_force_iso(q, lp).has_value(), "product not isomorphic by brute force");
      }
      c.equal(seen, count_all_orbits_latin(n), "latin-orbit classes n=" + std::to_string(n));
    }
  });

  run(9, "simple and subdirectly irreducible families", [](Criterion& c) {
    c.expect(is_simple(simple_affine(2, 2, {1, 1, 1})), "x^2+x+1 over F_2 not simple");
    for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
      auto fam = si_involutory(1, p, k);
      c.expect(is_subdirectly_irreducible(fam, 16), "family 1 p=" + std::to_string(p) + " k=" + std::to_string(k));
      c.expect(is_involutory(si_involutory_mesh(1, p, k)), "family 1 not involutory");
    }
    for (int family : {2, 3}) {
      for (int k = 1; k <= 3; ++k) {
        Quandle q = si_involutory(family, 2, k);
        std::string at = "family " + std::to_string(family) + " k=" + std::to_string(k);
        c.expect(oracle::is_quandle(q) && oracle::is_medial(q), at + " is not a medial quandle");
        c.expect(is_subdirectly_irreducible(q, 16), at + " is not subdirectly irreducible");
      }
    }
    for (int q : {2, 3, 4, 5, 7, 8}) {
      for (int m = 2; m <= 4; ++m) {
        // distinct constants c_2 < ... < c_m generating Z_q
        std::vector<int> pick(m - 1);
        std::function<void(int, int)> go = [&](int slot, int from) {
          if (slot == m - 1) {
            int g = q;
            for (int x : pick) g = std::gcd(g, x);
            if (g != 1) return;
            Quandle s = si_2reductive(q, pick);
            std::string at = "2-reductive q=" + std::to_string(q) + " m=" + std::to_string(m);
            c.expect(oracle::reductivity(s, 2) >= 1, at + " is not 2-reductive");
            c.expect(is_subdirectly_irreducible(s, 16), at + " is not subdirectly irreducible");
            return;
          }
          for (int x = from; x < q; ++x) {
            pick[slot] = x;
            go(slot + 1, x + 1);
          }
        };
        go(0, 0);
      }
    }
  });

  run(10, "zero-diagonal matrix count", [](Criterion& c) {
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
      // count zero-diagonal matrices with nonzero columns, and separately the
      // ones giving indecomposable meshes over Z_p fibres
      int cells = m * (m - 1);
      long long total = 1;
      for (int i = 0; i < cells; ++i) total *= p;
      long long nonzero = 0, indecomposable = 0;
      std::vector<AbelianGroup> groups(m, AbelianGroup::cyclic(p));
      for (long long code = 0; code < total; ++code) {
        std::vector<std::vector<int>> mat(m, std::vector<int>(m, 0));
        long long rest = code;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            if (i != j) {
              mat[i][j] = static_cast<int>(rest % p);
              rest /= p;
            }
        bool ok = true;
        for (int j = 0; j < m; ++j) {
          bool any = false;
          for (int i = 0; i < m; ++i) any = any || mat[i][j] != 0;
          ok = ok && any;
        }
        nonzero += ok;
        indecomposable += is_indecomposable(constant_mesh(groups, mat));
      }
      long long formula = 1;
      long long base = 1;
      for (int i = 0; i < m - 1; ++i) base *= p;
      for (int i = 0; i < m; ++i) formula *= base - 1;
      std::string at = " p=" + std::to_string(p) + " m=" + std::to_string(m);
      c.equal(nonzero, formula, "brute force vs formula" + at);
      c.equal(indecomposable, formula, "indecomposable meshes" + at);
      c.equal(matrix_count_check(p, m), formula, "matrix_count_check" + at);
    }
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
