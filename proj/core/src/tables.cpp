#include <sstream>

#include "qmw/enumerate.hpp"
#include "qmw/errors.hpp"

namespace qmw {

namespace {

std::string cell(const std::optional<BigCount>& v) { return v ? to_string(*v) : std::string(); }

BigCount power(BigCount base, int e) {
  BigCount r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

CountRow count_row(int n, const TableOptions& options) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  CountRow row;
  row.n = n;
  row.two_reductive = count_2reductive(n, false, options.workers);
  row.two_reductive_involutory = count_2reductive(n, true, options.workers);
  row.all_orbits_latin = count_all_orbits_latin(n);
  row.latin = count_latin(n);
  if (n > options.non2reductive_cap) return row;

  Non2ReductiveOptions opts;
  opts.workers = options.workers;
  opts.cap = options.non2reductive_cap;
  auto classes = enumerate_non2reductive(n, opts);
  BigCount reductive = 0, latin_orbits = 0;
  for (const auto& c : classes) {
    reductive += c.reductive ? 1 : 0;
    latin_orbits += c.latin_orbits ? 1 : 0;
  }
  if (latin_orbits != row.all_orbits_latin) {
    throw ConsistencyError("n = " + std::to_string(n) + ": enumeration found " + to_string(latin_orbits) +
                           " classes with latin orbits, closed form gives " + to_string(row.all_orbits_latin));
  }
  BigCount total = static_cast<BigCount>(classes.size());
  row.non2reductive = total;
  row.reductive_not_2reductive = reductive;
  row.nonreductive = total - reductive;
  row.medial = row.two_reductive + total;

  opts.involutory = true;
  BigCount inv = static_cast<BigCount>(enumerate_non2reductive(n, opts).size());
  row.non2reductive_involutory = inv;
  row.involutory = row.two_reductive_involutory + inv;
  return row;
}

std::vector<CountRow> assemble_tables(int n_max, const TableOptions& options) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  std::vector<CountRow> rows;
  for (int n = 1; n <= n_max; ++n) rows.push_back(count_row(n, options));
  return rows;
}

std::string csv_header() {
  return "n,medial,2reductive,involutory,2red_involutory,non2red,red_not_2red,nonred,all_latin,latin";
}

std::string to_csv(const CountRow& row) {
  std::ostringstream out;
  out << row.n << ',' << cell(row.medial) << ',' << to_string(row.two_reductive) << ',' << cell(row.involutory)
      << ',' << to_string(row.two_reductive_involutory) << ',' << cell(row.non2reductive) << ','
      << cell(row.reductive_not_2reductive) << ',' << cell(row.nonreductive) << ',' << to_string(row.all_orbits_latin)
      << ',' << to_string(row.latin);
  return out.str();
}

BigCount matrix_count_check(int p, int m) {
  if (p < 2 || m < 1) throw PreconditionError("need p >= 2 and m >= 1");
  BigCount formula = power(power(p, m - 1) - 1, m);
  int cells = m * (m - 1);
  BigCount space = power(p, cells);
  if (space > (BigCount{1} << 24)) return formula;
  // Odometer over the off-diagonal entries, stored column by column.
  std::vector<int> entry(cells, 0);
  BigCount brute = 0;
  for (BigCount step = 0; step < space; ++step) {
    bool ok = true;
    for (int col = 0; col < m && ok; ++col) {
      bool nonzero = false;
      for (int r = 0; r < m - 1; ++r) nonzero |= entry[col * (m - 1) + r] != 0;
      ok = nonzero;
    }
    if (ok) ++brute;
    for (int t = 0; t < cells; ++t) {
      if (++entry[t] < p) break;
      entry[t] = 0;
    }
  }
  if (brute != formula) {
    throw ConsistencyError("matrix count mismatch for p = " + std::to_string(p) + ", m = " + std::to_string(m) +
                           ": formula " + to_string(formula) + ", brute force " + to_string(brute));
  }
  return formula;
}

}  // namespace qmw
