#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qmw/classify.hpp"
#include "qmw/enumerate.hpp"
#include "qmw/errors.hpp"
#include "qmw/io.hpp"

namespace qmw::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A domain failure that has already been explained on stdout/stderr.
struct DomainFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int workers_from_env() {
  const char* text = std::getenv("QMW_WORKERS");
  if (text == nullptr || *text == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(text, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw UsageError("QMW_WORKERS must be a positive integer");
  return static_cast<int>(v);
}

bool looks_like_mesh(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{';
  }
  return false;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    if (!content.empty() && content.back() != '\n') out << '\n';
  } else {
    write_file(path, content);
  }
}

Quandle load_quandle_checked(const std::string& path, std::ostream& err) {
  Quandle q = parse_quandle(read_file(path));
  AxiomReport report = validate(q);
  if (!report.ok()) {
    err << path << ": not a quandle\n" << report.describe();
    throw DomainFailure("not a quandle");
  }
  return q;
}

AffineMesh load_mesh_checked(const std::string& path, std::ostream& err) {
  AffineMesh m = parse_mesh(read_file(path));
  MeshReport report = validate_mesh(m);
  if (!report.ok()) {
    err << path << ": invalid mesh: " << report.first_violation << '\n';
    throw DomainFailure("invalid mesh");
  }
  return m;
}

// Either file kind; a mesh also carries its sum.
struct Loaded {
  Quandle quandle;
  std::optional<AffineMesh> mesh;
};

Loaded load_any(const std::string& path, std::ostream& err) {
  std::string text = read_file(path);
  if (looks_like_mesh(text)) {
    AffineMesh m = load_mesh_checked(path, err);
    Quandle q = sum(m).quandle;
    if (!is_indecomposable(m)) return Loaded{std::move(q), std::nullopt};
    return Loaded{std::move(q), std::move(m)};
  }
  return Loaded{load_quandle_checked(path, err), std::nullopt};
}

std::string join(const std::vector<int>& v) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ']';
  return s.str();
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  Quandle q = parse_quandle(read_file(path));
  AxiomReport report = validate(q);
  if (!report.ok()) {
    out << "quandle: no\n";
    err << report.describe();
    return kExitDomain;
  }
  bool medial = is_medial(q);
  auto degree = reductivity_degree(q, 2);
  out << "quandle: yes, medial: " << (medial ? "yes" : "no") << ", 2-reductive: " << (degree ? "yes" : "no")
      << '\n';
  return kExitOk;
}

int cmd_decompose(const std::string& path, const std::string& output, std::ostream& out, std::ostream& err) {
  Quandle q = load_quandle_checked(path, err);
  if (!is_medial(q)) {
    err << path << ": not medial\n";
    return kExitDomain;
  }
  emit(output, print_mesh(canonical_mesh(q).mesh), out);
  return kExitOk;
}

int cmd_sum(const std::string& path, const std::string& output, std::ostream& out, std::ostream& err) {
  AffineMesh m = load_mesh_checked(path, err);
  emit(output, print_quandle(sum(m).quandle), out);
  return kExitOk;
}

int cmd_iso(const std::string& first, const std::string& second, std::ostream& out, std::ostream& err) {
  Loaded a = load_any(first, err);
  Loaded b = load_any(second, err);
  if (a.quandle.size() != b.quandle.size()) {
    out << "non-isomorphic\n";
    return kExitOk;
  }
  if (a.mesh && b.mesh) {
    auto w = homologous(*a.mesh, *b.mesh);
    out << (w ? "isomorphic\n" : "non-isomorphic\n") << "path: mesh-homology\n";
    if (w) out << "witness: " << print_witness(*b.mesh, *w);
    return kExitOk;
  }
  if (is_medial(a.quandle) && is_medial(b.quandle)) {
    CanonicalMesh ca = canonical_mesh(a.quandle);
    CanonicalMesh cb = canonical_mesh(b.quandle);
    auto w = homologous(ca.mesh, cb.mesh);
    out << (w ? "isomorphic\n" : "non-isomorphic\n") << "path: mesh-homology\n";
    if (w) {
      out << "witness: " << print_witness(cb.mesh, *w);
      std::vector<int> through_sum = witness_to_iso(ca.mesh, cb.mesh, *w);
      std::vector<int> map(a.quandle.size());
      for (std::size_t s = 0; s < through_sum.size(); ++s) {
        map[ca.sum_to_quandle[s]] = cb.sum_to_quandle[through_sum[s]];
      }
      out << "map: " << join(map) << '\n';
    }
    return kExitOk;
  }
  auto map = brute_force_iso(a.quandle, b.quandle);
  out << (map ? "isomorphic\n" : "non-isomorphic\n") << "path: brute-force\n";
  if (map) out << "map: " << join(*map) << '\n';
  return kExitOk;
}

int cmd_classify(const std::string& path, int congruence_cap, std::ostream& out, std::ostream& err) {
  Loaded in = load_any(path, err);
  out << classify(in.quandle, congruence_cap).to_json() << '\n';
  return kExitOk;
}

int cmd_enumerate(int n, int workers, int non2red_cap, int list_cap, bool involutory_only,
                  const std::string& output_dir, std::ostream& out) {
  TableOptions options;
  options.workers = workers;
  options.non2reductive_cap = non2red_cap;
  CountRow row = count_row(n, options);
  out << csv_header() << '\n' << to_csv(row) << '\n';
  if (output_dir.empty()) return kExitOk;

  std::filesystem::create_directories(output_dir);
  auto write_all = [&](const std::string& prefix, const std::vector<AffineMesh>& meshes) {
    for (std::size_t i = 0; i < meshes.size(); ++i) {
      std::ostringstream name;
      name << prefix << '_' << n << '_' << i << ".json";
      write_file((std::filesystem::path(output_dir) / name.str()).string(), print_mesh(meshes[i]));
    }
  };
  if (n <= non2red_cap) {
    Non2ReductiveOptions opts;
    opts.workers = workers;
    opts.cap = non2red_cap;
    opts.involutory = involutory_only;
    std::vector<AffineMesh> meshes;
    for (auto& c : enumerate_non2reductive(n, opts)) meshes.push_back(std::move(c.mesh));
    write_all("non2red", meshes);
  }
  if (n <= list_cap) write_all("2red", direct_orbit_representatives(n, involutory_only, list_cap));
  return kExitOk;
}

int cmd_tables(int n_max, int non2red_cap, std::ostream& out) {
  TableOptions options;
  options.non2reductive_cap = non2red_cap;
  out << csv_header() << '\n';
  for (const auto& row : assemble_tables(n_max, options)) out << to_csv(row) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite medial quandles via affine meshes", "qmw"};
  app.require_subcommand(1, 1);

  std::string input, second, output, output_dir;
  int n = 0, n_max = 0, workers = 0, non2red_cap = 13, list_cap = kDirectOrbitCap;
  int congruence_cap = kDefaultCongruenceCap;
  bool involutory = false;

  auto* verify = app.add_subcommand("verify", "Check the quandle axioms, mediality and 2-reductivity");
  verify->add_option("quandle", input, "Quandle table file")->required();

  auto* decompose = app.add_subcommand("decompose", "Write the canonical mesh of a medial quandle");
  decompose->add_option("quandle", input, "Quandle table file")->required();
  decompose->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* sum_cmd = app.add_subcommand("sum", "Write the sum of a mesh as a quandle table");
  sum_cmd->add_option("mesh", input, "Mesh file")->required();
  sum_cmd->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* iso = app.add_subcommand("iso", "Decide isomorphism of two quandles or meshes");
  iso->add_option("first", input, "Quandle or mesh file")->required();
  iso->add_option("second", second, "Quandle or mesh file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Report structural properties as JSON");
  classify_cmd->add_option("input", input, "Quandle or mesh file")->required();
  classify_cmd->add_option("--congruence-cap", congruence_cap, "Largest size for congruence lattices")
      ->check(CLI::NonNegativeNumber);

  auto* enumerate = app.add_subcommand("enumerate", "Count medial quandles of size n");
  enumerate->add_option("n", n, "Size")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("-w,--workers", workers, "Worker threads (default: QMW_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  enumerate->add_option("--non2red-cap", non2red_cap, "Largest size for the non-2-reductive search")
      ->check(CLI::PositiveNumber);
  enumerate->add_option("--list-cap", list_cap, "Largest size for writing 2-reductive representatives")
      ->check(CLI::NonNegativeNumber);
  enumerate->add_flag("--involutory", involutory, "Write only involutory representatives");
  enumerate->add_option("--output-dir", output_dir, "Directory for representative mesh files");

  auto* tables = app.add_subcommand("tables", "Count medial quandles of sizes 1..n_max");
  tables->add_option("n_max", n_max, "Largest size")->required()->check(CLI::PositiveNumber);
  tables->add_option("--non2red-cap", non2red_cap, "Largest size for the non-2-reductive search")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(input, out, err);
    if (*decompose) return cmd_decompose(input, output, out, err);
    if (*sum_cmd) return cmd_sum(input, output, out, err);
    if (*iso) return cmd_iso(input, second, out, err);
    if (*classify_cmd) return cmd_classify(input, congruence_cap, out, err);
    if (*enumerate) {
      if (workers == 0) workers = workers_from_env();
      return cmd_enumerate(n, workers, non2red_cap, list_cap, involutory, output_dir, out);
    }
    if (*tables) return cmd_tables(n_max, non2red_cap, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainFailure&) {
    return kExitDomain;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace qmw::cli
