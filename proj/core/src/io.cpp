#include "qmw/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qmw/errors.hpp"

namespace qmw {

namespace {

using Json = nlohmann::json;

struct Token {
  std::string text;
  int line;
  int column;
};

std::vector<std::vector<Token>> tokenize_lines(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[pos]))) {
        ++pos;
        continue;
      }
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      tokens.push_back({line.substr(pos, end - pos), number, static_cast<int>(pos) + 1});
      pos = end;
    }
    lines.push_back(std::move(tokens));
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

int to_int(const Token& t) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(t.text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.text.size() || t.text.empty()) {
    throw ParseError("expected an integer, found '" + t.text + "'", t.line, t.column);
  }
  return value;
}

}  // namespace

Quandle parse_quandle(const std::string& text) {
  auto lines = tokenize_lines(text);
  if (lines.empty() || lines[0].empty()) throw ParseError("missing size line", 1, 1);
  if (lines[0].size() != 1) {
    throw ParseError("size line must hold a single integer", 1, lines[0][1].column);
  }
  int n = to_int(lines[0][0]);
  if (n < 1) throw ParseError("size must be positive", 1, lines[0][0].column);
  if (static_cast<int>(lines.size()) != n + 1) {
    int line = static_cast<int>(lines.size()) + (static_cast<int>(lines.size()) < n + 1 ? 1 : 0);
    throw ParseError("expected " + std::to_string(n) + " table rows, found " +
                         std::to_string(lines.size() - 1),
                     std::min(line, n + 2), 1);
  }
  std::vector<int> table;
  for (int a = 0; a < n; ++a) {
    const auto& row = lines[a + 1];
    if (static_cast<int>(row.size()) != n) {
      throw ParseError("row " + std::to_string(a) + " must have " + std::to_string(n) +
                           " entries, found " + std::to_string(row.size()),
                       a + 2, row.empty() ? 1 : row.back().column);
    }
    for (const auto& t : row) {
      int v = to_int(t);
      if (v < 0 || v >= n) {
        throw ParseError("entry " + t.text + " out of range 0.." + std::to_string(n - 1), t.line,
                         t.column);
      }
      table.push_back(v);
    }
  }
  return Quandle(n, std::move(table));
}

std::string print_quandle(const Quandle& q) {
  std::ostringstream out;
  out << q.size() << "\n";
  for (int a = 0; a < q.size(); ++a) {
    for (int b = 0; b < q.size(); ++b) out << (b ? " " : "") << q(a, b);
    out << "\n";
  }
  return out.str();
}

namespace {

[[noreturn]] void structure_error(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what, 0, 0);
}

const Json& field(const Json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) structure_error("$", std::string("missing field \"") + name + "\"");
  return *it;
}

const Json& as_array(const Json& v, const std::string& path, std::size_t expected_size) {
  if (!v.is_array()) structure_error(path, "expected an array");
  if (expected_size != static_cast<std::size_t>(-1) && v.size() != expected_size) {
    structure_error(path, "expected " + std::to_string(expected_size) + " entries, found " +
                              std::to_string(v.size()));
  }
  return v;
}

constexpr std::size_t kAnySize = static_cast<std::size_t>(-1);

GroupElement parse_element(const Json& v, const AbelianGroup& g, const std::string& path) {
  as_array(v, path, g.rank());
  GroupElement x;
  for (std::size_t t = 0; t < g.rank(); ++t) {
    if (!v[t].is_number_integer()) structure_error(path, "coordinates must be integers");
    int value = v[t].get<int>();
    if (value < 0 || value >= g.factors()[t]) {
      structure_error(path, "coordinate " + std::to_string(value) + " out of range for Z" +
                                std::to_string(g.factors()[t]));
    }
    x.coords.push_back(value);
  }
  return x;
}

std::string print_element(const AbelianGroup& g, int x) {
  std::string s = "[";
  for (std::size_t t = 0; t < g.rank(); ++t) {
    if (t) s += ", ";
    s += std::to_string(g.coord(x, t));
  }
  return s + "]";
}

std::string print_hom(const Homomorphism& h) {
  std::string s = "[";
  const auto& images = h.image_indices();
  for (std::size_t t = 0; t < images.size(); ++t) {
    if (t) s += ", ";
    s += print_element(h.codomain(), images[t]);
  }
  return s + "]";
}

}  // namespace

AffineMesh parse_mesh(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1, column = 1;
    std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed mesh JSON", line, column);
  }
  if (!root.is_object()) structure_error("$", "expected an object");
  const Json& groups = as_array(field(root, "groups"), "$.groups", kAnySize);
  std::size_t k = groups.size();
  if (k == 0) structure_error("$.groups", "at least one fibre is required");
  AffineMesh m;
  for (std::size_t i = 0; i < k; ++i) {
    std::string path = "$.groups[" + std::to_string(i) + "]";
    as_array(groups[i], path, kAnySize);
    std::vector<int> factors;
    for (const auto& f : groups[i]) {
      if (!f.is_number_integer()) structure_error(path, "factors must be integers");
      factors.push_back(f.get<int>());
    }
    try {
      m.groups.emplace_back(factors);
    } catch (const Error& e) {
      structure_error(path, e.what());
    }
  }
  const Json& phi = as_array(field(root, "phi"), "$.phi", k);
  const Json& c = as_array(field(root, "c"), "$.c", k);
  m.phi.resize(k);
  m.c.assign(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    as_array(phi[i], "$.phi[" + std::to_string(i) + "]", k);
    as_array(c[i], "$.c[" + std::to_string(i) + "]", k);
    for (std::size_t j = 0; j < k; ++j) {
      std::string path = "$.phi[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      const Json& h = as_array(phi[i][j], path, m.groups[i].rank());
      std::vector<GroupElement> images;
      for (std::size_t t = 0; t < h.size(); ++t) {
        images.push_back(parse_element(h[t], m.groups[j], path + "[" + std::to_string(t) + "]"));
      }
      try {
        m.phi[i].emplace_back(m.groups[i], m.groups[j], std::move(images));
      } catch (const Error& e) {
        structure_error(path, e.what());
      }
      std::string cpath = "$.c[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      m.c[i][j] = m.groups[j].index(parse_element(c[i][j], m.groups[j], cpath));
    }
  }
  return m;
}

std::string print_mesh(const AffineMesh& m) {
  std::ostringstream out;
  std::size_t k = m.size();
  out << "{\n  \"groups\": [";
  for (std::size_t i = 0; i < k; ++i) {
    out << (i ? ", " : "") << "[";
    const auto& f = m.groups[i].factors();
    for (std::size_t t = 0; t < f.size(); ++t) out << (t ? ", " : "") << f[t];
    out << "]";
  }
  out << "],\n  \"phi\": [\n";
  for (std::size_t i = 0; i < k; ++i) {
    out << "    [";
    for (std::size_t j = 0; j < k; ++j) out << (j ? ", " : "") << print_hom(m.phi[i][j]);
    out << "]" << (i + 1 < k ? "," : "") << "\n";
  }
  out << "  ],\n  \"c\": [\n";
  for (std::size_t i = 0; i < k; ++i) {
    out << "    [";
    for (std::size_t j = 0; j < k; ++j) out << (j ? ", " : "") << print_element(m.groups[j], m.c[i][j]);
    out << "]" << (i + 1 < k ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

std::string print_witness(const AffineMesh& target, const HomologyWitness& w) {
  std::ostringstream out;
  out << "{\n  \"pi\": [";
  for (std::size_t i = 0; i < w.pi.size(); ++i) out << (i ? ", " : "") << w.pi[i];
  out << "],\n  \"psi\": [";
  for (std::size_t i = 0; i < w.psi.size(); ++i) out << (i ? ", " : "") << print_hom(w.psi[i]);
  out << "],\n  \"d\": [";
  for (std::size_t i = 0; i < w.d.size(); ++i) {
    out << (i ? ", " : "") << print_element(target.groups[w.pi[i]], w.d[i]);
  }
  out << "]\n}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace qmw
