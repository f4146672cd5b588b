#pragma once

#include <string>

#include "qmw/mesh.hpp"
#include "qmw/quandle.hpp"

namespace qmw {

/// Text format: first line n, then n lines of n integers; line a lists
/// a*0 ... a*(n-1).  Throws ParseError with line and column on bad input.
Quandle parse_quandle(const std::string& text);
std::string print_quandle(const Quandle& q);

/// JSON object with "groups", "phi" and "c".  Throws ParseError.
AffineMesh parse_mesh(const std::string& text);
/// Deterministic layout, one matrix row per line; parse_mesh inverts it.
std::string print_mesh(const AffineMesh& m);

std::string print_witness(const AffineMesh& target, const HomologyWitness& w);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qmw
