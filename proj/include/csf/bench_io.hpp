#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "csf/geometry.hpp"

namespace csf {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_ = 0;
};

struct BenchmarkBundle {
  std::string name;
  std::string blocks_path, nets_path, pl_path;
};

struct ParsedBlocks {
  std::vector<ModuleSpec> modules;
  std::vector<std::string> terminal_names;
  std::vector<std::string> warnings;
};

// GSRC bookshelf .blocks: header counts, hard blocks as 4-vertex rectilinear
// outlines, terminal name list. Soft blocks are not supported.
ParsedBlocks parse_blocks(std::istream& in);

struct ParsedNets {
  std::vector<Net> nets;
  std::vector<std::string> warnings;
};

// GSRC bookshelf .nets: NetDegree records referencing known block/terminal
// names. Pin offsets after the name are ignored (center-pin model).
ParsedNets parse_nets(std::istream& in, const std::vector<ModuleSpec>& modules,
                      const std::vector<std::string>& terminal_names);

struct ParsedPl {
  std::vector<Terminal> terminals; // same order as the declared names
  std::vector<std::string> warnings;
};

// GSRC bookshelf .pl: fixed terminal coordinates. Module placements in the
// file are ignored (initial positions come from LHS). Every declared terminal
// must appear; duplicates keep the last occurrence with a warning.
ParsedPl parse_pl(std::istream& in, const std::vector<std::string>& terminal_names);

// Parses and cross-links the three files into a finalized Netlist.
Netlist load_bundle(const BenchmarkBundle& bundle, std::vector<std::string>* warnings = nullptr);

} // namespace csf
