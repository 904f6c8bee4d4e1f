#include "csf/bench_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace csf {
namespace {

struct LineReader {
  std::istream& in;
  int number = 0;

  // Next significant line (skips blanks, comments and format headers).
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++number;
      std::size_t b = raw.find_first_not_of(" \t\r\n");
      if (b == std::string::npos) continue;
      std::size_t e = raw.find_last_not_of(" \t\r\n");
      out = raw.substr(b, e - b + 1);
      if (out[0] == '#') continue;
      if (out.rfind("UCSC", 0) == 0 || out.rfind("UCLA", 0) == 0) continue;
      return true;
    }
    return false;
  }
};

// "Key : value" headers.
bool header_value(const std::string& line, const std::string& key, long& value) {
  if (line.rfind(key, 0) != 0) return false;
  std::size_t pos = line.find(':');
  if (pos == std::string::npos) return false;
  try {
    value = std::stol(line.substr(pos + 1));
  } catch (...) {
    return false;
  }
  return true;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

} // namespace

ParsedBlocks parse_blocks(std::istream& in) {
  ParsedBlocks out;
  LineReader rd{in};
  std::string line;
  long n_soft = -1, n_hard = -1, n_term = -1;

  while ((n_soft < 0 || n_hard < 0 || n_term < 0) && rd.next(line)) {
    long v;
    if (header_value(line, "NumSoftRectangularBlocks", v)) {
      n_soft = v;
    } else if (header_value(line, "NumHardRectilinearBlocks", v)) {
      n_hard = v;
    } else if (header_value(line, "NumTerminals", v)) {
      n_term = v;
    } else {
      throw ParseError("expected block-count header, got: " + line, rd.number);
    }
  }
  if (n_soft < 0 || n_hard < 0 || n_term < 0)
    throw ParseError("missing block-count headers", rd.number);
  if (n_soft > 0)
    throw ParseError("soft rectangular blocks are not supported (NumSoftRectangularBlocks = " +
                         std::to_string(n_soft) + ")",
                     rd.number);

  while (rd.next(line)) {
    auto toks = tokens_of(line);
    if (toks.size() >= 2 && toks[1] == "terminal") {
      out.terminal_names.push_back(toks[0]);
      continue;
    }
    if (toks.size() >= 3 && toks[1] == "hardrectilinear") {
      long nv = 0;
      try {
        nv = std::stol(toks[2]);
      } catch (...) {
        throw ParseError("bad vertex count in block record: " + line, rd.number);
      }
      if (nv != 4)
        throw ParseError("only 4-vertex rectilinear blocks are supported: " + line, rd.number);
      // Vertices come as "(x," "y)" token pairs in any corner order.
      std::string rest;
      for (std::size_t i = 3; i < toks.size(); ++i) rest += toks[i] + " ";
      for (char& c : rest) {
        if (c == '(' || c == ')' || c == ',') c = ' ';
      }
      std::istringstream vs(rest);
      double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
      double ymin = xmin, ymax = -xmin;
      int got = 0;
      double vx, vy;
      while (vs >> vx >> vy) {
        xmin = std::min(xmin, vx);
        xmax = std::max(xmax, vx);
        ymin = std::min(ymin, vy);
        ymax = std::max(ymax, vy);
        ++got;
      }
      if (got != 4) throw ParseError("expected 4 vertices in block record: " + line, rd.number);
      ModuleSpec m;
      m.id = static_cast<int>(out.modules.size());
      m.name = toks[0];
      m.width = xmax - xmin;
      m.height = ymax - ymin;
      if (!(m.width > 0.0) || !(m.height > 0.0))
        throw ParseError("degenerate block outline: " + line, rd.number);
      out.modules.push_back(std::move(m));
      continue;
    }
    throw ParseError("unrecognized record: " + line, rd.number);
  }
  if (static_cast<long>(out.modules.size()) != n_hard)
    throw ParseError("block count mismatch: header says " + std::to_string(n_hard) + ", found " +
                         std::to_string(out.modules.size()),
                     rd.number);
  if (static_cast<long>(out.terminal_names.size()) != n_term)
    throw ParseError("terminal count mismatch: header says " + std::to_string(n_term) +
                         ", found " + std::to_string(out.terminal_names.size()),
                     rd.number);
  return out;
}

ParsedNets parse_nets(std::istream& in, const std::vector<ModuleSpec>& modules,
                      const std::vector<std::string>& terminal_names) {
  ParsedNets out;
  std::unordered_map<std::string, int> mod_id, term_id;
  for (const auto& m : modules) mod_id[m.name] = m.id;
  for (std::size_t i = 0; i < terminal_names.size(); ++i)
    term_id[terminal_names[i]] = static_cast<int>(i);

  LineReader rd{in};
  std::string line;
  long n_nets = -1, n_pins = -1;
  while ((n_nets < 0 || n_pins < 0) && rd.next(line)) {
    long v;
    if (header_value(line, "NumNets", v)) {
      n_nets = v;
    } else if (header_value(line, "NumPins", v)) {
      n_pins = v;
    } else {
      throw ParseError("expected net-count header, got: " + line, rd.number);
    }
  }
  if (n_nets < 0) throw ParseError("missing NumNets header", rd.number);

  long pins_seen = 0;
  while (rd.next(line)) {
    long degree;
    if (!header_value(line, "NetDegree", degree))
      throw ParseError("expected NetDegree record, got: " + line, rd.number);
    Net net;
    for (long k = 0; k < degree; ++k) {
      if (!rd.next(line)) throw ParseError("unexpected end of file inside net", rd.number);
      auto toks = tokens_of(line);
      if (toks.empty()) throw ParseError("empty pin line", rd.number);
      const std::string& name = toks[0];
      ++pins_seen;
      if (auto it = mod_id.find(name); it != mod_id.end()) {
        if (std::find(net.module_pins.begin(), net.module_pins.end(), it->second) !=
            net.module_pins.end()) {
          // Repeated block pin on the same net is redundant under the
          // center-pin model.
          out.warnings.push_back("duplicate pin '" + name + "' in net " +
                                 std::to_string(out.nets.size()) + " ignored");
        } else {
          net.module_pins.push_back(it->second);
        }
      } else if (auto jt = term_id.find(name); jt != term_id.end()) {
        if (std::find(net.terminal_pins.begin(), net.terminal_pins.end(), jt->second) ==
            net.terminal_pins.end()) {
          net.terminal_pins.push_back(jt->second);
        }
      } else {
        throw ParseError("unknown pin name '" + name + "'", rd.number);
      }
    }
    if (net.degree() == 0) throw ParseError("net with no usable pins", rd.number);
    out.nets.push_back(std::move(net));
  }
  if (static_cast<long>(out.nets.size()) != n_nets)
    throw ParseError("net count mismatch: header says " + std::to_string(n_nets) + ", found " +
                         std::to_string(out.nets.size()),
                     rd.number);
  if (n_pins >= 0 && pins_seen != n_pins)
    out.warnings.push_back("pin count mismatch: header says " + std::to_string(n_pins) +
                           ", found " + std::to_string(pins_seen));
  return out;
}

ParsedPl parse_pl(std::istream& in, const std::vector<std::string>& terminal_names) {
  ParsedPl out;
  std::unordered_map<std::string, int> term_id;
  for (std::size_t i = 0; i < terminal_names.size(); ++i)
    term_id[terminal_names[i]] = static_cast<int>(i);

  out.terminals.resize(terminal_names.size());
  std::vector<char> seen(terminal_names.size(), 0);

  LineReader rd{in};
  std::string line;
  while (rd.next(line)) {
    auto toks = tokens_of(line);
    if (toks.size() < 3) throw ParseError("malformed placement line: " + line, rd.number);
    auto it = term_id.find(toks[0]);
    if (it == term_id.end()) continue; // module placements are ignored
    double x, y;
    try {
      x = std::stod(toks[1]);
      y = std::stod(toks[2]);
    } catch (...) {
      throw ParseError("bad coordinates for terminal '" + toks[0] + "'", rd.number);
    }
    if (seen[it->second]) {
      out.warnings.push_back("duplicate coordinates for terminal '" + toks[0] +
                             "'; keeping the last occurrence");
    }
    seen[it->second] = 1;
    out.terminals[it->second] = Terminal{toks[0], x, y};
  }
  std::string missing;
  for (std::size_t i = 0; i < terminal_names.size(); ++i) {
    if (!seen[i]) missing += (missing.empty() ? "" : ", ") + terminal_names[i];
  }
  if (!missing.empty())
    throw ParseError("terminals missing coordinates: " + missing, rd.number);
  return out;
}

Netlist load_bundle(const BenchmarkBundle& bundle, std::vector<std::string>* warnings) {
  auto open = [](const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return f;
  };

  std::ifstream bf = open(bundle.blocks_path);
  ParsedBlocks blocks = parse_blocks(bf);
  std::ifstream nf = open(bundle.nets_path);
  ParsedNets nets = parse_nets(nf, blocks.modules, blocks.terminal_names);
  std::ifstream pf = open(bundle.pl_path);
  ParsedPl pl = parse_pl(pf, blocks.terminal_names);

  if (warnings) {
    warnings->insert(warnings->end(), blocks.warnings.begin(), blocks.warnings.end());
    warnings->insert(warnings->end(), nets.warnings.begin(), nets.warnings.end());
    warnings->insert(warnings->end(), pl.warnings.begin(), pl.warnings.end());
  }

  Netlist nl;
  nl.name = bundle.name;
  nl.modules = std::move(blocks.modules);
  nl.terminals = std::move(pl.terminals);
  nl.nets = std::move(nets.nets);
  nl.finalize();
  return nl;
}

} // namespace csf
