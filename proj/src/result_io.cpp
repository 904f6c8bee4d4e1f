#include "csf/result_io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace csf {

using nlohmann::json;

std::string emit_result_json(const ResultRecord& r) {
  const std::size_t n = r.placement.size();
  if (n == 0) throw std::invalid_argument("emit_result: empty placement");
  if (r.module_names.size() != n || r.widths.size() != n || r.heights.size() != n)
    throw std::invalid_argument("emit_result: module name/coordinate mismatch");

  json modules = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    modules.push_back({{"name", r.module_names[i]},
                       {"x", r.placement.x[i]},
                       {"y", r.placement.y[i]},
                       {"w", r.widths[i]},
                       {"h", r.heights[i]},
                       {"rotated", r.placement.rotated[i] != 0}});
  }
  json j = {
      {"schema", "csf-result-v1"},
      {"instance", r.instance},
      {"seed", r.seed},
      {"mode", r.mode},
      {"legalizer", r.legalizer},
      {"kernel", r.kernel},
      {"outline",
       {{"width", r.outline.width},
        {"height", r.outline.height},
        {"gamma", r.outline.gamma},
        {"aspect", r.outline.aspect},
        {"generated", r.outline.generated}}},
      {"legal", r.legal},
      {"hpwl", r.hpwl},
      {"hpwl_before_compress", r.hpwl_before_compress},
      {"t_g", r.t_g},
      {"t_l", r.t_l},
      {"t_w", r.t_w},
      {"restarts", r.restarts},
      {"modules", std::move(modules)},
  };
  return j.dump(2) + "\n";
}

ResultRecord read_result_json(const std::string& text) {
  const json j = json::parse(text);
  ResultRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.mode = j.at("mode").get<std::string>();
  r.legalizer = j.at("legalizer").get<std::string>();
  r.kernel = j.value("kernel", "");
  const json& o = j.at("outline");
  r.outline.width = o.at("width").get<double>();
  r.outline.height = o.at("height").get<double>();
  r.outline.gamma = o.value("gamma", 0.0);
  r.outline.aspect = o.value("aspect", 1.0);
  r.outline.generated = o.value("generated", false);
  r.legal = j.at("legal").get<bool>();
  r.hpwl = j.at("hpwl").get<double>();
  r.hpwl_before_compress = j.value("hpwl_before_compress", 0.0);
  r.t_g = j.value("t_g", 0.0);
  r.t_l = j.value("t_l", 0.0);
  r.t_w = j.value("t_w", 0.0);
  r.restarts = j.value("restarts", 0);
  for (const json& m : j.at("modules")) {
    r.module_names.push_back(m.at("name").get<std::string>());
    r.placement.x.push_back(m.at("x").get<double>());
    r.placement.y.push_back(m.at("y").get<double>());
    r.widths.push_back(m.value("w", 0.0));
    r.heights.push_back(m.value("h", 0.0));
    r.placement.rotated.push_back(m.at("rotated").get<bool>() ? 1 : 0);
  }
  return r;
}

std::string emit_result_svg(const ResultRecord& r) {
  const std::size_t n = r.placement.size();
  if (n == 0) throw std::invalid_argument("emit_result: empty placement");

  const double W = r.outline.width, H = r.outline.height;
  const double margin = 0.03 * std::max(W, H);
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -margin << " " << -margin
      << " " << W + 2 * margin << " " << H + 2 * margin << "\" width=\"900\" height=\""
      << 900.0 * (H + 2 * margin) / (W + 2 * margin) << "\">\n";
  // Flip y so the origin sits at the lower-left like the coordinate model.
  svg << "<g transform=\"translate(0," << H << ") scale(1,-1)\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << 0.004 * std::max(W, H)
      << "\"/>\n";
  for (std::size_t i = 0; i < n; ++i) {
    const bool rot = r.placement.rotated[i] != 0;
    const double w = rot ? r.heights[i] : r.widths[i];
    const double h = rot ? r.widths[i] : r.heights[i];
    const double llx = r.placement.x[i] - w / 2.0;
    const double lly = r.placement.y[i] - h / 2.0;
    svg << "<rect x=\"" << llx << "\" y=\"" << lly << "\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"#9ecae1\" fill-opacity=\"0.8\" stroke=\"#3182bd\" stroke-width=\""
        << 0.0015 * std::max(W, H) << "\"/>\n";
    svg << "<text x=\"" << r.placement.x[i] << "\" y=\"" << -r.placement.y[i]
        << "\" transform=\"scale(1,-1)\" font-size=\"" << std::max(0.6 * std::min(w, h), 0.008 * W)
        << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << r.module_names[i]
        << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

AggregateStats aggregate(const std::vector<RunStats>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");
  AggregateStats a;
  a.runs = static_cast<int>(records.size());
  double hs = 0.0;
  double mn = 0.0;
  for (const RunStats& r : records) {
    a.mean_t_g += r.t_g;
    a.mean_t_l += r.t_l;
    a.mean_t_w += r.t_w;
    if (r.legal) {
      ++a.successes;
      hs += r.hpwl;
      mn = (a.successes == 1) ? r.hpwl : std::min(mn, r.hpwl);
    }
  }
  a.mean_t_g /= a.runs;
  a.mean_t_l /= a.runs;
  a.mean_t_w /= a.runs;
  a.sr_percent = 100.0 * a.successes / a.runs;
  if (a.successes > 0) {
    const double mean = hs / a.successes;
    a.hpwl_mean = mean;
    a.hpwl_min = mn;
    double ss = 0.0;
    for (const RunStats& r : records) {
      if (r.legal) ss += (r.hpwl - mean) * (r.hpwl - mean);
    }
    a.hpwl_sd = a.successes > 1 ? std::sqrt(ss / (a.successes - 1)) : 0.0;
  }
  return a;
}

std::string aggregate_json(const AggregateStats& a, const std::string& instance,
                           const std::string& mode, const std::string& legalizer) {
  json j = {
      {"schema", "csf-aggregate-v1"},
      {"instance", instance},
      {"mode", mode},
      {"legalizer", legalizer},
      {"runs", a.runs},
      {"successes", a.successes},
      {"sr_percent", a.sr_percent},
      {"mean_t_g", a.mean_t_g},
      {"mean_t_l", a.mean_t_l},
      {"mean_t_w", a.mean_t_w},
  };
  if (a.hpwl_mean) {
    j["hpwl_mean"] = *a.hpwl_mean;
    j["hpwl_min"] = *a.hpwl_min;
    j["hpwl_sd"] = *a.hpwl_sd;
  }
  return j.dump(2) + "\n";
}

} // namespace csf
