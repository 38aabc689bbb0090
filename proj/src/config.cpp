#include "csm/config.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace csm {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

template <typename T>
T parse_number(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(key, "expected a number, got '" + raw + "'");
  }
  return value;
}

// Typed accessors over one section that remember which keys were consumed.
class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    if (tree_ == nullptr) return std::nullopt;
    auto child = tree_->get_child_optional(key);
    if (!child) return std::nullopt;
    return child->data();
  }

  template <typename T>
  void read(const std::string& key, T& target) {
    if (auto v = raw(key)) target = parse_number<T>(*v, qualified(key));
  }

  void read_string(const std::string& key, std::string& target) {
    if (auto v = raw(key)) target = trim(*v);
  }

  std::string qualified(const std::string& key) const { return name_ + "." + key; }

  void reject_unknown() const {
    if (tree_ == nullptr) return;
    for (const auto& [key, child] : *tree_) {
      if (!used_.count(key)) throw ConfigError(qualified(key), "unknown key");
    }
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

std::vector<double> parse_profile(const std::string& text, const std::string& key) {
  if (text == "phenyl") return phenyl_ring_profile();
  if (text == "uniform") return {};
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_number<double>(part, key));
  return out;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text, const std::string& key) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    if (!part.empty()) out.push_back(parse_number<int>(part, key));
  }
  if (out.empty()) throw ConfigError(key, "empty list");
  return out;
}

void RunConfig::validate() const {
  const GeometryConfig& g = geometry();
  if (g.spins_per_ring < 1) throw ConfigError("geometry.spins_per_ring", "spins_per_ring must be >= 1");
  if (g.n_rings < 1) throw ConfigError("geometry.n_rings", "n_rings must be >= 1");
  if (!(g.base_radius_nm > 0.0)) throw ConfigError("geometry.base_radius_nm", "base_radius_nm must be > 0");
  if (!(g.radius_growth_factor > 1.0)) {
    throw ConfigError("geometry.radius_growth_factor", "radius_growth_factor must be > 1");
  }
  if (!g.ring_profile.empty() && g.ring_profile.size() != static_cast<std::size_t>(g.spins_per_ring)) {
    throw ConfigError("geometry.ring_profile", "ring_profile must have spins_per_ring entries");
  }
  for (double f : g.ring_profile) {
    if (!(f > 0.0)) throw ConfigError("geometry.ring_profile", "ring_profile entries must be > 0");
  }
  if (ensemble.n_realizations < 1) throw ConfigError("ensemble.realizations", "realizations must be >= 1");
  if (ensemble.grid.n_steps < 2) throw ConfigError("ensemble.steps", "steps must be >= 2");
  if (!(ensemble.grid.t_max > 0.0)) throw ConfigError("ensemble.t_max_us", "t_max_us must be > 0");
  if (ensemble.workers < 0) throw ConfigError("ensemble.workers", "workers must be >= 0");
  if (protocol.n_phases < 0) throw ConfigError("protocol.n_phases", "n_phases must be >= 0");
  if (protocol.max_dense_spins < 0) throw ConfigError("protocol.max_dense_spins", "must be >= 0");
  for (int size : scaling.sizes) {
    if (size < 1) throw ConfigError("scaling.sizes", "sizes must be positive");
  }
  for (const auto& [size, count] : scaling.realizations_by_size) {
    if (count < 1) throw ConfigError("scaling.realizations_by_size", "counts must be >= 1");
  }
  if (!(scaling.options.fit_hi > scaling.options.fit_lo)) {
    throw ConfigError("scaling.fit_hi_us", "fit window must satisfy fit_lo_us < fit_hi_us");
  }
  if (output_dir.empty()) throw ConfigError("output.dir", "output directory must be non-empty");
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }

  static const std::set<std::string> kSections{"geometry", "ensemble", "protocol", "scaling", "output"};
  for (const auto& [name, child] : tree) {
    if (!kSections.count(name)) {
      throw ConfigError(name, child.empty() ? "key outside any section" : "unknown section");
    }
  }
  auto section = [&](const std::string& name) {
    auto child = tree.get_child_optional(name);
    return Section(child ? &*child : nullptr, name);
  };

  RunConfig cfg;
  {
    Section s = section("geometry");
    GeometryConfig& g = cfg.geometry();
    s.read("spins_per_ring", g.spins_per_ring);
    s.read("n_rings", g.n_rings);
    s.read("base_radius_nm", g.base_radius_nm);
    s.read("radius_growth_factor", g.radius_growth_factor);
    s.read("coupling_scale", g.coupling_scale);
    if (auto profile = s.raw("ring_profile")) {
      g.ring_profile = parse_profile(trim(*profile), s.qualified("ring_profile"));
    } else if (g.spins_per_ring != static_cast<int>(g.ring_profile.size())) {
      // The phenyl profile only describes five-spin rings.
      g.ring_profile.clear();
    }
    s.read_string("coupling_file", cfg.coupling_file);
    s.reject_unknown();
  }
  {
    Section s = section("ensemble");
    double t_max_us = cfg.ensemble.grid.t_max * 1e6;
    s.read("realizations", cfg.ensemble.n_realizations);
    s.read("seed", cfg.ensemble.master_seed);
    s.read("t_max_us", t_max_us);
    s.read("steps", cfg.ensemble.grid.n_steps);
    s.read("workers", cfg.ensemble.workers);
    cfg.ensemble.grid.t_max = t_max_us * 1e-6;
    s.reject_unknown();
  }
  {
    Section s = section("protocol");
    s.read("n_phases", cfg.protocol.n_phases);
    s.read("max_dense_spins", cfg.protocol.max_dense_spins);
    s.reject_unknown();
  }
  {
    Section s = section("scaling");
    if (auto v = s.raw("sizes")) cfg.scaling.sizes = parse_int_list(*v, s.qualified("sizes"));
    if (auto v = s.raw("realizations_by_size")) {
      const std::string key = s.qualified("realizations_by_size");
      for (const auto& entry : split(*v, ',')) {
        if (entry.empty()) continue;
        const auto colon = entry.find(':');
        if (colon == std::string::npos) throw ConfigError(key, "expected size:count, got '" + entry + "'");
        cfg.scaling.realizations_by_size[parse_number<int>(entry.substr(0, colon), key)] =
            parse_number<int>(entry.substr(colon + 1), key);
      }
    }
    double lo = cfg.scaling.options.fit_lo * 1e6;
    double hi = cfg.scaling.options.fit_hi * 1e6;
    double sat = cfg.scaling.options.saturation_t_min * 1e6;
    s.read("fit_lo_us", lo);
    s.read("fit_hi_us", hi);
    s.read("saturation_t_min_us", sat);
    cfg.scaling.options = {lo * 1e-6, hi * 1e-6, sat * 1e-6};
    s.reject_unknown();
  }
  {
    Section s = section("output");
    s.read_string("dir", cfg.output_dir);
    s.reject_unknown();
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

CouplingSet read_coupling_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("geometry.coupling_file", "cannot open '" + path + "'");
  std::vector<double> hz;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    hz.push_back(parse_number<double>(line, path + ":" + std::to_string(line_no)));
  }
  if (hz.empty()) throw ConfigError("geometry.coupling_file", "'" + path + "' lists no couplings");
  return CouplingSet::from_hertz(hz);
}

}  // namespace csm
