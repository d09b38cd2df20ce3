#include "pmx/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pmx/errors.hpp"

namespace pmx {

TimeMode TimeSection::time_mode() const {
  if (mode == Mode::fixed) return FixedStep{dt};
  return AdaptiveStep{safety, dt_cap};
}

KernelSpec KernelConfig::build(const Grid1D& grid) const {
  switch (kind) {
    case Kind::none:
      return KernelSpec::none();
    case Kind::constant: {
      const double a = amplitude;
      return KernelSpec::from_function(grid, [a](double) { return a; });
    }
    case Kind::gaussian: {
      const double a = amplitude;
      const double w = width;
      return KernelSpec::from_function(grid, [a, w](double r) { return a * std::exp(-r * r / (w * w)); });
    }
    case Kind::tabulated:
      return KernelSpec::tabulated(samples);
  }
  return KernelSpec::none();
}

Grid1D RunConfig::make_grid() const { return Grid1D(grid.x_min, grid.x_max, grid.cells); }

SystemSpec RunConfig::system(const Grid1D& g) const {
  SystemSpec spec;
  spec.delta = delta;
  spec.epsilon = epsilon;
  for (const auto& s : species)
    spec.species.push_back({s.potential, s.kernel.build(g), s.mass, s.ic});
  spec.validate(g);
  return spec;
}

std::vector<double> RunConfig::record_times() const {
  return equally_spaced_times(time.t_end, time.record_count);
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) {
    // allow comma separated lists as well as whitespace separated ones
    std::size_t start = 0;
    while (start <= w.size()) {
      const auto comma = w.find(',', start);
      const auto piece = w.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!piece.empty()) out.push_back(piece);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class LineContext {
 public:
  LineContext(int line, std::string section, std::string key)
      : line_(line), section_(std::move(section)), key_(std::move(key)) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("line " + std::to_string(line_) + ": [" + section_ + "] " + key_ + ": " + why);
  }

  double number(const std::string& text) const {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
      fail("expected a number, got '" + text + "'");
    return v;
  }

  long long integer(const std::string& text) const {
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      fail("expected an integer, got '" + text + "'");
    return v;
  }

  std::vector<double> numbers(const std::vector<std::string>& items, std::size_t from) const {
    std::vector<double> out;
    for (std::size_t k = from; k < items.size(); ++k) out.push_back(number(items[k]));
    return out;
  }

 private:
  int line_;
  std::string section_;
  std::string key_;
};

PotentialSpec parse_potential(const LineContext& ctx, const std::string& value) {
  const auto w = words(value);
  if (w.empty()) ctx.fail("empty potential");
  if (w[0] == "zero" && w.size() == 1) return PotentialSpec::zero();
  if (w[0] == "quadratic" && w.size() == 2) return PotentialSpec::quadratic(ctx.number(w[1]));
  if (w[0] == "tabulated" && w.size() > 1) return PotentialSpec::tabulated(ctx.numbers(w, 1));
  ctx.fail("expected 'zero', 'quadratic <a>' or 'tabulated <values>'");
}

KernelConfig parse_kernel(const LineContext& ctx, const std::string& value) {
  const auto w = words(value);
  if (w.empty()) ctx.fail("empty kernel");
  KernelConfig k;
  if (w[0] == "none" && w.size() == 1) return k;
  if (w[0] == "constant" && w.size() == 2) {
    k.kind = KernelConfig::Kind::constant;
    k.amplitude = ctx.number(w[1]);
    return k;
  }
  if (w[0] == "gaussian" && w.size() == 3) {
    k.kind = KernelConfig::Kind::gaussian;
    k.amplitude = ctx.number(w[1]);
    k.width = ctx.number(w[2]);
    if (!(k.width > 0.0)) ctx.fail("gaussian width must be positive");
    return k;
  }
  if (w[0] == "tabulated" && w.size() > 1) {
    k.kind = KernelConfig::Kind::tabulated;
    k.samples = ctx.numbers(w, 1);
    return k;
  }
  ctx.fail("expected 'none', 'constant <a>', 'gaussian <a> <width>' or 'tabulated <values>'");
}

InitialCondition parse_ic(const LineContext& ctx, const std::string& value) {
  const auto w = words(value);
  if (w.empty()) ctx.fail("empty initial condition");
  if (w.size() == 1) {
    if (w[0] == "uniform") return InitialCondition::uniform();
    if (w[0] == "leftbump") return InitialCondition::leftbump();
    if (w[0] == "rightbump") return InitialCondition::rightbump();
  }
  if (w[0] == "tabulated" && w.size() > 1) return InitialCondition::tabulated(ctx.numbers(w, 1));
  ctx.fail("expected 'uniform', 'leftbump', 'rightbump' or 'tabulated <values>'");
}

std::string render_values(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += " " + format_double(x);
  return out;
}

std::string render_potential(const PotentialSpec& p) {
  switch (p.kind) {
    case PotentialSpec::Kind::zero: return "zero";
    case PotentialSpec::Kind::quadratic: return "quadratic " + format_double(p.coefficient);
    case PotentialSpec::Kind::tabulated: return "tabulated" + render_values(p.samples);
  }
  return "zero";
}

std::string render_kernel(const KernelConfig& k) {
  switch (k.kind) {
    case KernelConfig::Kind::none: return "none";
    case KernelConfig::Kind::constant: return "constant " + format_double(k.amplitude);
    case KernelConfig::Kind::gaussian:
      return "gaussian " + format_double(k.amplitude) + " " + format_double(k.width);
    case KernelConfig::Kind::tabulated: return "tabulated" + render_values(k.samples);
  }
  return "none";
}

std::string render_ic(const InitialCondition& ic) {
  if (ic.kind == InitialCondition::Kind::tabulated) return "tabulated" + render_values(ic.samples);
  return to_string(ic.kind);
}

}  // namespace

ParsedConfig parse_config(std::string_view text) {
  ParsedConfig parsed;
  RunConfig& cfg = parsed.config;
  std::map<std::size_t, SpeciesSection> species;
  std::optional<long long> declared_m;
  bool saw_system = false;
  std::string section;
  std::set<std::string> seen;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']')
        throw ConfigError("line " + std::to_string(line) + ": malformed section header");
      section = trim(std::string_view(content).substr(1, content.size() - 2));
      const bool known = section == "grid" || section == "time" || section == "system" ||
                         section == "output" || section == "steady" || section == "particles" ||
                         section.rfind("species.", 0) == 0;
      if (!known)
        throw ConfigError("line " + std::to_string(line) + ": unknown section [" + section + "]");
      if (section == "system") saw_system = true;
      if (section == "particles" && !cfg.particles) cfg.particles = ParticleSection{};
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (section.empty())
      throw ConfigError("line " + std::to_string(line) + ": key '" + key + "' outside any section");
    const LineContext ctx(line, section, key);
    if (!seen.insert(section + "/" + key).second) ctx.fail("duplicate key");
    if (value.empty()) ctx.fail("missing value");

    const auto positive = [&](double v) {
      if (!(v > 0.0)) ctx.fail("must be positive");
      return v;
    };
    const auto unknown = [&]() { ctx.fail("unknown key"); };

    if (section == "grid") {
      if (key == "x_min") cfg.grid.x_min = ctx.number(value);
      else if (key == "x_max") cfg.grid.x_max = ctx.number(value);
      else if (key == "J") {
        const auto j = ctx.integer(value);
        if (j < 2) ctx.fail("J must be at least 2");
        cfg.grid.cells = static_cast<int>(j);
      } else unknown();
    } else if (section == "time") {
      if (key == "mode") {
        if (value == "fixed") cfg.time.mode = TimeSection::Mode::fixed;
        else if (value == "adaptive") cfg.time.mode = TimeSection::Mode::adaptive;
        else ctx.fail("expected 'fixed' or 'adaptive'");
      } else if (key == "dt") cfg.time.dt = positive(ctx.number(value));
      else if (key == "safety") {
        cfg.time.safety = positive(ctx.number(value));
        if (cfg.time.safety > 1.0) ctx.fail("safety must not exceed 1");
      } else if (key == "dt_cap") cfg.time.dt_cap = positive(ctx.number(value));
      else if (key == "t_end") {
        cfg.time.t_end = ctx.number(value);
        if (cfg.time.t_end < 0.0) ctx.fail("must be non-negative");
      } else if (key == "record_count") {
        const auto n = ctx.integer(value);
        if (n < 1) ctx.fail("must be at least 1");
        cfg.time.record_count = static_cast<int>(n);
      } else unknown();
    } else if (section == "system") {
      if (key == "M") {
        const auto m = ctx.integer(value);
        if (m < 1) ctx.fail("M must be at least 1");
        declared_m = m;
      } else if (key == "delta") {
        cfg.delta = ctx.number(value);
        if (std::abs(cfg.delta) >= 1.0)
          parsed.warnings.push_back("line " + std::to_string(line) + ": delta = " + value +
                                    " is at or above the convexity threshold 1; accepted for exploration");
      } else if (key == "epsilon") {
        cfg.epsilon = ctx.number(value);
        if (cfg.epsilon < 0.0) ctx.fail("must be non-negative");
      } else unknown();
    } else if (section.rfind("species.", 0) == 0) {
      const std::string index_text = section.substr(8);
      const LineContext sctx(line, section, "index");
      const auto index = sctx.integer(index_text);
      if (index < 1) sctx.fail("species sections are numbered from 1");
      auto& s = species[static_cast<std::size_t>(index)];
      if (key == "potential") s.potential = parse_potential(ctx, value);
      else if (key == "kernel") s.kernel = parse_kernel(ctx, value);
      else if (key == "mass") s.mass = positive(ctx.number(value));
      else if (key == "ic") s.ic = parse_ic(ctx, value);
      else unknown();
    } else if (section == "output") {
      if (key == "directory") cfg.output.directory = value;
      else if (key == "prefix") cfg.output.prefix = value;
      else unknown();
    } else if (section == "steady") {
      if (key == "tol") cfg.steady.tol = positive(ctx.number(value));
      else if (key == "max_iter") {
        const auto n = ctx.integer(value);
        if (n < 1) ctx.fail("must be at least 1");
        cfg.steady.max_iter = static_cast<int>(n);
      } else if (key == "damping") {
        cfg.steady.damping = positive(ctx.number(value));
        if (cfg.steady.damping > 1.0) ctx.fail("damping must not exceed 1");
      } else unknown();
    } else if (section == "particles") {
      auto& p = *cfg.particles;
      if (key == "counts") {
        p.counts.clear();
        for (const auto& w : words(value)) {
          const auto n = ctx.integer(w);
          if (n < 1) ctx.fail("particle counts must be positive");
          p.counts.push_back(static_cast<int>(n));
        }
      } else if (key == "range") p.range = positive(ctx.number(value));
      else if (key == "dt") p.dt = positive(ctx.number(value));
      else if (key == "seed") {
        const auto s = ctx.integer(value);
        if (s < 0) ctx.fail("seed must be non-negative");
        p.seed = static_cast<std::uint64_t>(s);
      } else if (key == "sampling") {
        if (value == "stratified") p.sampling = Sampling::stratified;
        else if (value == "iid") p.sampling = Sampling::iid;
        else ctx.fail("expected 'stratified' or 'iid'");
      } else if (key == "kernel") {
        if (value == "bspline") p.kernel = InteractionProfile::Kind::cubic_bspline;
        else if (value == "bump") p.kernel = InteractionProfile::Kind::bump;
        else ctx.fail("expected 'bspline' or 'bump'");
      } else if (key == "stability_cap") {
        if (value == "true") p.stability_cap = true;
        else if (value == "false") p.stability_cap = false;
        else ctx.fail("expected 'true' or 'false'");
      } else unknown();
    }
  }

  if (!saw_system) throw ConfigError("missing required section [system]");
  const std::size_t m = declared_m ? static_cast<std::size_t>(*declared_m)
                                   : std::max<std::size_t>(species.empty() ? 1 : species.rbegin()->first, 1);
  if (!species.empty() && species.rbegin()->first > m)
    throw ConfigError("section [species." + std::to_string(species.rbegin()->first) +
                      "] exceeds M = " + std::to_string(m));
  cfg.species.assign(m, SpeciesSection{});
  for (auto& [index, s] : species) cfg.species[index - 1] = std::move(s);
  if (cfg.particles && !cfg.particles->counts.empty() && cfg.particles->counts.size() != m)
    throw ConfigError("[particles] counts needs one entry per species");
  if (!(cfg.grid.x_max > cfg.grid.x_min)) throw ConfigError("[grid] requires x_max > x_min");
  return parsed;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[grid]\n"
      << "x_min = " << format_double(c.grid.x_min) << "\n"
      << "x_max = " << format_double(c.grid.x_max) << "\n"
      << "J = " << c.grid.cells << "\n\n"
      << "[time]\n"
      << "mode = " << (c.time.mode == TimeSection::Mode::fixed ? "fixed" : "adaptive") << "\n"
      << "dt = " << format_double(c.time.dt) << "\n"
      << "safety = " << format_double(c.time.safety) << "\n"
      << "dt_cap = " << format_double(c.time.dt_cap) << "\n"
      << "t_end = " << format_double(c.time.t_end) << "\n"
      << "record_count = " << c.time.record_count << "\n\n"
      << "[system]\n"
      << "M = " << c.species.size() << "\n"
      << "delta = " << format_double(c.delta) << "\n"
      << "epsilon = " << format_double(c.epsilon) << "\n";
  for (std::size_t i = 0; i < c.species.size(); ++i) {
    const auto& s = c.species[i];
    out << "\n[species." << i + 1 << "]\n"
        << "potential = " << render_potential(s.potential) << "\n"
        << "kernel = " << render_kernel(s.kernel) << "\n"
        << "mass = " << format_double(s.mass) << "\n"
        << "ic = " << render_ic(s.ic) << "\n";
  }
  out << "\n[steady]\n"
      << "tol = " << format_double(c.steady.tol) << "\n"
      << "max_iter = " << c.steady.max_iter << "\n"
      << "damping = " << format_double(c.steady.damping) << "\n";
  if (c.particles) {
    const auto& p = *c.particles;
    out << "\n[particles]\n";
    if (!p.counts.empty()) {
      out << "counts =";
      for (int n : p.counts) out << " " << n;
      out << "\n";
    }
    out << "range = " << format_double(p.range) << "\n"
        << "dt = " << format_double(p.dt) << "\n"
        << "seed = " << p.seed << "\n"
        << "sampling = " << (p.sampling == Sampling::stratified ? "stratified" : "iid") << "\n"
        << "kernel = " << (p.kernel == InteractionProfile::Kind::bump ? "bump" : "bspline") << "\n"
        << "stability_cap = " << (p.stability_cap ? "true" : "false") << "\n";
  }
  out << "\n[output]\n"
      << "directory = " << c.output.directory << "\n"
      << "prefix = " << c.output.prefix << "\n";
  return out.str();
}

}  // namespace pmx
