#include "levysir/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace levysir {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

class Document {
 public:
  explicit Document(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  double number(const std::string& key) const {
    const Entry& e = get(key);
    return parse_number(e.value, e.line, key);
  }

  std::optional<double> optional_number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::uint64_t integer(const std::string& key) const {
    const Entry& e = get(key);
    std::uint64_t out = 0;
    const auto* begin = e.value.data();
    const auto* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
      throw ConfigError(e.line, key, "expected a non-negative integer, got '" + e.value + "'");
    }
    return out;
  }

  std::vector<double> list(const std::string& key) const {
    const Entry& e = get(key);
    std::vector<double> out;
    std::string_view rest = e.value;
    if (trim(rest).empty()) return out;
    while (true) {
      const auto comma = rest.find(',');
      out.push_back(parse_number(trim(rest.substr(0, comma)), e.line, key));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return out;
  }

  const std::string& text(const std::string& key) const { return get(key).value; }
  std::size_t line(const std::string& key) const { return has(key) ? get(key).line : 0; }

 private:
  const Entry& get(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError(0, key, "missing required key");
    return it->second;
  }

  static double parse_number(std::string_view token, std::size_t line, const std::string& key) {
    double out = 0.0;
    const auto* begin = token.data();
    const auto* end = begin + token.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (token.empty() || ec != std::errc{} || ptr != end) {
      throw ConfigError(line, key, "expected a number, got '" + std::string(token) + "'");
    }
    return out;
  }

  std::map<std::string, Entry> entries_;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "params.theta",         "params.xi",         "params.eta",
      "params.rho",           "params.gamma",      "initial.s",
      "initial.i",            "initial.r",         "jump.amplitudes",
      "jump.rates",           "integrator.dt",     "integrator.t_end",
      "integrator.record_every", "integrator.scheme", "ensemble.paths",
      "ensemble.seed",        "analysis.phi_override", "sweep.parameter",
      "sweep.grid",           "reference.psi0",    "reference.psi",
      "reference.s_star",     "reference.i_star",  "reference.r_star",
  };
  return keys;
}

Document tokenize(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    const auto comment = line.find_first_of("#;");
    line = trim(line.substr(0, comment));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(line_no, std::string(line), "unterminated section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, std::string(line), "expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(line_no, key, "empty key");
    if (!section.empty()) key = section + "." + key;
    if (known_keys().count(key) == 0) throw ConfigError(line_no, key, "unknown key");
    if (entries.count(key) != 0) {
      throw ConfigError(line_no, key,
                        "repeated key (first set on line " +
                            std::to_string(entries[key].line) + ")");
    }
    entries[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
  }
  return Document(std::move(entries));
}

Scheme parse_scheme(const Document& doc) {
  const std::string& s = doc.text("integrator.scheme");
  if (s == "jump_euler") return Scheme::jump_euler;
  if (s == "deterministic_rk4") return Scheme::deterministic_rk4;
  throw ConfigError(doc.line("integrator.scheme"), "integrator.scheme",
                    "expected jump_euler or deterministic_rk4, got '" + s + "'");
}

SweepParameter parse_sweep_parameter(const Document& doc) {
  const std::string& s = doc.text("sweep.parameter");
  for (auto p : {SweepParameter::epsilon, SweepParameter::theta, SweepParameter::xi,
                 SweepParameter::psi0_proxy}) {
    if (s == to_string(p)) return p;
  }
  throw ConfigError(doc.line("sweep.parameter"), "sweep.parameter",
                    "expected epsilon, theta, xi or psi0-proxy, got '" + s + "'");
}

// Runs `check` and re-throws a ValidationError as a ConfigError tied to `key`.
template <typename F>
void checked(const Document& doc, const std::string& key, F&& check) {
  try {
    check();
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ConfigError(doc.line(key), key, e.what());
  }
}

}  // namespace

ConfigError::ConfigError(std::size_t line, std::string key, const std::string& what)
    : ValidationError([&] {
        std::ostringstream msg;
        if (line != 0) msg << "line " << line << ": ";
        if (!key.empty()) msg << key << ": ";
        msg << what;
        return msg.str();
      }()),
      line_(line),
      key_(std::move(key)) {}

void ScenarioConfig::validate() const {
  scenario.params.validate();
  scenario.initial.validate();
  scenario.integrator.validate();
  if (n_paths < 1) throw ValidationError("ensemble.paths must be at least 1");
  if (scenario.phi_override && !std::isfinite(*scenario.phi_override)) {
    throw ValidationError("phi_override must be finite");
  }
  if (sweep) {
    if (sweep->grid.empty()) throw ValidationError("sweep.grid must not be empty");
    for (std::size_t k = 1; k < sweep->grid.size(); ++k) {
      if (!(sweep->grid[k] > sweep->grid[k - 1])) {
        throw ValidationError("sweep.grid must be strictly increasing");
      }
    }
  }
}

ScenarioConfig parse_config(std::string_view text) {
  const Document doc = tokenize(text);
  ScenarioConfig cfg;
  auto& sc = cfg.scenario;

  sc.params = {doc.number("params.theta"), doc.number("params.xi"), doc.number("params.eta"),
               doc.number("params.rho"), doc.number("params.gamma")};
  checked(doc, "params", [&] { sc.params.validate(); });

  sc.initial = {doc.number("initial.s"), doc.number("initial.i"), doc.number("initial.r")};
  checked(doc, "initial", [&] { sc.initial.validate(); });

  if (doc.has("jump.amplitudes") || doc.has("jump.rates")) {
    const auto amplitudes = doc.list("jump.amplitudes");
    const auto rates = doc.list("jump.rates");
    if (amplitudes.size() != rates.size()) {
      throw ConfigError(doc.line("jump.rates"), "jump.rates",
                        "expected as many rates as amplitudes (" +
                            std::to_string(amplitudes.size()) + "), got " +
                            std::to_string(rates.size()));
    }
    std::vector<JumpAtom> atoms;
    for (std::size_t k = 0; k < amplitudes.size(); ++k) atoms.push_back({amplitudes[k], rates[k]});
    checked(doc, "jump.amplitudes", [&] { sc.measure = JumpMeasure(std::move(atoms)); });
  }

  if (doc.has("integrator.dt")) sc.integrator.dt = doc.number("integrator.dt");
  if (doc.has("integrator.t_end")) sc.integrator.t_end = doc.number("integrator.t_end");
  if (doc.has("integrator.record_every")) {
    sc.integrator.record_every = doc.integer("integrator.record_every");
  }
  if (doc.has("integrator.scheme")) sc.integrator.scheme = parse_scheme(doc);
  checked(doc, "integrator", [&] { sc.integrator.validate(); });

  if (doc.has("ensemble.paths")) cfg.n_paths = doc.integer("ensemble.paths");
  if (doc.has("ensemble.seed")) cfg.master_seed = doc.integer("ensemble.seed");
  sc.phi_override = doc.optional_number("analysis.phi_override");

  if (doc.has("sweep.parameter") || doc.has("sweep.grid")) {
    SweepSpec spec;
    spec.parameter = parse_sweep_parameter(doc);
    spec.grid = doc.list("sweep.grid");
    cfg.sweep = std::move(spec);
  }

  cfg.reference.psi0 = doc.optional_number("reference.psi0");
  cfg.reference.psi = doc.optional_number("reference.psi");
  cfg.reference.s_star = doc.optional_number("reference.s_star");
  cfg.reference.i_star = doc.optional_number("reference.i_star");
  cfg.reference.r_star = doc.optional_number("reference.r_star");

  checked(doc, "", [&] { cfg.validate(); });
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading config file '" + path.string() + "'");
  return parse_config(buffer.str());
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general);
  return std::string(buf, ptr);
}

std::string serialize_config(const ScenarioConfig& cfg) {
  const auto& sc = cfg.scenario;
  std::ostringstream out;
  const auto kv = [&](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  const auto join = [](const std::vector<double>& values) {
    std::string s;
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (k) s += ", ";
      s += format_number(values[k]);
    }
    return s;
  };

  kv("params.theta", format_number(sc.params.theta));
  kv("params.xi", format_number(sc.params.xi));
  kv("params.eta", format_number(sc.params.eta));
  kv("params.rho", format_number(sc.params.rho));
  kv("params.gamma", format_number(sc.params.gamma));
  kv("initial.s", format_number(sc.initial.s));
  kv("initial.i", format_number(sc.initial.i));
  kv("initial.r", format_number(sc.initial.r));
  if (!sc.measure.empty()) {
    std::vector<double> amplitudes;
    std::vector<double> rates;
    for (const auto& a : sc.measure.atoms()) {
      amplitudes.push_back(a.amplitude);
      rates.push_back(a.rate);
    }
    kv("jump.amplitudes", join(amplitudes));
    kv("jump.rates", join(rates));
  }
  kv("integrator.dt", format_number(sc.integrator.dt));
  kv("integrator.t_end", format_number(sc.integrator.t_end));
  kv("integrator.record_every", std::to_string(sc.integrator.record_every));
  kv("integrator.scheme", to_string(sc.integrator.scheme));
  kv("ensemble.paths", std::to_string(cfg.n_paths));
  kv("ensemble.seed", std::to_string(cfg.master_seed));
  if (sc.phi_override) kv("analysis.phi_override", format_number(*sc.phi_override));
  if (cfg.sweep) {
    kv("sweep.parameter", to_string(cfg.sweep->parameter));
    kv("sweep.grid", join(cfg.sweep->grid));
  }
  const auto ref = [&](const char* key, const std::optional<double>& v) {
    if (v) kv(key, format_number(*v));
  };
  ref("reference.psi0", cfg.reference.psi0);
  ref("reference.psi", cfg.reference.psi);
  ref("reference.s_star", cfg.reference.s_star);
  ref("reference.i_star", cfg.reference.i_star);
  ref("reference.r_star", cfg.reference.r_star);
  return out.str();
}

}  // namespace levysir
