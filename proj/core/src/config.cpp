#include "finitekey/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "finitekey/errors.hpp"

namespace finitekey {

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::sweep: return "sweep";
    case Mode::find_n0: return "find-n0";
    case Mode::validate_lemma3: return "validate-lemma3";
    case Mode::asymptotic: return "asymptotic";
  }
  return "sweep";
}

std::optional<Mode> parse_mode(std::string_view name) noexcept {
  for (Mode m : {Mode::sweep, Mode::find_n0, Mode::validate_lemma3, Mode::asymptotic}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

namespace {

void require(bool ok, std::string field, std::string constraint) {
  if (!ok) throw ConfigError(std::move(field), std::move(constraint));
}

double parse_real(std::string_view token, std::string_view field) {
  // Trim surrounding blanks.
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  require(ec == std::errc() && ptr == token.data() + token.size() && !token.empty(),
          std::string(field), "expected a real number, got '" + std::string(token) + "'");
  return value;
}

bool in_unit_open(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

void RunConfig::validate() const {
  require(in_unit_open(eps), "eps", "must lie in (0, 1)");
  require(in_unit_open(eps_ec), "eps_ec", "must lie in (0, 1)");
  require(eps > eps_ec, "eps", "must exceed eps_ec");
  require(f_ec >= 1.0 && std::isfinite(f_ec), "f_ec", "must be >= 1");
  if (mode != Mode::validate_lemma3) {
    require(!Q_list.empty(), "Q", "must not be empty");
    for (double q : Q_list) require(q >= 0.0 && q <= 1.0, "Q", "values must lie in [0, 1]");
  }
  if (mode == Mode::sweep) {
    if (const auto* r = std::get_if<NRange>(&N_spec)) {
      require(r->start >= 1.0 && std::isfinite(r->start), "N_range", "start must be >= 1");
      require(r->stop >= r->start && std::isfinite(r->stop), "N_range", "stop must be >= start");
      require(r->points >= 1, "N_range", "points must be >= 1");
      require(r->points > 1 || r->start == r->stop, "N_range",
              "a single point requires start == stop");
    } else {
      const auto& list = std::get<std::vector<double>>(N_spec);
      require(!list.empty(), "N_list", "must not be empty");
      for (double n : list) require(n >= 1.0 && std::isfinite(n), "N_list", "values must be >= 1");
    }
  }
  if (mode == Mode::validate_lemma3) {
    require(!mc_m.empty(), "m", "must not be empty");
    for (auto m : mc_m) require(m >= 1, "m", "values must be >= 1");
    require(!mc_p.empty(), "p", "must not be empty");
    for (double p : mc_p) require(p >= 0.0 && p <= 1.0, "p", "values must lie in [0, 1]");
    require(!mc_eps_bar_prime.empty(), "eps_bar_prime", "must not be empty");
    for (double e : mc_eps_bar_prime) require(in_unit_open(e), "eps_bar_prime", "values must lie in (0, 1)");
    require(mc_trials >= 1000, "trials", "must be >= 1000");
  }
}

std::vector<double> log_space(double start, double stop, int points) {
  if (points == 1) return {start};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  const double a = std::log10(start);
  const double b = std::log10(stop);
  for (int i = 0; i < points; ++i) {
    out.push_back(i == 0 ? start
                         : i == points - 1 ? stop
                                           : std::pow(10.0, a + (b - a) * i / (points - 1)));
  }
  return out;
}

std::vector<double> RunConfig::n_grid() const {
  if (const auto* r = std::get_if<NRange>(&N_spec)) return log_space(r->start, r->stop, r->points);
  return std::get<std::vector<double>>(N_spec);
}

NRange parse_n_range(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  require(second != std::string_view::npos && text.find(':', second + 1) == std::string_view::npos,
          "N_range", "expected start:stop:points");
  NRange r;
  r.start = parse_real(text.substr(0, first), "N_range");
  r.stop = parse_real(text.substr(first + 1, second - first - 1), "N_range");
  const double points = parse_real(text.substr(second + 1), "N_range");
  require(points >= 1 && points == std::floor(points) && points < 1e7, "N_range",
          "points must be a positive integer");
  r.points = static_cast<int>(points);
  return r;
}

std::vector<double> parse_real_list(std::string_view text, std::string_view field) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_real(text.substr(pos, comma - pos), field));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

namespace {

template <typename T>
T get_as(const nlohmann::json& value, const std::string& field) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(field, "has the wrong type");
  }
}

std::vector<double> real_or_list(const nlohmann::json& value, const std::string& field) {
  if (value.is_number()) return {value.get<double>()};
  if (value.is_string()) return parse_real_list(value.get<std::string>(), field);
  return get_as<std::vector<double>>(value, field);
}

}  // namespace

void apply_config_json(const nlohmann::json& doc, RunConfig& config) {
  require(doc.is_object(), "config", "top level must be a JSON object");
  static const std::set<std::string> known{
      "mode", "protocol", "eps", "eps_ec", "f_ec", "Q", "N_range", "N_list", "format",
      "seed", "output", "m", "p", "eps_bar_prime", "trials", "threads"};
  for (const auto& [key, _] : doc.items()) {
    require(known.contains(key), key, "unknown configuration key");
  }
  require(!(doc.contains("N_range") && doc.contains("N_list")), "N_range",
          "N_range and N_list are mutually exclusive");

  if (doc.contains("mode")) {
    const auto mode = parse_mode(get_as<std::string>(doc["mode"], "mode"));
    require(mode.has_value(), "mode", "one of sweep, find-n0, validate-lemma3, asymptotic");
    config.mode = *mode;
  }
  if (doc.contains("protocol")) {
    const auto kind = parse_protocol(get_as<std::string>(doc["protocol"], "protocol"));
    require(kind.has_value(), "protocol", "one of bb84, six-states");
    config.protocol = *kind;
  }
  if (doc.contains("eps")) config.eps = get_as<double>(doc["eps"], "eps");
  if (doc.contains("eps_ec")) config.eps_ec = get_as<double>(doc["eps_ec"], "eps_ec");
  if (doc.contains("f_ec")) config.f_ec = get_as<double>(doc["f_ec"], "f_ec");
  if (doc.contains("Q")) config.Q_list = real_or_list(doc["Q"], "Q");
  if (doc.contains("N_range")) {
    const auto& v = doc["N_range"];
    if (v.is_string()) {
      config.N_spec = parse_n_range(v.get<std::string>());
    } else {
      require(v.is_object() && v.contains("start") && v.contains("stop") && v.contains("points"),
              "N_range", "expected \"start:stop:points\" or {start, stop, points}");
      config.N_spec = NRange{get_as<double>(v["start"], "N_range"),
                             get_as<double>(v["stop"], "N_range"),
                             get_as<int>(v["points"], "N_range")};
    }
  }
  if (doc.contains("N_list")) config.N_spec = real_or_list(doc["N_list"], "N_list");
  if (doc.contains("format")) {
    const auto f = get_as<std::string>(doc["format"], "format");
    require(f == "csv" || f == "json", "format", "one of csv, json");
    config.format = f == "csv" ? OutputFormat::csv : OutputFormat::json;
  }
  if (doc.contains("seed")) config.seed = get_as<std::uint64_t>(doc["seed"], "seed");
  if (doc.contains("output")) config.output_path = get_as<std::string>(doc["output"], "output");
  if (doc.contains("m")) {
    const auto& v = doc["m"];
    config.mc_m = v.is_array() ? get_as<std::vector<std::uint64_t>>(v, "m")
                               : std::vector<std::uint64_t>{get_as<std::uint64_t>(v, "m")};
  }
  if (doc.contains("p")) config.mc_p = real_or_list(doc["p"], "p");
  if (doc.contains("eps_bar_prime")) {
    config.mc_eps_bar_prime = real_or_list(doc["eps_bar_prime"], "eps_bar_prime");
  }
  if (doc.contains("trials")) config.mc_trials = get_as<std::uint64_t>(doc["trials"], "trials");
  if (doc.contains("threads")) config.threads = get_as<unsigned>(doc["threads"], "threads");
}

void apply_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  require(in.good(), "config", "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  apply_config_json(doc, config);
}

}  // namespace finitekey
