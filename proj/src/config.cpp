#include "hawkesim/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hawkesim/errors.hpp"
#include "hawkesim/io.hpp"

namespace hawkesim {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::lln_hp: return "lln_hp";
    case ExperimentKind::fclt_hp: return "fclt_hp";
    case ExperimentKind::lln_gchp: return "lln_gchp";
    case ExperimentKind::fclt_gchp: return "fclt_gchp";
    case ExperimentKind::params: return "params";
    case ExperimentKind::finance_opt: return "finance_opt";
    case ExperimentKind::insurance_opt: return "insurance_opt";
    case ExperimentKind::ruin: return "ruin";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
  if (s == "lln_hp") return ExperimentKind::lln_hp;
  if (s == "fclt_hp") return ExperimentKind::fclt_hp;
  if (s == "lln_gchp") return ExperimentKind::lln_gchp;
  if (s == "fclt_gchp") return ExperimentKind::fclt_gchp;
  if (s == "params") return ExperimentKind::params;
  if (s == "finance_opt") return ExperimentKind::finance_opt;
  if (s == "insurance_opt") return ExperimentKind::insurance_opt;
  if (s == "ruin") return ExperimentKind::ruin;
  throw ConfigError("run.kind: unknown experiment kind '" + s + "'");
}

int ExperimentConfig::resolved_n_steps() const {
  if (run.n_steps) return *run.n_steps;
  if (run.dt) {
    if (!(*run.dt > 0.0)) throw ConfigError("run.dt: must be > 0");
    const auto n = static_cast<long long>(std::llround(run.horizon / *run.dt));
    return n < 1 ? 1 : static_cast<int>(n);
  }
  return 1000;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
  std::size_t pos = line.size();
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' || line[i] == ';') {
      pos = i;
      break;
    }
  }
  return line.substr(0, pos);
}

// Raw value: one sub-vector per physical line (matrix rows).
using RawValue = std::vector<std::string>;
using RawSection = std::map<std::string, RawValue>;

std::map<std::string, RawSection> tokenize(const std::string& text) {
  std::map<std::string, RawSection> sections;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::string last_key;
  while (std::getline(in, line)) {
    const bool continuation = !line.empty() && std::isspace(static_cast<unsigned char>(line[0]));
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("malformed section header: " + body);
      section = trim(body.substr(1, body.size() - 2));
      if (section.empty()) throw ConfigError("empty section name");
      last_key.clear();
      continue;
    }
    const std::size_t eq = body.find('=');
    if (continuation && eq == std::string::npos) {
      if (section.empty() || last_key.empty()) throw ConfigError("continuation line without a key: " + body);
      sections[section][last_key].push_back(body);
      continue;
    }
    if (eq == std::string::npos) throw ConfigError("expected 'key = value': " + body);
    if (section.empty()) throw ConfigError("key outside of any section: " + body);
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key in section [" + section + "]");
    if (sections[section].count(key)) throw ConfigError(section + "." + key + ": duplicate key");
    sections[section][key] = RawValue{trim(body.substr(eq + 1))};
    last_key = key;
  }
  return sections;
}

double parse_double(const std::string& section, const std::string& key, const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE)
    throw ConfigError(section + "." + key + ": not a number: '" + s + "'");
  return v;
}

long long parse_int(const std::string& section, const std::string& key, const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE)
    throw ConfigError(section + "." + key + ": not an integer: '" + s + "'");
  return v;
}

std::vector<double> parse_vector(const std::string& section, const std::string& key, const RawValue& raw) {
  std::vector<double> out;
  for (const std::string& line : raw) {
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(parse_double(section, key, tok));
  }
  return out;
}

std::vector<std::vector<double>> parse_matrix(const std::string& section, const std::string& key,
                                              const RawValue& raw) {
  std::vector<std::vector<double>> rows;
  for (const std::string& line : raw) {
    std::istringstream in(line);
    std::string tok;
    std::vector<double> row;
    while (in >> tok) row.push_back(parse_double(section, key, tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::string single(const std::string& section, const std::string& key, const RawValue& raw) {
  if (raw.size() != 1) throw ConfigError(section + "." + key + ": unexpected continuation lines");
  return raw[0];
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  const auto sections = tokenize(text);
  for (const auto& [section, entries] : sections) {
    if (section == "model") {
      for (const auto& [key, raw] : entries) {
        if (key == "lambda") cfg.model.lambda0 = parse_double(section, key, single(section, key, raw));
        else if (key == "kernel") {
          cfg.model.kernel = single(section, key, raw);
          if (cfg.model.kernel != "zero" && cfg.model.kernel != "exponential")
            throw ConfigError("model.kernel: must be 'zero' or 'exponential'");
        } else if (key == "alpha") cfg.model.alpha = parse_double(section, key, single(section, key, raw));
        else if (key == "beta") cfg.model.beta = parse_double(section, key, single(section, key, raw));
        else if (key == "P") cfg.model.P = parse_matrix(section, key, raw);
        else if (key == "a") cfg.model.a = parse_vector(section, key, raw);
        else if (key == "s0") cfg.model.s0 = parse_double(section, key, single(section, key, raw));
        else if (key == "u") cfg.model.u = parse_double(section, key, single(section, key, raw));
        else if (key == "c") cfg.model.c = parse_double(section, key, single(section, key, raw));
        else if (key == "initial_state")
          cfg.model.initial_state = static_cast<int>(parse_int(section, key, single(section, key, raw)));
        else throw ConfigError("model." + key + ": unknown key");
      }
    } else if (section == "market") {
      for (const auto& [key, raw] : entries) {
        if (key == "r") cfg.market.r = parse_double(section, key, single(section, key, raw));
        else if (key == "asset_drift") cfg.market.asset_drift = parse_double(section, key, single(section, key, raw));
        else if (key == "asset_vol") cfg.market.asset_vol = parse_double(section, key, single(section, key, raw));
        else if (key == "x0") cfg.market.x0 = parse_double(section, key, single(section, key, raw));
        else if (key == "b0") cfg.market.b0 = parse_double(section, key, single(section, key, raw));
        else throw ConfigError("market." + key + ": unknown key");
      }
    } else if (section == "run") {
      for (const auto& [key, raw] : entries) {
        if (key == "kind") cfg.run.kind = experiment_kind_from_string(single(section, key, raw));
        else if (key == "T") cfg.run.horizon = parse_double(section, key, single(section, key, raw));
        else if (key == "dt") cfg.run.dt = parse_double(section, key, single(section, key, raw));
        else if (key == "n_steps") cfg.run.n_steps = static_cast<int>(parse_int(section, key, single(section, key, raw)));
        else if (key == "n_paths") cfg.run.n_paths = static_cast<int>(parse_int(section, key, single(section, key, raw)));
        else if (key == "seed") cfg.run.seed = static_cast<std::uint64_t>(parse_int(section, key, single(section, key, raw)));
        else if (key == "pi") cfg.run.pi = parse_double(section, key, single(section, key, raw));
        else if (key == "pi_grid") cfg.run.pi_grid = parse_vector(section, key, raw);
        else if (key == "level") cfg.run.level = parse_double(section, key, single(section, key, raw));
        else if (key == "mode") {
          cfg.run.mode = single(section, key, raw);
          if (cfg.run.mode != "diffusion" && cfg.run.mode != "jump")
            throw ConfigError("run.mode: must be 'diffusion' or 'jump'");
        } else throw ConfigError("run." + key + ": unknown key");
      }
    } else {
      throw ConfigError("unknown section [" + section + "]");
    }
  }
  if (cfg.run.dt && cfg.run.n_steps) throw ConfigError("run.dt: conflicts with run.n_steps; set one");
  if (!(cfg.run.horizon > 0.0)) throw ConfigError("run.T: must be > 0");
  if (cfg.run.n_paths < 1) throw ConfigError("run.n_paths: must be >= 1");
  if (cfg.run.n_steps && *cfg.run.n_steps < 1) throw ConfigError("run.n_steps: must be >= 1");
  if (!(cfg.run.level > 0.0) || !(cfg.run.level < 1.0)) throw ConfigError("run.level: must lie in (0, 1)");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[model]\n";
  out << "lambda = " << fmt_double(cfg.model.lambda0) << "\n";
  out << "kernel = " << cfg.model.kernel << "\n";
  out << "alpha = " << fmt_double(cfg.model.alpha) << "\n";
  out << "beta = " << fmt_double(cfg.model.beta) << "\n";
  if (!cfg.model.P.empty()) {
    out << "P =";
    for (std::size_t i = 0; i < cfg.model.P.size(); ++i) {
      if (i > 0) out << "   ";
      for (double v : cfg.model.P[i]) out << " " << fmt_double(v);
      out << "\n";
    }
  }
  if (!cfg.model.a.empty()) {
    out << "a =";
    for (double v : cfg.model.a) out << " " << fmt_double(v);
    out << "\n";
  }
  out << "s0 = " << fmt_double(cfg.model.s0) << "\n";
  out << "u = " << fmt_double(cfg.model.u) << "\n";
  out << "c = " << fmt_double(cfg.model.c) << "\n";
  if (cfg.model.initial_state) out << "initial_state = " << *cfg.model.initial_state << "\n";
  out << "\n[market]\n";
  out << "r = " << fmt_double(cfg.market.r) << "\n";
  out << "asset_drift = " << fmt_double(cfg.market.asset_drift) << "\n";
  out << "asset_vol = " << fmt_double(cfg.market.asset_vol) << "\n";
  out << "x0 = " << fmt_double(cfg.market.x0) << "\n";
  out << "b0 = " << fmt_double(cfg.market.b0) << "\n";
  out << "\n[run]\n";
  if (cfg.run.kind) out << "kind = " << to_string(*cfg.run.kind) << "\n";
  out << "T = " << fmt_double(cfg.run.horizon) << "\n";
  if (cfg.run.dt) out << "dt = " << fmt_double(*cfg.run.dt) << "\n";
  if (cfg.run.n_steps) out << "n_steps = " << *cfg.run.n_steps << "\n";
  out << "n_paths = " << cfg.run.n_paths << "\n";
  out << "seed = " << cfg.run.seed << "\n";
  out << "pi = " << fmt_double(cfg.run.pi) << "\n";
  if (!cfg.run.pi_grid.empty()) {
    out << "pi_grid =";
    for (double v : cfg.run.pi_grid) out << " " << fmt_double(v);
    out << "\n";
  }
  out << "level = " << fmt_double(cfg.run.level) << "\n";
  out << "mode = " << cfg.run.mode << "\n";
  return out.str();
}

namespace {

template <typename F>
auto wrap_config(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

}  // namespace

MarkovChainSpec chain_from_config(const ExperimentConfig& cfg) {
  if (cfg.model.P.empty()) throw ConfigError("model.P: required for this experiment");
  if (cfg.model.a.empty()) throw ConfigError("model.a: required for this experiment");
  return wrap_config("model.P", [&] { return MarkovChainSpec(cfg.model.P, cfg.model.a); });
}

HawkesParams hawkes_from_config(const ExperimentConfig& cfg) {
  return wrap_config("model.lambda", [&] {
    const ExcitationKernel kernel = cfg.model.kernel == "zero"
                                        ? ExcitationKernel::zero()
                                        : ExcitationKernel::exponential(cfg.model.alpha, cfg.model.beta);
    return HawkesParams(cfg.model.lambda0, kernel);
  });
}

GCHPModel gchp_from_config(const ExperimentConfig& cfg) {
  MarkovChainSpec chain = chain_from_config(cfg);
  HawkesParams hp = hawkes_from_config(cfg);
  return wrap_config("model", [&] { return GCHPModel(hp, chain, cfg.model.s0, cfg.model.initial_state); });
}

FinanceMarket finance_market_from_config(const ExperimentConfig& cfg) {
  GCHPModel model = gchp_from_config(cfg);
  return wrap_config("market", [&] { return FinanceMarket(cfg.market.r, model, cfg.market.x0, cfg.market.b0); });
}

InsuranceModel insurance_model_from_config(const ExperimentConfig& cfg) {
  GCHPModel claims = gchp_from_config(cfg);
  return wrap_config("model", [&] {
    return InsuranceModel(cfg.model.u, cfg.model.c, claims, cfg.market.asset_drift, cfg.market.asset_vol,
                          cfg.market.r);
  });
}

}  // namespace hawkesim
