#include "smsec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <system_error>

namespace smsec {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError("expected a real number, got '" + std::string(s) + "'");
  return v;
}

long long to_integer(std::string_view s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("expected an integer, got '" + std::string(s) + "'");
  return v;
}

int to_int(std::string_view s) {
  const long long v = to_integer(s);
  if (v < -2147483647LL || v > 2147483647LL) throw ConfigError("integer out of range");
  return static_cast<int>(v);
}

template <class T, class F>
std::vector<T> to_list(std::string_view s, F&& convert) {
  std::vector<T> out;
  for (auto item : split_list(s)) {
    if (item.empty()) throw ConfigError("empty list element");
    out.push_back(convert(item));
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"N", [](ExperimentConfig& c, std::string_view v) { c.system.n_tx = to_int(v); }},
      {"N_t", [](ExperimentConfig& c, std::string_view v) { c.system.n_active = to_int(v); }},
      {"N_b", [](ExperimentConfig& c, std::string_view v) { c.system.n_bob = to_int(v); }},
      {"N_m", [](ExperimentConfig& c, std::string_view v) { c.system.n_mallory = to_int(v); }},
      {"P", [](ExperimentConfig& c, std::string_view v) { c.system.power = to_double(v); }},
      {"P_M", [](ExperimentConfig& c, std::string_view v) { c.system.mallory_power = to_double(v); }},
      {"beta", [](ExperimentConfig& c, std::string_view v) { c.system.beta = to_double(v); }},
      {"sigma_a2", [](ExperimentConfig& c, std::string_view v) { c.system.sigma_a2 = to_double(v); }},
      {"sigma_m2", [](ExperimentConfig& c, std::string_view v) { c.system.sigma_m2 = to_double(v); }},
      {"sigma_b2", [](ExperimentConfig& c, std::string_view v) { c.system.sigma_b2 = to_double(v); }},
      {"sigma_e2", [](ExperimentConfig& c, std::string_view v) { c.system.sigma_e2 = to_double(v); }},
      {"M", [](ExperimentConfig& c, std::string_view v) { c.system.order = to_int(v); }},
      {"seed",
       [](ExperimentConfig& c, std::string_view v) {
         const long long s = to_integer(v);
         if (s < 0) throw ConfigError("must be >= 0");
         c.system.seed = static_cast<std::uint64_t>(s);
       }},
      {"snr_grid_db",
       [](ExperimentConfig& c, std::string_view v) { c.sweep.snr_grid_db = to_list<double>(v, to_double); }},
      {"p_m_list",
       [](ExperimentConfig& c, std::string_view v) { c.sweep.p_m_list = to_list<double>(v, to_double); }},
      {"methods",
       [](ExperimentConfig& c, std::string_view v) { c.sweep.methods = to_list<Method>(v, parse_method); }},
      {"n_channel_realizations",
       [](ExperimentConfig& c, std::string_view v) { c.sweep.n_channel_realizations = to_int(v); }},
      {"n_noise", [](ExperimentConfig& c, std::string_view v) { c.sweep.n_noise = to_int(v); }},
      {"n_ber_trials",
       [](ExperimentConfig& c, std::string_view v) { c.sweep.n_ber_trials = to_integer(v); }},
      {"an_mode", [](ExperimentConfig& c, std::string_view v) { c.sweep.an_mode = parse_an_mode(v); }},
      {"output_dir", [](ExperimentConfig& c, std::string_view v) { c.sweep.output_dir = std::string(v); }},
  };
  return table;
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i]);
  }
  return out;
}

}  // namespace

SweepSpec::SweepSpec() {
  for (int s = -10; s <= 20; s += 2) snr_grid_db.push_back(s);
}

void SweepSpec::validate() const {
  if (snr_grid_db.empty()) throw ConfigError("snr_grid_db: must not be empty");
  if (p_m_list.empty()) throw ConfigError("p_m_list: must not be empty");
  for (double p : p_m_list)
    if (!(p >= 0.0)) throw ConfigError("p_m_list: powers must be >= 0");
  if (methods.empty()) throw ConfigError("methods: must not be empty");
  if (n_channel_realizations < 1) throw ConfigError("n_channel_realizations: must be >= 1");
  if (n_noise < 1) throw ConfigError("n_noise: must be >= 1");
  if (n_ber_trials < 1) throw ConfigError("n_ber_trials: must be >= 1");
  if (output_dir.empty()) throw ConfigError("output_dir: must not be empty");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::map<std::string, int> seen;
  int line_no = 0;
  for (std::size_t pos = 0; pos <= text.size();) {
    ++line_no;
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(where + "expected 'key = value', got '" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    const auto& table = setters();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const auto& kv) { return kv.first == key; });
    if (it == table.end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (auto [prev, fresh] = seen.emplace(key, line_no); !fresh)
      throw ConfigError(where + key + ": duplicate key (first set on line " +
                        std::to_string(prev->second) + ")");
    if (value.empty()) throw ConfigError(where + key + ": missing value");
    try {
      it->second(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + key + ": " + e.what());
    }
  }

  auto locate = [&](const std::string& msg) {
    const auto colon = msg.find(':');
    const auto it = seen.find(msg.substr(0, colon));
    return it == seen.end() ? msg : "line " + std::to_string(it->second) + ": " + msg;
  };
  try {
    cfg.system.validate();
    cfg.sweep.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(locate(e.what()));
  }
  return cfg;
}

std::string emit_config(const ExperimentConfig& c) {
  const auto& s = c.system;
  const auto& w = c.sweep;
  std::ostringstream out;
  out << "# system\n"
      << "N = " << s.n_tx << "\n"
      << "N_t = " << s.n_active << "\n"
      << "N_b = " << s.n_bob << "\n"
      << "N_m = " << s.n_mallory << "\n"
      << "P = " << format_double(s.power) << "\n"
      << "P_M = " << format_double(s.mallory_power) << "\n"
      << "beta = " << format_double(s.beta) << "\n"
      << "sigma_a2 = " << format_double(s.sigma_a2) << "\n"
      << "sigma_m2 = " << format_double(s.sigma_m2) << "\n"
      << "sigma_b2 = " << format_double(s.sigma_b2) << "\n"
      << "sigma_e2 = " << format_double(s.sigma_e2) << "\n"
      << "M = " << s.order << "\n"
      << "seed = " << s.seed << "\n"
      << "# sweep (sigma_b2 = sigma_e2 = P / 10^(snr/10) at each grid point)\n"
      << "snr_grid_db = " << join(w.snr_grid_db, format_double) << "\n"
      << "p_m_list = " << join(w.p_m_list, format_double) << "\n"
      << "methods = " << join(w.methods, [](Method m) { return std::string(to_string(m)); }) << "\n"
      << "n_channel_realizations = " << w.n_channel_realizations << "\n"
      << "n_noise = " << w.n_noise << "\n"
      << "n_ber_trials = " << w.n_ber_trials << "\n"
      << "an_mode = " << to_string(w.an_mode) << "\n"
      << "output_dir = " << w.output_dir << "\n";
  return out.str();
}

}  // namespace smsec
