#include "fde/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "fde/cli/csv.hpp"
#include "fde/errors.hpp"

namespace fde::cli {

namespace {

enum class Rule { positive, probability, non_negative, order, alpha };

struct KeySpec {
  std::string_view key;
  Rule rule;
};

constexpr KeySpec kKeys[] = {
    {"n_h", Rule::positive},       {"n_m", Rule::positive},      {"m_ratio", Rule::positive},
    {"bite_rate", Rule::positive}, {"beta_mh", Rule::probability}, {"beta_hm", Rule::probability},
    {"mu_h", Rule::positive},      {"mu_m", Rule::positive},     {"eta_h", Rule::positive},
    {"s_h0", Rule::non_negative},  {"i_h0", Rule::non_negative}, {"r_h0", Rule::non_negative},
    {"s_m0", Rule::non_negative},  {"i_m0", Rule::non_negative}, {"alpha", Rule::alpha},
    {"order", Rule::order},        {"t_end", Rule::positive},    {"step", Rule::positive},
    {"epsilon", Rule::positive},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const KeySpec* find_key(std::string_view key) {
  for (const auto& k : kKeys)
    if (k.key == key) return &k;
  return nullptr;
}

// Returns an empty string when v satisfies the rule.
std::string check_rule(Rule rule, double v) {
  switch (rule) {
    case Rule::positive:
      return v > 0.0 ? "" : "must be > 0";
    case Rule::probability:
      return (v > 0.0 && v <= 1.0) ? "" : "must lie in (0, 1]";
    case Rule::non_negative:
      return v >= 0.0 ? "" : "must be >= 0";
    case Rule::order:
      return (v >= 2.0 && v == std::floor(v) && v <= 1000.0) ? "" : "must be an integer >= 2";
    case Rule::alpha:
      return (v > 0.0 && v <= 1.0) ? "" : "must satisfy 0 < alpha <= 1";
  }
  return "";
}

struct Entry {
  double value;
  int line;
};

}  // namespace

void ScenarioConfig::validate() const {
  params.validate();
  dengue::validate_initial_state(initial, params);
  expansion().validate();
  grid().validate();
  if (!(epsilon > 0.0 && epsilon < step))
    throw ValidationError("epsilon must lie in (0, step)");
}

ScenarioConfig default_config() {
  const auto sc = dengue::default_scenario();
  ScenarioConfig c;
  c.params = sc.params;
  c.initial = sc.initial;
  return c;
}

ScenarioConfig parse_scenario_config(std::string_view text, std::string_view source) {
  std::map<std::string, Entry, std::less<>> entries;
  const std::string where(source);

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string at = where + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError(at + "expected `key = value`");
    const auto key = trim(line.substr(0, eq));
    const auto raw = trim(line.substr(eq + 1));
    const KeySpec* spec = find_key(key);
    if (!spec)
      throw ValidationError(at + "unknown key '" + std::string(key) + "'");
    if (entries.contains(key))
      throw ValidationError(at + "duplicate key '" + std::string(key) + "'");
    double value = 0.0;
    try {
      value = parse_double(raw, key);
    } catch (const ValidationError& e) {
      throw ValidationError(at + e.what());
    }
    if (const auto bad = check_rule(spec->rule, value); !bad.empty())
      throw ValidationError(at + std::string(key) + " = " + std::string(raw) + ": " + bad);
    entries.emplace(std::string(key), Entry{value, line_no});
  }

  auto get = [&](std::string_view key) -> std::optional<double> {
    const auto it = entries.find(key);
    return it == entries.end() ? std::nullopt : std::optional<double>(it->second.value);
  };
  auto lines_of = [&](std::initializer_list<std::string_view> keys) {
    std::string out;
    for (auto k : keys) {
      if (const auto it = entries.find(k); it != entries.end())
        out += (out.empty() ? "" : ",") + std::to_string(it->second.line);
    }
    return out.empty() ? std::string("defaults") : "line " + out;
  };

  ScenarioConfig c = default_config();
  auto& p = c.params;
  p.n_h = get("n_h").value_or(p.n_h);
  if (const auto n_m = get("n_m"); n_m && !get("m_ratio")) {
    p.m_ratio = *n_m / p.n_h;
  } else {
    p.m_ratio = get("m_ratio").value_or(p.m_ratio);
  }
  p.n_m = get("n_m").value_or(p.m_ratio * p.n_h);
  p.bite_rate = get("bite_rate").value_or(p.bite_rate);
  p.beta_mh = get("beta_mh").value_or(p.beta_mh);
  p.beta_hm = get("beta_hm").value_or(p.beta_hm);
  p.mu_h = get("mu_h").value_or(p.mu_h);
  p.mu_m = get("mu_m").value_or(p.mu_m);
  p.eta_h = get("eta_h").value_or(p.eta_h);

  auto& y = c.initial;
  y.i_h = get("i_h0").value_or(y.i_h);
  y.r_h = get("r_h0").value_or(y.r_h);
  y.s_h = get("s_h0").value_or(p.n_h - y.i_h - y.r_h);
  y.i_m = get("i_m0").value_or(y.i_m);
  y.s_m = get("s_m0").value_or(p.n_m - y.i_m);

  c.alpha = get("alpha").value_or(c.alpha);
  c.order_n = static_cast<int>(get("order").value_or(c.order_n));
  c.t_end = get("t_end").value_or(c.t_end);
  c.step = get("step").value_or(c.step);
  c.epsilon = get("epsilon").value_or(c.epsilon);

  try {
    p.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(where + " (" + lines_of({"n_h", "n_m", "m_ratio"}) + "): " + e.what());
  }
  try {
    dengue::validate_initial_state(y, p);
  } catch (const ValidationError& e) {
    throw ValidationError(where + " (" +
                          lines_of({"s_h0", "i_h0", "r_h0", "s_m0", "i_m0", "n_h", "n_m"}) +
                          "): " + e.what());
  }
  try {
    c.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(where + " (" + lines_of({"t_end", "step", "epsilon"}) + "): " + e.what());
  }
  return c;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_config(text.str(), path.string());
}

}  // namespace fde::cli
