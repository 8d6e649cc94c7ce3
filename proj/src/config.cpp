#include "ycs/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <sstream>

namespace ycs {

namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void insert_entry(std::map<std::string, std::string>& entries,
                  std::string_view line, bool allow_replace,
                  const char* source) {
  const std::size_t eq = line.find('=');
  if (eq == std::string_view::npos) {
    fail(std::string(source) + " entry \"" + std::string(line) +
         "\" is not of the form key = value");
  }
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty()) fail(std::string(source) + " entry with empty key");
  if (value.empty()) fail("config key \"" + key + "\": empty value");
  if (!allow_replace && entries.contains(key)) {
    fail("duplicate config key \"" + key + "\"");
  }
  entries[key] = value;
}

class KeyReader {
 public:
  explicit KeyReader(std::map<std::string, std::string> entries)
      : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.contains(key); }

  std::string take(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
      fail("missing required config key \"" + key + "\"");
    }
    std::string value = it->second;
    entries_.erase(it);
    return value;
  }

  std::string take_or(const std::string& key, const std::string& fallback) {
    return has(key) ? take(key) : fallback;
  }

  void finish() const {
    if (!entries_.empty()) {
      fail("unknown config key \"" + entries_.begin()->first + "\"");
    }
  }

 private:
  std::map<std::string, std::string> entries_;
};

double parse_double(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double parsed = std::strtod(begin, &end);
  if (end != begin + value.size()) {
    fail("config key \"" + key + "\": cannot parse \"" + value +
         "\" as a number");
  }
  return parsed;
}

long long parse_int(const std::string& key, const std::string& value) {
  long long parsed = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    fail("config key \"" + key + "\": cannot parse \"" + value +
         "\" as an integer");
  }
  return parsed;
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  std::uint64_t parsed = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    fail("config key \"" + key + "\": cannot parse \"" + value +
         "\" as an unsigned integer");
  }
  return parsed;
}

double take_double(KeyReader& reader, const std::string& key,
                   double fallback, double lo, double hi, bool lo_open,
                   bool hi_open, const char* range) {
  if (!reader.has(key)) return fallback;
  const double v = parse_double(key, reader.take(key));
  const bool below = lo_open ? !(v > lo) : !(v >= lo);
  const bool above = hi_open ? !(v < hi) : !(v <= hi);
  if (below || above) {
    fail("config key \"" + key + "\": value must be in " + range);
  }
  return v;
}

long long take_int(KeyReader& reader, const std::string& key,
                   long long fallback, long long lo, long long hi,
                   const char* range, bool required = false) {
  if (!reader.has(key) && !required) return fallback;
  const long long v = parse_int(key, reader.take(key));
  if (v < lo || v > hi) {
    fail("config key \"" + key + "\": value must be in " + range);
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text,
                              const std::vector<std::string>& overrides) {
  std::map<std::string, std::string> entries;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    if (trim(line).empty()) continue;
    insert_entry(entries, line, /*allow_replace=*/false, "config");
  }
  for (const std::string& override_entry : overrides) {
    insert_entry(entries, override_entry, /*allow_replace=*/true, "override");
  }

  KeyReader reader(std::move(entries));
  ExperimentConfig config;

  const std::string task = reader.take("task");
  if (task == "mux") {
    config.task = MuxVariant::kStandard;
  } else if (task == "mux_asym") {
    config.task = MuxVariant::kLessSymmetric;
  } else if (task == "mux_multi") {
    config.task = MuxVariant::kMultiAction;
  } else if (task == "mux_imbalanced") {
    config.task = MuxVariant::kImbalanced;
  } else {
    fail("config key \"task\": value must be one of "
         "mux, mux_asym, mux_multi, mux_imbalanced");
  }

  config.k = static_cast<int>(
      take_int(reader, "k", 0, 2, 5, "{2..5}", /*required=*/true));

  if (config.task == MuxVariant::kImbalanced) {
    if (!reader.has("bias")) {
      fail("missing required config key \"bias\" (task mux_imbalanced)");
    }
    config.bias = take_double(reader, "bias", 0.8, 0.0, 1.0, true, true,
                              "(0, 1)");
  } else if (reader.has("bias")) {
    // Accepted and range-checked for any task; only the imbalanced
    // variant reads it.
    config.bias = take_double(reader, "bias", 0.8, 0.0, 1.0, true, true,
                              "(0, 1)");
  }

  const std::string representation = reader.take("representation");
  if (representation == "traditional") {
    config.params.mode = RuleMode::kTraditional;
  } else if (representation == "multi") {
    config.params.mode = RuleMode::kMulti;
  } else {
    fail("config key \"representation\": value must be one of "
         "traditional, multi");
  }

  const std::string scope = reader.take_or("ga_scope", "niche");
  if (scope == "niche") {
    config.params.ga_scope = GaScope::kNiche;
  } else if (scope == "panmictic") {
    config.params.ga_scope = GaScope::kPanmictic;
  } else {
    fail("config key \"ga_scope\": value must be one of niche, panmictic");
  }

  config.params.population_size = static_cast<int>(take_int(
      reader, "P", 0, 2, 10'000'000, "[2, 10000000]", /*required=*/true));
  config.params.p_hash =
      take_double(reader, "p_hash", 0.6, 0.0, 1.0, false, false, "[0, 1]");
  config.params.mutation_rate =
      take_double(reader, "mu", 0.04, 0.0, 1.0, false, false, "[0, 1]");
  config.params.fitness_exponent =
      take_double(reader, "nu", 10.0, 1.0, 1e9, false, false, "[1, 1e9]");
  config.params.crossover_rate =
      take_double(reader, "chi", 0.5, 0.0, 1.0, false, false, "[0, 1]");
  config.params.ga_threshold =
      take_double(reader, "theta_ga", 25.0, 0.0,
                  std::numeric_limits<double>::infinity(), false, false,
                  "[0, inf]");
  config.params.learning_rate =
      take_double(reader, "beta", 0.2, 0.0, 1.0, true, false, "(0, 1]");
  config.params.panmictic_rate =
      take_double(reader, "g", 0.0, 0.0, 1.0, false, false, "[0, 1]");

  config.num_exploit_trials = take_int(reader, "trials", 0, 0,
                                       std::numeric_limits<long long>::max(),
                                       "[0, 2^63)", /*required=*/true);
  config.num_runs = static_cast<int>(
      take_int(reader, "runs", 20, 1, 1'000'000, "[1, 1000000]"));
  if (reader.has("seed")) {
    config.seed = parse_seed("seed", reader.take("seed"));
  } else {
    fail("missing required config key \"seed\"");
  }
  config.ma_window = static_cast<int>(
      take_int(reader, "ma_window", 50, 1, 1'000'000'000, "[1, 1e9]"));
  config.optimality_hold = static_cast<int>(
      take_int(reader, "optimality_hold", 50, 1, 1'000'000'000, "[1, 1e9]"));
  config.metric_stride = static_cast<int>(
      take_int(reader, "metric_stride", 1, 1, 1'000'000'000, "[1, 1e9]"));

  reader.finish();
  config.params.validate();
  return config;
}

std::vector<std::pair<std::string, std::string>> config_items(
    const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> items;
  const auto add = [&](const char* key, std::string value) {
    items.emplace_back(key, std::move(value));
  };
  switch (config.task) {
    case MuxVariant::kStandard: add("task", "mux"); break;
    case MuxVariant::kLessSymmetric: add("task", "mux_asym"); break;
    case MuxVariant::kMultiAction: add("task", "mux_multi"); break;
    case MuxVariant::kImbalanced: add("task", "mux_imbalanced"); break;
  }
  add("k", std::to_string(config.k));
  if (config.task == MuxVariant::kImbalanced) {
    add("bias", format_double(config.bias));
  }
  add("representation",
      config.params.mode == RuleMode::kMulti ? "multi" : "traditional");
  add("ga_scope", config.params.ga_scope == GaScope::kPanmictic
                      ? "panmictic"
                      : "niche");
  add("P", std::to_string(config.params.population_size));
  add("p_hash", format_double(config.params.p_hash));
  add("mu", format_double(config.params.mutation_rate));
  add("nu", format_double(config.params.fitness_exponent));
  add("chi", format_double(config.params.crossover_rate));
  add("theta_ga", format_double(config.params.ga_threshold));
  add("beta", format_double(config.params.learning_rate));
  add("g", format_double(config.params.panmictic_rate));
  add("trials", std::to_string(config.num_exploit_trials));
  add("runs", std::to_string(config.num_runs));
  add("seed", std::to_string(config.seed));
  add("ma_window", std::to_string(config.ma_window));
  add("optimality_hold", std::to_string(config.optimality_hold));
  add("metric_stride", std::to_string(config.metric_stride));
  return items;
}

}  // namespace ycs
