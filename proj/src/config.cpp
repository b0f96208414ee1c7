#include "lyricbeat/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty() ||
      !std::isfinite(v))
    throw PreconditionError(key + ": '" + value + "' is not a number");
  return v;
}

std::size_t to_size(const std::string& key, const std::string& value) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw PreconditionError(key + ": '" + value + "' is not a non-negative integer");
  return v;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw PreconditionError(key + ": '" + value + "' is not a boolean");
}

}  // namespace

ConfigLayer parse_config_layer(std::istream& in) {
  ConfigLayer layer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (!value.empty() && value.front() == '"') {
      const auto close = value.find('"', 1);
      if (close == std::string::npos) throw ParseError("unterminated string", line_no);
      value = value.substr(1, close - 1);
    } else if (const auto hash = value.find(" #"); hash != std::string::npos) {
      value = trim(value.substr(0, hash));
    }
    if (key.empty()) throw ParseError("empty key", line_no);
    layer.set(std::move(key), std::move(value));
  }
  return layer;
}

ConfigLayer load_config_layer(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  return parse_config_layer(in);
}

bool is_run_level_key(const std::string& key) {
  return key == "dict" || key == "stopwords" || key == "histogram_bin_width" || key == "band";
}

void apply(Config& config, const ConfigLayer& layer) {
  bool bands_reset = false;
  for (const auto& [key, value] : layer.entries) {
    if (key == "buffer_fraction") {
      config.buffer_fraction = to_double(key, value);
      if (config.buffer_fraction <= 0.0) throw PreconditionError("buffer_fraction must be positive");
    } else if (key == "keyword_ratio") {
      config.keyword_ratio = to_double(key, value);
      if (!(config.keyword_ratio > 0.0 && config.keyword_ratio <= 1.0))
        throw PreconditionError("keyword_ratio must be in (0, 1]");
    } else if (key == "dict") {
      config.dict_path = value;
    } else if (key == "stopwords") {
      config.stopwords_path = value;
    } else if (key == "syllable_mismatch_tolerance") {
      config.syllable_mismatch_tolerance = to_size(key, value);
    } else if (key == "exclude_rest_beats") {
      config.exclude_rest_beats = to_bool(key, value);
    } else if (key == "meter_grouping") {
      config.meter_groupings.set(value);
    } else if (key == "monosyllable_stress") {
      if (value == "always") config.monosyllable_stress = MonosyllableStress::kAlwaysStressed;
      else if (value == "keyword") config.monosyllable_stress = MonosyllableStress::kDictionary;
      else throw PreconditionError("monosyllable_stress must be 'always' or 'keyword'");
    } else if (key == "csv_columns") {
      config.columns = parse_column_mapping(value);
    } else if (key == "histogram_bin_width") {
      config.histogram_bin_width = to_double(key, value);
      if (!(config.histogram_bin_width > 0.0 && config.histogram_bin_width <= 1.0))
        throw PreconditionError("histogram_bin_width must be in (0, 1]");
    } else if (key == "band") {
      if (!bands_reset) {
        config.bands.clear();
        bands_reset = true;
      }
      config.bands.push_back(value);
    } else {
      throw PreconditionError("unknown setting '" + key + "'");
    }
  }
}

Config resolve_config(const Config& defaults, const std::vector<const ConfigLayer*>& layers) {
  Config config = defaults;
  for (const ConfigLayer* layer : layers)
    if (layer) apply(config, *layer);
  return config;
}

}  // namespace lyricbeat
