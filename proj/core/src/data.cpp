#include "nrt/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nrt/errors.hpp"
#include "nrt/rng.hpp"

namespace nrt {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_cell(const std::string& cell, std::size_t line_no,
                  const std::string& col_name) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DataError("line " + std::to_string(line_no) + ", column '" + col_name +
                    "': not a number: '" + cell + "'");
  }
  if (!std::isfinite(value)) {
    throw DataError("line " + std::to_string(line_no) + ", column '" + col_name +
                    "': non-finite value");
  }
  return value;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw DataError("'" + path + "' is empty");
  return lines;
}

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

LoadedCsv load_csv(const std::string& path, const std::string& response_col) {
  const std::vector<std::string> lines = read_lines(path);
  const std::vector<std::string> header = split_fields(lines[0]);

  std::size_t response_idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == response_col) {
      response_idx = i;
      break;
    }
  }
  if (response_idx == header.size()) {
    throw DataError("response column '" + response_col + "' not found in '" + path + "'");
  }

  LoadedCsv out;
  out.response_name = response_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i != response_idx) out.feature_names.push_back(header[i]);
  }
  out.dataset.dim = out.feature_names.size();

  for (std::size_t row = 1; row < lines.size(); ++row) {
    const std::vector<std::string> fields = split_fields(lines[row]);
    if (fields.size() != header.size()) {
      throw DataError("line " + std::to_string(row + 1) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    Sample s;
    s.features.reserve(out.dataset.dim);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const double v = parse_cell(fields[i], row + 1, header[i]);
      if (i == response_idx) {
        s.response = v;
      } else {
        s.features.push_back(v);
      }
    }
    out.dataset.samples.push_back(std::move(s));
  }
  return out;
}

FeatureTable load_feature_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  FeatureTable out;
  out.names = split_fields(lines[0]);
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const std::vector<std::string> fields = split_fields(lines[row]);
    if (fields.size() != out.names.size()) {
      throw DataError("line " + std::to_string(row + 1) + ": expected " +
                      std::to_string(out.names.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    std::vector<double> values;
    values.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      values.push_back(parse_cell(fields[i], row + 1, out.names[i]));
    }
    out.rows.push_back(std::move(values));
  }
  return out;
}

void save_csv(const std::string& path, const Dataset& d,
              const std::vector<std::string>& feature_names,
              const std::string& response_name) {
  if (feature_names.size() != d.dim) {
    throw std::invalid_argument("save_csv: feature name count != dim");
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (const std::string& name : feature_names) out << name << ',';
  out << response_name << '\n';
  for (const Sample& s : d.samples) {
    for (double f : s.features) out << format17(f) << ',';
    out << format17(s.response) << '\n';
  }
}

StratifiedSplit stratified_split(const Dataset& d, SplitFractions fractions,
                                 std::size_t num_strata, std::uint64_t seed) {
  if (fractions.train < 0.0 || fractions.dev < 0.0 || fractions.test < 0.0) {
    throw std::invalid_argument("stratified_split: fractions must be non-negative");
  }
  const double sum = fractions.train + fractions.dev + fractions.test;
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("stratified_split: fractions must sum to 1");
  }
  if (num_strata == 0) {
    throw std::invalid_argument("stratified_split: num_strata must be >= 1");
  }

  StratifiedSplit out;
  out.train.dim = out.dev.dim = out.test.dim = d.dim;
  const std::size_t n = d.size();
  if (n == 0) return out;

  // Equal-frequency strata over the response order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return d.samples[a].response < d.samples[b].response;
  });

  std::size_t strata = std::min(num_strata, n);
  auto stratum_bounds = [&](std::size_t s) {
    return std::pair<std::size_t, std::size_t>{s * n / strata, (s + 1) * n / strata};
  };

  const bool all_positive =
      fractions.train > 0.0 && fractions.dev > 0.0 && fractions.test > 0.0;
  if (all_positive) {
    for (std::size_t s = 0; s < strata; ++s) {
      const auto [lo, hi] = stratum_bounds(s);
      if (hi - lo < 3) {
        out.merged_strata = true;
        strata = 1;
        break;
      }
    }
  }

  Rng rng(seed);
  for (std::size_t s = 0; s < strata; ++s) {
    const auto [lo, hi] = stratum_bounds(s);
    std::vector<std::size_t> members(order.begin() + lo, order.begin() + hi);
    rng.shuffle(members);
    const auto m = static_cast<double>(members.size());
    const auto n_train = static_cast<std::size_t>(std::llround(fractions.train * m));
    const auto n_train_dev = static_cast<std::size_t>(
        std::llround((fractions.train + fractions.dev) * m));
    for (std::size_t k = 0; k < members.size(); ++k) {
      const Sample& sample = d.samples[members[k]];
      if (k < n_train) {
        out.train.samples.push_back(sample);
      } else if (k < n_train_dev) {
        out.dev.samples.push_back(sample);
      } else {
        out.test.samples.push_back(sample);
      }
    }
  }
  return out;
}

void SyntheticSpec::validate() const {
  if (num_regimes == 0) throw std::invalid_argument("num_regimes must be >= 1");
  if (dim == 0) throw std::invalid_argument("dim must be >= 1");
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  if (true_thresholds.size() + 1 != num_regimes) {
    throw std::invalid_argument("need num_regimes - 1 thresholds");
  }
  if (regime_centers.size() != num_regimes || feature_noise.size() != num_regimes ||
      response_ranges.size() != num_regimes) {
    throw std::invalid_argument("per-regime fields must have num_regimes entries");
  }
  for (const auto& c : regime_centers) {
    if (c.size() != dim) throw std::invalid_argument("regime center dimension mismatch");
  }
  for (double s : feature_noise) {
    if (s < 0.0) throw std::invalid_argument("feature_noise must be non-negative");
  }
  for (std::size_t k = 0; k < num_regimes; ++k) {
    const auto& [lo, hi] = response_ranges[k];
    if (!(lo < hi)) throw std::invalid_argument("response range must have lo < hi");
    if (k + 1 < num_regimes) {
      const auto& [next_lo, next_hi] = response_ranges[k + 1];
      (void)next_hi;
      if (!(hi <= next_lo)) {
        throw std::invalid_argument("response ranges overlap or are unordered");
      }
      const double t = true_thresholds[k];
      if (!(hi <= t && t <= next_lo)) {
        throw std::invalid_argument("threshold " + std::to_string(k) +
                                    " must separate its neighboring ranges");
      }
    }
  }
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t k_regimes = spec.num_regimes;

  std::vector<double> widths(k_regimes);
  double total_width = 0.0;
  for (std::size_t k = 0; k < k_regimes; ++k) {
    widths[k] = spec.response_ranges[k].second - spec.response_ranges[k].first;
    total_width += widths[k];
  }

  SyntheticData out;
  out.true_thresholds = spec.true_thresholds;
  out.regime_counts.assign(k_regimes, 0);
  std::vector<double> regime_sums(k_regimes, 0.0);
  out.dataset.dim = spec.dim;
  out.dataset.samples.reserve(spec.n);
  out.regime_of.reserve(spec.n);

  Rng rng(spec.seed);
  for (std::size_t i = 0; i < spec.n; ++i) {
    // Draw order per sample: regime, response, then dim gaussians.
    std::size_t regime = 0;
    if (spec.weight_by_range_width && total_width > 0.0) {
      const double u = rng.uniform() * total_width;
      double acc = 0.0;
      for (std::size_t k = 0; k < k_regimes; ++k) {
        acc += widths[k];
        if (u < acc || k + 1 == k_regimes) {
          regime = k;
          break;
        }
      }
    } else {
      regime = static_cast<std::size_t>(rng.bounded(k_regimes));
    }

    Sample s;
    s.response = rng.uniform(spec.response_ranges[regime].first,
                             spec.response_ranges[regime].second);
    s.features.resize(spec.dim);
    for (std::size_t j = 0; j < spec.dim; ++j) {
      s.features[j] =
          spec.regime_centers[regime][j] + spec.feature_noise[regime] * rng.gaussian();
    }
    out.dataset.samples.push_back(std::move(s));
    out.regime_of.push_back(static_cast<int>(regime));
    out.regime_counts[regime] += 1;
    regime_sums[regime] += out.dataset.samples.back().response;
  }

  out.regime_means.assign(k_regimes, 0.0);
  for (std::size_t k = 0; k < k_regimes; ++k) {
    if (out.regime_counts[k] > 0) {
      out.regime_means[k] = regime_sums[k] / static_cast<double>(out.regime_counts[k]);
    }
  }
  return out;
}

SyntheticSpec default_synthetic_spec(std::size_t regimes, std::size_t n,
                                     std::size_t dim, double noise,
                                     std::uint64_t seed) {
  SyntheticSpec spec;
  spec.num_regimes = regimes;
  spec.dim = dim;
  spec.n = n;
  spec.seed = seed;
  for (std::size_t k = 0; k < regimes; ++k) {
    const double base = 10.0 * static_cast<double>(k);
    spec.response_ranges.emplace_back(base, base + 8.0);
    if (k + 1 < regimes) spec.true_thresholds.push_back(base + 9.0);
    // Alternating-sign centers keep every pair of regimes well separated.
    std::vector<double> center(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const double sign = ((k + j) % 2 == 0) ? 1.0 : -1.0;
      center[j] = 4.0 * static_cast<double>(k + 1) * sign;
    }
    spec.regime_centers.push_back(std::move(center));
    spec.feature_noise.push_back(noise);
  }
  return spec;
}

}  // namespace nrt
