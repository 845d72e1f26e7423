#ifndef LSGST_DATASET_HPP
#define LSGST_DATASET_HPP

#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lsgst/design.hpp"
#include "lsgst/philox.hpp"
#include "lsgst/probability.hpp"
#include "lsgst/theta.hpp"

namespace lsgst {

inline constexpr const char* dataset_schema = "lsgst-dataset-v1";

struct Dataset {
  struct Record {
    Circuit circuit;
    std::array<long, 4> counts{};  // outcomes 00,01,10,11

    long total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
    RVec frequencies() const {
      RVec f(4);
      const double n = static_cast<double>(total());
      for (int i = 0; i < 4; ++i) f(i) = counts[static_cast<std::size_t>(i)] / n;
      return f;
    }
  };

  std::vector<Record> records;
  std::uint64_t seed = 0;
  std::string rng = rng_algorithm;
  std::optional<ThetaVector> generating_theta;

  void validate() const {
    if (records.empty()) throw config_error("Dataset: empty");
    for (const Record& r : records)
      if (r.total() <= 0) throw config_error("Dataset: circuit with no samples");
  }
};

namespace detail {

// clamp tiny negatives and renormalize before drawing
inline RVec sampling_distribution(RVec p) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < -tol_psd) throw physicality_error("sample: negative probability");
    p(i) = std::max(0.0, p(i));
  }
  return p / p.sum();
}

inline std::array<long, 4> draw_multinomial(const RVec& p, long n, Philox& rng) {
  std::array<long, 4> counts{};
  double cdf[4];
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    acc += p(i);
    cdf[i] = acc;
  }
  cdf[3] = 1.0;
  for (long k = 0; k < n; ++k) {
    const double u = rng.next_double();
    int out = 0;
    while (out < 3 && u >= cdf[out]) ++out;
    ++counts[static_cast<std::size_t>(out)];
  }
  return counts;
}

}  // namespace detail

// Multinomial sampling of the exact model probabilities. Each circuit draws
// from its own counter stream (seed, circuit index), so the result does not
// depend on evaluation order.
inline Dataset sample(const Design& design, const GateSet& gs, SequenceMode mode,
                      std::uint64_t seed) {
  design.validate();
  if (design.n_samples < 1) throw config_error("sample: N_samples must be >= 1");
  Dataset ds;
  ds.seed = seed;
  for (std::size_t i = 0; i < design.circuits.size(); ++i) {
    const RVec p =
        detail::sampling_distribution(circuit_probabilities(design.circuits[i], gs, mode, true));
    Philox rng(seed, static_cast<std::uint64_t>(i));
    ds.records.push_back({design.circuits[i], detail::draw_multinomial(p, design.n_samples, rng)});
  }
  ds.validate();
  return ds;
}

// counts = round(p * n), adjusted to conserve the total; used for
// infinite-sample consistency checks
inline Dataset exact_frequency_dataset(const Design& design, const GateSet& gs,
                                       SequenceMode mode, long n) {
  Dataset ds;
  for (const Circuit& c : design.circuits) {
    const RVec p = detail::sampling_distribution(circuit_probabilities(c, gs, mode, true));
    std::array<long, 4> counts{};
    long assigned = 0;
    int largest = 0;
    for (int i = 0; i < 4; ++i) {
      counts[static_cast<std::size_t>(i)] = std::lround(p(i) * static_cast<double>(n));
      assigned += counts[static_cast<std::size_t>(i)];
      if (p(i) > p(largest)) largest = i;
    }
    counts[static_cast<std::size_t>(largest)] += n - assigned;
    ds.records.push_back({c, counts});
  }
  ds.validate();
  return ds;
}

inline nlohmann::ordered_json dataset_to_json(const Dataset& ds) {
  static const char* outcome_labels[4] = {"00", "01", "10", "11"};
  nlohmann::ordered_json j;
  j["schema"] = dataset_schema;
  j["rng"] = ds.rng;
  j["seed"] = ds.seed;
  nlohmann::ordered_json counts;
  for (const auto& r : ds.records) {
    nlohmann::ordered_json per;
    for (int i = 0; i < 4; ++i) per[outcome_labels[i]] = r.counts[static_cast<std::size_t>(i)];
    counts[serialize_circuit(r.circuit)] = per;
  }
  j["counts"] = counts;
  if (ds.generating_theta) j["generating_theta"] = theta_to_json(*ds.generating_theta);
  return j;
}

inline Dataset dataset_from_json(const nlohmann::ordered_json& j) {
  if (!j.contains("schema") || j.at("schema") != dataset_schema)
    throw config_error("dataset_from_json: schema mismatch");
  Dataset ds;
  ds.rng = j.at("rng").get<std::string>();
  ds.seed = j.at("seed").get<std::uint64_t>();
  static const char* outcome_labels[4] = {"00", "01", "10", "11"};
  for (const auto& [key, per] : j.at("counts").items()) {
    Dataset::Record r;
    r.circuit = parse_circuit(key);
    for (int i = 0; i < 4; ++i)
      r.counts[static_cast<std::size_t>(i)] = per.at(outcome_labels[i]).get<long>();
    ds.records.push_back(r);
  }
  if (j.contains("generating_theta"))
    ds.generating_theta = theta_from_json(j.at("generating_theta"));
  ds.validate();
  return ds;
}

inline void store_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("store_dataset: cannot open " + path);
  out << dataset_to_json(ds).dump(1) << "\n";
}

inline Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("load_dataset: cannot open " + path);
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("load_dataset: corrupt file: ") + e.what());
  }
  return dataset_from_json(j);
}

}  // namespace lsgst

#endif
