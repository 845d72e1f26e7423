#ifndef LSGST_DESIGN_HPP
#define LSGST_DESIGN_HPP

#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lsgst/circuit.hpp"
#include "lsgst/common.hpp"

namespace lsgst {

inline constexpr const char* design_schema = "lsgst-design-v1";

enum class DesignScheme { log_spaced, last_depth, ramsey_fi, custom };

inline std::string to_string(DesignScheme s) {
  switch (s) {
    case DesignScheme::log_spaced: return "log-spaced";
    case DesignScheme::last_depth: return "last-depth";
    case DesignScheme::ramsey_fi: return "ramsey-fi";
    default: return "custom";
  }
}

inline DesignScheme design_scheme_from_string(const std::string& s) {
  if (s == "log-spaced") return DesignScheme::log_spaced;
  if (s == "last-depth") return DesignScheme::last_depth;
  if (s == "ramsey-fi") return DesignScheme::ramsey_fi;
  if (s == "custom") return DesignScheme::custom;
  throw config_error("unknown design scheme: " + s);
}

struct Design {
  std::vector<Circuit> circuits;
  long n_samples = 10000;
  DesignScheme scheme = DesignScheme::custom;

  void validate() const {
    if (circuits.empty()) throw design_error("Design: empty circuit list");
    std::set<std::string> seen;
    for (const Circuit& c : circuits)
      if (!seen.insert(serialize_circuit(c)).second)
        throw design_error("Design: duplicate circuit " + serialize_circuit(c));
  }
};

// The twelve base fiducial pairs around the LS germ. Selected so that the
// per-depth Fisher information of the 12-circuit design stays full rank over
// the whole depth ladder (checked for p = 1..64 at the default parameter
// layout); any full-rank 12-circuit set is admissible, this one is the
// shipped default. Note the depth-insensitive anchor (diagonal preparation,
// computational readout) that pins the SPAM block at every depth.
inline const std::vector<std::pair<std::string, std::string>>& base12_fiducial_pairs() {
  static const std::vector<std::pair<std::string, std::string>> pairs = {
      {"XP2:0 XP2:0 XPI:1", "XM2:0 XP2:0 XPI:1"},
      {"XM2:1 XM2:1", "YM2:0 YM2:0 YP2:1 YP2:1"},
      {"XM2:0 XPI:1 XPI:1", "XM2:0 YM2:1 XM2:1"},
      {"XP2:0 YP2:0 YP2:1", "YM2:1 XPI:1"},
      {"XPI:0 YP2:0 XP2:1 YP2:1", "XPI:0 XM2:0 XP2:1"},
      {"YM2:0 XM2:0 YP2:1 XPI:1", "YP2:0 XM2:1"},
      {"XP2:0 YM2:0 YM2:1 YP2:1", "YP2:0 YP2:1 YP2:1"},
      {"XPI:0 XPI:0 XP2:1 XPI:1", "YM2:1"},
      {"YM2:1 YM2:1", "I"},
      {"XM2:0 XP2:1 XP2:1", "YP2:0 XPI:1 XPI:1"},
      {"YP2:0 XP2:0 YP2:1", "XPI:0 XM2:0 XP2:1"},
      {"YP2:0 YP2:0 XM2:1 YP2:1", "XPI:1"},
  };
  return pairs;
}

inline Circuit base12_circuit(std::size_t k, int power) {
  const auto& [prep, meas] = base12_fiducial_pairs().at(k);
  return parse_circuit(prep + " | LS^" + std::to_string(power) + " | " + meas);
}

// the 12 base circuits at a single depth p
inline Design design_last_depth(int p, long n_samples = 10000) {
  if (p < 1) throw design_error("design_last_depth: p must be >= 1");
  Design d;
  d.scheme = DesignScheme::last_depth;
  d.n_samples = n_samples;
  for (std::size_t k = 0; k < base12_fiducial_pairs().size(); ++k)
    d.circuits.push_back(base12_circuit(k, p));
  d.validate();
  return d;
}

// 12 base circuits replicated over a power-of-two depth ladder; the ladder
// {2,4,...,p_max} keeps N_c = 12 log2(p_max) as in the reference scaling
inline Design design_log_spaced(int p_max, long n_samples = 10000) {
  if (p_max < 1 || (p_max & (p_max - 1)) != 0)
    throw design_error("design_log_spaced: p_max must be a power of two");
  Design d;
  d.scheme = DesignScheme::log_spaced;
  d.n_samples = n_samples;
  if (p_max == 1) {
    for (std::size_t k = 0; k < base12_fiducial_pairs().size(); ++k)
      d.circuits.push_back(base12_circuit(k, 1));
  } else {
    for (int p = 2; p <= p_max; p *= 2)
      for (std::size_t k = 0; k < base12_fiducial_pairs().size(); ++k)
        d.circuits.push_back(base12_circuit(k, p));
  }
  d.validate();
  return d;
}

// |++> preparation with X (x) X measurement around LS^p
inline Design design_ramsey_fi(int p, long n_samples = 10000) {
  if (p < 0) throw design_error("design_ramsey_fi: p must be >= 0");
  Design d;
  d.scheme = DesignScheme::ramsey_fi;
  d.n_samples = n_samples;
  d.circuits.push_back(
      parse_circuit("YP2:0 YP2:1 | LS^" + std::to_string(p) + " | YM2:0 YM2:1"));
  d.validate();
  return d;
}

// the default 12-circuit design at unit depth
inline Design design_default12(long n_samples = 10000) {
  Design d = design_last_depth(1, n_samples);
  d.scheme = DesignScheme::custom;
  return d;
}

inline nlohmann::ordered_json design_to_json(const Design& d) {
  nlohmann::ordered_json j;
  j["schema"] = design_schema;
  j["scheme"] = to_string(d.scheme);
  j["n_samples"] = d.n_samples;
  std::vector<std::string> strs;
  for (const Circuit& c : d.circuits) strs.push_back(serialize_circuit(c));
  j["circuits"] = strs;
  return j;
}

inline Design design_from_json(const nlohmann::ordered_json& j) {
  if (!j.contains("schema") || j.at("schema") != design_schema)
    throw config_error("design_from_json: schema mismatch");
  Design d;
  d.scheme = design_scheme_from_string(j.at("scheme").get<std::string>());
  d.n_samples = j.at("n_samples").get<long>();
  for (const auto& s : j.at("circuits")) d.circuits.push_back(parse_circuit(s.get<std::string>()));
  d.validate();
  return d;
}

}  // namespace lsgst

#endif
