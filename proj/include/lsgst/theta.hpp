#ifndef LSGST_THETA_HPP
#define LSGST_THETA_HPP

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lsgst/common.hpp"
#include "lsgst/single_qubit.hpp"

namespace lsgst {

inline constexpr const char* theta_schema = "lsgst-theta-v1";

// Ordering of the estimation vector theta:
//   gamma_th, gamma_d,
//   for each gate qubit 0 then qubit 1, alphabet order XPI,XP2,XM2,YP2,YM2:
//     gamma1, delta1 [, dgamma]
//   eps_rho, eps_m0, eps_m1
//   [theta_ls] [omega0_t]
struct ThetaLayout {
  bool with_dgamma = false;
  bool with_theta_ls = false;
  bool with_omega0 = false;

  int per_gate() const { return with_dgamma ? 3 : 2; }
  int size() const {
    return 2 + 10 * per_gate() + 3 + (with_theta_ls ? 1 : 0) + (with_omega0 ? 1 : 0);
  }

  void validate() const {
    const int n = size();
    if (n < 24 || n > 36)
      throw config_error("ThetaLayout: parameter count " + std::to_string(n) +
                         " outside the supported 24..36 range");
  }

  int gate_offset(int gate_index) const { return 2 + gate_index * per_gate(); }
  int spam_offset() const { return 2 + 10 * per_gate(); }
  int theta_ls_offset() const { return spam_offset() + 3; }
  int omega0_offset() const { return theta_ls_offset() + (with_theta_ls ? 1 : 0); }

  std::vector<std::string> names() const {
    std::vector<std::string> out{"gamma_th", "gamma_d"};
    for (int q = 0; q < 2; ++q)
      for (const auto& [label, angles] : single_qubit_alphabet()) {
        (void)angles;
        const std::string base = std::string(label) + ":" + std::to_string(q);
        out.push_back(base + ".gamma1");
        out.push_back(base + ".delta1");
        if (with_dgamma) out.push_back(base + ".dgamma");
      }
    out.insert(out.end(), {"eps_rho", "eps_m0", "eps_m1"});
    if (with_theta_ls) out.push_back("theta_ls");
    if (with_omega0) out.push_back("omega0_t");
    return out;
  }

  bool operator==(const ThetaLayout&) const = default;
};

struct ThetaVector {
  ThetaLayout layout;
  RVec values;

  ThetaVector() = default;
  explicit ThetaVector(ThetaLayout lo) : layout(lo), values(RVec::Zero(lo.size())) {
    layout.validate();
  }
  ThetaVector(ThetaLayout lo, RVec v) : layout(lo), values(std::move(v)) {
    layout.validate();
    if (values.size() != layout.size())
      throw dimension_error("ThetaVector: value count does not match layout");
  }

  int size() const { return static_cast<int>(values.size()); }

  double& operator[](int i) { return values(i); }
  double operator[](int i) const { return values(i); }

  double& at_name(const std::string& name) {
    const auto ns = layout.names();
    for (std::size_t i = 0; i < ns.size(); ++i)
      if (ns[i] == name) return values(static_cast<Eigen::Index>(i));
    throw config_error("ThetaVector: unknown parameter " + name);
  }
  double at_name(const std::string& name) const {
    return const_cast<ThetaVector*>(this)->at_name(name);
  }
};

inline nlohmann::ordered_json theta_to_json(const ThetaVector& t) {
  nlohmann::ordered_json j;
  j["schema"] = theta_schema;
  j["layout"] = {{"with_dgamma", t.layout.with_dgamma},
                 {"with_theta_ls", t.layout.with_theta_ls},
                 {"with_omega0", t.layout.with_omega0}};
  nlohmann::ordered_json vals;
  const auto names = t.layout.names();
  for (int i = 0; i < t.size(); ++i) vals[names[static_cast<std::size_t>(i)]] = t.values(i);
  j["values"] = vals;
  return j;
}

inline ThetaVector theta_from_json(const nlohmann::ordered_json& j) {
  if (!j.contains("schema") || j.at("schema") != theta_schema)
    throw config_error("theta_from_json: schema mismatch");
  ThetaLayout lo;
  lo.with_dgamma = j.at("layout").at("with_dgamma").get<bool>();
  lo.with_theta_ls = j.at("layout").at("with_theta_ls").get<bool>();
  lo.with_omega0 = j.at("layout").at("with_omega0").get<bool>();
  ThetaVector t(lo);
  const auto names = lo.names();
  const auto& vals = j.at("values");
  for (int i = 0; i < t.size(); ++i) {
    const auto& name = names[static_cast<std::size_t>(i)];
    if (!vals.contains(name)) throw config_error("theta_from_json: missing value " + name);
    t.values(i) = vals.at(name).get<double>();
  }
  return t;
}

}  // namespace lsgst

#endif
