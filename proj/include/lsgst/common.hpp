#ifndef LSGST_COMMON_HPP
#define LSGST_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lsgst {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx ii{0.0, 1.0};

// shared numerical tolerances
inline constexpr double tol_exact = 1e-12;
inline constexpr double tol_psd = 1e-10;

struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct physicality_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct design_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct sensitivity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lsgst

#endif
