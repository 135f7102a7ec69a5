#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace isac {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kPi = 3.14159265358979323846;

// All failure modes surface as this type so callers (and the CLI's JSON error
// records) can match on a stable code string instead of parsing prose.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail.empty() ? code : code + ": " + detail),
        code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail = "") {
  throw Error(code, detail);
}

} // namespace isac
