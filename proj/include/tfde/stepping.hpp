#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tfde {

/// Magnitude, relative to the data scale, beyond which a run counts as blown up.
inline constexpr double kGrowthLimit = 1e10;

/// LU of a time-independent system matrix. Throws SingularSystem when the
/// factorization has a zero or non-finite pivot; a reciprocal condition
/// estimate at or below machine epsilon only appends a warning.
Eigen::PartialPivLU<Eigen::MatrixXd> factor_system(
    const Eigen::MatrixXd& m, const char* what,
    std::vector<std::string>& warnings);

/// Aborts a run whose state is non-finite or has grown past
/// kGrowthLimit * scale. Throws BlowupError carrying the step index.
class GrowthGuard {
 public:
  explicit GrowthGuard(double data_scale);

  void check(const Eigen::Ref<const Eigen::MatrixXd>& state,
             std::size_t step) const;
  double limit() const { return limit_; }

 private:
  double limit_;
};

}  // namespace tfde
