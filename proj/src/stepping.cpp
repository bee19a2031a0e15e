#include "tfde/stepping.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tfde/errors.hpp"

namespace tfde {

Eigen::PartialPivLU<Eigen::MatrixXd> factor_system(
    const Eigen::MatrixXd& m, const char* what,
    std::vector<std::string>& warnings) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!pivots.allFinite() || pivots.minCoeff() == 0.0) {
    throw SingularSystem(std::string(what) + " is singular");
  }
  const double rc = lu.rcond();
  if (!(rc > std::numeric_limits<double>::epsilon())) {
    std::ostringstream os;
    os << what << " is numerically singular (rcond " << rc << ")";
    warnings.push_back(os.str());
  }
  return lu;
}

GrowthGuard::GrowthGuard(double data_scale)
    : limit_(kGrowthLimit * std::max(1.0, std::abs(data_scale))) {}

void GrowthGuard::check(const Eigen::Ref<const Eigen::MatrixXd>& state,
                        std::size_t step) const {
  if (!state.allFinite()) {
    std::ostringstream os;
    os << "blowup: non-finite solution values at time step " << step;
    throw BlowupError(step, os.str());
  }
  const double peak = state.size() == 0 ? 0.0 : state.cwiseAbs().maxCoeff();
  if (peak > limit_) {
    std::ostringstream os;
    os << "blowup: solution magnitude " << peak << " exceeds growth limit "
       << limit_ << " at time step " << step;
    throw BlowupError(step, os.str());
  }
}

}  // namespace tfde
