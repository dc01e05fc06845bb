#include "irbath/fit.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "irbath/error.hpp"

namespace irbath {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "line fit needs at least 2 points");
  const auto n = static_cast<Eigen::Index>(x.size());
  double xm = 0.0;
  for (double v : x) xm += v;
  xm /= static_cast<double>(n);
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = x[i] - xm;
    A(i, 1) = 1.0;
    b(i) = y[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 2) throw ValidationError("degenerate abscissae in line fit");
  Eigen::Vector2d c = qr.solve(b);
  LineFit f;
  f.slope = c(0);
  f.intercept = c(1) - c(0) * xm;
  f.rms = std::sqrt((A * c - b).squaredNorm() / static_cast<double>(n));
  return f;
}

}  // namespace irbath
