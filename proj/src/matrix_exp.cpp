#include "zonemv/matrix_exp.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace zonemv {

namespace {

// Higham (2005) coefficients for the [13/13] Padé approximant and the
// largest 1-norm for which it is accurate to double precision.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exp: matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("matrix_exp: non-finite entry");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  }
  const Eigen::MatrixXd a = m * std::ldexp(1.0, -squarings);

  const auto& b = kPade13;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;

  const Eigen::MatrixXd u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                                  b[5] * a4 + b[3] * a2 + b[1] * id;
  const Eigen::MatrixXd u = a * u_inner;
  const Eigen::MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                            b[4] * a4 + b[2] * a2 + b[0] * id;

  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

}  // namespace zonemv
