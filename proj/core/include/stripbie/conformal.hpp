#pragma once

#include <complex>
#include <utility>

namespace stripbie {

using cplx = std::complex<double>;

/// A point of the strip 0 < Im z < 1 together with its image in the unit disk.
struct MapPoint {
  cplx z;
  cplx zeta;
};

/// zeta = tanh(pi z / 2 - pi i / 4). Walls go to the unit circle: Im z = 0 to
/// the lower half, Im z = 1 to the upper half, Re z -> +-inf to +-1.
/// Throws DomainError when Im z is outside [0, 1].
cplx strip_to_disk(cplx z);

/// d zeta / dz = (pi/2)(1 - zeta^2).
cplx strip_to_disk_derivative(cplx z);

/// z = (1/pi) log((1 + zeta)/(1 - zeta)) + i/2. Throws SingularityError at zeta = +-1
/// and DomainError for |zeta| > 1.
cplx disk_to_strip(cplx zeta);

/// dz / dzeta = 2 / (pi (1 - zeta^2)).
cplx disk_to_strip_derivative(cplx zeta);

MapPoint map_point(cplx z);

/// f0(zeta) = (1/(pi i)) log((1 - zeta)/(1 + zeta)) + 1/2 and its derivative
/// (i/pi)(1/(1 - zeta) + 1/(1 + zeta)). Re f0 is 0 on the upper and 1 on the
/// lower half of the unit circle. Throws SingularityError at zeta = +-1.
std::pair<cplx, cplx> f0_and_derivative(cplx zeta);

/// Pullback of the unit circle to the walls, xi0(t) = Phi(e^{it}).
cplx wall_pullback(double t);

struct LambdaEndpoints {
  double t1;
  double t2;
};

/// Parameters on the unit circle whose images are x = -1 and x = +1 on the
/// bottom wall.
LambdaEndpoints lambda_endpoints();

}  // namespace stripbie
