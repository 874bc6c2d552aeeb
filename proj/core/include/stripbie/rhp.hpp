#pragma once

#include "stripbie/boundary.hpp"
#include "stripbie/geometry.hpp"

#include <vector>

namespace stripbie {

/// Coefficients of the Riemann-Hilbert problem Re[A g(eta)] = gamma + h.
///
/// theta is 0 on the unit circle and the conductor images, pi/2 on the
/// insulator images; A = e^{-i theta}(eta - alpha).
struct RHPData {
  std::vector<double> theta;   // one value per component
  std::vector<cplx> A;         // per node
  std::vector<double> gamma;   // per node
  std::size_t conductors = 0;  // components 1..conductors are conductors
};

RHPData build_rhp(const MappedBoundary& boundary, const StripScene& scene);

}  // namespace stripbie
