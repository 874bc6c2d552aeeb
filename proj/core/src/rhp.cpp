#include "stripbie/rhp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stripbie {

RHPData build_rhp(const MappedBoundary& boundary, const StripScene& scene) {
  constexpr double kPi = std::numbers::pi;
  if (boundary.components() != scene.size() + 1) {
    throw std::invalid_argument("boundary and scene disagree on the number of inclusions");
  }
  RHPData rhp;
  rhp.conductors = scene.conductor_count();
  rhp.theta.assign(boundary.components(), 0.0);
  rhp.A.resize(boundary.nodes());
  rhp.gamma.assign(boundary.nodes(), 0.0);

  for (std::size_t k = 0; k < boundary.components(); ++k) {
    const bool insulator = k > rhp.conductors;
    if (k > 0 && scene.inclusions[k - 1].kind != (insulator ? InclusionKind::Insulator
                                                            : InclusionKind::Conductor)) {
      throw std::invalid_argument("scene must list conductors before insulators");
    }
    rhp.theta[k] = insulator ? kPi / 2.0 : 0.0;
    const cplx rot = std::polar(1.0, -rhp.theta[k]);
    for (std::size_t i = boundary.offsets[k]; i < boundary.offsets[k + 1]; ++i) {
      const cplx eta = boundary.eta[i];
      rhp.A[i] = rot * (eta - boundary.alpha);
      if (k == 0) continue;
      const cplx ratio = (1.0 - eta) / (1.0 + eta);
      rhp.gamma[i] = insulator ? std::log(std::abs(ratio)) / kPi : -std::arg(ratio) / kPi;
    }
  }
  return rhp;
}

}  // namespace stripbie
