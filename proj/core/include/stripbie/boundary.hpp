#pragma once

#include "stripbie/geometry.hpp"

#include <complex>
#include <span>
#include <vector>

namespace stripbie {

/// Samples of the boundary of the computational domain G in the unit disk.
///
/// Component 0 is the unit circle e^{it} (counterclockwise); component k >= 1
/// is the image of inclusion k-1 under the strip-to-disk map, traversed
/// clockwise. Nodes of component k sit at t_j = 2 pi j / n_k and are stored
/// contiguously in the flat arrays starting at offsets[k].
struct MappedBoundary {
  std::vector<std::size_t> offsets;  // components() + 1 entries
  std::vector<double> t;
  std::vector<cplx> eta;
  std::vector<cplx> deta;
  std::vector<cplx> d2eta;
  cplx alpha;         // auxiliary interior point of G
  cplx alpha_strip;   // its preimage in the strip

  std::size_t components() const { return offsets.size() - 1; }
  std::size_t nodes() const { return offsets.back(); }
  std::size_t size(std::size_t k) const { return offsets[k + 1] - offsets[k]; }
  double weight(std::size_t k) const;
  std::size_t component_of(std::size_t node) const;

  std::span<const cplx> eta_of(std::size_t k) const { return slice(eta, k); }
  std::span<const cplx> deta_of(std::size_t k) const { return slice(deta, k); }

  template <class T>
  std::span<const T> slice(const std::vector<T>& flat, std::size_t k) const {
    return std::span<const T>(flat).subspan(offsets[k], size(k));
  }
  template <class T>
  std::span<T> slice(std::vector<T>& flat, std::size_t k) const {
    return std::span<T>(flat).subspan(offsets[k], size(k));
  }
};

struct DiscretizeOptions {
  std::size_t n = 2048;       // nodes on every inclusion image
  std::size_t outer_n = 0;    // nodes on the unit circle; 0 means n
};

/// Samples every boundary component. eta' of inclusion images uses the chain
/// rule with the closed-form map derivative; eta'' is obtained spectrally.
/// Throws ResolutionError for degenerate images, orientation failures or when
/// no admissible auxiliary point exists.
MappedBoundary discretize(const StripScene& scene, const DiscretizeOptions& options);
MappedBoundary discretize(const StripScene& scene, std::size_t n);

/// Signed winding number of component k about p, by the discrete Cauchy sum.
double winding_number(const MappedBoundary& boundary, std::size_t k, cplx p);

bool is_power_of_two(std::size_t n);

}  // namespace stripbie
