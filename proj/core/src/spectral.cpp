#include "stripbie/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace stripbie::spectral {

namespace {

// fftw_plan creation is not thread-safe; execution with new-array functions is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto& plan = plans_[{n, sign}];
    if (!plan) {
      std::vector<cplx> scratch(n);
      auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
      plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
      if (!plan) throw std::runtime_error("fftw plan creation failed");
    }
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void transform(std::vector<cplx>& data, int sign) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(data.size(), sign), buf, buf);
}

std::vector<cplx> to_complex(std::span<const double> x) { return {x.begin(), x.end()}; }

}  // namespace

std::vector<cplx> forward(std::span<const cplx> samples) {
  std::vector<cplx> out(samples.begin(), samples.end());
  transform(out, FFTW_FORWARD);
  return out;
}

std::vector<cplx> inverse(std::span<const cplx> coefficients) {
  std::vector<cplx> out(coefficients.begin(), coefficients.end());
  transform(out, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<cplx> derivative(std::span<const cplx> samples) {
  const std::size_t n = samples.size();
  auto coef = forward(samples);
  for (std::size_t k = 0; k < n; ++k) {
    const long w = wavenumber(k, n);
    coef[k] *= (n % 2 == 0 && k == n / 2) ? cplx(0.0) : cplx(0.0, static_cast<double>(w));
  }
  return inverse(coef);
}

std::vector<double> derivative(std::span<const double> samples) {
  const auto d = derivative(std::span<const cplx>(to_complex(samples)));
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].real();
  return out;
}

std::vector<double> apply_symbol(std::span<const double> samples, std::span<const cplx> symbol) {
  auto coef = forward(to_complex(samples));
  for (std::size_t k = 0; k < coef.size(); ++k) coef[k] *= symbol[k];
  const auto back = inverse(coef);
  std::vector<double> out(back.size());
  for (std::size_t i = 0; i < back.size(); ++i) out[i] = back[i].real();
  return out;
}

std::vector<double> conjugate(std::span<const double> samples) {
  const std::size_t n = samples.size();
  std::vector<cplx> symbol(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long w = wavenumber(k, n);
    if (n % 2 == 0 && k == n / 2) continue;
    symbol[k] = w > 0 ? cplx(0.0, -1.0) : (w < 0 ? cplx(0.0, 1.0) : cplx(0.0));
  }
  return apply_symbol(samples, symbol);
}

cplx interpolate(std::span<const cplx> samples, double t) {
  const std::size_t n = samples.size();
  const auto coef = forward(samples);
  cplx sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const long w = wavenumber(k, n);
    if (n % 2 == 0 && k == n / 2) {
      sum += coef[k] * std::cos(static_cast<double>(w) * t);
    } else {
      sum += coef[k] * std::polar(1.0, static_cast<double>(w) * t);
    }
  }
  return sum / static_cast<double>(n);
}

double interpolate(std::span<const double> samples, double t) {
  return interpolate(std::span<const cplx>(to_complex(samples)), t).real();
}

}  // namespace stripbie::spectral
