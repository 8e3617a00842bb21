#include "helastic/differentiation.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "helastic/errors.hpp"

namespace helastic {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// r2c/c2r pair with its own aligned buffers. Plans are created under a global
// lock (the FFTW planner is not reentrant); execution only touches the buffers
// owned by the calling thread.
class RealFft {
public:
  explicit RealFft(std::size_t n) : n_(n) {
    real_ = fftw_alloc_real(n);
    spec_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, spec_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec_, real_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(forward_);
      fftw_destroy_plan(backward_);
    }
    fftw_free(real_);
    fftw_free(spec_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  double* real() { return real_; }
  std::complex<double>* spectrum() { return reinterpret_cast<std::complex<double>*>(spec_); }
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }

private:
  std::size_t n_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

RealFft& fft_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<RealFft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealFft>(n);
  return *slot;
}

std::vector<double> central_first(std::span<const double> u) {
  const std::size_t n = u.size();
  const double scale = 0.5 * static_cast<double>(n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = scale * (u[(i + 1) % n] - u[(i + n - 1) % n]);
  }
  return out;
}

std::vector<double> central_second(std::span<const double> u) {
  const std::size_t n = u.size();
  const double scale = static_cast<double>(n) * static_cast<double>(n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = scale * (u[(i + 1) % n] - 2.0 * u[i] + u[(i + n - 1) % n]);
  }
  return out;
}

std::vector<double> spectral(std::span<const double> u, int order) {
  const std::size_t n = u.size();
  RealFft& fft = fft_for(n);
  std::copy(u.begin(), u.end(), fft.real());
  fft.forward();
  auto* c = fft.spectrum();
  const std::size_t half = n / 2;
  const std::complex<double> i2pi(0.0, 2.0 * std::numbers::pi);
  for (std::size_t k = 0; k <= half; ++k) {
    std::complex<double> mult = std::pow(i2pi * static_cast<double>(k), order);
    if (k == half && order % 2 == 1) mult = 0.0;
    c[k] *= mult / static_cast<double>(n);
  }
  fft.backward();
  return {fft.real(), fft.real() + n};
}

void check_grid(std::size_t n) {
  if (n < 4 || n % 2 != 0) throw ContractError("periodic grids need an even number (>= 4) of samples");
}

}  // namespace

std::string_view to_string(DiffScheme s) {
  return s == DiffScheme::central2 ? "central2" : "spectral";
}

DiffScheme parse_diff_scheme(std::string_view name) {
  if (name == "central2") return DiffScheme::central2;
  if (name == "spectral") return DiffScheme::spectral;
  throw DomainError("unknown differentiation scheme '" + std::string(name) + "'");
}

std::vector<double> periodic_derivative(std::span<const double> u, int order, DiffScheme scheme) {
  check_grid(u.size());
  if (order < 0) throw ContractError("derivative order must be >= 0");
  if (order == 0) return {u.begin(), u.end()};
  if (scheme == DiffScheme::spectral) return spectral(u, order);

  // central2: compose 3-point stencils, second differences first.
  std::vector<double> out(u.begin(), u.end());
  int remaining = order;
  while (remaining >= 2) {
    out = central_second(out);
    remaining -= 2;
  }
  if (remaining == 1) out = central_first(out);
  return out;
}

FourierSeries::FourierSeries(std::span<const double> samples) : n_(samples.size()) {
  check_grid(n_);
  RealFft& fft = fft_for(n_);
  std::copy(samples.begin(), samples.end(), fft.real());
  fft.forward();
  const std::size_t half = n_ / 2;
  coeffs_.resize(half + 1);
  for (std::size_t k = 0; k <= half; ++k) coeffs_[k] = fft.spectrum()[k] / static_cast<double>(n_);
}

// u(x) = c0 + sum_{0<k<N/2} 2 Re(c_k e^{2 pi i k x}) + c_{N/2} cos(pi N x)

double FourierSeries::operator()(double x) const {
  const std::size_t half = n_ / 2;
  double sum = coeffs_[0].real();
  for (std::size_t k = 1; k < half; ++k) {
    sum += 2.0 * (coeffs_[k] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) * x)).real();
  }
  sum += coeffs_[half].real() * std::cos(std::numbers::pi * static_cast<double>(n_) * x);
  return sum;
}

double FourierSeries::derivative(double x) const {
  const std::size_t half = n_ / 2;
  double sum = 0.0;
  for (std::size_t k = 1; k < half; ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
    sum += 2.0 * (std::complex<double>(0.0, w) * coeffs_[k] * std::polar(1.0, w * x)).real();
  }
  const double wn = std::numbers::pi * static_cast<double>(n_);
  sum -= coeffs_[half].real() * wn * std::sin(wn * x);
  return sum;
}

double FourierSeries::integral(double x) const {
  const std::size_t half = n_ / 2;
  double sum = coeffs_[0].real() * x;
  for (std::size_t k = 1; k < half; ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
    sum += 2.0 * (coeffs_[k] * (std::polar(1.0, w * x) - 1.0) / std::complex<double>(0.0, w)).real();
  }
  const double wn = std::numbers::pi * static_cast<double>(n_);
  sum += coeffs_[half].real() * std::sin(wn * x) / wn;
  return sum;
}

}  // namespace helastic
