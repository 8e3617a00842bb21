#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace helastic {

/// How derivatives of periodic samples on the uniform grid x_i = i/N are taken.
///  - central2: second-order central differences (3-point stencils, composed for order > 2)
///  - spectral: exact differentiation of the trigonometric interpolant (FFT)
enum class DiffScheme { central2, spectral };

std::string_view to_string(DiffScheme s);
DiffScheme parse_diff_scheme(std::string_view name);

/// d^order/dx^order of periodic samples over one period [0, 1).
std::vector<double> periodic_derivative(std::span<const double> u, int order, DiffScheme scheme);

/// Trigonometric interpolant of N (even) periodic samples on [0, 1).
class FourierSeries {
public:
  explicit FourierSeries(std::span<const double> samples);

  double operator()(double x) const;
  double derivative(double x) const;
  /// Integral from 0 to x of the interpolant.
  double integral(double x) const;
  double mean() const { return coeffs_.front().real(); }
  std::size_t size() const { return n_; }

private:
  std::size_t n_;
  std::vector<std::complex<double>> coeffs_;  // k = 0 .. N/2, normalized by N
};

}  // namespace helastic
