#pragma once

#include <array>
#include <span>
#include <vector>

namespace helastic {

/// Cyclic pentadiagonal matrix: row i couples x_{i-2}, ..., x_{i+2} with
/// periodic wrap-around. Factorized once on construction; solve() may be
/// called repeatedly (e.g. once per chart component).
///
/// The banded (non-wrapping) part is LU-factorized without pivoting and the
/// wrap-around corners are folded back in through a rank-4 Woodbury update.
/// No pivoting means the banded part must be safely factorizable; symmetric
/// positive definite or diagonally dominant systems are.
class CyclicPentadiagonal {
public:
  /// rows[i][k] is the coefficient of x_{i + k - 2 (mod n)} in row i.
  explicit CyclicPentadiagonal(std::vector<std::array<double, 5>> rows);

  std::size_t size() const { return n_; }
  std::vector<double> solve(std::span<const double> rhs) const;

private:
  std::vector<double> solve_banded(std::span<const double> rhs) const;

  std::size_t n_;
  std::vector<std::array<double, 5>> lu_;         // band storage of L\U, column offset k - 2
  std::array<std::size_t, 4> corner_rows_{};      // rows carrying wrap-around entries
  std::array<std::vector<double>, 4> corner_;     // dense rows of the wrap-around part (sparse in practice)
  std::array<std::vector<double>, 4> z_;          // P^{-1} e_{corner_rows_[j]}
  std::array<std::array<double, 4>, 4> cap_lu_{}; // LU of I + R Z (partial pivoting)
  std::array<int, 4> cap_piv_{};
};

}  // namespace helastic
