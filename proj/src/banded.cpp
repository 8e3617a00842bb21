#include "helastic/banded.hpp"

#include <cmath>
#include <utility>

#include "helastic/errors.hpp"

namespace helastic {

CyclicPentadiagonal::CyclicPentadiagonal(std::vector<std::array<double, 5>> rows) : n_(rows.size()) {
  if (n_ < 5) throw ContractError("CyclicPentadiagonal: need at least 5 unknowns");
  const std::size_t n = n_;
  corner_rows_ = {0, 1, n - 2, n - 1};
  for (auto& c : corner_) c.assign(n, 0.0);

  // Split into banded part P (kept in rows) and wrap-around part R.
  lu_ = std::move(rows);
  for (std::size_t r = 0; r < 4; ++r) {
    const std::size_t i = corner_rows_[r];
    for (int k = 0; k < 5; ++k) {
      const long j = static_cast<long>(i) + k - 2;
      if (j < 0 || j >= static_cast<long>(n)) {
        const std::size_t wrapped = static_cast<std::size_t>((j + static_cast<long>(n)) % static_cast<long>(n));
        corner_[r][wrapped] += lu_[i][k];
        lu_[i][k] = 0.0;
      }
    }
  }

  // Banded LU without pivoting; lu_[i][k] holds entry (i, i + k - 2).
  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = lu_[k][2];
    if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
      throw ContractError("CyclicPentadiagonal: zero pivot in banded factorization");
    }
    for (std::size_t i = k + 1; i <= std::min(k + 2, n - 1); ++i) {
      const std::size_t col = k - i + 2;  // position of (i, k)
      const double l = lu_[i][col] / pivot;
      lu_[i][col] = l;
      for (std::size_t j = k + 1; j <= std::min(k + 2, n - 1); ++j) {
        lu_[i][j - i + 2] -= l * lu_[k][j - k + 2];
      }
    }
  }

  // Woodbury: A = P + U R with U = [e_r] over the corner rows.
  for (std::size_t r = 0; r < 4; ++r) {
    std::vector<double> e(n, 0.0);
    e[corner_rows_[r]] = 1.0;
    z_[r] = solve_banded(e);
  }
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      double s = (a == b) ? 1.0 : 0.0;
      for (std::size_t j = 0; j < n; ++j) s += corner_[a][j] * z_[b][j];
      cap_lu_[a][b] = s;
    }
  }
  for (int k = 0; k < 4; ++k) {
    int p = k;
    for (int i = k + 1; i < 4; ++i) {
      if (std::abs(cap_lu_[i][k]) > std::abs(cap_lu_[p][k])) p = i;
    }
    cap_piv_[k] = p;
    std::swap(cap_lu_[k], cap_lu_[p]);
    if (cap_lu_[k][k] == 0.0) throw ContractError("CyclicPentadiagonal: singular capacitance matrix");
    for (int i = k + 1; i < 4; ++i) {
      cap_lu_[i][k] /= cap_lu_[k][k];
      for (int j = k + 1; j < 4; ++j) cap_lu_[i][j] -= cap_lu_[i][k] * cap_lu_[k][j];
    }
  }
}

std::vector<double> CyclicPentadiagonal::solve_banded(std::span<const double> rhs) const {
  const std::size_t n = n_;
  std::vector<double> x(rhs.begin(), rhs.end());
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = (i >= 2 ? i - 2 : 0); k < i; ++k) x[i] -= lu_[i][k - i + 2] * x[k];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j <= std::min(ii + 2, n - 1); ++j) x[ii] -= lu_[ii][j - ii + 2] * x[j];
    x[ii] /= lu_[ii][2];
  }
  return x;
}

std::vector<double> CyclicPentadiagonal::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_) throw ContractError("CyclicPentadiagonal::solve: size mismatch");
  std::vector<double> y = solve_banded(rhs);

  std::array<double, 4> w{};
  for (std::size_t a = 0; a < 4; ++a) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += corner_[a][j] * y[j];
    w[a] = s;
  }
  for (int k = 0; k < 4; ++k) std::swap(w[k], w[cap_piv_[k]]);
  for (int i = 1; i < 4; ++i) {
    for (int k = 0; k < i; ++k) w[i] -= cap_lu_[i][k] * w[k];
  }
  for (int i = 3; i >= 0; --i) {
    for (int j = i + 1; j < 4; ++j) w[i] -= cap_lu_[i][j] * w[j];
    w[i] /= cap_lu_[i][i];
  }
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t j = 0; j < n_; ++j) y[j] -= z_[a][j] * w[a];
  }
  return y;
}

}  // namespace helastic
