#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hrz/murmuration.hpp"

// Oscillatory model fit y = A x^alpha sin(B x^beta).  A coarse grid over
// (alpha, B, beta) with the closed-form optimal A seeds a Levenberg-damped
// Gauss-Newton pass on all four parameters.  Fully deterministic.

namespace hrz::murmur {

namespace {

struct Params {
  double A, alpha, B, beta;
};

double sse(const Params& p, std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - p.A * std::pow(x[i], p.alpha) * std::sin(p.B * std::pow(x[i], p.beta));
    s += r * r;
  }
  return s;
}

// solve 4x4 system M d = v in place, partial pivoting; false if singular
bool solve4(std::array<std::array<double, 4>, 4>& m, std::array<double, 4>& v,
            std::array<double, 4>& d) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-300) return false;
    std::swap(m[col], m[piv]);
    std::swap(v[col], v[piv]);
    for (int r = col + 1; r < 4; ++r) {
      double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
      v[r] -= f * v[col];
    }
  }
  for (int r = 3; r >= 0; --r) {
    double s = v[r];
    for (int c = r + 1; c < 4; ++c) s -= m[r][c] * d[c];
    d[r] = s / m[r][r];
  }
  return true;
}

}  // namespace

FitResult fit_murmuration(std::span<const double> x, std::span<const double> y) {
  const std::size_t npts = x.size();
  if (npts != y.size()) throw std::invalid_argument("fit_murmuration: size mismatch");
  if (npts < 8) throw std::invalid_argument("fit_murmuration: need >= 8 points");
  for (double xi : x)
    if (xi <= 0) throw std::invalid_argument("fit_murmuration: x must be positive");

  // ---- coarse grid ----
  std::vector<double> alphas, betas, freqs;
  for (double a = -2.0; a <= 2.0 + 1e-9; a += 0.25) alphas.push_back(a);
  for (double b = 0.05; b <= 1.5 + 1e-9; b += 0.05) betas.push_back(b);
  for (double lb = -9.5; lb <= 2.5 + 1e-9; lb += 0.15) freqs.push_back(std::exp(lb));

  Params best{0, 0, 1, 1};
  double best_sse = 0.0;
  {
    // baseline: A = 0
    for (double yi : y) best_sse += yi * yi;
  }
  std::vector<double> xa(npts), xb(npts);
  for (double alpha : alphas) {
    for (std::size_t i = 0; i < npts; ++i) xa[i] = std::pow(x[i], alpha);
    for (double beta : betas) {
      for (std::size_t i = 0; i < npts; ++i) xb[i] = std::pow(x[i], beta);
      for (double B : freqs) {
        double sg = 0.0, sgy = 0.0;
        for (std::size_t i = 0; i < npts; ++i) {
          double g = xa[i] * std::sin(B * xb[i]);
          sg += g * g;
          sgy += g * y[i];
        }
        if (sg < 1e-300) continue;
        double A = sgy / sg;
        // SSE = sum y^2 - A * sgy
        double s = -A * sgy;
        for (double yi : y) s += yi * yi;
        if (s < best_sse - 1e-15 * (1.0 + best_sse)) {
          best_sse = s;
          best = {A, alpha, B, beta};
        }
      }
    }
  }

  // ---- Levenberg-damped Gauss-Newton on (A, alpha, B, beta) ----
  Params p = best;
  double cur = sse(p, x, y);
  double lambda = 1e-3;
  bool converged = false;
  for (int iter = 0; iter < 300; ++iter) {
    std::array<std::array<double, 4>, 4> jtj{};
    std::array<double, 4> jtr{};
    for (std::size_t i = 0; i < npts; ++i) {
      double lx = std::log(x[i]);
      double pa = std::pow(x[i], p.alpha);
      double pb = std::pow(x[i], p.beta);
      double u = p.B * pb;
      double su = std::sin(u), cu = std::cos(u);
      double model = p.A * pa * su;
      double r = y[i] - model;
      std::array<double, 4> g = {
          pa * su,                  // d/dA
          model * lx,               // d/dalpha
          p.A * pa * cu * pb,       // d/dB
          p.A * pa * cu * u * lx,   // d/dbeta
      };
      for (int a = 0; a < 4; ++a) {
        jtr[a] += g[a] * r;
        for (int b = 0; b < 4; ++b) jtj[a][b] += g[a] * g[b];
      }
    }
    bool stepped = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      auto m = jtj;
      for (int a = 0; a < 4; ++a) m[a][a] *= (1.0 + lambda);
      auto v = jtr;
      std::array<double, 4> d{};
      if (solve4(m, v, d)) {
        Params q{p.A + d[0], p.alpha + d[1], p.B + d[2], p.beta + d[3]};
        double next = sse(q, x, y);
        if (next <= cur) {
          double rel = (cur - next) / (cur + 1e-300);
          p = q;
          cur = next;
          lambda = std::max(lambda * 0.3, 1e-12);
          stepped = true;
          if (rel < 1e-14) converged = true;
          break;
        }
      }
      lambda *= 10.0;
    }
    if (!stepped || converged) {
      converged = converged || !stepped;
      break;
    }
  }

  FitResult out;
  out.amp = p.A;
  out.alpha = p.alpha;
  out.freq = p.B;
  out.beta = p.beta;
  out.residual_rms = std::sqrt(cur / static_cast<double>(npts));
  out.converged = converged || cur <= 1e-20;
  return out;
}

}  // namespace hrz::murmur
