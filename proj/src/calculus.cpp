#include "calculus.hpp"

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "errors.hpp"
#include "evaluate.hpp"

namespace meanlab {

namespace {

void check_index(int i, int d) {
  if (i < 1 || i > d) fail(errc::invalid_argument, "coordinate index out of range");
}

// weighted node sums of partial products at the diagonal point
struct DiagonalData {
  std::vector<double> w;
  std::vector<std::vector<double>> dp;  // dp[k][i] = d_i m(x^(d), t_k), 1-based in i
  std::vector<double> avg;              // avg[i] = <d_i m>
  std::vector<double> x;
  int d = 0;
};

DiagonalData gather(const MeanFamily& fam, const Measure& mu, double x) {
  fam.validate_measure(mu);
  DiagonalData data;
  data.d = fam.dim();
  data.x.assign(static_cast<size_t>(data.d), x);
  data.w = mu.weights();
  const auto& nodes = mu.nodes();
  data.dp.assign(nodes.size(), std::vector<double>(data.d + 1, 0.0));
  data.avg.assign(data.d + 1, 0.0);
  for (size_t k = 0; k < nodes.size(); ++k)
    for (int i = 1; i <= data.d; ++i) {
      data.dp[k][i] = fam.partial(i, data.x, nodes[k]);
      data.avg[i] += data.w[k] * data.dp[k][i];
    }
  return data;
}

}  // namespace

double diag_d1(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu, double x, int i) {
  if (pair.smoothness() < 1) fail(errc::capability, "diag_d1 needs a pair of smoothness >= 1");
  pair.interval().require(x, "x");
  check_index(i, fam.dim());
  const DiagonalData data = gather(fam, mu, x);
  return data.avg[i];
}

double diag_d2(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu, double x, int i, int j) {
  if (pair.smoothness() < 2) fail(errc::capability, "diag_d2 needs a pair of smoothness >= 2");
  pair.interval().require(x, "x");
  check_index(i, fam.dim());
  check_index(j, fam.dim());
  const DiagonalData data = gather(fam, mu, x);
  double centered2 = 0.0, second = 0.0;
  const auto& nodes = mu.nodes();
  for (size_t k = 0; k < nodes.size(); ++k) {
    centered2 += data.w[k] * (data.dp[k][i] - data.avg[i]) * (data.dp[k][j] - data.avg[j]);
    second += data.w[k] * fam.second_partial(i, j, data.x, nodes[k]);
  }
  return pair.phi(x) * centered2 + second;
}

double diag_d3(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu, double x, int i, int j,
               int l) {
  if (pair.smoothness() < 3) fail(errc::capability, "diag_d3 needs a pair of smoothness >= 3");
  pair.interval().require(x, "x");
  const int d = fam.dim();
  check_index(i, d);
  check_index(j, d);
  check_index(l, d);
  const DiagonalData data = gather(fam, mu, x);
  const auto& nodes = mu.nodes();

  const double phi = pair.phi(x);
  const double psi = pair.psi(x);
  const double phi_p = pair.phi_prime(x);

  double prod3 = 0.0, centered3 = 0.0, third = 0.0;
  for (size_t k = 0; k < nodes.size(); ++k) {
    prod3 += data.w[k] * data.dp[k][i] * data.dp[k][j] * data.dp[k][l];
    centered3 += data.w[k] * (data.dp[k][i] - data.avg[i]) * (data.dp[k][j] - data.avg[j]) *
                 (data.dp[k][l] - data.avg[l]);
    third += data.w[k] * fam.third_partial(i, j, l, data.x, nodes[k]);
  }

  // cyclic sum over (alpha, beta, gamma): <d_a d_b m * d_c m> - d_a d_b M * d_c M
  const std::array<std::array<int, 3>, 3> cyc{{{i, j, l}, {j, l, i}, {l, i, j}}};
  double cyc_sum = 0.0;
  for (const auto& [a, b, c] : cyc) {
    double mixed = 0.0;
    for (size_t k = 0; k < nodes.size(); ++k)
      mixed += data.w[k] * fam.second_partial(a, b, data.x, nodes[k]) * data.dp[k][c];
    cyc_sum += mixed - diag_d2(pair, fam, mu, x, a, b) * data.avg[c];
  }

  return (phi_p + phi * phi) * (prod3 - data.avg[i] * data.avg[j] * data.avg[l]) + phi * cyc_sum +
         psi * centered3 + third;
}

DiagonalDerivatives diagonal_derivatives(const GeneratorPair& pair, const MeanFamily& fam,
                                         const Measure& mu, double x, int order) {
  if (order < 1 || order > 3) fail(errc::invalid_argument, "diagonal derivatives cover orders 1..3");
  const int d = fam.dim();
  DiagonalDerivatives out;
  out.x = x;
  out.first.resize(static_cast<size_t>(d));
  for (int i = 1; i <= d; ++i) out.first[i - 1] = diag_d1(pair, fam, mu, x, i);
  if (order >= 2) {
    out.second.assign(static_cast<size_t>(d), std::vector<double>(static_cast<size_t>(d), 0.0));
    for (int i = 1; i <= d; ++i)
      for (int j = i; j <= d; ++j)
        out.second[i - 1][j - 1] = out.second[j - 1][i - 1] = diag_d2(pair, fam, mu, x, i, j);
  }
  if (order >= 3) {
    out.third.assign(static_cast<size_t>(d),
                     std::vector<std::vector<double>>(static_cast<size_t>(d),
                                                      std::vector<double>(static_cast<size_t>(d), 0.0)));
    for (int i = 1; i <= d; ++i)
      for (int j = i; j <= d; ++j)
        for (int l = j; l <= d; ++l) {
          const double v = diag_d3(pair, fam, mu, x, i, j, l);
          const int perm[6][3] = {{i, j, l}, {i, l, j}, {j, i, l}, {j, l, i}, {l, i, j}, {l, j, i}};
          for (const auto& p : perm) out.third[p[0] - 1][p[1] - 1][p[2] - 1] = v;
        }
  }
  return out;
}

double fd_diag(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu, double x, int order,
               std::span<const int> indices, double h) {
  if (order < 1 || order > 3) fail(errc::invalid_argument, "finite differences cover orders 1..3");
  if (static_cast<int>(indices.size()) != order)
    fail(errc::invalid_argument, "fd_diag needs one coordinate index per differentiation");
  const int d = fam.dim();
  for (int i : indices) check_index(i, d);
  pair.interval().require(x, "x");
  if (h <= 0.0) h = (order <= 2 ? 1e-4 : 1e-3) * (1.0 + std::fabs(x));

  // per-coordinate derivative order
  std::map<int, int> coord_order;
  for (int i : indices) coord_order[i] += 1;

  // 1-D central stencils per order, offsets in units of h
  struct Stencil {
    std::vector<int> off;
    std::vector<double> coef;
  };
  static const Stencil kStencils[4] = {
      {},
      {{-1, 1}, {-0.5, 0.5}},
      {{-1, 0, 1}, {1.0, -2.0, 1.0}},
      {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
  };

  std::vector<const Stencil*> parts;
  std::vector<int> coords;
  int extent = 0;
  double scale = 1.0;
  for (const auto& [coord, m] : coord_order) {
    parts.push_back(&kStencils[m]);
    coords.push_back(coord);
    extent = std::max(extent, *std::max_element(parts.back()->off.begin(), parts.back()->off.end()));
    for (int k = 0; k < m; ++k) scale *= h;
  }
  if (!pair.interval().contains(x - extent * h) || !pair.interval().contains(x + extent * h))
    fail(errc::domain, "finite-difference stencil escapes the interval");

  // tensor product of the per-coordinate stencils
  std::vector<double> point(static_cast<size_t>(d), x);
  double acc = 0.0;
  std::vector<size_t> idx(parts.size(), 0);
  while (true) {
    double coef = 1.0;
    for (size_t c = 0; c < parts.size(); ++c) {
      point[static_cast<size_t>(coords[c] - 1)] = x + parts[c]->off[idx[c]] * h;
      coef *= parts[c]->coef[idx[c]];
    }
    acc += coef * eval_explicit(pair, fam, mu, point);
    size_t c = 0;
    for (; c < parts.size(); ++c) {
      if (++idx[c] < parts[c]->off.size()) break;
      idx[c] = 0;
    }
    if (c == parts.size()) break;
  }
  return acc / scale;
}

}  // namespace meanlab
