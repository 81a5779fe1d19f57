#include "levyest/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "levyest/errors.hpp"

namespace levyest {

namespace {

// One compensated (Kahan) accumulator per node and component.  The
// compensation makes node sums accurate to a few ulps independently of n,
// which the drift-invariance guarantees downstream rely on.
struct Accum {
  std::vector<double> re, im, cre, cim;
  explicit Accum(std::size_t n) : re(n, 0.0), im(n, 0.0), cre(n, 0.0), cim(n, 0.0) {}
};

inline void kadd(double& sum, double& comp, double term) {
  const double y = term - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

inline void kadd2(Accum& a, std::size_t i, double vre, double vim) {
  kadd(a.re[i], a.cre[i], vre);
  kadd(a.im[i], a.cim[i], vim);
}

constexpr std::size_t kChunk = 256;

// Phase table for one axis and one chunk of increments: entry (k, t) is
// e^{i u_t Y_{k,axis}}.  Built by a two-sided recurrence anchored at the
// u = 0 node, so the u = 0 column is exactly 1 and mirror nodes are exact
// complex conjugates of each other.
void build_axis_table(const IncrementSample& s, const FreqGrid& g, int axis,
                      std::size_t start, std::size_t cn,
                      std::vector<std::complex<double>>& tab) {
  const int m = g.points(axis);
  const int half = m / 2;
  const double du = g.spacing(axis);
  for (std::size_t k = 0; k < cn; ++k) {
    const double y = s.value(start + k, axis);
    const double ang = du * y;
    const double sr = std::cos(ang);
    const double si = std::sin(ang);
    std::complex<double>* t = tab.data() + k * static_cast<std::size_t>(m);
    t[half] = {1.0, 0.0};
    double ur = 1.0, ui = 0.0, dr = 1.0, di = 0.0;
    for (int j = 1; j <= half; ++j) {
      const double nur = ur * sr - ui * si;
      const double nui = ur * si + ui * sr;
      ur = nur;
      ui = nui;
      const double ndr = dr * sr + di * si;
      const double ndi = di * sr - dr * si;
      dr = ndr;
      di = ndi;
      if (j < half) t[half + j] = {ur, ui};
      t[half - j] = {dr, di};
    }
  }
}

template <bool WithDerivs>
void accumulate(const IncrementSample& s, const FreqGrid& g, Accum& plain,
                std::vector<Accum>& grad, Accum& lap) {
  const int d = g.dim();
  const std::size_t n = s.count();
  const int m0 = g.points(0);

  std::vector<std::vector<std::complex<double>>> tab(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a)
    tab[static_cast<std::size_t>(a)].resize(kChunk * static_cast<std::size_t>(g.points(a)));

  std::vector<double> ysq(kChunk);

  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t cn = std::min(kChunk, n - start);
    for (int a = 0; a < d; ++a)
      build_axis_table(s, g, a, start, cn, tab[static_cast<std::size_t>(a)]);
    for (std::size_t k = 0; k < cn; ++k) {
      double q = 0.0;
      for (int a = 0; a < d; ++a) {
        const double y = s.value(start + k, a);
        q += y * y;
      }
      ysq[k] = q;
    }

    // Each grid row (fixed axis-0 index) is owned by exactly one thread,
    // and within a row increments are consumed in ascending order, so the
    // accumulation order per node never depends on the schedule.
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < m0; ++r) {
      if (d == 1) {
        const std::size_t node = static_cast<std::size_t>(r);
        for (std::size_t k = 0; k < cn; ++k) {
          const std::complex<double> p = tab[0][k * static_cast<std::size_t>(m0) +
                                                static_cast<std::size_t>(r)];
          const double pr = p.real(), pi = p.imag();
          kadd2(plain, node, pr, pi);
          if constexpr (WithDerivs) {
            const double y0 = s.value(start + k, 0);
            kadd2(grad[0], node, -y0 * pi, y0 * pr);
            kadd2(lap, node, -ysq[k] * pr, -ysq[k] * pi);
          }
        }
      } else if (d == 2) {
        const int m1 = g.points(1);
        const std::size_t base = static_cast<std::size_t>(r) * static_cast<std::size_t>(m1);
        for (std::size_t k = 0; k < cn; ++k) {
          const std::complex<double> p0 = tab[0][k * static_cast<std::size_t>(m0) +
                                                 static_cast<std::size_t>(r)];
          const double ar = p0.real(), ai = p0.imag();
          const std::complex<double>* t1 = tab[1].data() + k * static_cast<std::size_t>(m1);
          const double y0 = WithDerivs ? s.value(start + k, 0) : 0.0;
          const double y1 = WithDerivs ? s.value(start + k, 1) : 0.0;
          const double q = ysq[k];
          for (int c = 0; c < m1; ++c) {
            const double br = t1[c].real(), bi = t1[c].imag();
            const double pr = ar * br - ai * bi;
            const double pi = ar * bi + ai * br;
            const std::size_t node = base + static_cast<std::size_t>(c);
            kadd2(plain, node, pr, pi);
            if constexpr (WithDerivs) {
              kadd2(grad[0], node, -y0 * pi, y0 * pr);
              kadd2(grad[1], node, -y1 * pi, y1 * pr);
              kadd2(lap, node, -q * pr, -q * pi);
            }
          }
        }
      } else {
        // General d: walk the row in row-major order keeping running
        // prefix products over axes 0..d-2.
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        std::vector<std::complex<double>> prefix(static_cast<std::size_t>(d));
        const int mlast = g.points(d - 1);
        std::size_t row_nodes = 1;
        for (int a = 1; a < d; ++a) row_nodes *= static_cast<std::size_t>(g.points(a));
        const std::size_t row_base = static_cast<std::size_t>(r) * row_nodes;
        for (std::size_t k = 0; k < cn; ++k) {
          const double q = ysq[k];
          std::fill(idx.begin(), idx.end(), 0);
          idx[0] = r;
          prefix[0] = tab[0][k * static_cast<std::size_t>(m0) + static_cast<std::size_t>(r)];
          for (int a = 1; a < d - 1; ++a)
            prefix[static_cast<std::size_t>(a)] =
                prefix[static_cast<std::size_t>(a - 1)] *
                tab[static_cast<std::size_t>(a)][k * static_cast<std::size_t>(g.points(a))];
          std::size_t node = row_base;
          for (;;) {
            const std::complex<double> pre = prefix[static_cast<std::size_t>(d - 2)];
            const std::complex<double>* tl =
                tab[static_cast<std::size_t>(d - 1)].data() +
                k * static_cast<std::size_t>(mlast);
            for (int c = 0; c < mlast; ++c, ++node) {
              const std::complex<double> p = pre * tl[c];
              kadd2(plain, node, p.real(), p.imag());
              if constexpr (WithDerivs) {
                for (int a = 0; a < d; ++a) {
                  const double ya = s.value(start + k, a);
                  kadd2(grad[static_cast<std::size_t>(a)], node, -ya * p.imag(),
                        ya * p.real());
                }
                kadd2(lap, node, -q * p.real(), -q * p.imag());
              }
            }
            int a = d - 2;
            while (a >= 1 && ++idx[static_cast<std::size_t>(a)] == g.points(a)) {
              idx[static_cast<std::size_t>(a)] = 0;
              --a;
            }
            if (a < 1) break;
            for (int b = a; b < d - 1; ++b)
              prefix[static_cast<std::size_t>(b)] =
                  prefix[static_cast<std::size_t>(b - 1)] *
                  tab[static_cast<std::size_t>(b)][k * static_cast<std::size_t>(g.points(b)) +
                                                   static_cast<std::size_t>(
                                                       idx[static_cast<std::size_t>(b)])];
          }
        }
      }
    }
  }
}

void check_sample_grid(const IncrementSample& s, const FreqGrid& g, const char* what) {
  if (s.dim != g.dim())
    throw invalid_input_error(std::string(what) + ": sample and grid dimension differ");
  if (s.count() == 0) throw invalid_input_error(std::string(what) + ": empty sample");
}

ComplexField to_field(const FreqGrid& g, const Accum& a, double inv_n) {
  ComplexField f{g, {}, {}};
  f.values.resize(g.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    f.values[i] = {a.re[i] * inv_n, a.im[i] * inv_n};
  return f;
}

}  // namespace

ComplexField ecf(const IncrementSample& sample, const FreqGrid& grid) {
  check_sample_grid(sample, grid, "ecf");
  Accum plain(grid.size());
  std::vector<Accum> grad;
  Accum lap(0);
  accumulate<false>(sample, grid, plain, grad, lap);
  return to_field(grid, plain, 1.0 / static_cast<double>(sample.count()));
}

EcfWithDerivatives ecf_derivatives(const IncrementSample& sample, const FreqGrid& grid) {
  check_sample_grid(sample, grid, "ecf_derivatives");
  const std::size_t total = grid.size();
  Accum plain(total);
  std::vector<Accum> grad(static_cast<std::size_t>(grid.dim()), Accum(total));
  Accum lap(total);
  accumulate<true>(sample, grid, plain, grad, lap);
  const double inv_n = 1.0 / static_cast<double>(sample.count());
  EcfWithDerivatives out{to_field(grid, plain, inv_n), {}, to_field(grid, lap, inv_n)};
  out.gradient.reserve(grad.size());
  for (const Accum& a : grad) out.gradient.push_back(to_field(grid, a, inv_n));
  return out;
}

PsiLaplacianHat psi_laplacian_hat(const IncrementSample& sample, const FreqGrid& grid) {
  check_sample_grid(sample, grid, "psi_laplacian_hat");
  const EcfWithDerivatives e = ecf_derivatives(sample, grid);
  const double horizon = sample.horizon();
  const double threshold = 1.0 / std::sqrt(horizon);
  const double delta = sample.delta;

  PsiLaplacianHat out;
  out.field.grid = grid;
  out.field.values.resize(grid.size());
  out.field.mask.assign(grid.size(), 0);
  std::size_t masked = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::complex<double> phi = e.value.values[i];
    if (std::abs(phi) >= threshold) {
      std::complex<double> grad_sq{0.0, 0.0};
      for (const ComplexField& gj : e.gradient) {
        const std::complex<double> dj = gj.values[i];
        grad_sq += dj * dj;
      }
      const std::complex<double> num = phi * e.laplacian.values[i] - grad_sq;
      out.field.values[i] = num / (delta * phi * phi);
    } else {
      out.field.values[i] = {0.0, 0.0};
      out.field.mask[i] = 1;
      ++masked;
    }
  }
  out.masked_fraction = static_cast<double>(masked) / static_cast<double>(grid.size());
  return out;
}

double soft_log_weight(double r, double chi) {
  return std::pow(std::log(std::numbers::e + r), -0.5 * (1.0 + chi));
}

}  // namespace levyest
