#include "levyest/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "levyest/errors.hpp"

namespace levyest {

namespace {

// FFTW planning is not thread safe; execution of distinct plans is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

int index_parity(const FreqGrid& g, std::size_t flat) {
  int sum = 0;
  for (int a = g.dim(); a-- > 0;) {
    const auto m = static_cast<std::size_t>(g.points(a));
    sum += static_cast<int>(flat % m);
    flat /= m;
  }
  return sum & 1;
}

}  // namespace

ComplexSpaceField inverse_fourier_fft(const ComplexField& field) {
  const FreqGrid& g = field.grid;
  if (field.values.size() != g.size())
    throw invalid_input_error("inverse_fourier_fft: field size does not match its grid");
  const int d = g.dim();
  const std::size_t total = g.size();

  // Node sum:  sum_j g_j e^{-2 pi i <j, l> / m}  with j, l in {-m/2, ..., m/2-1}.
  // Shifting both index sets to {0..m-1} turns this into a forward DFT up
  // to (-1)^{sum t}, (-1)^{sum s} twiddles and a global sign prod (-1)^{m_a/2}.
  std::vector<std::complex<double>> in(total), out(total);
  for (std::size_t i = 0; i < total; ++i)
    in[i] = index_parity(g, i) ? -field.values[i] : field.values[i];

  std::vector<int> dims(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) dims[static_cast<std::size_t>(a)] = g.points(a);

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    // FFTW_ESTIMATE keeps the plan choice independent of runtime timing,
    // so repeated runs produce bit-identical output.
    plan = fftw_plan_dft(d, dims.data(), reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                         FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw capacity_error("inverse_fourier_fft: FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }

  double scale = std::pow(2.0 * std::numbers::pi, -d) * g.cell_volume();
  int half_sum = 0;
  for (int a = 0; a < d; ++a) half_sum += g.points(a) / 2;
  if (half_sum & 1) scale = -scale;

  ComplexSpaceField result{SpaceGrid::dual_of(g), {}};
  result.values.resize(total);
  for (std::size_t i = 0; i < total; ++i)
    result.values[i] = out[i] * (index_parity(g, i) ? -scale : scale);
  return result;
}

std::vector<std::complex<double>> inverse_fourier_quadrature(
    const ComplexField& field, const std::vector<double>& points) {
  const FreqGrid& g = field.grid;
  if (field.values.size() != g.size())
    throw invalid_input_error("inverse_fourier_quadrature: field size does not match its grid");
  const int d = g.dim();
  if (points.size() % static_cast<std::size_t>(d) != 0)
    throw invalid_input_error("inverse_fourier_quadrature: points must be npoints x dim");
  const std::size_t np = points.size() / static_cast<std::size_t>(d);
  const double scale = std::pow(2.0 * std::numbers::pi, -d) * g.cell_volume();

  std::vector<std::complex<double>> result(np);
  std::vector<double> u(static_cast<std::size_t>(d));
  for (std::size_t p = 0; p < np; ++p) {
    const double* x = points.data() + p * static_cast<std::size_t>(d);
    double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.node_point(i, u.data());
      double dot = 0.0;
      for (int a = 0; a < d; ++a) dot += u[static_cast<std::size_t>(a)] * x[a];
      const double pr = std::cos(dot), pi = -std::sin(dot);
      const std::complex<double> v = field.values[i];
      const double tre = v.real() * pr - v.imag() * pi;
      const double tim = v.real() * pi + v.imag() * pr;
      double y = tre - cr;
      double t = sr + y;
      cr = (t - sr) - y;
      sr = t;
      y = tim - ci;
      t = si + y;
      ci = (t - si) - y;
      si = t;
    }
    result[p] = {sr * scale, si * scale};
  }
  return result;
}

}  // namespace levyest
