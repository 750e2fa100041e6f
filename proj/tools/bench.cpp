// Timing harness: OpenMP kernels against the serial reference
// implementations, with agreement checks on the shared inputs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fsph/bridge.hpp"
#include "fsph/eig.hpp"
#include "fsph/matrix.hpp"
#include "fsph/rng.hpp"
#include "fsph/serial_ref.hpp"

using namespace fsph;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexMatrix random_matrix(std::size_t n, RandomStream& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix h(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP\n");
#endif
  std::printf("%-34s %10s %10s %9s %12s\n", "kernel", "openmp[s]", "serial[s]", "speedup",
              "agreement");

  RandomStream rng(20240);
  for (std::size_t n : {64, 128, 256}) {
    const ComplexMatrix a = random_matrix(n, rng);
    const ComplexMatrix b = random_matrix(n, rng);

    auto t0 = std::chrono::steady_clock::now();
    const ComplexMatrix c_par = a * b;
    const double tp = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const ComplexMatrix c_ser = serial::matmul(a, b);
    const double ts = seconds_since(t0);

    char label[64];
    std::snprintf(label, sizeof(label), "matmul %zux%zu", n, n);
    std::printf("%-34s %10.4f %10.4f %8.2fx %12.2e\n", label, tp, ts, ts / tp,
                (c_par - c_ser).max_abs());
  }

  for (std::size_t n : {64, 128, 192}) {
    const ComplexMatrix h = hermitize(random_matrix(n, rng));

    auto t0 = std::chrono::steady_clock::now();
    const HermitianSpectrum s_par = herm_eig(h);
    const double tp = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const HermitianSpectrum s_ser = serial::jacobi_eig(h);
    const double ts = seconds_since(t0);

    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      dev = std::max(dev, std::abs(s_par.eigenvalues[i] - s_ser.eigenvalues[i]));

    char label[64];
    std::snprintf(label, sizeof(label), "herm_eig %zux%zu (QL vs Jacobi)", n, n);
    std::printf("%-34s %10.4f %10.4f %8.2fx %12.2e\n", label, tp, ts, ts / tp, dev);
  }

  {
    // End-to-end defect kernel at production size.
    const BridgeInstance inst = make_bridge(-5, 40);
    RandomStream xr(7);
    const GroupElement x = haar_sample(xr);

    auto t0 = std::chrono::steady_clock::now();
    const double v1 = defect_norm_at(inst, x);
    const double tp = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const double closed = defect_norm_closed(inst);
    const double ts = seconds_since(t0);

    std::printf("%-34s %10.4f %10.4f %9s %12.2e\n", "pivot defect (sampled vs closed)", tp, ts,
                "-", std::abs(v1 - closed));
  }
  return 0;
}
