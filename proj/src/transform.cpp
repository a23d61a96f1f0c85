#include "sqg/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace sqg {
namespace {

// Plans are cached per (n, n2, sign) and executed through the new-array
// interface; FFTW_UNALIGNED lifts the alignment requirement so plain
// std::vector buffers are valid. FFTW_ESTIMATE keeps plan selection
// deterministic across runs.
class PlanCache {
 public:
  fftw_plan get(const Grid& g, int sign) {
    const auto key = std::make_tuple(g.n, g.extent2(), sign);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::vector<std::complex<double>> dummy_in(g.size());
    std::vector<std::complex<double>> dummy_out(g.size());
    int dims[2] = {g.n, g.extent2()};
    const int rank = g.dim;
    fftw_plan p = fftw_plan_dft(
        rank, dims, reinterpret_cast<fftw_complex*>(dummy_in.data()),
        reinterpret_cast<fftw_complex*>(dummy_out.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft_forward_raw(const Grid& g, const std::complex<double>* in,
                     std::complex<double>* out) {
  fftw_plan p = cache().get(g, FFTW_FORWARD);
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(
                       const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void fft_backward_raw(const Grid& g, const std::complex<double>* in,
                      std::complex<double>* out) {
  fftw_plan p = cache().get(g, FFTW_BACKWARD);
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(
                       const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

SpectralField forward(const PhysicalField& u) {
  const Grid& g = u.grid();
  std::vector<std::complex<double>> in(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) in[i] = u[i];
  SpectralField out(g);
  fft_forward_raw(g, in.data(), out.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] *= scale;
  return out;
}

PhysicalField inverse(const SpectralField& u) {
  const Grid& g = u.grid();
  std::vector<std::complex<double>> out(g.size());
  fft_backward_raw(g, u.data(), out.data());
  PhysicalField r(g);
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = out[i].real();
  return r;
}

}  // namespace sqg
