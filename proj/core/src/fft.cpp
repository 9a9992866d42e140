#include "gabdual/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace gabdual::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  enum Kind { complex_forward, complex_backward, real_forward, real_backward };

  fftw_plan get(int n, Kind kind) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, kind);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // FFTW_ESTIMATE keeps planning deterministic; UNALIGNED lets the plan run
    // on arbitrary caller buffers through the new-array execute functions.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    auto* cin = fftw_alloc_complex(static_cast<size_t>(n));
    auto* cout = fftw_alloc_complex(static_cast<size_t>(n));
    auto* rbuf = fftw_alloc_real(static_cast<size_t>(n));
    fftw_plan plan = nullptr;
    switch (kind) {
      case complex_forward: plan = fftw_plan_dft_1d(n, cin, cout, FFTW_FORWARD, flags); break;
      case complex_backward: plan = fftw_plan_dft_1d(n, cin, cout, FFTW_BACKWARD, flags); break;
      case real_forward: plan = fftw_plan_dft_r2c_1d(n, rbuf, cout, flags); break;
      case real_backward: plan = fftw_plan_dft_c2r_1d(n, cin, rbuf, flags); break;
    }
    fftw_free(cin);
    fftw_free(cout);
    fftw_free(rbuf);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, Kind>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const Complex> in, std::span<Complex> out, PlanCache::Kind kind) {
  if (in.size() != out.size()) throw InvalidArgument("fft: input and output sizes differ");
  if (in.empty()) return;
  if (in.size() == 1) {
    out[0] = in[0];
    return;
  }
  fftw_plan plan = cache().get(static_cast<int>(in.size()), kind);
  if (in.data() == out.data()) {
    std::vector<Complex> copy(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(copy.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return;
  }
  // FFTW does not modify the input of an out-of-place complex transform.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(std::span<const Complex> in, std::span<Complex> out) {
  execute(in, out, PlanCache::complex_forward);
}

void backward(std::span<const Complex> in, std::span<Complex> out) {
  execute(in, out, PlanCache::complex_backward);
}

void forward_real(std::span<const double> in, std::span<Complex> out) {
  const std::size_t n = in.size();
  if (out.size() != n / 2 + 1) throw InvalidArgument("fft::forward_real: output must hold n/2 + 1 bins");
  if (n == 0) return;
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  fftw_plan plan = cache().get(static_cast<int>(n), PlanCache::real_forward);
  fftw_execute_dft_r2c(plan, const_cast<double*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
}

void backward_real(std::span<const Complex> in, std::span<double> out) {
  const std::size_t n = out.size();
  if (in.size() != n / 2 + 1) throw InvalidArgument("fft::backward_real: input must hold n/2 + 1 bins");
  if (n == 0) return;
  if (n == 1) {
    out[0] = in[0].real();
    return;
  }
  fftw_plan plan = cache().get(static_cast<int>(n), PlanCache::real_backward);
  // c2r transforms overwrite their input.
  thread_local std::vector<Complex> scratch;
  scratch.assign(in.begin(), in.end());
  fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace gabdual::fft
