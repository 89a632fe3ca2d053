#include "ballspec/angular.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>

namespace ballspec {

Complex angular_mode(std::span<const int> k, std::span<const double> theta) {
  if (k.size() != theta.size() || k.empty()) {
    throw UsageError("angular_mode: index and angle vectors must have the same non-zero length");
  }
  double phase = k[0] * theta[0];
  double scale = 1.0 / std::sqrt(2.0 * kPi);
  for (std::size_t j = 1; j < k.size(); ++j) {
    phase += 2.0 * k[j] * theta[j];
    scale /= std::sqrt(kPi);
  }
  return scale * std::polar(1.0, phase);
}

double angular_measure(int d) { return 2.0 * kPi * std::pow(kPi, d - 2); }

std::size_t angular_count(int d, int K) {
  std::size_t c = 1;
  for (int j = 0; j < d - 1; ++j) c *= static_cast<std::size_t>(2 * K + 1);
  return c;
}

std::size_t angular_flat(std::span<const int> k, int K) {
  std::size_t idx = 0;
  for (int kj : k) {
    if (kj < -K || kj > K) throw ParameterError("angular index outside [-K, K]");
    idx = idx * static_cast<std::size_t>(2 * K + 1) + static_cast<std::size_t>(kj + K);
  }
  return idx;
}

std::vector<int> angular_unflat(std::size_t idx, int d, int K) {
  std::vector<int> k(static_cast<std::size_t>(d - 1));
  const auto base = static_cast<std::size_t>(2 * K + 1);
  for (int j = d - 2; j >= 0; --j) {
    k[static_cast<std::size_t>(j)] = static_cast<int>(idx % base) - K;
    idx /= base;
  }
  if (idx != 0) throw ParameterError("angular_unflat: index out of range");
  return k;
}

AngularGrid::AngularGrid(int d, int samples_per_dim) : d_(d), n_(samples_per_dim) {
  if (d < 2) throw ParameterError("AngularGrid: dimension must be >= 2");
  if (samples_per_dim < 1) throw ParameterError("AngularGrid: resolution must be >= 1");
  size_ = 1;
  for (int j = 0; j < d - 1; ++j) size_ *= static_cast<std::size_t>(n_);
  weight_ = angular_measure(d) / static_cast<double>(size_);
}

void AngularGrid::point(std::size_t idx, std::span<double> theta) const {
  for (int j = d_ - 2; j >= 0; --j) {
    const auto i = static_cast<double>(idx % static_cast<std::size_t>(n_));
    idx /= static_cast<std::size_t>(n_);
    theta[static_cast<std::size_t>(j)] = (j == 0) ? -kPi + 2.0 * kPi * i / n_ : kPi * i / n_;
  }
}

namespace {

struct FftwPlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

}  // namespace

CVector AngularGrid::analyze(std::span<const Complex> samples, int K) const {
  if (samples.size() != size_) throw UsageError("AngularGrid::analyze: sample count mismatch");
  if (n_ < 2 * K + 1) throw ParameterError("AngularGrid::analyze: resolution too low for bandwidth K");

  std::unique_ptr<fftw_complex, FftwFree> buf(fftw_alloc_complex(size_));
  std::vector<int> dims(static_cast<std::size_t>(d_ - 1), n_);
  std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan(
      fftw_plan_dft(d_ - 1, dims.data(), buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
  for (std::size_t i = 0; i < size_; ++i) {
    buf.get()[i][0] = samples[i].real();
    buf.get()[i][1] = samples[i].imag();
  }
  fftw_execute(plan.get());

  // theta_1 starts at -pi, so e^{-i k_1 theta_1} picks up (-1)^{k_1}; theta_j (j>=2) starts at 0
  // and e^{-2 i k_j theta_j} = e^{-2 pi i k_j l / n}.
  const double norm = weight_ / std::sqrt(2.0 * kPi) / std::pow(std::sqrt(kPi), d_ - 2);
  const std::size_t count = angular_count(d_, K);
  CVector out(count);
  for (std::size_t c = 0; c < count; ++c) {
    const auto k = angular_unflat(c, d_, K);
    std::size_t pos = 0;
    for (int kj : k) {
      pos = pos * static_cast<std::size_t>(n_) + static_cast<std::size_t>(((kj % n_) + n_) % n_);
    }
    const Complex v(buf.get()[pos][0], buf.get()[pos][1]);
    out[c] = norm * ((k[0] % 2 == 0) ? v : -v);
  }
  return out;
}

}  // namespace ballspec
