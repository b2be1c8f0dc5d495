#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace bergtoep {

// Counter-based stream: state is derived from (master_seed, stream_index)
// only, so two streams with the same pair produce identical sequences and
// distinct indices can be consumed concurrently.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : master_seed_(master_seed), stream_index_(stream_index) {
    state_ = mix(master_seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1));
    // decorrelate streams whose seeds differ in few bits
    state_ = mix(state_ ^ mix(stream_index));
    if (state_ == 0) state_ = 0x6a09e667f3bcc909ULL;
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // uniform in [0, 1) with 53 bits
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1]
  double uniform_pos() { return 1.0 - uniform(); }

  // standard normal via Box-Muller; pairs are consumed eagerly so the
  // sequence depends only on the call count
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = uniform_pos();
    double v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
  }

  std::complex<double> complex_gaussian() {
    double re = gaussian();
    double im = gaussian();
    return {re, im};
  }

  // uniform on the open unit disk (exact inverse-CDF in the radius)
  std::complex<double> unit_disk() {
    double r = std::sqrt(uniform());
    double theta = 2.0 * M_PI * uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace bergtoep
