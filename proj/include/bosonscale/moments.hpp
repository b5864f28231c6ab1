#ifndef BOSONSCALE_MOMENTS_HPP
#define BOSONSCALE_MOMENTS_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bosonscale {

/// Normally ordered photon-number moments <:N^j:> of the input state,
/// entry j for j = 0, 1, ... With an exact cutoff every moment beyond the
/// stored ones is zero; without it the stored prefix is all that is known.
class MomentSequence {
 public:
  MomentSequence(std::vector<double> moments, bool exact_cutoff)
      : moments_(std::move(moments)), exact_cutoff_(exact_cutoff) {
    if (moments_.empty() || moments_[0] != 1.0) {
      throw std::invalid_argument("MomentSequence: moments[0] must equal 1");
    }
    for (double v : moments_) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("MomentSequence: moments must be finite and non-negative");
      }
    }
  }

  std::size_t known() const noexcept { return moments_.size(); }
  bool exact_cutoff() const noexcept { return exact_cutoff_; }

  double operator[](std::size_t j) const {
    if (j < moments_.size()) return moments_[j];
    if (exact_cutoff_) return 0.0;
    throw std::out_of_range("MomentSequence: moment beyond the known prefix");
  }

 private:
  std::vector<double> moments_;
  bool exact_cutoff_;
};

/// n-photon Fock input: <:N^j:> = n!/(n-j)! for j <= n, zero beyond.
inline MomentSequence fock_moments(std::size_t n) {
  std::vector<double> m(n + 1);
  m[0] = 1.0;
  for (std::size_t j = 1; j <= n; ++j) m[j] = m[j - 1] * static_cast<double>(n - j + 1);
  return MomentSequence(std::move(m), true);
}

// The two presets below are extensions beyond the Fock case; they are
// textbook moments, known to any order, so the caller picks the prefix length.

/// Coherent input with mean photon number nbar: <:N^j:> = nbar^j.
inline MomentSequence coherent_moments(double nbar, std::size_t count) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("coherent_moments: nbar must be >= 0");
  std::vector<double> m(count + 1);
  m[0] = 1.0;
  for (std::size_t j = 1; j <= count; ++j) m[j] = m[j - 1] * nbar;
  return MomentSequence(std::move(m), nbar == 0.0);
}

/// Single-mode thermal input with mean nbar: <:N^j:> = j! nbar^j.
inline MomentSequence thermal_moments(double nbar, std::size_t count) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("thermal_moments: nbar must be >= 0");
  std::vector<double> m(count + 1);
  m[0] = 1.0;
  for (std::size_t j = 1; j <= count; ++j) m[j] = m[j - 1] * static_cast<double>(j) * nbar;
  return MomentSequence(std::move(m), nbar == 0.0);
}

}  // namespace bosonscale

#endif  // BOSONSCALE_MOMENTS_HPP
