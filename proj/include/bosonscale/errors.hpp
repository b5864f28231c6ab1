#ifndef BOSONSCALE_ERRORS_HPP
#define BOSONSCALE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bosonscale {

// Raised when a request exceeds a hard cost guard (factorial or exponential
// work). Callers that want larger problems must use a different routine.
class size_limit_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A series that is still growing at its truncation point.
class series_divergence_error : public std::domain_error {
 public:
  series_divergence_error(const std::string& what, double last_term)
      : std::domain_error(what), last_term_(last_term) {}

  double last_term_magnitude() const noexcept { return last_term_; }

 private:
  double last_term_;
};

}  // namespace bosonscale

#endif  // BOSONSCALE_ERRORS_HPP
