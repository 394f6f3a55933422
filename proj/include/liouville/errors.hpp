#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

// Quadrature refinement hit its doubling cap before reaching the target.
class precision_error : public std::runtime_error {
public:
  precision_error(const std::string& what, double best_value, double err_est)
      : std::runtime_error(what), best_value_(best_value), err_est_(err_est) {}
  double best_value() const { return best_value_; }
  double err_est() const { return err_est_; }

private:
  double best_value_;
  double err_est_;
};

// ODE integration failed (step underflow or non-finite state).
class integration_error : public std::runtime_error {
public:
  integration_error(const std::string& what, double last_radius)
      : std::runtime_error(what), last_radius_(last_radius) {}
  double last_radius() const { return last_radius_; }

private:
  double last_radius_;
};

// Requested dimension / center combination is not implemented.
class unsupported_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Report file could not be written.
class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Command line could not be parsed.
class usage_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Tail slope too shallow to integrate the far field.
class tail_divergence_error : public std::runtime_error {
public:
  tail_divergence_error(const std::string& what, double fitted_slope)
      : std::runtime_error(what), fitted_slope_(fitted_slope) {}
  double fitted_slope() const { return fitted_slope_; }

private:
  double fitted_slope_;
};

}  // namespace liouville
