#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace storyflux {

// Small dense row-major matrix; K is the number of communities, so K x K
// stays tiny.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Largest |eigenvalue| of a square matrix, from ||A^n||^(1/n) with repeated
// squaring. Intended for the nonnegative excitation matrix.
double spectral_radius(const Matrix& m);

// Logistic-normal delay density on (0, dt_max):
//   g(d) = dt_max / (d (dt_max - d)) * sqrt(tau / 2 pi)
//          * exp(-tau/2 (logit(d / dt_max) - mu)^2)
// and its CDF Phi(sqrt(tau) (logit(d / dt_max) - mu)). Both are 0 for
// d <= 0; the CDF is 1 for d >= dt_max.
double impulse_density(double delay, double mu, double tau, double dt_max);
double impulse_cdf(double delay, double mu, double tau, double dt_max);

// K mutually exciting processes. Rates are per hour; W(s, d) is the expected
// number of direct children on d of one event on s.
struct HawkesModel {
  std::vector<double> background;
  Matrix weights;
  Matrix impulse_mu;
  Matrix impulse_tau;
  double dt_max = 24.0;

  std::size_t size() const { return background.size(); }
  // Throws Error(InvalidArgument) on shape mismatches or invalid values.
  void validate() const;

  // Same impulse (mu, tau) on every pair.
  static HawkesModel uniform_impulse(std::vector<double> background, Matrix weights,
                                     double mu, double tau, double dt_max);
};

struct Event {
  double time = 0;  // hours since the window start
  std::uint32_t process = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

// Events sorted by time in [0, horizon).
struct EventSeq {
  std::vector<Event> events;
  double horizon = 0;
  std::size_t processes = 0;

  std::vector<std::size_t> counts() const;
  // Sorts and checks the window; throws Error(EventOutsideWindow).
  void normalize();
};

// Branching construction: Poisson background per process, then each event
// spawns Poisson(W(s, d)) children on d at impulse-distributed delays,
// recursively, dropping anything at or past the horizon. Throws
// Error(SupercriticalModel) when the spectral radius of W is >= 1.
EventSeq simulate(const HawkesModel& model, double horizon, std::uint64_t seed);

// sum_n log lambda_{k_n}(t_n) - sum_k integral_0^T lambda_k(t) dt. Only
// strictly earlier events within dt_max excite. Throws
// Error(EventOutsideWindow).
double log_likelihood(const HawkesModel& model, const EventSeq& seq);

// Intensity of process d just before time t.
double intensity(const HawkesModel& model, const EventSeq& seq, std::uint32_t process, double t);

}  // namespace storyflux
