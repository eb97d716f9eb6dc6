#include "storyflux/hawkes.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "storyflux/error.h"

namespace storyflux {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

namespace {

double max_row_sum(const Matrix& m) {
  double best = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::fabs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double v = a(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += v * b(k, j);
    }
  }
  return out;
}

double logit(double p) { return std::log(p) - std::log1p(-p); }

}  // namespace

double spectral_radius(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, "matrix is not square");
  if (m.rows() == 0) return 0.0;
  // B = A^(2^j) / exp(log_scale).
  Matrix b = m;
  double log_scale = 0;
  double estimate = 0;
  for (int j = 0; j < 60; ++j) {
    const double norm = max_row_sum(b);
    if (norm == 0.0) return 0.0;
    estimate = std::exp((log_scale + std::log(norm)) / std::ldexp(1.0, j));
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) /= norm;
    }
    log_scale = 2.0 * (log_scale + std::log(norm));
    b = multiply(b, b);
  }
  return estimate;
}

double impulse_density(double delay, double mu, double tau, double dt_max) {
  if (!(delay > 0.0) || !(delay < dt_max)) return 0.0;
  const double z = logit(delay / dt_max) - mu;
  const double jacobian = dt_max / (delay * (dt_max - delay));
  return jacobian * std::sqrt(tau / (2.0 * std::numbers::pi)) * std::exp(-0.5 * tau * z * z);
}

double impulse_cdf(double delay, double mu, double tau, double dt_max) {
  if (!(delay > 0.0)) return 0.0;
  if (!(delay < dt_max)) return 1.0;
  const double z = std::sqrt(tau) * (logit(delay / dt_max) - mu);
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

void HawkesModel::validate() const {
  const std::size_t k = background.size();
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "model has no processes");
  for (const Matrix* m : {&weights, &impulse_mu, &impulse_tau}) {
    if (m->rows() != k || m->cols() != k) {
      throw Error(ErrorKind::InvalidArgument, "model matrices must be K x K");
    }
  }
  for (double b : background) {
    if (!(b >= 0.0) || std::isinf(b)) {
      throw Error(ErrorKind::InvalidArgument, "background rates must be finite and >= 0");
    }
  }
  for (std::size_t i = 0; i < k * k; ++i) {
    if (!(weights.data()[i] >= 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "weights must be >= 0");
    }
    if (!(impulse_tau.data()[i] > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "impulse precision must be > 0");
    }
    if (!std::isfinite(impulse_mu.data()[i])) {
      throw Error(ErrorKind::InvalidArgument, "impulse location must be finite");
    }
  }
  if (!(dt_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt_max must be > 0");
}

HawkesModel HawkesModel::uniform_impulse(std::vector<double> background, Matrix weights,
                                         double mu, double tau, double dt_max) {
  const std::size_t k = background.size();
  HawkesModel model{std::move(background), std::move(weights), Matrix(k, k, mu),
                    Matrix(k, k, tau), dt_max};
  model.validate();
  return model;
}

std::vector<std::size_t> EventSeq::counts() const {
  std::vector<std::size_t> n(processes, 0);
  for (const auto& e : events) ++n.at(e.process);
  return n;
}

void EventSeq::normalize() {
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.time != b.time ? a.time < b.time : a.process < b.process;
  });
  for (const auto& e : events) {
    if (!(e.time >= 0.0) || !(e.time < horizon)) {
      throw Error(ErrorKind::EventOutsideWindow, "event outside [0, horizon)");
    }
    if (e.process >= processes) {
      throw Error(ErrorKind::EventOutsideWindow, "event process index out of range");
    }
  }
}

EventSeq simulate(const HawkesModel& model, double horizon, std::uint64_t seed) {
  model.validate();
  if (!(horizon > 0.0)) throw Error(ErrorKind::InvalidArgument, "horizon must be > 0");
  const double radius = spectral_radius(model.weights);
  if (radius >= 1.0) {
    throw Error(ErrorKind::SupercriticalModel,
                "spectral radius " + std::to_string(radius) + " >= 1");
  }
  const std::size_t k = model.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, horizon);
  std::normal_distribution<double> normal(0.0, 1.0);

  EventSeq seq;
  seq.horizon = horizon;
  seq.processes = k;
  for (std::uint32_t p = 0; p < k; ++p) {
    std::poisson_distribution<long> count(model.background[p] * horizon);
    const long n = model.background[p] > 0.0 ? count(rng) : 0;
    for (long i = 0; i < n; ++i) seq.events.push_back({uniform(rng), p});
  }
  // Generation-by-generation expansion; seq.events doubles as the queue.
  for (std::size_t next = 0; next < seq.events.size(); ++next) {
    const Event parent = seq.events[next];
    for (std::uint32_t d = 0; d < k; ++d) {
      const double w = model.weights(parent.process, d);
      if (w <= 0.0) continue;
      std::poisson_distribution<long> children(w);
      const long n = children(rng);
      const double mu = model.impulse_mu(parent.process, d);
      const double sd = 1.0 / std::sqrt(model.impulse_tau(parent.process, d));
      for (long c = 0; c < n; ++c) {
        const double x = mu + sd * normal(rng);
        const double delay = model.dt_max / (1.0 + std::exp(-x));
        const double t = parent.time + delay;
        if (t < horizon && delay > 0.0) seq.events.push_back({t, d});
      }
    }
  }
  std::sort(seq.events.begin(), seq.events.end(), [](const Event& a, const Event& b) {
    return a.time != b.time ? a.time < b.time : a.process < b.process;
  });
  return seq;
}

namespace {

void check_window(const HawkesModel& model, const EventSeq& seq) {
  if (seq.processes != model.size()) {
    throw Error(ErrorKind::InvalidArgument, "event sequence and model disagree on K");
  }
  double prev = -1;
  for (const auto& e : seq.events) {
    if (!(e.time >= 0.0) || !(e.time < seq.horizon) || e.process >= seq.processes) {
      throw Error(ErrorKind::EventOutsideWindow, "event outside [0, horizon)");
    }
    if (e.time < prev) throw Error(ErrorKind::InvalidArgument, "events are not sorted");
    prev = e.time;
  }
}

}  // namespace

double intensity(const HawkesModel& model, const EventSeq& seq, std::uint32_t process, double t) {
  double rate = model.background.at(process);
  for (const auto& e : seq.events) {
    if (e.time >= t) break;
    const double delay = t - e.time;
    if (delay >= model.dt_max) continue;
    rate += model.weights(e.process, process) *
            impulse_density(delay, model.impulse_mu(e.process, process),
                            model.impulse_tau(e.process, process), model.dt_max);
  }
  return rate;
}

double log_likelihood(const HawkesModel& model, const EventSeq& seq) {
  model.validate();
  check_window(model, seq);
  const auto& ev = seq.events;
  const std::size_t k = model.size();

  double ll = 0;
  std::size_t window_start = 0;
  for (std::size_t n = 0; n < ev.size(); ++n) {
    const double t = ev[n].time;
    while (ev[window_start].time <= t - model.dt_max) ++window_start;
    const std::uint32_t d = ev[n].process;
    double rate = model.background[d];
    for (std::size_t m = window_start; m < n && ev[m].time < t; ++m) {
      const std::uint32_t s = ev[m].process;
      rate += model.weights(s, d) * impulse_density(t - ev[m].time, model.impulse_mu(s, d),
                                                    model.impulse_tau(s, d), model.dt_max);
    }
    if (rate <= 0.0) return -INFINITY;
    ll += std::log(rate);
  }

  double compensator = 0;
  for (double b : model.background) compensator += b * seq.horizon;
  for (const auto& e : ev) {
    const double remaining = seq.horizon - e.time;
    for (std::size_t d = 0; d < k; ++d) {
      compensator += model.weights(e.process, d) *
                     impulse_cdf(remaining, model.impulse_mu(e.process, d),
                                 model.impulse_tau(e.process, d), model.dt_max);
    }
  }
  return ll - compensator;
}

}  // namespace storyflux
