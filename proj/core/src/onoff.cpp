#include "cdf2pdf/onoff.hpp"

#include <cmath>

#include "cdf2pdf/errors.hpp"

namespace cdf2pdf::sim {

namespace {

// k * log(mean) - mean - log(k!), with the 0*log(0) = 0 convention
double poisson_log_term(long k, double mean) {
  if (k < 0) throw DomainError("onoff: negative count");
  if (!(mean >= 0.0)) throw DomainError("onoff: negative Poisson mean");
  if (mean == 0.0) {
    if (k == 0) return 0.0;
    throw DomainError("onoff: zero mean with nonzero count has no likelihood");
  }
  return static_cast<double>(k) * std::log(mean) - mean -
         std::lgamma(static_cast<double>(k) + 1.0);
}

}  // namespace

double onoff_log_likelihood(const OnOffObservation& obs, const OnOffParams& p) {
  if (!(p.mu >= 0.0) || !(p.nu >= 0.0)) {
    throw DomainError("onoff: parameters must be >= 0");
  }
  return poisson_log_term(obs.n, p.mu + p.nu) + poisson_log_term(obs.m, p.nu);
}

std::pair<double, double> onoff_estimates(const OnOffObservation& obs) {
  if (obs.n < 0 || obs.m < 0) throw DomainError("onoff: negative count");
  if (obs.n > obs.m) {
    return {static_cast<double>(obs.n - obs.m), static_cast<double>(obs.m)};
  }
  return {0.0, 0.5 * static_cast<double>(obs.n + obs.m)};
}

double onoff_lambda(const OnOffObservation& obs, const OnOffParams& p) {
  const auto [mu_hat, nu_hat] = onoff_estimates(obs);
  const double top = onoff_log_likelihood(obs, p);
  const double bottom = onoff_log_likelihood(obs, {mu_hat, nu_hat});
  return -2.0 * (top - bottom);
}

}  // namespace cdf2pdf::sim
