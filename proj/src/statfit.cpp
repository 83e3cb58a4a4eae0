#include "deconf/statfit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "deconf/errors.hpp"

namespace deconf::statfit {

namespace {

constexpr int kNewtonMaxIterations = 50;
constexpr double kNewtonTolerance = 1e-10;
constexpr double kBetaMargin = 0.01;  // support padding, fraction of range

struct Moments {
   double mean;
   double variance;  // population
};

Moments moments(std::span<const double> xs) {
   const double n = static_cast<double>(xs.size());
   const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
   double ss = 0.0;
   for (double x : xs) {
      ss += (x - mean) * (x - mean);
   }
   return {mean, ss / n};
}

void require_positive(std::span<const double> xs, Family family) {
   for (double x : xs) {
      if (!(x > 0.0)) {
         throw DomainError(std::string(to_string(family)) +
                           " fit needs strictly positive samples");
      }
   }
}

void require_spread(const Moments& m, Family family) {
   if (!(m.variance > 0.0)) {
      throw DegenerateSamples(std::string(to_string(family)) +
                              " fit needs non-constant samples");
   }
}

Parameters estimate_gamma(std::span<const double> xs) {
   require_positive(xs, Family::Gamma);
   const Moments m = moments(xs);
   require_spread(m, Family::Gamma);
   double mean_log = 0.0;
   for (double x : xs) {
      mean_log += std::log(x);
   }
   mean_log /= static_cast<double>(xs.size());
   // Shape solves log(k) - digamma(k) = log(mean) - mean(log x).
   const double target = std::log(m.mean) - mean_log;
   double k = m.mean * m.mean / m.variance;
   bool converged = false;
   for (int it = 0; it < kNewtonMaxIterations; ++it) {
      const double f = std::log(k) - boost::math::digamma(k) - target;
      const double df = 1.0 / k - boost::math::trigamma(k);
      double next = k - f / df;
      if (!(next > 0.0)) {
         next = 0.5 * k;
      }
      const double step = std::abs(next - k);
      k = next;
      if (step <= kNewtonTolerance * std::max(1.0, k)) {
         converged = true;
         break;
      }
   }
   if (!converged || !std::isfinite(k)) {
      throw NonConvergence("gamma shape Newton iteration did not converge");
   }
   return {Family::Gamma, {{"shape", k}, {"scale", m.mean / k}}};
}

Parameters estimate_beta(std::span<const double> xs) {
   const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
   const double range = *hi_it - *lo_it;
   if (!(range > 0.0)) {
      throw DegenerateSamples("Beta fit needs non-constant samples");
   }
   const double lower = *lo_it - kBetaMargin * range;
   const double upper = *hi_it + kBetaMargin * range;
   std::vector<double> unit(xs.size());
   std::transform(xs.begin(), xs.end(), unit.begin(),
                  [&](double x) { return (x - lower) / (upper - lower); });
   const Moments m = moments(unit);
   const double common = m.mean * (1.0 - m.mean) / m.variance - 1.0;
   if (!(common > 0.0)) {
      throw DomainError("Beta moments are outside the admissible region");
   }
   return {Family::Beta,
           {{"alpha", m.mean * common},
            {"beta", (1.0 - m.mean) * common},
            {"lower", lower},
            {"upper", upper}}};
}

}  // namespace

const char* to_string(Family family) noexcept {
   switch (family) {
      case Family::Normal: return "normal";
      case Family::LogNormal: return "lognormal";
      case Family::Beta: return "beta";
      case Family::Gamma: return "gamma";
   }
   return "?";
}

Family parse_family(const std::string& name) {
   for (Family f : kAllFamilies) {
      if (name == to_string(f)) {
         return f;
      }
   }
   throw InvalidArgument("unknown distribution family '" + name + "'");
}

Histogram make_histogram(std::span<const double> samples, std::size_t bins) {
   if (bins < 2) {
      throw InvalidArgument("histogram needs at least two bins");
   }
   if (samples.empty()) {
      throw DegenerateSamples("histogram of an empty sample");
   }
   const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
   const double lo = *lo_it;
   const double hi = *hi_it;
   if (!(hi > lo)) {
      throw DegenerateSamples("all samples are equal");
   }
   Histogram hist;
   hist.edges.resize(bins + 1);
   const double width = (hi - lo) / static_cast<double>(bins);
   for (std::size_t i = 0; i <= bins; ++i) {
      hist.edges[i] = lo + width * static_cast<double>(i);
   }
   hist.edges.back() = hi;

   std::vector<std::size_t> counts(bins, 0);
   for (double x : samples) {
      auto idx = static_cast<std::size_t>((x - lo) / width);
      counts[std::min(idx, bins - 1)] += 1;
   }
   const double n = static_cast<double>(samples.size());
   hist.densities.resize(bins);
   for (std::size_t i = 0; i < bins; ++i) {
      hist.densities[i] = static_cast<double>(counts[i]) / (n * hist.width(i));
   }
   return hist;
}

double Parameters::get(const std::string& name) const {
   for (const auto& [key, value] : values) {
      if (key == name) {
         return value;
      }
   }
   throw InvalidArgument(std::string("no parameter '") + name + "' for " +
                         to_string(family));
}

double Parameters::pdf(double x) const {
   namespace bm = boost::math;
   switch (family) {
      case Family::Normal:
         return bm::pdf(bm::normal_distribution<>(get("mean"), get("sd")), x);
      case Family::LogNormal:
         if (!(x > 0.0)) return 0.0;
         return bm::pdf(bm::lognormal_distribution<>(get("mu"), get("sigma")), x);
      case Family::Gamma:
         if (!(x > 0.0)) return 0.0;
         return bm::pdf(bm::gamma_distribution<>(get("shape"), get("scale")), x);
      case Family::Beta: {
         const double lower = get("lower");
         const double span = get("upper") - lower;
         const double u = (x - lower) / span;
         if (!(u > 0.0 && u < 1.0)) return 0.0;
         return bm::pdf(bm::beta_distribution<>(get("alpha"), get("beta")), u) / span;
      }
   }
   return 0.0;
}

Parameters estimate(std::span<const double> samples, Family family) {
   if (samples.size() < 2) {
      throw DegenerateSamples("need at least two samples to estimate parameters");
   }
   switch (family) {
      case Family::Normal: {
         const Moments m = moments(samples);
         require_spread(m, family);
         return {family, {{"mean", m.mean}, {"sd", std::sqrt(m.variance)}}};
      }
      case Family::LogNormal: {
         require_positive(samples, family);
         std::vector<double> logs(samples.size());
         std::transform(samples.begin(), samples.end(), logs.begin(),
                        [](double x) { return std::log(x); });
         const Moments m = moments(logs);
         require_spread(m, family);
         return {family, {{"mu", m.mean}, {"sigma", std::sqrt(m.variance)}}};
      }
      case Family::Gamma:
         return estimate_gamma(samples);
      case Family::Beta:
         return estimate_beta(samples);
   }
   throw InvalidArgument("unknown family");
}

FitResult fit(std::span<const double> samples, Family family, std::size_t bins) {
   if (samples.size() < kMinFitSamples) {
      throw InvalidArgument("fit needs at least " + std::to_string(kMinFitSamples) +
                            " samples, got " + std::to_string(samples.size()));
   }
   FitResult result;
   result.params = estimate(samples, family);
   result.histogram = make_histogram(samples, bins);
   for (std::size_t i = 0; i < result.histogram.bins(); ++i) {
      const double r =
          result.histogram.densities[i] - result.params.pdf(result.histogram.center(i));
      result.ssr += r * r;
   }
   return result;
}

FitResult select_best(std::span<const double> samples, std::span<const Family> families,
                      std::size_t bins) {
   if (families.empty()) {
      throw InvalidArgument("select_best needs at least one family");
   }
   FitResult best = fit(samples, families.front(), bins);
   for (Family f : families.subspan(1)) {
      FitResult candidate = fit(samples, f, bins);
      if (candidate.ssr < best.ssr) {
         best = std::move(candidate);
      }
   }
   return best;
}

}  // namespace deconf::statfit
