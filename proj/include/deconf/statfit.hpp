#ifndef DECONF_STATFIT_HPP_
#define DECONF_STATFIT_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace deconf::statfit {

enum class Family { Normal, LogNormal, Beta, Gamma };

inline constexpr std::array<Family, 4> kAllFamilies{Family::Normal, Family::LogNormal,
                                                    Family::Beta, Family::Gamma};
inline constexpr std::size_t kDefaultBins = 50;
inline constexpr std::size_t kMinFitSamples = 30;

const char* to_string(Family family) noexcept;
Family parse_family(const std::string& name);

/// Uniform bins over [min, max], density-normalized.
struct Histogram {
   std::vector<double> edges;      ///< B + 1 strictly increasing values
   std::vector<double> densities;  ///< B values, sum(density * width) == 1

   std::size_t bins() const noexcept { return densities.size(); }
   double width(std::size_t i) const { return edges[i + 1] - edges[i]; }
   double center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
};

/// Throws DegenerateSamples when fewer than two distinct values are given,
/// InvalidArgument when bins < 2.
Histogram make_histogram(std::span<const double> samples, std::size_t bins);

/// Family parameters. Normal: mean, sd. LogNormal: mu, sigma (of log x).
/// Gamma: shape, scale. Beta: alpha, beta on the support [lower, upper].
struct Parameters {
   Family family = Family::Normal;
   std::vector<std::pair<std::string, double>> values;

   double get(const std::string& name) const;
   double pdf(double x) const;
};

/// Point estimates only; no sample-count minimum. Normal and LogNormal use
/// closed-form maximum likelihood, Gamma moments then Newton on the shape
/// likelihood equation, Beta moments on samples mapped to (0, 1).
Parameters estimate(std::span<const double> samples, Family family);

struct FitResult {
   Parameters params;
   double ssr = 0.0;
   Histogram histogram;

   Family family() const noexcept { return params.family; }
};

/// Estimates parameters and scores them by the squared residuals between
/// histogram density and pdf at bin centers. Needs kMinFitSamples values.
FitResult fit(std::span<const double> samples, Family family,
              std::size_t bins = kDefaultBins);

/// Minimum-SSR fit; ties go to the earlier family in `families`.
FitResult select_best(std::span<const double> samples, std::span<const Family> families,
                      std::size_t bins = kDefaultBins);

}  // namespace deconf::statfit

#endif  // DECONF_STATFIT_HPP_
