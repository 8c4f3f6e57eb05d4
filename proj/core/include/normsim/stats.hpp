#pragma once
// Two-sample comparison statistics: Welch's unequal-variance t-test, Glass'
// delta and Cohen's descriptors.

#include <span>
#include <string_view>

namespace normsim::stats {

double mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_stddev(std::span<const double> xs);

enum class Alternative { TwoSided, Greater, Less };

struct WelchResult {
  double t = 0.0;
  double dof = 0.0;
  double p = 1.0;
};

// Welch t statistic for mean(a) - mean(b) with Welch-Satterthwaite degrees
// of freedom. Both samples need >= 2 values (std::invalid_argument).
// Zero variance in both samples gives t = 0, p = 1 for equal means and
// t = +-inf, p = 0 (in the direction of the difference) otherwise.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         Alternative alt = Alternative::TwoSided);

// (mean(treatment) - mean(control)) / sd(control). A zero-variance control
// yields +-inf for unequal means and 0 for equal means.
double glass_delta(std::span<const double> treatment, std::span<const double> control);

// |delta| < 0.2 negligible, < 0.5 small, < 0.8 medium, otherwise large.
std::string_view cohen_label(double delta);

}  // namespace normsim::stats
