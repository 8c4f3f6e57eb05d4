#include "normsim/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace normsim::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b, Alternative alt) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("welch_t_test needs at least two observations per sample");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a);
  const double mb = mean(b);
  const double va = std::pow(sample_stddev(a), 2);
  const double vb = std::pow(sample_stddev(b), 2);
  const double ra = va / na;
  const double rb = vb / nb;

  WelchResult res;
  const double diff = ma - mb;
  if (ra + rb == 0.0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (diff == 0.0) {
      res.t = 0.0;
      res.p = alt == Alternative::TwoSided ? 1.0 : 0.5;
    } else {
      res.t = diff > 0 ? inf : -inf;
      const bool along = (alt == Alternative::Greater && diff > 0) || (alt == Alternative::Less && diff < 0);
      res.p = alt == Alternative::TwoSided || along ? 0.0 : 1.0;
    }
    res.dof = inf;
    return res;
  }

  res.t = diff / std::sqrt(ra + rb);
  const double denom = (va > 0 ? ra * ra / (na - 1) : 0.0) + (vb > 0 ? rb * rb / (nb - 1) : 0.0);
  res.dof = (ra + rb) * (ra + rb) / denom;

  const boost::math::students_t dist(res.dof);
  switch (alt) {
    case Alternative::TwoSided:
      res.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(res.t)));
      break;
    case Alternative::Greater:
      res.p = boost::math::cdf(boost::math::complement(dist, res.t));
      break;
    case Alternative::Less:
      res.p = boost::math::cdf(dist, res.t);
      break;
  }
  return res;
}

double glass_delta(std::span<const double> treatment, std::span<const double> control) {
  const double diff = mean(treatment) - mean(control);
  const double sd = sample_stddev(control);
  if (sd == 0.0) {
    if (diff == 0.0) return 0.0;
    return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return diff / sd;
}

std::string_view cohen_label(double delta) {
  const double d = std::abs(delta);
  if (d < 0.2) return "negligible";
  if (d < 0.5) return "small";
  if (d < 0.8) return "medium";
  return "large";
}

}  // namespace normsim::stats
