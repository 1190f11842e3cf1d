#pragma once

#include <vector>

#include "srmdp/errors.hpp"

namespace srmdp {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Disjoint union of closed intervals, kept sorted descending by upper
// endpoint. Backs the pseudo-mean coverage loop: the set starts as
// [r_min, r_max] and shrinks as domination intervals are subtracted.
// Parts narrower than min_width are dropped during subtraction.
class IntervalSet {
public:
  explicit IntervalSet(double min_width = 1e-7) : min_width_(min_width) {}
  IntervalSet(Interval initial, double min_width = 1e-7);

  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  const std::vector<Interval>& parts() const { return parts_; }
  double min_width() const { return min_width_; }

  double total_measure() const;

  // Midpoint of the part with the greatest upper endpoint; throws
  // ValidationError when the set is empty.
  double next_probe() const;

  void subtract(const Interval& cut);

private:
  std::vector<Interval> parts_;
  double min_width_;
};

}  // namespace srmdp
