#include "srmdp/interval_set.hpp"

namespace srmdp {

IntervalSet::IntervalSet(Interval initial, double min_width)
    : min_width_(min_width) {
  if (initial.lo > initial.hi)
    throw ValidationError("interval endpoints out of order");
  // the initial interval is kept even when degenerate so a constant-reward
  // instance still gets one probe
  parts_.push_back(initial);
}

double IntervalSet::total_measure() const {
  double m = 0.0;
  for (const Interval& p : parts_) m += p.width();
  return m;
}

double IntervalSet::next_probe() const {
  if (parts_.empty())
    throw ValidationError("next_probe called on an empty interval set");
  return 0.5 * (parts_.front().lo + parts_.front().hi);
}

void IntervalSet::subtract(const Interval& cut) {
  if (cut.lo > cut.hi) throw ValidationError("interval endpoints out of order");
  std::vector<Interval> out;
  out.reserve(parts_.size() + 1);
  for (const Interval& p : parts_) {
    if (cut.hi < p.lo || cut.lo > p.hi) {  // no overlap
      out.push_back(p);
      continue;
    }
    // pieces are emitted upper-first, which preserves the descending order
    if (cut.hi < p.hi && p.hi - cut.hi >= min_width_)
      out.push_back({cut.hi, p.hi});
    if (cut.lo > p.lo && cut.lo - p.lo >= min_width_)
      out.push_back({p.lo, cut.lo});
  }
  parts_ = std::move(out);
}

}  // namespace srmdp
