#include "deconf/interval_set.hpp"

#include <algorithm>

#include "deconf/errors.hpp"

namespace deconf {

IntervalSet IntervalSet::closed(double start, double end) {
   IntervalSet out;
   if (start <= end) {
      out.spans_.push_back({start, end});
   }
   return out;
}

IntervalSet IntervalSet::from_spans(std::vector<Span> spans) {
   std::erase_if(spans, [](const Span& s) { return !(s.start <= s.end); });
   std::sort(spans.begin(), spans.end(),
             [](const Span& a, const Span& b) { return a.start < b.start; });
   IntervalSet out;
   for (const Span& s : spans) {
      if (!out.spans_.empty() && s.start <= out.spans_.back().end) {
         out.spans_.back().end = std::max(out.spans_.back().end, s.end);
      } else {
         out.spans_.push_back(s);
      }
   }
   return out;
}

IntervalSet IntervalSet::subtract(double lo, double hi) const {
   if (!(lo < hi)) {
      return *this;
   }
   IntervalSet out;
   out.spans_.reserve(spans_.size() + 1);
   for (const Span& s : spans_) {
      if (hi <= s.start || lo >= s.end) {
         out.spans_.push_back(s);
         continue;
      }
      if (lo >= s.start) {
         out.spans_.push_back({s.start, lo});
      }
      if (hi <= s.end) {
         out.spans_.push_back({hi, s.end});
      }
   }
   return out;
}

double IntervalSet::earliest() const {
   if (spans_.empty()) {
      throw EmptyFeasibleSet();
   }
   return spans_.front().start;
}

bool IntervalSet::contains(double t) const noexcept {
   return std::any_of(spans_.begin(), spans_.end(),
                      [t](const Span& s) { return s.start <= t && t <= s.end; });
}

double IntervalSet::measure() const noexcept {
   double total = 0.0;
   for (const Span& s : spans_) {
      total += s.end - s.start;
   }
   return total;
}

}  // namespace deconf
