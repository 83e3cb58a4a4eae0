#ifndef DECONF_INTERVAL_SET_HPP_
#define DECONF_INTERVAL_SET_HPP_

#include <span>
#include <vector>

namespace deconf {

/// Normalized union of closed time spans [start, end].
///
/// Spans are sorted, pairwise disjoint and separated by a gap. A span may
/// collapse to a single instant (start == end) when two forbidden intervals
/// touch: their shared endpoint is still feasible.
class IntervalSet {
 public:
   struct Span {
      double start;
      double end;
      friend bool operator==(const Span&, const Span&) = default;
   };

   IntervalSet() = default;

   /// [start, end]; empty when end < start.
   static IntervalSet closed(double start, double end);
   /// Normalizes arbitrary spans (sorts and merges overlaps).
   static IntervalSet from_spans(std::vector<Span> spans);

   /// Removes the open interval (lo, hi); lo and hi themselves stay feasible.
   IntervalSet subtract(double lo, double hi) const;

   /// Smallest feasible instant. Throws EmptyFeasibleSet.
   double earliest() const;

   bool empty() const noexcept { return spans_.empty(); }
   bool contains(double t) const noexcept;
   double measure() const noexcept;
   std::span<const Span> spans() const noexcept { return spans_; }

   friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
   std::vector<Span> spans_;
};

}  // namespace deconf

#endif  // DECONF_INTERVAL_SET_HPP_
