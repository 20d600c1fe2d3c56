#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nftpos/chain.hpp"
#include "nftpos/rational.hpp"

namespace nftpos {

// Windowed throughput: tps per window is (validated tx count) / window_s,
// kept exact. Variance is exact as well; stddev and cv are doubles because
// the square root of a rational is irrational in general.
struct MetricsReport {
  std::uint32_t window_s = 0;
  std::vector<Rational> per_window_tps;
  Rational mean_tps{0};
  Rational variance_tps{0};  // population variance, exact
  double stddev_tps = 0.0;
  double cv_tps = 0.0;  // stddev/mean; 0 when mean == 0
  std::uint64_t total_validated = 0;

  bool operator==(const MetricsReport&) const = default;
};

/// Sum of transactions divided by the elapsed time, exact.
/// Throws ZeroDuration unless delta_t_s > 0.
Rational throughput(std::uint64_t sum_of_transactions,
                    const Rational& delta_t_s);

/// Buckets each block's tx_count into the window containing its timestamp
/// and applies the throughput formula per window. Windows are the intervals
/// ((i*w, (i+1)*w] in ms (a block stamped exactly on a boundary counts in
/// the window it closes); genesis at t=0 belongs to window 0.
/// Throws BadWindow unless duration_s is a positive multiple of window_s and
/// every block timestamp lies within duration_s.
MetricsReport windowed_report(const Chain& chain, std::uint32_t window_s,
                              std::uint32_t duration_s);

/// CSV: header + one row per window. UTF-8, '\n' endings, 6 decimal places.
std::string emit_csv(const MetricsReport& report, const std::string& label);

inline constexpr const char* kCsvHeader =
    "label,window_index,tps,mean_tps,stddev_tps,cv_tps";

}  // namespace nftpos
