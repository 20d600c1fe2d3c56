#include "nftpos/metrics.hpp"

#include <cmath>

#include "nftpos/errors.hpp"

namespace nftpos {

Rational throughput(std::uint64_t sum_of_transactions,
                    const Rational& delta_t_s) {
  if (delta_t_s <= Rational(0)) {
    fail(ErrorCode::ZeroDuration, "delta_t must be positive");
  }
  return Rational(static_cast<long long>(sum_of_transactions)) / delta_t_s;
}

MetricsReport windowed_report(const Chain& chain, std::uint32_t window_s,
                              std::uint32_t duration_s) {
  if (window_s == 0 || duration_s == 0 || duration_s % window_s != 0) {
    fail(ErrorCode::BadWindow,
         "duration_s must be a positive multiple of window_s");
  }
  const std::uint64_t window_ms = std::uint64_t{window_s} * 1000;
  const std::uint64_t duration_ms = std::uint64_t{duration_s} * 1000;
  const std::size_t num_windows = duration_s / window_s;

  std::vector<std::uint64_t> counts(num_windows, 0);
  for (const Block& block : chain.blocks) {
    const std::uint64_t t = block.header.timestamp_ms;
    if (t > duration_ms) {
      fail(ErrorCode::BadWindow,
           "block at height " + std::to_string(block.header.height) +
               " is stamped beyond duration_s");
    }
    // windows are ((i*w, (i+1)*w]; t = 0 (genesis) belongs to window 0
    const std::size_t idx =
        t == 0 ? 0 : static_cast<std::size_t>((t + window_ms - 1) / window_ms - 1);
    counts[idx] += block.header.tx_count;
  }

  MetricsReport report;
  report.window_s = window_s;
  report.per_window_tps.reserve(num_windows);
  std::uint64_t total = 0;
  for (const std::uint64_t c : counts) {
    report.per_window_tps.push_back(throughput(c, Rational(window_s)));
    total += c;
  }
  report.total_validated = total;

  const auto n = static_cast<long long>(num_windows);
  Rational sum(0);
  for (const Rational& tps : report.per_window_tps) sum += tps;
  report.mean_tps = sum / n;

  Rational var(0);
  for (const Rational& tps : report.per_window_tps) {
    const Rational d = tps - report.mean_tps;
    var += d * d;
  }
  report.variance_tps = var / n;  // population variance
  report.stddev_tps = std::sqrt(to_double(report.variance_tps));
  report.cv_tps = report.mean_tps == Rational(0)
                      ? 0.0
                      : report.stddev_tps / to_double(report.mean_tps);
  return report;
}

std::string emit_csv(const MetricsReport& report, const std::string& label) {
  std::string out = kCsvHeader;
  out.push_back('\n');
  for (std::size_t i = 0; i < report.per_window_tps.size(); ++i) {
    out += label;
    out.push_back(',');
    out += std::to_string(i);
    out.push_back(',');
    out += format_fixed6(report.per_window_tps[i]);
    out.push_back(',');
    out += format_fixed6(report.mean_tps);
    out.push_back(',');
    out += format_fixed6(report.stddev_tps);
    out.push_back(',');
    out += format_fixed6(report.cv_tps);
    out.push_back('\n');
  }
  return out;
}

}  // namespace nftpos
