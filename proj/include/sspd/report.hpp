#ifndef SSPD_REPORT_HPP
#define SSPD_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sspd {

/// One construction run. Serialized as one JSON object per line plus a CSV
/// row with the same columns; metrics that were not measured serialize as
/// JSON null / empty CSV cell. duration_ms is wall clock and sits outside
/// the determinism contract.
struct RunReport {
  std::string generator;   // point source: generator kind, or "file"
  std::string input_file;  // set when points came from disk
  std::size_t n = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 1;
  std::string construction;
  double eps = 0.5;

  std::optional<double> psi;     // spanner cone opening angle
  std::optional<double> rho;     // internal cross-cut WSPD parameter
  std::optional<std::size_t> t;  // top-level ring parameter

  std::optional<std::size_t> pair_count, weight, max_pairs_per_point;
  std::optional<std::size_t> edges, max_degree, separator_size, side_a, side_b;
  std::optional<double> stretch, mean_gap_proxy, total_weight;

  std::optional<bool> coverage_ok, separation_ok, stretch_ok, separator_ok;
  std::string note;  // witness text on oracle failure
  double duration_ms = 0.0;
};

void write_jsonl(std::ostream& out, const std::vector<RunReport>& reports);
void write_csv(std::ostream& out, const std::vector<RunReport>& reports);

}  // namespace sspd

#endif
