#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lyricbeat/alignment.hpp"
#include "lyricbeat/beatgrid.hpp"
#include "lyricbeat/binary_pattern.hpp"
#include "lyricbeat/patterning.hpp"

namespace lyricbeat {

/// joint / condition. Throws UndefinedMetricError when condition is 0 and
/// PreconditionError when joint > condition.
double conditional_probability(std::size_t joint_count, std::size_t condition_count);

/// a.b / (|a| |b|). Throws PreconditionError on a length mismatch and
/// UndefinedMetricError when either pattern has no set flag.
double cosine_similarity(const BinaryPattern& a, const BinaryPattern& b);

struct AnalysisOptions {
  /// Restrict the beat event space to beats that carry at least one
  /// pronunable.
  bool exclude_rest_beats = false;
};

struct MatchCounts {
  std::size_t total_beats = 0;  // beats in the event space
  std::size_t strong_beats = 0;
  std::size_t keyword_on_strong = 0;
  std::size_t stress_on_strong = 0;
  std::size_t words = 0;
  std::size_t pronunables = 0;
};

/// Per-song matching statistics. Probabilities are beat-level: a beat with
/// several keyword pronunables counts once.
struct MatchStats {
  double p_keyword_given_strong = 0.0;  // P(A|B), A = beat carries a keyword
  double p_strong = 0.0;                // P(B)
  double p_joint = 0.0;                 // P(A and B)
  double p_stress_given_strong = 0.0;   // same with A = beat carries a stressed syllable
  double p_stress_joint = 0.0;
  std::optional<double> cos_wpsp_kp;
  std::optional<double> cos_psp_stress;
  std::optional<double> cos_psp_sssp;
  MatchCounts counts;
  std::vector<std::string> warnings;
};

/// Computes both conditional probabilities over the grid's beats and the
/// cosine similarities (WPSP, KP), (PSP, stress) and (PSP, SSSP).
/// `spans` maps words to pronunables; `kp` and `wpsp` are word-indexed over
/// the matched words, `stress` and `psp` are pronunable-indexed.
MatchStats analyze_song(const BeatGrid& grid, const AlignmentIndexMap& located,
                        const std::vector<WordSpan>& spans, const BinaryPattern& psp,
                        const BinaryPattern& wpsp, const BinaryPattern& kp,
                        const BinaryPattern& stress, const AnalysisOptions& options = {});

/// A threshold or range over a metric in [0, 1], written ">=0.90", "<0.65",
/// "<=0.55", ">0.5" or "0.70-0.80" (inclusive range).
struct Band {
  enum class Op { kGe, kGt, kLe, kLt, kRange };
  Op op = Op::kGe;
  double lo = 0.0;
  double hi = 0.0;
  std::string label;

  static Band parse(std::string_view text);
  bool contains(double value) const;
};

/// Table thresholds, the perfect-landing band and the observed cluster ranges.
std::vector<Band> default_bands();

struct Histogram {
  double bin_width = 0.05;
  std::vector<double> bin_lo;
  std::vector<double> bin_hi;
  std::vector<std::size_t> counts;

  /// Right-closed bins over [0, 1]; the first bin also takes 0.
  static Histogram build(const std::vector<double>& values, double bin_width);
  std::size_t total() const;
};

struct BandFraction {
  std::string band;
  std::size_t songs = 0;
  double fraction = 0.0;
};

/// Summary of one metric across songs where it is defined.
struct MetricSummary {
  std::size_t defined = 0;
  std::optional<double> average;
  Histogram histogram;
  std::vector<BandFraction> bands;
};

struct DatasetSummary {
  std::size_t songs = 0;
  MetricSummary p_keyword;
  MetricSummary p_stress;
  MetricSummary cos_wpsp_kp;
  MetricSummary cos_psp_stress;
};

/// Throws PreconditionError on an empty list.
DatasetSummary summarize_dataset(const std::vector<MatchStats>& stats,
                                 const std::vector<Band>& bands = default_bands(),
                                 double bin_width = 0.05);

}  // namespace lyricbeat
