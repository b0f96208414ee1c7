#include "lyricbeat/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

double conditional_probability(std::size_t joint_count, std::size_t condition_count) {
  if (condition_count == 0)
    throw UndefinedMetricError("conditional probability with an empty conditioning event");
  if (joint_count > condition_count)
    throw PreconditionError("joint count " + std::to_string(joint_count) +
                            " exceeds condition count " + std::to_string(condition_count));
  return static_cast<double>(joint_count) / static_cast<double>(condition_count);
}

double cosine_similarity(const BinaryPattern& a, const BinaryPattern& b) {
  if (a.size() != b.size())
    throw PreconditionError("cosine similarity of patterns with lengths " +
                            std::to_string(a.size()) + " and " + std::to_string(b.size()));
  std::size_t dot = 0;
  std::size_t na = 0;
  std::size_t nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<std::size_t>(a[i] && b[i]);
    na += static_cast<std::size_t>(a[i]);
    nb += static_cast<std::size_t>(b[i]);
  }
  if (na == 0 || nb == 0)
    throw UndefinedMetricError(std::string("cosine similarity with an all-zero ") +
                               std::string(to_string(na == 0 ? a.kind() : b.kind())) + " pattern");
  // For 0/1 vectors the squared norms are the popcounts; their product is
  // exact, so identical patterns give exactly 1.
  return static_cast<double>(dot) / std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
}

MatchStats analyze_song(const BeatGrid& grid, const AlignmentIndexMap& located,
                        const std::vector<WordSpan>& spans, const BinaryPattern& psp,
                        const BinaryPattern& wpsp, const BinaryPattern& kp,
                        const BinaryPattern& stress, const AnalysisOptions& options) {
  const std::size_t n_pron = located.size();
  if (psp.size() != n_pron || stress.size() != n_pron)
    throw PreconditionError("PSP, stress flags and located pronunables differ in length");
  if (kp.size() != spans.size() || wpsp.size() != spans.size())
    throw PreconditionError("KP, WPSP and word spans differ in length");
  validate_partition(spans, n_pron);

  const std::size_t n_beats = grid.size();
  std::vector<bool> carried(n_beats, false);
  std::vector<bool> keyword_beat(n_beats, false);
  std::vector<bool> stress_beat(n_beats, false);
  for (const WordSpan& span : spans) {
    for (std::size_t i = span.first; i < span.end(); ++i) {
      const long b = located.indices[i];
      if (b < 0 || static_cast<std::size_t>(b) >= n_beats)
        throw PreconditionError("located beat index outside the grid");
      const auto beat = static_cast<std::size_t>(b);
      carried[beat] = true;
      if (kp[span.word_index]) keyword_beat[beat] = true;
      if (stress[i]) stress_beat[beat] = true;
    }
  }

  MatchStats stats;
  MatchCounts& c = stats.counts;
  c.words = spans.size();
  c.pronunables = n_pron;
  for (std::size_t b = 0; b < n_beats; ++b) {
    if (options.exclude_rest_beats && !carried[b]) continue;
    ++c.total_beats;
    if (!grid.sp[b]) continue;
    ++c.strong_beats;
    if (keyword_beat[b]) ++c.keyword_on_strong;
    if (stress_beat[b]) ++c.stress_on_strong;
  }
  if (c.total_beats == 0) throw UndefinedMetricError("song has no beats in the event space");

  const auto total = static_cast<double>(c.total_beats);
  stats.p_strong = static_cast<double>(c.strong_beats) / total;
  stats.p_joint = static_cast<double>(c.keyword_on_strong) / total;
  stats.p_stress_joint = static_cast<double>(c.stress_on_strong) / total;
  stats.p_keyword_given_strong = conditional_probability(c.keyword_on_strong, c.strong_beats);
  stats.p_stress_given_strong = conditional_probability(c.stress_on_strong, c.strong_beats);

  auto cosine_or_warn = [&](const BinaryPattern& a, const BinaryPattern& b,
                            std::string_view what) -> std::optional<double> {
    try {
      return cosine_similarity(a, b);
    } catch (const UndefinedMetricError& e) {
      stats.warnings.push_back(std::string(what) + " undefined: " + e.what());
      return std::nullopt;
    }
  };
  stats.cos_wpsp_kp = cosine_or_warn(wpsp, kp, "cos(WPSP, KP)");
  stats.cos_psp_stress = cosine_or_warn(psp, stress, "cos(PSP, stress)");
  stats.cos_psp_sssp = cosine_or_warn(psp, build_sssp(psp, stress), "cos(PSP, SSSP)");
  return stats;
}

Band Band::parse(std::string_view text) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw PreconditionError("malformed band '" + std::string(text) + "'");
    return v;
  };
  Band band;
  band.label = std::string(text);
  if (text.starts_with(">=")) {
    band.op = Op::kGe;
    band.lo = number(text.substr(2));
  } else if (text.starts_with("<=")) {
    band.op = Op::kLe;
    band.hi = number(text.substr(2));
  } else if (text.starts_with(">")) {
    band.op = Op::kGt;
    band.lo = number(text.substr(1));
  } else if (text.starts_with("<")) {
    band.op = Op::kLt;
    band.hi = number(text.substr(1));
  } else {
    const auto dash = text.find('-', 1);
    if (dash == std::string_view::npos)
      throw PreconditionError("malformed band '" + std::string(text) + "'");
    band.op = Op::kRange;
    band.lo = number(text.substr(0, dash));
    band.hi = number(text.substr(dash + 1));
    if (band.hi < band.lo) throw PreconditionError("empty band '" + std::string(text) + "'");
  }
  return band;
}

bool Band::contains(double value) const {
  // Values are ratios of small integers; compare with a little slack so that
  // e.g. 0.9 lands in ">=0.90".
  constexpr double kSlack = 1e-9;
  switch (op) {
    case Op::kGe: return value >= lo - kSlack;
    case Op::kGt: return value > lo + kSlack;
    case Op::kLe: return value <= hi + kSlack;
    case Op::kLt: return value < hi - kSlack;
    case Op::kRange: return value >= lo - kSlack && value <= hi + kSlack;
  }
  return false;
}

std::vector<Band> default_bands() {
  std::vector<Band> bands;
  for (std::string_view b : {">=1.00", ">=0.90", ">=0.80", ">=0.70", "<0.65", "<=0.55",
                             "0.60-0.70", "0.70-0.80", "0.75-0.85", "0.90-1.00"})
    bands.push_back(Band::parse(b));
  return bands;
}

Histogram Histogram::build(const std::vector<double>& values, double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0))
    throw PreconditionError("histogram bin width must be in (0, 1]");
  Histogram h;
  h.bin_width = bin_width;
  const auto bins = static_cast<std::size_t>(std::llround(std::ceil(1.0 / bin_width - 1e-9)));
  h.counts.assign(bins, 0);
  for (std::size_t k = 0; k < bins; ++k) {
    h.bin_lo.push_back(static_cast<double>(k) * bin_width);
    h.bin_hi.push_back(std::min(1.0, static_cast<double>(k + 1) * bin_width));
  }
  for (double v : values) {
    long k = static_cast<long>(std::ceil(v / bin_width - 1e-9)) - 1;
    k = std::clamp(k, 0L, static_cast<long>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(k)];
  }
  return h;
}

std::size_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

namespace {

MetricSummary summarize_metric(const std::vector<double>& values, const std::vector<Band>& bands,
                               double bin_width) {
  MetricSummary m;
  m.defined = values.size();
  if (!values.empty())
    m.average = std::accumulate(values.begin(), values.end(), 0.0) /
                static_cast<double>(values.size());
  m.histogram = Histogram::build(values, bin_width);
  for (const Band& band : bands) {
    BandFraction f{band.label, 0, 0.0};
    for (double v : values) f.songs += band.contains(v) ? 1 : 0;
    if (!values.empty()) f.fraction = static_cast<double>(f.songs) / static_cast<double>(values.size());
    m.bands.push_back(std::move(f));
  }
  return m;
}

}  // namespace

DatasetSummary summarize_dataset(const std::vector<MatchStats>& stats,
                                 const std::vector<Band>& bands, double bin_width) {
  if (stats.empty()) throw PreconditionError("cannot summarize an empty dataset");
  std::vector<double> p_kw, p_stress, cos_kw, cos_stress;
  for (const MatchStats& s : stats) {
    p_kw.push_back(s.p_keyword_given_strong);
    p_stress.push_back(s.p_stress_given_strong);
    if (s.cos_wpsp_kp) cos_kw.push_back(*s.cos_wpsp_kp);
    if (s.cos_psp_stress) cos_stress.push_back(*s.cos_psp_stress);
  }
  DatasetSummary summary;
  summary.songs = stats.size();
  summary.p_keyword = summarize_metric(p_kw, bands, bin_width);
  summary.p_stress = summarize_metric(p_stress, bands, bin_width);
  summary.cos_wpsp_kp = summarize_metric(cos_kw, bands, bin_width);
  summary.cos_psp_stress = summarize_metric(cos_stress, bands, bin_width);
  return summary;
}

}  // namespace lyricbeat
