#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "effres/estimate.hpp"
#include "effres/rng.hpp"

namespace effres {

/// Median of `repeats` independent runs of `inner(const Rng&) -> Estimate`.
///
/// Run k gets stream.substream(k). Runs with success = false are left out of
/// the median; if more than half are left out the result is flagged, and if
/// all are, it is unsuccessful. Access counts and times are summed.
template <class Inner>
Estimate median_boost(Inner&& inner, std::uint64_t repeats, const Rng& stream) {
  if (repeats == 0 || repeats % 2 == 0) throw ParameterError("median boosting needs an odd repeat count");
  Estimate out;
  std::vector<double> values;
  values.reserve(repeats);
  for (std::uint64_t k = 0; k < repeats; ++k) {
    Estimate run = inner(stream.substream(k));
    if (k == 0) out.params_used = run.params_used;
    out.access += run.access;
    out.elapsed += run.elapsed;
    out.trials += run.trials;
    out.successes += run.successes;
    out.capped += run.capped;
    for (auto& f : run.flags) out.flags.push_back(std::move(f));
    if (run.success)
      values.push_back(run.value);
    else if (out.message.empty())
      out.message = run.message;
  }
  const std::uint64_t excluded = repeats - values.size();
  if (2 * excluded > repeats)
    out.flags.emplace_back("median over " + std::to_string(values.size()) + " of " + std::to_string(repeats) +
                           " runs; the rest failed");
  if (values.empty()) {
    out.success = false;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  // Lower median when exclusions leave an even count.
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  out.value = *mid;
  out.success = true;
  return out;
}

}  // namespace effres
