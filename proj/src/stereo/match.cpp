#include "fringescan/stereo/match.hpp"

#include <algorithm>
#include <cmath>

#include "fringescan/core/error.hpp"

namespace fringescan {

void RectifiedPair::validate() const {
  if (!left.values.same_size(right.values))
    fail(errc::dimension_mismatch, "rectified pair dimensions differ");
}

namespace {

// Half-open [begin, end) run of valid pixels with strictly increasing phase.
struct Run {
  int begin = 0;
  int end = 0;
};

// Splits a row at invalid pixels and at any non-increasing step, so a
// monotonicity violation is excluded from matching rather than crossed.
std::vector<Run> build_runs(const PhaseMap& map, int row) {
  std::vector<Run> runs;
  const int w = map.width();
  int x = 0;
  while (x < w) {
    if (!map.is_valid(x, row)) {
      ++x;
      continue;
    }
    int begin = x;
    ++x;
    while (x < w && map.is_valid(x, row) && map.values.at(x, row) > map.values.at(x - 1, row)) ++x;
    runs.push_back({begin, x});
  }
  return runs;
}

struct Candidate {
  int u = -1;
  double gap = 0;
  const Run* run = nullptr;
};

// Nearest right pixel by |phase - target|; ties resolve to the smaller u.
Candidate nearest_in_runs(const PhaseMap& map, int row, const std::vector<Run>& runs,
                          double target) {
  Candidate best;
  auto consider = [&](int u, const Run& run) {
    double gap = std::abs(map.values.at(u, row) - target);
    if (best.u < 0 || gap < best.gap || (gap == best.gap && u < best.u)) best = {u, gap, &run};
  };
  for (const Run& run : runs) {
    // First index in the run with phase >= target.
    int lo = run.begin, hi = run.end;
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      if (map.values.at(mid, row) < target)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo > run.begin) consider(lo - 1, run);
    if (lo < run.end) consider(lo, run);
  }
  return best;
}

}  // namespace

MatchList match_row(const RectifiedPair& pair, int row, const MatchParams& params) {
  pair.validate();
  const PhaseMap& left = pair.left;
  const PhaseMap& right = pair.right;
  MatchList matches;
  const std::vector<Run> runs = build_runs(right, row);
  if (runs.empty()) return matches;
  for (int ul = 0; ul < left.width(); ++ul) {
    if (!left.is_valid(ul, row)) continue;
    const double target = left.values.at(ul, row);
    Candidate c = nearest_in_runs(right, row, runs, target);
    if (c.u < 0 || c.gap > params.max_phase_gap) continue;
    const double phi_c = right.values.at(c.u, row);
    double ur = 0;
    if (target > phi_c) {
      // Forward branch: interpolate toward the next pixel of the same run.
      if (c.u + 1 >= c.run->end) continue;
      ur = c.u + (target - phi_c) / (right.values.at(c.u + 1, row) - phi_c);
    } else {
      // Backward branch (covers the exact-hit case); needs the previous
      // pixel of the same run, so a run-head nearest pixel is rejected.
      if (c.u - 1 < c.run->begin) continue;
      ur = c.u - (phi_c - target) / (phi_c - right.values.at(c.u - 1, row));
    }
    matches.push_back({ul, row, ur});
  }
  return matches;
}

MatchList match_pair(const RectifiedPair& pair, const MatchParams& params) {
  pair.validate();
  MatchList all;
  for (int row = 0; row < pair.left.height(); ++row) {
    MatchList rowMatches = match_row(pair, row, params);
    all.insert(all.end(), rowMatches.begin(), rowMatches.end());
  }
  return all;
}

}  // namespace fringescan
