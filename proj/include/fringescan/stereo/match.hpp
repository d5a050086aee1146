#pragma once

#include <vector>

#include "fringescan/core/phase_map.hpp"

namespace fringescan {

// Rectified stereo phase maps: a scene point appears on the same row in
// both, and both carry the same phase scale.
struct RectifiedPair {
  PhaseMap left;
  PhaseMap right;

  void validate() const;
};

struct Match {
  int u_left = 0;
  int v = 0;
  double u_right = 0;  // sub-pixel
};
using MatchList = std::vector<Match>;

struct MatchParams {
  double max_phase_gap = kTwoPi;  // reject matches with a larger winning phase gap
};

// Phase correspondence along one rectified row. For each valid left pixel,
// the nearest right phase is located by binary search over the row's
// strictly-increasing valid runs, then refined to sub-pixel by two-branch
// inverse linear interpolation. A match is rejected when the winning gap
// exceeds max_phase_gap or the interpolation neighbor falls outside the
// nearest pixel's run (monotonicity breaks are never interpolated across).
MatchList match_row(const RectifiedPair& pair, int row, const MatchParams& params);

// All rows, top to bottom.
MatchList match_pair(const RectifiedPair& pair, const MatchParams& params);

}  // namespace fringescan
