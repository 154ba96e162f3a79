#pragma once

// Regression floors for the non-constancy checks.  Each floor is half the
// flag-curvature spread measured by the reference scan (seed 7, 100 flags,
// ball radius 2, wind-norm margin 0.95):
//   vr  a=1, r=1    spread 4.162320
//   us  a=1, s=1/4  spread 1.163575
//   wmn a=1, m=n=1  spread 1.400977

namespace tnlab {

inline constexpr double kVrFlagSpreadFloor = 2.081160;
inline constexpr double kUsFlagSpreadFloor = 0.581787;
inline constexpr double kWmnFlagSpreadFloor = 0.700488;

}  // namespace tnlab
