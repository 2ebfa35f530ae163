#pragma once

namespace lz {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double half_pi = 1.57079632679489661923132169163975144;
inline constexpr double quarter_pi = 0.78539816339744830961566084581987572;
inline constexpr double sqrt2 = 1.41421356237309504880168872420969808;
inline constexpr double ln2 = 0.69314718055994530941723212145817657;

// Riemann zeta(3), used by the small-coupling phase expansion.
inline constexpr double zeta3 = 1.20205690315959428539973816151144999;

}  // namespace lz
