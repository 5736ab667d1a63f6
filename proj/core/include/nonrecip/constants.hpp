#pragma once

#include <complex>

namespace nonrecip {

using Complex = std::complex<double>;

inline constexpr double kHbar = 1.054571817e-34;  // J*s
inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline constexpr Complex kImag{0.0, 1.0};

}  // namespace nonrecip
