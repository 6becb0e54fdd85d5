#pragma once

#include <complex>
#include <vector>

namespace psusy {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace psusy
