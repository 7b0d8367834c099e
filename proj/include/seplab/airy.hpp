#pragma once

#include <complex>

namespace seplab {

struct AiryPair {
    std::complex<double> Ai, dAi;
};

/// Complex Airy function Ai and its derivative.  Maclaurin series below
/// |z| = 7 (summed in double-double to absorb the cancellation there),
/// asymptotic series beyond, with the rotation identity applied for
/// |arg z| > 2pi/3.  Relative accuracy ~1e-11 for |z| <= 40.
AiryPair airy_eval(std::complex<double> z);

}  // namespace seplab
