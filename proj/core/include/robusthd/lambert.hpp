#pragma once

namespace robusthd {

// Principal branch W_0 on [-1/e, inf): w * e^w = x with w >= -1.
double lambert_w0(double x);

// Lower branch W_{-1} on [-1/e, 0): w * e^w = x with w <= -1.
double lambert_wm1(double x);

}  // namespace robusthd
