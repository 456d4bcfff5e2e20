#pragma once

namespace graff {

// Process-wide default for rank and orthogonality checks, relative to the
// largest singular value of the matrix being tested. Starts at 1e-10.
double default_tolerance() noexcept;
void set_default_tolerance(double tol);

// Absolute threshold on the norm of the last row of an embedded frame below
// which the frame is treated as lying in the hyperplane at infinity.
inline constexpr double kNotAFlatThreshold = 1e-10;

}  // namespace graff
