#pragma once

#include <complex>

namespace dtunnel {

using Complex = std::complex<double>;

/// Spin-up Dirac spinor restricted to its two nonzero components
/// (large component in slot 1, small component in slot 3).
struct Spinor {
  Complex upper;
  Complex lower;

  double density() const noexcept { return std::norm(upper) + std::norm(lower); }

  /// psi^dagger alpha^z psi (c = 1).
  double flux() const noexcept { return 2.0 * (std::conj(upper) * lower).real(); }
};

}  // namespace dtunnel
