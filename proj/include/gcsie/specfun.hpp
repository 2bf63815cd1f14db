#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gcsie/types.hpp"

/// Bessel and Hankel functions of integer order for real and complex
/// arguments.
///
/// Three evaluation regimes are used for orders 0 and 1:
///  - |z| <= 13, Im z < 2: ascending power series (J and Y);
///  - |z| <= 13, Im z >= 2: H from K_nu(-iz) via the Steed/Temme continued
///    fraction, which avoids the J + iY cancellation for decaying H;
///  - |z| > 13: Hankel asymptotic expansion truncated at its smallest term.
/// Higher orders come from recurrences: Miller backward recurrence for J,
/// forward recurrence for Y and H.
namespace gcsie::specfun {

class SpecialFunctionError : public std::domain_error {
 public:
  explicit SpecialFunctionError(const std::string& what) : std::domain_error(what) {}
};

inline constexpr int kMaxOrder = 200;
inline constexpr double kSeriesRadius = 13.0;

/// J_n(z), 0 <= n <= 200, |z| <= 1e4.
cplx bessel_j(int n, cplx z);

/// J_0(z) .. J_{n_max}(z) by Miller's backward recurrence.
std::vector<cplx> bessel_j_seq(int n_max, cplx z);

/// Y_n(x) for real x > 0, 0 <= n <= 200.
double bessel_y(int n, double x);

/// H^{(1)}_n(z) for n in {0, 1}, 1e-14 <= |z| <= 1e3, Im z >= 0.
cplx hankel1(int n, cplx z);

/// H^{(1)}_0(z) .. H^{(1)}_{n_max}(z) by forward recurrence from H_0, H_1.
std::vector<cplx> hankel1_seq(int n_max, cplx z);

/// Derivative of the n-th member of a Bessel-type sequence C_n (J, Y or H),
/// via C_0' = -C_1 and C_n' = C_{n-1} - (n/z) C_n. `seq` must hold C_0..C_n
/// (and C_1 when n == 0).
cplx seq_derivative(const std::vector<cplx>& seq, int n, cplx z);

/// J_0, J_1, H_0, H_1 at one argument with Re z >= 0 and Im z >= 0 (the
/// range k r takes for admissible wavenumbers); the Nystrom kernels need
/// all four.
struct KernelBessel {
  cplx j0, j1, h0, h1;
};
KernelBessel kernel_bessel(cplx z);

}  // namespace gcsie::specfun
