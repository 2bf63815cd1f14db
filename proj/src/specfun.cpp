#include "gcsie/specfun.hpp"

#include <cmath>
#include <limits>

namespace gcsie::specfun {
namespace {

constexpr double kEps = 1e-17;
constexpr double kMaxImag = 700.0;  // e^700 is close to the double range

void check_order(int n, int limit = kMaxOrder) {
  if (n < 0 || n > limit)
    throw SpecialFunctionError("Bessel order " + std::to_string(n) + " outside [0, " +
                               std::to_string(limit) + "]");
}

void check_finite(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw SpecialFunctionError(std::string(what) + ": result outside double range");
}

struct SeriesJY {
  cplx j0, j1, y0, y1;
};

// Ascending series for J_0, J_1, Y_0, Y_1 (principal branch of log).
SeriesJY series_jy(cplx z) {
  const cplx half = 0.5 * z;
  const cplx q = -half * half;  // -(z/2)^2
  cplx t0 = 1.0;                // (-q)^k / (k!)^2 with sign folded into q
  cplx t1 = 1.0;                // (-q)^k / (k! (k+1)!)
  cplx j0 = 1.0, j1 = 1.0;
  double harmonic = 0.0;        // H_k
  cplx ysum0 = 0.0;             // sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k/(k!)^2
  cplx ysum1 = (-2.0 * kEulerGamma + 1.0);  // k = 0 term of psi(k+1)+psi(k+2)
  for (int k = 1; k < 200; ++k) {
    t0 *= q / (double(k) * k);
    t1 *= q / (double(k) * (k + 1));
    harmonic += 1.0 / k;
    j0 += t0;
    j1 += t1;
    ysum0 -= harmonic * t0;
    const double psi_sum = -2.0 * kEulerGamma + 2.0 * harmonic + 1.0 / (k + 1);
    ysum1 += psi_sum * t1;
    if (std::abs(t0) < kEps * std::abs(j0) && std::abs(t1) < kEps * std::abs(j1) &&
        std::abs(harmonic * t0) < kEps * std::abs(ysum0))
      break;
  }
  j1 *= half;
  const cplx lg = std::log(half);
  SeriesJY out;
  out.j0 = j0;
  out.j1 = j1;
  out.y0 = (2.0 / kPi) * ((lg + kEulerGamma) * j0 + ysum0);
  out.y1 = -2.0 / (kPi * z) + (2.0 / kPi) * lg * j1 - (1.0 / kPi) * half * ysum1;
  return out;
}

// Hankel asymptotic sums for order nu in {0,1}: returns H^{(1)}, and H^{(2)}
// when `second` is non-null.
cplx asymptotic_hankel(int nu, cplx z, cplx* second) {
  const double mu = 4.0 * nu * nu;
  cplx sum1 = 1.0, sum2 = 1.0;
  cplx term = 1.0;  // a_k(nu) / z^k
  cplx ipow = 1.0;  // i^k
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 100; ++k) {
    const double odd = 2.0 * k - 1.0;
    const cplx next = term * ((mu - odd * odd) / (8.0 * k)) / z;
    const double mag = std::abs(next);
    if (mag >= last || mag == 0.0) break;  // divergent tail starts
    last = mag;
    term = next;
    ipow *= kI;
    sum1 += ipow * term;
    sum2 += std::conj(ipow) * term;
    if (mag < kEps) break;
  }
  const cplx omega = z - 0.5 * nu * kPi - 0.25 * kPi;
  const cplx pref = std::sqrt(2.0 / (kPi * z));
  if (second != nullptr) *second = pref * std::exp(-kI * omega) * sum2;
  return pref * std::exp(kI * omega) * sum1;
}

// K_0(w), K_1(w) for Re w >= 2 via Steed's method on the CF2 continued
// fraction (Temme's normalization).
void bessel_k01_cf2(cplx w, cplx& k0, cplx& k1) {
  const double a1 = 0.25;
  cplx b = 2.0 * (1.0 + w);
  cplx d = 1.0 / b;
  cplx h = d, delh = d;
  cplx q1 = 0.0, q2 = 1.0;
  cplx q = a1, c = a1;
  double a = -a1;
  cplx s = 1.0 + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / double(i);
    const cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) < kEps * std::abs(s)) break;
  }
  h *= a1;
  k0 = std::sqrt(kPi / (2.0 * w)) * std::exp(-w) / s;
  k1 = k0 * (w + 0.5 - h) / w;
}

void check_hankel_argument(cplx z) {
  if (std::abs(z) < 1e-14) throw SpecialFunctionError("Hankel function is singular at z = 0");
  if (z.imag() < 0.0) throw SpecialFunctionError("Hankel argument must satisfy Im z >= 0");
  if (std::abs(z) > 1e3) throw SpecialFunctionError("Hankel argument beyond |z| = 1e3");
}

bool decaying_regime(cplx z) { return z.imag() >= 2.0; }

}  // namespace

std::vector<cplx> bessel_j_seq(int n_max, cplx z) {
  check_order(n_max);
  if (std::abs(z) > 1e4) throw SpecialFunctionError("Bessel argument beyond |z| = 1e4");
  if (std::abs(z.imag()) > kMaxImag) throw SpecialFunctionError("J_n(z) overflows for |Im z| > 700");
  std::vector<cplx> out(n_max + 1, cplx(0.0));
  if (std::abs(z) == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double az = std::abs(z);
  int start = n_max + 15 + int(std::ceil(az)) + int(std::ceil(6.0 * std::cbrt(az)));
  if (start % 2 != 0) ++start;

  cplx next = 0.0, cur = 1e-30;
  cplx sum_plain = 0.0, sum_alt = 0.0;  // J0 + 2 sum J_2k, J0 + 2 sum (-1)^k J_2k
  double sum_abs = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= n_max) out[k] = cur;
    if (k % 2 == 0) {
      const double w = (k == 0) ? 1.0 : 2.0;
      sum_plain += w * cur;
      sum_alt += ((k / 2) % 2 == 0 ? w : -w) * cur;
      sum_abs += w * std::abs(cur);
    }
    if (k == 0) break;
    const cplx prev = (2.0 * k / z) * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      const double scale = 1e-250;
      cur *= scale;
      next *= scale;
      sum_plain *= scale;
      sum_alt *= scale;
      sum_abs *= scale;
      for (int m = std::max(k - 1, 0); m <= n_max; ++m) out[m] *= scale;
    }
  }
  // Normalize with whichever sum rule suffers less cancellation: the plain
  // rule sums to 1, the alternating one to cos z (large when Im z is large).
  const cplx cosz = std::cos(z);
  const cplx norm = (std::abs(cosz) > 1.0) ? cosz / sum_alt : 1.0 / sum_plain;
  (void)sum_abs;
  for (auto& v : out) v *= norm;
  return out;
}

cplx bessel_j(int n, cplx z) {
  check_order(n);
  return bessel_j_seq(n, z)[n];
}

double bessel_y(int n, double x) {
  check_order(n);
  if (!(x > 0.0)) throw SpecialFunctionError("Y_n(x) requires x > 0");
  double y0, y1;
  if (x <= kSeriesRadius) {
    const SeriesJY s = series_jy(cplx(x, 0.0));
    y0 = s.y0.real();
    y1 = s.y1.real();
  } else {
    y0 = asymptotic_hankel(0, cplx(x, 0.0), nullptr).imag();
    y1 = asymptotic_hankel(1, cplx(x, 0.0), nullptr).imag();
  }
  if (n == 0) return y0;
  double prev = y0, cur = y1;
  for (int k = 1; k < n; ++k) {
    const double nxt = (2.0 * k / x) * cur - prev;
    prev = cur;
    cur = nxt;
    if (!std::isfinite(cur)) throw SpecialFunctionError("Y_n(x) overflows for this order/argument");
  }
  return cur;
}

cplx hankel1(int n, cplx z) {
  if (n != 0 && n != 1) throw SpecialFunctionError("hankel1 supports orders 0 and 1 only");
  check_hankel_argument(z);
  cplx h;
  if (std::abs(z) > kSeriesRadius) {
    h = asymptotic_hankel(n, z, nullptr);
  } else if (decaying_regime(z)) {
    cplx k0, k1;
    bessel_k01_cf2(-kI * z, k0, k1);
    // H_nu(z) = (2 / (i pi)) e^{-i nu pi / 2} K_nu(-i z)
    h = (n == 0) ? (2.0 / (kI * kPi)) * k0 : -(2.0 / kPi) * k1;
  } else {
    const SeriesJY s = series_jy(z);
    h = (n == 0) ? s.j0 + kI * s.y0 : s.j1 + kI * s.y1;
  }
  check_finite(h, "hankel1");
  return h;
}

std::vector<cplx> hankel1_seq(int n_max, cplx z) {
  check_order(n_max);
  std::vector<cplx> out(std::max(n_max, 1) + 1);
  out[0] = hankel1(0, z);
  out[1] = hankel1(1, z);
  for (int k = 1; k < n_max; ++k) {
    out[k + 1] = (2.0 * k / z) * out[k] - out[k - 1];
    check_finite(out[k + 1], "hankel1_seq");
  }
  out.resize(n_max + 1);
  return out;
}

cplx seq_derivative(const std::vector<cplx>& seq, int n, cplx z) {
  if (n == 0) return -seq.at(1);
  return seq.at(n - 1) - (double(n) / z) * seq.at(n);
}

KernelBessel kernel_bessel(cplx z) {
  if (z.real() < 0.0 || z.imag() < 0.0)
    throw SpecialFunctionError("kernel_bessel expects 0 <= arg z <= pi/2");
  KernelBessel out;
  if (std::abs(z) > kSeriesRadius) {
    if (std::abs(z.imag()) > kMaxImag) throw SpecialFunctionError("kernel argument overflows J");
    cplx h20, h21;
    out.h0 = asymptotic_hankel(0, z, &h20);
    out.h1 = asymptotic_hankel(1, z, &h21);
    out.j0 = 0.5 * (out.h0 + h20);
    out.j1 = 0.5 * (out.h1 + h21);
    return out;
  }
  const SeriesJY s = series_jy(z);
  out.j0 = s.j0;
  out.j1 = s.j1;
  if (decaying_regime(z)) {
    cplx k0, k1;
    bessel_k01_cf2(-kI * z, k0, k1);
    out.h0 = (2.0 / (kI * kPi)) * k0;
    out.h1 = -(2.0 / kPi) * k1;
  } else {
    out.h0 = s.j0 + kI * s.y0;
    out.h1 = s.j1 + kI * s.y1;
  }
  return out;
}

}  // namespace gcsie::specfun
