#pragma once

// Complete elliptic integrals, the Groetzsch ring modulus and the
// quasiconformal distortion function phi_K.
//
// Everything near r = 1 is computed from the complementary modulus
// r' = sqrt(1 - r^2), which is carried alongside r in `Modulus` so that
// quantities such as s' = sqrt(1 - phi_K(r)^2) keep full relative accuracy
// even when r rounds to 1 in double precision.

#include <optional>
#include <string>
#include <string_view>

namespace vangle {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

/// A modulus r in [0, 1] together with its complement r' = sqrt(1 - r^2).
struct Modulus {
  double r = 0.0;
  double rc = 1.0;

  static Modulus from_r(double r);
  static Modulus from_complement(double rc);
};

struct EllipticPair {
  double k_value = kHalfPi;  // first kind
  double e_value = kHalfPi;  // second kind
  bool near_endpoint = false;
};

/// Arithmetic-geometric mean of two non-negative numbers.
double agm(double a, double b);

/// Complete elliptic integrals K(r), E(r) for 0 <= r < 1.
EllipticPair elliptic(double r);
EllipticPair elliptic(const Modulus& m);

/// K(r) alone; accepts r in [0, 1) or a Modulus with rc > 0.
double elliptic_k(double r);
double elliptic_k(const Modulus& m);

/// Modulus of the planar Groetzsch ring, mu(r) = (pi/2) K(r') / K(r).
double grotzsch_mu(double r);
double grotzsch_mu(const Modulus& m);

struct MuInverse {
  Modulus modulus;
  bool clamped = false;  // r underflowed or r' underflowed
};

/// Inverse of mu on (0, infinity).
MuInverse grotzsch_mu_inv_modulus(double m);
double grotzsch_mu_inv(double m);

/// phi_K(r) = mu^{-1}(mu(r) / K), returned with its complement.
Modulus phi_modulus(double big_k, const Modulus& r);
double phi(double big_k, double r);

struct PhiPartials {
  double ds_dr = 0.0;
  double ds_dk = 0.0;
};

/// Partial derivatives of phi_K(r) in r and in K.
PhiPartials phi_partials(double big_k, double r);

/// artanh(r) evaluated from the pair (r, r') as log((1 + r) / r').
double arth(const Modulus& m);

/// The scalar functions whose monotonicity and limits the verification
/// suites certify.
enum class LemmaFunction {
  Vs1F1,  // r^{-1/K} s
  Vs1F2,  // s' K(s)^2 / (r' K(r)^2)
  Vs1F3,  // sqrt(r') K(r)
  Vs1F4,  // s / r
  Vs1F5,  // r / arctan(r / r')
  Vs1F6,  // 2 E(r) - r'^2 K(r)
  Vs2F1,  // arctan(s/s') / arctan(r/r')
  Vs2F2,  // arctan(s/s') / arctan(r/r')^{1/K}
  Vs3F,   // argument is K: 4^{1-1/K} arctan(r0/r0') / arctan(s0/s0'), r0 = sin 1
  Vs3G,   // argument is K: the logarithmic-derivative factor g(K)
  BvG,    // artanh(phi_K(r)) / artanh(r)^{1/K}
  Lerho1F1,  // arcsin(r) / log(1 + r)
  Lerho1F2,  // sin(4 L r) / sin(r), r in (0, pi/(8L)]
  Lerho1F3,  // artanh(4 L r) / artanh(r), r in (0, eps/(4L)]
  RhoStarRatio,  // 2 arctan(s/s') / max{arctan(r/r'), arctan(r/r')^{1/K}}
};

struct FunctionParams {
  std::optional<double> big_k;
  std::optional<double> lipschitz;
  std::optional<double> epsilon;
};

/// Evaluates a named lemma function. For Vs3F and Vs3G the argument is K.
double lemma_fn(LemmaFunction id, const FunctionParams& params, double x);
/// Same, with the argument given as a modulus pair (ignored for Vs3F/Vs3G and
/// the Lerho1 functions, which take x = m.r).
double lemma_fn(LemmaFunction id, const FunctionParams& params, const Modulus& m);

/// Open interval on which `id` is defined, given its parameters.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};
Interval lemma_fn_domain(LemmaFunction id, const FunctionParams& params);

std::string_view to_string(LemmaFunction id);
std::optional<LemmaFunction> lemma_function_from_string(std::string_view name);

/// r0 = tan(1)/sqrt(1 + tan(1)^2) = sin(1).
double vs3_r0();

}  // namespace vangle
