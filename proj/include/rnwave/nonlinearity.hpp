#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rnwave {

enum class NonlinearityKind { Zero, NullForm, PowerTerm, NonNullHorizon };
enum class AProfile { Constant, Cosine, Sine, SphereLike };

struct NonlinearitySpec {
  NonlinearityKind kind = NonlinearityKind::Zero;
  AProfile profile = AProfile::Constant;
  double a0 = 1.0;
  int l = 6;                   // PowerTerm exponent
  int n = 2;                   // NonNullHorizon exponent 2n
  double cutoff_width = 0.5;   // NonNullHorizon cutoff c
};

std::string to_string(NonlinearityKind k);
std::string to_string(AProfile a);
NonlinearityKind parse_kind(const std::string& s);
AProfile parse_profile(const std::string& s);
void validate(const NonlinearitySpec& spec);

/// Declared bounds a_0, a_1, a_2 of the A profile. SphereLike bounds hold on |psi| <= 1.
std::array<double, 3> declared_bounds(const NonlinearitySpec& spec);

/// Quintic smoothstep on [0, 1].
template <typename Scalar>
Scalar smoothstep5(Scalar x) {
  if (x <= 0.0) return Scalar(0.0);
  if (x >= 1.0) return Scalar(1.0);
  return x * x * x * (x * (6.0 * x - 15.0) + 10.0);
}

/// chi = 1 on [r_plus, r_plus + c/2], 0 beyond r_plus + c. Takes delta = r - r_plus.
template <typename Scalar>
Scalar horizon_cutoff(Scalar delta, double c) {
  return 1.0 - smoothstep5<Scalar>((delta - 0.5 * c) / (0.5 * c));
}

template <typename Scalar>
Scalar amplitude_A(Scalar psi, const NonlinearitySpec& spec) {
  using std::cos;
  using std::sin;
  if (spec.kind != NonlinearityKind::NullForm)
    throw std::logic_error("amplitude_A requires a NullForm nonlinearity");
  switch (spec.profile) {
    case AProfile::Constant: return Scalar(spec.a0);
    case AProfile::Cosine: return spec.a0 * cos(psi);
    case AProfile::Sine: return spec.a0 * sin(psi);
    case AProfile::SphereLike: return spec.a0 * psi;
  }
  return Scalar(0.0);
}

/// k-th derivative of A, k <= 2.
template <typename Scalar>
Scalar amplitude_A_derivative(Scalar psi, int k, const NonlinearitySpec& spec) {
  using std::cos;
  using std::sin;
  if (k == 0) return amplitude_A(psi, spec);
  switch (spec.profile) {
    case AProfile::Constant: return Scalar(0.0);
    case AProfile::Cosine: return k == 1 ? -spec.a0 * sin(psi) : -spec.a0 * cos(psi);
    case AProfile::Sine: return k == 1 ? spec.a0 * cos(psi) : -spec.a0 * sin(psi);
    case AProfile::SphereLike: return k == 1 ? Scalar(spec.a0) : Scalar(0.0);
  }
  return Scalar(0.0);
}

template <typename Scalar>
Scalar int_pow(Scalar x, int k) {
  Scalar out(1.0);
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

/// F in (v, r) variables. chi is the horizon cutoff at the point (ignored unless NonNullHorizon).
template <typename Scalar>
Scalar source_ef(Scalar psi, Scalar T_psi, Scalar Y_psi, Scalar D, const NonlinearitySpec& spec,
                 Scalar chi = Scalar(1.0)) {
  using std::abs;
  using std::pow;
  switch (spec.kind) {
    case NonlinearityKind::Zero: return Scalar(0.0);
    case NonlinearityKind::NullForm:
      return amplitude_A(psi, spec) * (D * Y_psi * Y_psi + 2.0 * T_psi * Y_psi);
    case NonlinearityKind::PowerTerm: return pow(abs(psi), Scalar(spec.l));
    case NonlinearityKind::NonNullHorizon: {
      int m = 2 * spec.n;
      return int_pow(psi, m) + chi * (int_pow(T_psi, m) + int_pow(Y_psi, m));
    }
  }
  return Scalar(0.0);
}

/// Null-chart data at a point: D(r), nu = d_u r, lambda = d_v r, horizon cutoff.
template <typename Scalar>
struct NullFrame {
  Scalar D;
  Scalar nu;
  Scalar lambda;
  Scalar chi = Scalar(1.0);
};

/// F in double-null variables with metric -Omega^2 du dv.
template <typename Scalar>
Scalar source_null(Scalar psi, Scalar du_psi, Scalar dv_psi, Scalar r, Scalar omega_sq,
                   const NonlinearitySpec& spec, const NullFrame<Scalar>& frame) {
  (void)r;
  if (!(omega_sq > 0.0)) throw std::domain_error("source_null: Omega^2 must be positive");
  switch (spec.kind) {
    case NonlinearityKind::Zero: return Scalar(0.0);
    case NonlinearityKind::NullForm:
      return -4.0 / omega_sq * amplitude_A(psi, spec) * du_psi * dv_psi;
    default: {
      Scalar Y = du_psi / frame.nu;
      Scalar T = dv_psi - frame.lambda * Y;
      return source_ef(psi, T, Y, frame.D, spec, frame.chi);
    }
  }
}

}  // namespace rnwave
