#include "rnwave/nonlinearity.hpp"

namespace rnwave {

std::string to_string(NonlinearityKind k) {
  switch (k) {
    case NonlinearityKind::Zero: return "zero";
    case NonlinearityKind::NullForm: return "null_form";
    case NonlinearityKind::PowerTerm: return "power";
    case NonlinearityKind::NonNullHorizon: return "non_null_horizon";
  }
  return "zero";
}

std::string to_string(AProfile a) {
  switch (a) {
    case AProfile::Constant: return "constant";
    case AProfile::Cosine: return "cosine";
    case AProfile::Sine: return "sine";
    case AProfile::SphereLike: return "sphere";
  }
  return "constant";
}

NonlinearityKind parse_kind(const std::string& s) {
  for (auto k : {NonlinearityKind::Zero, NonlinearityKind::NullForm, NonlinearityKind::PowerTerm,
                 NonlinearityKind::NonNullHorizon})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown nonlinearity kind '" + s + "'");
}

AProfile parse_profile(const std::string& s) {
  for (auto a : {AProfile::Constant, AProfile::Cosine, AProfile::Sine, AProfile::SphereLike})
    if (to_string(a) == s) return a;
  throw std::invalid_argument("unknown A profile '" + s + "'");
}

void validate(const NonlinearitySpec& spec) {
  if (!(spec.a0 >= 0.0) || !std::isfinite(spec.a0))
    throw std::invalid_argument("nonlinearity.a0 must be finite and nonnegative");
  if (spec.l < 2) throw std::invalid_argument("nonlinearity.l must be at least 2");
  if (spec.n < 2) throw std::invalid_argument("nonlinearity.n must be at least 2");
  if (!(spec.cutoff_width > 0.0))
    throw std::invalid_argument("nonlinearity.cutoff_width must be positive");
}

std::array<double, 3> declared_bounds(const NonlinearitySpec& spec) {
  switch (spec.profile) {
    case AProfile::Constant: return {spec.a0, 0.0, 0.0};
    case AProfile::Cosine:
    case AProfile::Sine: return {spec.a0, spec.a0, spec.a0};
    case AProfile::SphereLike: return {spec.a0, spec.a0, 0.0};
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace rnwave
