#include "oprange/error.hpp"

namespace oprange {

const char* kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::NotPSD: return "not_psd";
    case ErrorKind::ExactModeUnsupported: return "exact_mode_unsupported";
    case ErrorKind::NotInRange: return "not_in_range";
    case ErrorKind::RangesDiffer: return "ranges_differ";
    case ErrorKind::NotQNormalized: return "not_q_normalized";
    case ErrorKind::NotNormalized: return "not_normalized";
    case ErrorKind::CriteriaDisagree: return "criteria_disagree";
    case ErrorKind::VerificationFailed: return "verification_failed";
    case ErrorKind::InvalidL: return "invalid_l";
    case ErrorKind::IncompatibleL: return "incompatible_l";
    case ErrorKind::NotAlmostDominated: return "not_almost_dominated";
    case ErrorKind::RouteDisagreement: return "route_disagreement";
    case ErrorKind::NotAFactorization: return "not_a_factorization";
    case ErrorKind::RelationsDiffer: return "relations_differ";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::InvalidArgument: return "invalid_argument";
  }
  return "unknown";
}

bool is_internal(ErrorKind kind) noexcept {
  return kind == ErrorKind::CriteriaDisagree || kind == ErrorKind::VerificationFailed ||
         kind == ErrorKind::RouteDisagreement;
}

}  // namespace oprange
