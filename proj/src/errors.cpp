#include "sweepchi/errors.hpp"

namespace sweepchi {

std::string_view error_kind_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DegenerateChart: return "DegenerateChart";
    case ErrorKind::SingularCurvePoint: return "SingularCurvePoint";
    case ErrorKind::NonTransverseSection: return "NonTransverseSection";
    case ErrorKind::ProjectionUndefined: return "ProjectionUndefined";
    case ErrorKind::OnBoundary: return "OnBoundary";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::DegenerateTangency: return "DegenerateTangency";
    case ErrorKind::DegenerateBoundaryTangency: return "DegenerateBoundaryTangency";
    case ErrorKind::InteriorCriticalOnBoundary: return "InteriorCriticalOnBoundary";
    case ErrorKind::GenericityExhausted: return "GenericityExhausted";
    case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    case ErrorKind::PoleOnBoundary: return "PoleOnBoundary";
    case ErrorKind::DegenerateMeridianTangency: return "DegenerateMeridianTangency";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_genericity_failure(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DegenerateTangency:
    case ErrorKind::DegenerateBoundaryTangency:
    case ErrorKind::InteriorCriticalOnBoundary:
    case ErrorKind::NonTransverseSection:
    case ErrorKind::ProjectionUndefined:
    case ErrorKind::OnBoundary:
    case ErrorKind::PoleOnBoundary:
    case ErrorKind::DegenerateMeridianTangency:
        return true;
    default:
        return false;
    }
}

} // namespace sweepchi
