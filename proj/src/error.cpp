#include "ntorus/error.hpp"

namespace ntorus {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonOrthogonal: return "NonOrthogonal";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::DegenerateImmersion: return "DegenerateImmersion";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::OriginPoint: return "OriginPoint";
    case ErrorKind::DimensionTooLow: return "DimensionTooLow";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::UnknownDesign: return "UnknownDesign";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ntorus
