#include "holocity/error.hpp"

namespace holocity {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfOrderEvent: return "OutOfOrderEvent";
    case ErrorCode::UnknownEntity: return "UnknownEntity";
    case ErrorCode::DuplicateCreate: return "DuplicateCreate";
    case ErrorCode::DeletedEntity: return "DeletedEntity";
    case ErrorCode::SelfRelation: return "SelfRelation";
    case ErrorCode::DuplicateRelation: return "DuplicateRelation";
    case ErrorCode::NoSuchRelation: return "NoSuchRelation";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::Unassigned: return "Unassigned";
    case ErrorCode::OrphanLayer: return "OrphanLayer";
    case ErrorCode::UnknownLayer: return "UnknownLayer";
    case ErrorCode::LatitudeOutOfRange: return "LatitudeOutOfRange";
    case ErrorCode::TileOutOfRange: return "TileOutOfRange";
    case ErrorCode::UnknownRegion: return "UnknownRegion";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooFewValues: return "TooFewValues";
    case ErrorCode::PointOutsideBox: return "PointOutsideBox";
    case ErrorCode::UnknownSegment: return "UnknownSegment";
    case ErrorCode::NegativeSpeed: return "NegativeSpeed";
    case ErrorCode::StorageFailure: return "StorageFailure";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace holocity
