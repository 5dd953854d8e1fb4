#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holocity {

enum class ErrorCode {
  // event store
  OutOfOrderEvent,
  UnknownEntity,
  DuplicateCreate,
  DeletedEntity,
  SelfRelation,
  DuplicateRelation,
  NoSuchRelation,
  WrongKind,
  InvalidRange,
  // geometry / index
  InvalidGeometry,
  Unassigned,
  // scene
  OrphanLayer,
  UnknownLayer,
  LatitudeOutOfRange,
  TileOutOfRange,
  // analytics
  UnknownRegion,
  OutOfRange,
  TooFewValues,
  PointOutsideBox,
  // traffic
  UnknownSegment,
  NegativeSpeed,
  // persistence
  StorageFailure,
  CorruptLog,
  // data / generic
  InvalidSpec,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// All recoverable failures in the library are reported as Error. The code is
// the stable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace holocity
