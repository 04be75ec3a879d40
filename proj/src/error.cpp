// Copyright 2026 The projpool Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "projpool/error.hpp"

namespace projpool {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::DegenerateArea: return "DegenerateArea";
    case ErrorCode::CoincidentPoint: return "CoincidentPoint";
    case ErrorCode::CameraInsidePolygon: return "CameraInsidePolygon";
    case ErrorCode::IntersectingPolygons: return "IntersectingPolygons";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::InvalidThickness: return "InvalidThickness";
    case ErrorCode::DegenerateRange: return "DegenerateRange";
    case ErrorCode::IndivisibleHeight: return "IndivisibleHeight";
    case ErrorCode::WrongRank: return "WrongRank";
    case ErrorCode::MissingStripe: return "MissingStripe";
    case ErrorCode::DepthMismatch: return "DepthMismatch";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::PolarLatitude: return "PolarLatitude";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code) {}

}  // namespace projpool
