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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projpool {

enum class ErrorCode {
  // geometry
  TooFewVertices,
  SelfIntersecting,
  DegenerateArea,
  CoincidentPoint,
  CameraInsidePolygon,
  IntersectingPolygons,
  // grid
  EmptyResult,
  InvalidThickness,
  // operator
  DegenerateRange,
  // fusion
  IndivisibleHeight,
  WrongRank,
  MissingStripe,
  DepthMismatch,
  WidthMismatch,
  ShapeMismatch,
  // io
  ParseError,
  ValidationError,
  BadMagic,
  UnsupportedVersion,
  TruncatedPayload,
  InvalidShape,
  IoError,
  PolarLatitude,
  // synth
  GenerationFailed,
  InvalidArgument,
};

/// Stable name of an error code, e.g. "SelfIntersecting".
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace projpool
