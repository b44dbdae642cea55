// Copyright 2026 The grw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace grw {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file; message carries "path:line: reason".
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Shape/size mismatch between graph, features, labels or partitions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument value (ratios, counts, out-of-range node IDs).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure (singular system, non-converging solve).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Training diverged or could not proceed.
class TrainError : public Error {
 public:
  using Error::Error;
};

/// A metric was requested on an empty or inconsistent evaluation set.
class MetricError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure while reading or writing artifacts.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace grw
