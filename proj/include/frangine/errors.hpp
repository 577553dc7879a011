/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace frangine {

/// A value or combination of values violates a documented invariant.
/// The message starts with the name of the offending field or group.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed configuration text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, std::size_t line, const std::string& what)
      : std::runtime_error(format(field, line, what)), field_(std::move(field)), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  /// 1-based source line, 0 when unknown.
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, std::size_t line, const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + what;
  }
  std::string field_;
  std::size_t line_;
};

/// No F-AP can admit an F-UE; the caller falls back to HPN service.
class AllFapsBlocked : public std::runtime_error {
 public:
  AllFapsBlocked() : std::runtime_error("no F-AP admits the F-UE") {}
};

class EmptyTrace : public std::invalid_argument {
 public:
  EmptyTrace() : std::invalid_argument("hit ratio of an empty trace") {}
};

class ZeroPower : public std::invalid_argument {
 public:
  ZeroPower() : std::invalid_argument("energy efficiency with non-positive total power") {}
};

class UnknownParameter : public std::invalid_argument {
 public:
  explicit UnknownParameter(const std::string& name)
      : std::invalid_argument("unknown sweep parameter '" + name + "'") {}
};

}  // namespace frangine
