// Copyright 2026 The twofactor Authors.
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

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

namespace twofactor {

using BigInt = boost::multiprecision::cpp_int;

// Integer Laurent polynomial in z. Stored sparsely; zero coefficients are
// never kept, so structural equality is polynomial equality.
class LaurentPoly {
 public:
  using Terms = std::map<int, BigInt>;

  LaurentPoly() = default;
  /// Constant polynomial.
  explicit LaurentPoly(BigInt constant);

  static LaurentPoly monomial(BigInt coefficient, int exponent);
  static LaurentPoly z() { return monomial(1, 1); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  BigInt coefficient(int exponent) const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  LaurentPoly scaled(const BigInt& factor) const;
  LaurentPoly pow(unsigned n) const;

  /// Sum of coefficients.
  BigInt eval_at_one() const;

  /// Canonical text: ascending exponents, "z^-2 + 1", "-z + 3z^4", "0".
  std::string to_text() const;
  static LaurentPoly from_text(std::string_view text);

  /// {"exponent": coefficient}; coefficients outside int64 become strings.
  nlohmann::json to_json() const;
  static LaurentPoly from_json(const nlohmann::json& j);

 private:
  void add_term(int exponent, const BigInt& coefficient);

  Terms terms_;
};

/// z^-1 + z, the value of a vertex-free circle.
LaurentPoly loop_factor();

}  // namespace twofactor
