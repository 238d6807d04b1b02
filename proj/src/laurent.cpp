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

#include "twofactor/laurent.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "twofactor/errors.hpp"

namespace twofactor {

LaurentPoly::LaurentPoly(BigInt constant) { add_term(0, constant); }

LaurentPoly LaurentPoly::monomial(BigInt coefficient, int exponent) {
  LaurentPoly p;
  p.add_term(exponent, coefficient);
  return p;
}

BigInt LaurentPoly::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(int exponent, const BigInt& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly out = a;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly LaurentPoly::scaled(const BigInt& factor) const {
  if (factor == 0) return {};
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c *= factor;
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

BigInt LaurentPoly::eval_at_one() const {
  BigInt sum = 0;
  for (const auto& [e, c] : terms_) sum += c;
  return sum;
}

std::string LaurentPoly::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigInt magnitude = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << magnitude;
      continue;
    }
    if (magnitude != 1) out << magnitude;
    out << 'z';
    if (e != 1) out << '^' << e;
  }
  return out.str();
}

namespace {

class TextParser {
 public:
  explicit TextParser(std::string_view text) : text_(text) {}

  LaurentPoly parse() {
    skip_space();
    if (at_end()) fail("empty polynomial text");
    LaurentPoly out;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
      skip_space();
    }
    out += term(negative);
    for (;;) {
      skip_space();
      if (at_end()) break;
      char op = peek();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      ++pos_;
      skip_space();
      out += term(op == '-');
    }
    return out;
  }

 private:
  LaurentPoly term(bool negative) {
    std::size_t start = pos_;
    BigInt coefficient = 1;
    bool has_digits = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      coefficient = digits();
      has_digits = true;
    }
    int exponent = 0;
    if (!at_end() && peek() == 'z') {
      ++pos_;
      exponent = 1;
      if (!at_end() && peek() == '^') {
        ++pos_;
        exponent = signed_int();
      }
    } else if (!has_digits) {
      pos_ = start;
      fail("expected a coefficient or 'z'");
    }
    if (negative) coefficient = -coefficient;
    return LaurentPoly::monomial(coefficient, exponent);
  }

  BigInt digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  int signed_int() {
    bool negative = false;
    if (!at_end() && peek() == '-') {
      negative = true;
      ++pos_;
    }
    std::size_t start = pos_;
    BigInt value = digits();
    if (value > std::numeric_limits<int>::max()) {
      pos_ = start;
      fail("exponent out of range");
    }
    int e = static_cast<int>(value);
    return negative ? -e : e;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::from_text(std::string_view text) {
  return TextParser(text).parse();
}

nlohmann::json LaurentPoly::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [e, c] : terms_) {
    if (c >= std::numeric_limits<std::int64_t>::min() &&
        c <= std::numeric_limits<std::int64_t>::max()) {
      j[std::to_string(e)] = static_cast<std::int64_t>(c);
    } else {
      j[std::to_string(e)] = c.str();
    }
  }
  return j;
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("polynomial JSON must be an object");
  LaurentPoly out;
  for (const auto& [key, value] : j.items()) {
    int exponent = 0;
    try {
      std::size_t used = 0;
      exponent = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InvalidInput("bad exponent key '" + key + "'");
    }
    if (value.is_number_integer()) {
      out.add_term(exponent, BigInt(value.get<std::int64_t>()));
    } else if (value.is_string()) {
      out.add_term(exponent, BigInt(value.get<std::string>()));
    } else {
      throw InvalidInput("bad coefficient for exponent " + key);
    }
  }
  return out;
}

LaurentPoly loop_factor() { return LaurentPoly::monomial(1, -1) + LaurentPoly::monomial(1, 1); }

}  // namespace twofactor
