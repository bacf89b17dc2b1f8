// Copyright 2026 The ffec Authors
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

#include "ffec/parse.hpp"

#include <cctype>
#include <sstream>

#include "ffec/errors.hpp"

namespace ffec {

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const FieldPtr& field, int line, int column0)
      : text_(text), field_(field), line_(line), column0_(column0) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column0_ + static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  RationalFunction expr() {
    RationalFunction acc(field_);
    bool first = true;
    for (;;) {
      char c = peek();
      bool negate = false;
      if (c == '+' || c == '-') {
        negate = c == '-';
        ++pos_;
      } else if (!first) {
        return acc;
      }
      RationalFunction t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
    }
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'T' || c == 'w' || c == '(';
  }

  RationalFunction term() {
    RationalFunction acc = factor();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '/') {
        ++pos_;
        const std::size_t at = pos_;
        RationalFunction d = factor();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc / d;
      } else if (starts_factor(c)) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  RationalFunction factor() {
    RationalFunction base = primary();
    if (peek() == '^') {
      ++pos_;
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected an integer exponent");
      long e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + (text_[pos_] - '0');
        if (e > 100000) fail("exponent too large");
        ++pos_;
      }
      if (neg && base.is_zero()) fail("negative power of zero");
      base = base.pow(neg ? -static_cast<int>(e) : static_cast<int>(e));
    }
    return base;
  }

  RationalFunction primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == 'T') {
      ++pos_;
      return RationalFunction::T(field_);
    }
    if (c == 'w') {
      if (field_->is_prime_field()) fail("'w' is only available when s > 1");
      ++pos_;
      return RationalFunction::constant(field_, field_->characteristic());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long r = 0;
      const long long p = field_->characteristic();
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        r = (r * 10 + (text_[pos_] - '0')) % p;
        ++pos_;
      }
      return RationalFunction::from_int(field_, r);
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const FieldPtr& field_;
  int line_;
  int column0_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

RationalFunction parse_rational_function(std::string_view text, const FieldPtr& field, int line, int column0) {
  return ExprParser(text, field, line, column0).parse();
}

std::string CurveSpec::to_string() const {
  std::ostringstream os;
  os << "p=" << p << " s=" << s << "; a=" << a << "; b=" << b;
  if (!label.empty()) os << "; label=" << label;
  return os.str();
}

CurveSpec parse_curve_spec(std::string_view text, int line) {
  CurveSpec spec;
  spec.line = line;
  bool have_p = false, have_a = false, have_b = false;
  std::size_t seg_start = 0;
  while (seg_start <= text.size()) {
    std::size_t seg_end = text.find(';', seg_start);
    if (seg_end == std::string_view::npos) seg_end = text.size();
    std::size_t i = seg_start;
    while (i < seg_end) {
      while (i < seg_end && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (i >= seg_end) break;
      const std::size_t key_start = i;
      while (i < seg_end && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
      const std::string key(text.substr(key_start, i - key_start));
      while (i < seg_end && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (key.empty() || i >= seg_end || text[i] != '=')
        throw ParseError("expected key=value", line, static_cast<int>(key_start) + 1);
      ++i;
      if (key == "a" || key == "b" || key == "label") {
        const std::string_view value = trim(text.substr(i, seg_end - i));
        if (value.empty()) throw ParseError("empty value for '" + key + "'", line, static_cast<int>(i) + 1);
        const int col = static_cast<int>(value.data() - text.data()) + 1;
        if (key == "label") {
          spec.label = std::string(value);
        } else if (key == "a") {
          spec.a = std::string(value);
          spec.a_column = col;
          have_a = true;
        } else {
          spec.b = std::string(value);
          spec.b_column = col;
          have_b = true;
        }
        i = seg_end;
      } else if (key == "p" || key == "s") {
        const std::size_t vstart = i;
        long long v = 0;
        while (i < seg_end && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + (text[i] - '0');
          if (v > (1LL << 31)) throw ParseError("value too large", line, static_cast<int>(vstart) + 1);
          ++i;
        }
        if (i == vstart) throw ParseError("expected an integer for '" + key + "'", line, static_cast<int>(vstart) + 1);
        if (key == "p") {
          spec.p = static_cast<std::uint32_t>(v);
          have_p = true;
        } else {
          spec.s = static_cast<int>(v);
        }
      } else {
        throw ParseError("unknown key '" + key + "'", line, static_cast<int>(key_start) + 1);
      }
    }
    seg_start = seg_end + 1;
  }
  if (!have_p) throw ParseError("missing p=", line, 1);
  if (!have_a) throw ParseError("missing a=", line, 1);
  if (!have_b) throw ParseError("missing b=", line, 1);
  return spec;
}

std::vector<CurveSpec> parse_catalog(std::string_view text) {
  std::vector<CurveSpec> out;
  int line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    const std::string_view row = trim(text.substr(start, end - start));
    if (!row.empty() && row.front() != '#') out.push_back(parse_curve_spec(text.substr(start, end - start), line));
    start = end + 1;
  }
  return out;
}

WeierstrassCurve make_curve(const CurveSpec& spec) {
  if (spec.p <= 3) throw PreconditionError("p must be a prime > 3");
  if (!is_prime(spec.p)) throw PreconditionError("p must be prime");
  if (spec.s < 1) throw PreconditionError("s must be >= 1");
  const FieldPtr field = constant_field(spec.p, spec.s);
  RationalFunction a = parse_rational_function(spec.a, field, spec.line, spec.a_column);
  RationalFunction b = parse_rational_function(spec.b, field, spec.line, spec.b_column);
  return WeierstrassCurve(std::move(a), std::move(b));
}

}  // namespace ffec
