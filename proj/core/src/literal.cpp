// Copyright 2026 The qfa-equiv Authors
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

#include "qfa/literal.h"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <vector>

namespace qfa {
namespace {

struct Term {
  std::string_view body;
  bool sqrt2 = false;
  bool imaginary = false;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Strips a whitespace-separated trailing word, e.g. " i" or " r2".
bool strip_suffix_word(std::string_view& s, std::string_view word) {
  if (s.size() <= word.size()) return false;
  if (s.substr(s.size() - word.size()) != word) return false;
  char before = s[s.size() - word.size() - 1];
  if (!std::isspace(static_cast<unsigned char>(before))) return false;
  s = trim(s.substr(0, s.size() - word.size()));
  return true;
}

// Splits on '+' separators. A '+' directly after an exponent marker belongs to
// a float literal and is not a separator.
std::vector<Term> split_terms(std::string_view text, bool allow_sqrt2) {
  std::vector<Term> terms;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    bool at_end = k == text.size();
    if (!at_end) {
      if (text[k] != '+') continue;
      if (k > 0 && (text[k - 1] == 'e' || text[k - 1] == 'E')) continue;
    }
    std::string_view piece = trim(text.substr(start, k - start));
    if (piece.empty()) throw LiteralError("empty term in scalar literal '" + std::string(text) + "'");
    Term t;
    t.imaginary = strip_suffix_word(piece, "i");
    if (allow_sqrt2) t.sqrt2 = strip_suffix_word(piece, "r2");
    t.body = piece;
    terms.push_back(t);
    start = k + 1;
  }
  for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
    if (terms[k].imaginary) {
      throw LiteralError("'i' may only mark the last term in '" + std::string(text) + "'");
    }
  }
  return terms;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_fraction(std::string_view body, std::string_view whole) {
  auto fail = [&]() -> LiteralError {
    return LiteralError("expected p/q in scalar literal '" + std::string(whole) + "', got '" +
                        std::string(body) + "'");
  };
  auto slash = body.find('/');
  if (slash == std::string_view::npos) throw fail();
  std::string_view num = body.substr(0, slash);
  std::string_view den = body.substr(slash + 1);
  std::string_view digits = num;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits) || !all_digits(den)) throw fail();
  mpz_class p(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw LiteralError("zero denominator in scalar literal '" + std::string(whole) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Interprets one or two terms as R := p/q | p/q + p/q r2.
QSqrt2 parse_real_part(const std::vector<Term>& terms, std::size_t begin, std::size_t end,
                       std::string_view whole) {
  std::size_t n = end - begin;
  if (n == 1 && !terms[begin].sqrt2) return QSqrt2(parse_fraction(terms[begin].body, whole));
  if (n == 2 && !terms[begin].sqrt2 && terms[begin + 1].sqrt2) {
    return QSqrt2(parse_fraction(terms[begin].body, whole),
                  parse_fraction(terms[begin + 1].body, whole));
  }
  throw LiteralError("malformed real part in scalar literal '" + std::string(whole) + "'");
}

double parse_decimal(std::string_view body, std::string_view whole) {
  double v = 0.0;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw LiteralError("expected decimal number in scalar literal '" + std::string(whole) + "', got '" +
                       std::string(body) + "'");
  }
  return v;
}

}  // namespace

ExactScalar parse_exact_literal(std::string_view text) {
  std::string_view whole = trim(text);
  std::vector<Term> terms = split_terms(whole, true);
  if (terms.size() > 4) throw LiteralError("too many terms in scalar literal '" + std::string(whole) + "'");
  if (!terms.back().imaginary) return ExactScalar(parse_real_part(terms, 0, terms.size(), whole));

  // The imaginary R is the last one or two terms; whatever precedes it is the real R.
  std::size_t im_begin = terms.size() - 1;
  if (terms.back().sqrt2) {
    if (terms.size() < 2) throw LiteralError("malformed imaginary part in '" + std::string(whole) + "'");
    im_begin = terms.size() - 2;
  }
  QSqrt2 im = parse_real_part(terms, im_begin, terms.size(), whole);
  QSqrt2 re;
  if (im_begin > 0) re = parse_real_part(terms, 0, im_begin, whole);
  return {re, im};
}

FloatScalar parse_float_literal(std::string_view text) {
  std::string_view whole = trim(text);
  std::vector<Term> terms = split_terms(whole, false);
  if (terms.size() == 1) {
    double v = parse_decimal(terms[0].body, whole);
    return terms[0].imaginary ? FloatScalar(0.0, v) : FloatScalar(v, 0.0);
  }
  if (terms.size() == 2 && terms[1].imaginary) {
    return {parse_decimal(terms[0].body, whole), parse_decimal(terms[1].body, whole)};
  }
  throw LiteralError("malformed float scalar literal '" + std::string(whole) + "'");
}

std::string format_literal(const QSqrt2& x) {
  std::string out = x.rational_part().get_num().get_str() + "/" + x.rational_part().get_den().get_str();
  if (sgn(x.sqrt2_part()) != 0) {
    out += " + " + x.sqrt2_part().get_num().get_str() + "/" + x.sqrt2_part().get_den().get_str() + " r2";
  }
  return out;
}

std::string format_literal(const ExactScalar& x) {
  if (x.imag().is_zero()) return format_literal(x.real());
  if (x.real().is_zero()) return format_literal(x.imag()) + " i";
  return format_literal(x.real()) + " + " + format_literal(x.imag()) + " i";
}

std::string format_radical(const QSqrt2& x) {
  auto rational = [](const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
  };
  const Rational& a = x.rational_part();
  Rational b = x.sqrt2_part();
  if (sgn(b) == 0) return rational(a);
  std::string out;
  bool negative = sgn(b) < 0;
  if (negative) b = -b;
  std::string surd;
  if (b.get_num() == 1 && b.get_den() % 2 == 0) {
    mpz_class m = b.get_den() / 2;
    surd = m == 1 ? "1/√2" : "1/(" + m.get_str() + "√2)";
  } else if (b == 1) {
    surd = "√2";
  } else {
    surd = rational(b) + "√2";
  }
  if (sgn(a) == 0) return (negative ? "-" : "") + surd;
  return rational(a) + (negative ? " - " : " + ") + surd;
}

std::string format_literal(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_literal(const FloatScalar& x) {
  if (x.imag() == 0.0) return format_literal(x.real());
  if (x.real() == 0.0) return format_literal(x.imag()) + " i";
  return format_literal(x.real()) + " + " + format_literal(x.imag()) + " i";
}

std::string_view backend_name(Backend b) { return b == Backend::kExact ? "exact" : "float"; }

std::string render_decimal(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

}  // namespace qfa
