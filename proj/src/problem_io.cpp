#include "popcert/problem_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "json.hpp"

namespace popcert {

int PopProblem::min_order() const {
  int d = objective.is_zero() ? 1 : objective.half_degree();
  for (const auto& g : constraints) d = std::max(d, g.half_degree());
  return std::max(d, 1);
}

std::vector<Polynomial> canonicalize(const std::vector<RawConstraint>& raw,
                                     std::vector<ConstraintProvenance>* provenance) {
  std::vector<Polynomial> out;
  if (provenance) provenance->clear();
  auto push = [&](Polynomial g, ConstraintOrigin origin, int line) {
    out.push_back(std::move(g));
    if (provenance) provenance->push_back({origin, line});
  };
  for (const auto& rc : raw) {
    const int n = rc.body.nvars();
    switch (rc.kind) {
      case RawConstraint::Kind::GreaterEqual:
        push(linear_combine(1.0, rc.body, -rc.lo, Polynomial::constant(n, 1.0)),
             ConstraintOrigin::Inequality, rc.source_line);
        break;
      case RawConstraint::Kind::LessEqual:
        push(linear_combine(-1.0, rc.body, rc.hi, Polynomial::constant(n, 1.0)),
             ConstraintOrigin::Inequality, rc.source_line);
        break;
      case RawConstraint::Kind::Equality:
        push(linear_combine(1.0, rc.body, -rc.lo, Polynomial::constant(n, 1.0)),
             ConstraintOrigin::EqualityPlus, rc.source_line);
        push(linear_combine(-1.0, rc.body, rc.lo, Polynomial::constant(n, 1.0)),
             ConstraintOrigin::EqualityMinus, rc.source_line);
        break;
      case RawConstraint::Kind::TwoSided:
        if (rc.lo > rc.hi) {
          throw ParseError("inconsistent bound: lower exceeds upper", rc.source_line, 1);
        }
        push(linear_combine(1.0, rc.body, -rc.lo, Polynomial::constant(n, 1.0)),
             ConstraintOrigin::BoundLower, rc.source_line);
        push(linear_combine(-1.0, rc.body, rc.hi, Polynomial::constant(n, 1.0)),
             ConstraintOrigin::BoundUpper, rc.source_line);
        break;
    }
  }
  return out;
}

namespace {

struct Token {
  enum class Type { Ident, Number, Plus, Minus, Star, Caret, Ge, Le, EqEq, End };
  Type type = Type::End;
  std::string text;
  double value = 0.0;
  int line = 0;
  int column = 0;
};

class LineLexer {
 public:
  LineLexer(const std::string& line, int line_no) : s_(line), line_(line_no) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, tok_.column);
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= s_.size() || s_[pos_] == '#') {
      tok_.type = Token::Type::End;
      return;
    }
    const char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      tok_.type = Token::Type::Ident;
      tok_.text = s_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < s_.size() &&
         std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      lex_number();
      return;
    }
    switch (c) {
      case '+': tok_.type = Token::Type::Plus; ++pos_; return;
      case '-': tok_.type = Token::Type::Minus; ++pos_; return;
      case '*': tok_.type = Token::Type::Star; ++pos_; return;
      case '^': tok_.type = Token::Type::Caret; ++pos_; return;
      case '>':
      case '<':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') {
          tok_.type = (c == '>') ? Token::Type::Ge : Token::Type::Le;
          pos_ += 2;
          return;
        }
        throw ParseError("strict inequalities are not supported; use >= or <=", line_,
                         tok_.column);
      case '=':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') {
          tok_.type = Token::Type::EqEq;
          pos_ += 2;
          return;
        }
        throw ParseError("single '=' is not valid here; did you mean '=='?", line_,
                         tok_.column);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, tok_.column);
    }
  }

  // decimal (with optional exponent) or integer fraction a/b, converted to
  // binary64 once.
  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    bool integral = true;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      integral = false;
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      integral = false;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        throw ParseError("malformed exponent", line_, static_cast<int>(pos_) + 1);
      }
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    const std::string first = s_.substr(start, pos_ - start);
    tok_.type = Token::Type::Number;
    if (integral && pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t dstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == dstart) {
        throw ParseError("malformed fraction: missing denominator", line_,
                         static_cast<int>(pos_) + 1);
      }
      const std::string denom = s_.substr(dstart, pos_ - dstart);
      const double den = std::strtod(denom.c_str(), nullptr);
      if (den == 0.0) {
        throw ParseError("fraction with zero denominator", line_, static_cast<int>(dstart) + 1);
      }
      tok_.value = std::strtod(first.c_str(), nullptr) / den;
      tok_.text = first + "/" + denom;
    } else {
      tok_.value = std::strtod(first.c_str(), nullptr);
      tok_.text = first;
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
  Token tok_;
};

class PolyParser {
 public:
  PolyParser(LineLexer& lex, const std::map<std::string, int>& var_index, int nvars)
      : lex_(lex), var_index_(var_index), nvars_(nvars) {}

  Polynomial parse() {
    Polynomial p(nvars_);
    double sign = 1.0;
    if (lex_.peek().type == Token::Type::Plus || lex_.peek().type == Token::Type::Minus) {
      sign = lex_.take().type == Token::Type::Minus ? -1.0 : 1.0;
    }
    parse_term(p, sign);
    while (lex_.peek().type == Token::Type::Plus || lex_.peek().type == Token::Type::Minus) {
      sign = lex_.take().type == Token::Type::Minus ? -1.0 : 1.0;
      parse_term(p, sign);
    }
    return p;
  }

 private:
  void parse_term(Polynomial& p, double sign) {
    double coef = sign;
    MultiIndex mono(nvars_, 0);
    bool have_factor = false;
    if (lex_.peek().type == Token::Type::Number) {
      coef *= lex_.take().value;
      have_factor = true;
      if (lex_.peek().type == Token::Type::Star) {
        lex_.take();
        parse_factor(mono);
        while (lex_.peek().type == Token::Type::Star) {
          lex_.take();
          parse_factor(mono);
        }
      }
    } else {
      parse_factor(mono);
      have_factor = true;
      while (lex_.peek().type == Token::Type::Star) {
        lex_.take();
        parse_factor(mono);
      }
    }
    if (!have_factor) lex_.fail("expected a term");
    p.add_term(mono, coef);
  }

  void parse_factor(MultiIndex& mono) {
    if (lex_.peek().type != Token::Type::Ident) lex_.fail("expected a variable name");
    Token id = lex_.take();
    auto it = var_index_.find(id.text);
    if (it == var_index_.end()) {
      throw ParseError("unknown variable name '" + id.text + "'", id.line, id.column);
    }
    int power = 1;
    if (lex_.peek().type == Token::Type::Caret) {
      lex_.take();
      if (lex_.peek().type != Token::Type::Number) lex_.fail("expected an integer exponent");
      Token e = lex_.take();
      power = static_cast<int>(e.value);
      if (power < 0 || static_cast<double>(power) != e.value) {
        throw ParseError("exponent must be a nonnegative integer", e.line, e.column);
      }
    }
    mono[it->second] += power;
  }

  LineLexer& lex_;
  const std::map<std::string, int>& var_index_;
  int nvars_;
};

struct NumberedLine {
  std::string text;
  int number;
};

std::vector<NumberedLine> significant_lines(const std::string& text) {
  std::vector<NumberedLine> lines;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string stripped = line.substr(0, line.find('#'));
    const bool blank =
        std::all_of(stripped.begin(), stripped.end(),
                    [](unsigned char c) { return std::isspace(c); });
    if (!blank) lines.push_back({line, no});
  }
  return lines;
}

}  // namespace

PopProblem parse_problem(const std::string& text) {
  const auto lines = significant_lines(text);
  std::size_t li = 0;
  auto next_line = [&](const char* what) -> const NumberedLine& {
    if (li >= lines.size()) {
      const int last = lines.empty() ? 1 : lines.back().number;
      throw ParseError(std::string("unexpected end of file, expected ") + what, last, 1);
    }
    return lines[li++];
  };

  PopProblem problem;

  {
    const auto& nl = next_line("'name'");
    LineLexer lex(nl.text, nl.number);
    if (lex.peek().type != Token::Type::Ident || lex.peek().text != "name") {
      lex.fail("expected 'name'");
    }
    Token kw = lex.take();
    // The name is the rest of the line, trimmed.
    std::string rest = nl.text.substr(0, nl.text.find('#'));
    std::size_t at = rest.find("name");
    rest = rest.substr(at + 4);
    const auto b = rest.find_first_not_of(" \t\r");
    const auto e = rest.find_last_not_of(" \t\r");
    problem.name = (b == std::string::npos) ? "" : rest.substr(b, e - b + 1);
    (void)kw;
  }

  std::map<std::string, int> var_index;
  {
    const auto& nl = next_line("'vars'");
    LineLexer lex(nl.text, nl.number);
    if (lex.peek().type != Token::Type::Ident || lex.peek().text != "vars") {
      lex.fail("expected 'vars'");
    }
    lex.take();
    while (lex.peek().type == Token::Type::Ident) {
      Token id = lex.take();
      if (var_index.count(id.text)) {
        throw ParseError("duplicate variable declaration '" + id.text + "'", id.line,
                         id.column);
      }
      var_index.emplace(id.text, static_cast<int>(problem.variables.size()));
      problem.variables.push_back(id.text);
    }
    if (problem.variables.empty()) lex.fail("expected at least one variable");
    if (lex.peek().type != Token::Type::End) lex.fail("unexpected token after variable list");
  }
  const int n = problem.nvars();

  {
    const auto& nl = next_line("'minimize'");
    LineLexer lex(nl.text, nl.number);
    if (lex.peek().type != Token::Type::Ident || lex.peek().text != "minimize") {
      lex.fail("expected 'minimize'");
    }
    lex.take();
    problem.objective = PolyParser(lex, var_index, n).parse();
    if (lex.peek().type != Token::Type::End) lex.fail("unexpected token after objective");
  }

  {
    const auto& nl = next_line("'subject_to'");
    LineLexer lex(nl.text, nl.number);
    if (lex.peek().type != Token::Type::Ident || lex.peek().text != "subject_to") {
      lex.fail("expected 'subject_to'");
    }
    lex.take();
    if (lex.peek().type != Token::Type::End) lex.fail("unexpected token after 'subject_to'");
  }

  std::vector<RawConstraint> raw;
  while (li < lines.size()) {
    const auto& nl = lines[li++];
    LineLexer lex(nl.text, nl.number);

    // A constraint is either  POLY CMP NUMBER | POLY == NUMBER  or
    // NUMBER CMP POLY CMP NUMBER. Parse the left operand as a polynomial and
    // decide from what follows.
    Polynomial lhs = PolyParser(lex, var_index, n).parse();
    Token cmp = lex.take();
    if (cmp.type != Token::Type::Ge && cmp.type != Token::Type::Le &&
        cmp.type != Token::Type::EqEq) {
      throw ParseError("expected '>=', '<=' or '=='", cmp.line, cmp.column);
    }
    Polynomial rhs = PolyParser(lex, var_index, n).parse();

    auto as_constant = [&](const Polynomial& p, const Token& at) -> double {
      if (p.is_zero()) return 0.0;
      if (p.degree() > 0) {
        throw ParseError("expected a constant bound", at.line, at.column);
      }
      return p.coefficient(MultiIndex(n, 0));
    };

    RawConstraint rc;
    rc.source_line = nl.number;
    if (lex.peek().type == Token::Type::Ge || lex.peek().type == Token::Type::Le) {
      Token cmp2 = lex.take();
      if (cmp.type == Token::Type::EqEq || cmp2.type != cmp.type) {
        throw ParseError("a two-sided bound must use the same comparison twice", cmp2.line,
                         cmp2.column);
      }
      Polynomial bound2 = PolyParser(lex, var_index, n).parse();
      rc.kind = RawConstraint::Kind::TwoSided;
      if (cmp.type == Token::Type::Le) {  // lo <= e <= hi
        rc.lo = as_constant(lhs, cmp);
        rc.body = rhs;
        rc.hi = as_constant(bound2, cmp2);
      } else {  // hi >= e >= lo
        rc.hi = as_constant(lhs, cmp);
        rc.body = rhs;
        rc.lo = as_constant(bound2, cmp2);
      }
    } else if (cmp.type == Token::Type::EqEq) {
      rc.kind = RawConstraint::Kind::Equality;
      rc.body = lhs;
      rc.lo = as_constant(rhs, cmp);
    } else if (cmp.type == Token::Type::Ge) {
      rc.kind = RawConstraint::Kind::GreaterEqual;
      rc.body = lhs;
      rc.lo = as_constant(rhs, cmp);
    } else {
      rc.kind = RawConstraint::Kind::LessEqual;
      rc.body = lhs;
      rc.hi = as_constant(rhs, cmp);
    }
    if (lex.peek().type != Token::Type::End) lex.fail("unexpected token after constraint");
    raw.push_back(std::move(rc));
  }

  if (raw.empty()) {
    const int last = lines.empty() ? 1 : lines.back().number;
    throw ParseError("empty constraint block: at least one constraint is required", last, 1);
  }
  problem.constraints = canonicalize(raw, &problem.provenance);
  return problem;
}

CandidatePoint parse_point(const std::string& text, const PopProblem& problem) {
  const int n = problem.nvars();
  std::vector<double> values(n, 0.0);
  std::vector<bool> assigned(n, false);

  auto var_of = [&](const std::string& name) -> int {
    for (int k = 0; k < n; ++k) {
      if (problem.variables[k] == name) return k;
    }
    throw ParseError("unknown variable '" + name + "' in point spec", 1, 1);
  };
  auto assign = [&](const std::string& name, double v) {
    const int k = var_of(name);
    if (assigned[k]) {
      throw ParseError("duplicate assignment for variable '" + name + "'", 1, 1);
    }
    assigned[k] = true;
    values[k] = v;
  };

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON point spec: ") + e.what(), 1, 1);
    }
    if (!j.is_object()) throw ParseError("JSON point spec must be an object", 1, 1);
    for (const auto& [key, val] : j.items()) {
      if (!val.is_number()) {
        throw ParseError("non-numeric value for variable '" + key + "'", 1, 1);
      }
      assign(key, val.get<double>());
    }
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t comma = text.find(',', pos);
      std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
      pos = comma == std::string::npos ? text.size() : comma + 1;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw ParseError("expected name=value in point spec", 1, 1);
      }
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
      };
      const std::string name = trim(item.substr(0, eq));
      const std::string vstr = trim(item.substr(eq + 1));
      if (name.empty()) throw ParseError("missing variable name in point spec", 1, 1);
      char* end = nullptr;
      const double v = std::strtod(vstr.c_str(), &end);
      if (vstr.empty() || end != vstr.c_str() + vstr.size()) {
        throw ParseError("non-numeric value '" + vstr + "' for variable '" + name + "'", 1, 1);
      }
      assign(name, v);
    }
  }

  for (int k = 0; k < n; ++k) {
    if (!assigned[k]) {
      throw ParseError("missing value for variable '" + problem.variables[k] + "'", 1, 1);
    }
  }
  return CandidatePoint{std::move(values)};
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& variables) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [a, c] : p.terms()) {
    const double mag = first ? c : std::fabs(c);
    if (!first) out += (c < 0) ? " - " : " + ";
    out += format_double(mag);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] == 0) continue;
      out += " * " + variables[k];
      if (a[k] > 1) out += "^" + std::to_string(a[k]);
    }
    first = false;
  }
  return out;
}

std::string format_problem(const PopProblem& problem) {
  std::string out = "name " + problem.name + "\n";
  out += "vars";
  for (const auto& v : problem.variables) out += " " + v;
  out += "\nminimize " + format_polynomial(problem.objective, problem.variables);
  out += "\nsubject_to\n";
  for (const auto& g : problem.constraints) {
    out += format_polynomial(g, problem.variables) + " >= 0\n";
  }
  return out;
}

}  // namespace popcert
