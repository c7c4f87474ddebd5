#include "upms/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace upms {

namespace {

constexpr std::size_t kLineWidth = 100;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const char* SenseText(Sense s) {
  switch (s) {
    case Sense::kLe:
      return "<=";
    case Sense::kGe:
      return ">=";
    case Sense::kEq:
      return "=";
  }
  return "=";
}

// Appends " + 3 x" style terms, wrapping long lines.
class LineWriter {
 public:
  explicit LineWriter(std::string& out) : out_(out) {}

  void begin(const std::string& head) {
    out_ += head;
    width_ = head.size();
  }
  void piece(const std::string& text) {
    if (width_ + text.size() + 1 > kLineWidth && width_ > 0) {
      out_ += "\n  ";
      width_ = 2;
    } else {
      out_ += ' ';
      ++width_;
    }
    out_ += text;
    width_ += text.size();
  }
  void end() {
    out_ += '\n';
    width_ = 0;
  }

 private:
  std::string& out_;
  std::size_t width_ = 0;
};

void WriteTerms(LineWriter& w, const ModelIR& model,
                const std::vector<Term>& terms) {
  bool first = true;
  for (const Term& t : terms) {
    const std::string& name = model.variables()[t.var].name;
    const double mag = std::fabs(t.coef);
    std::string text = t.coef < 0 ? "- " : (first ? "" : "+ ");
    if (mag != 1.0) text += format_number(mag) + " ";
    text += name;
    w.piece(text);
    first = false;
  }
}

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinaries, kGenerals, kEnd };

std::optional<Section> SectionKeyword(const std::string& line,
                                      bool* maximize) {
  const std::string l = Lower(Trim(line));
  if (l == "minimize" || l == "minimum" || l == "min") {
    *maximize = false;
    return Section::kObjective;
  }
  if (l == "maximize" || l == "maximum" || l == "max") {
    *maximize = true;
    return Section::kObjective;
  }
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t.") {
    return Section::kConstraints;
  }
  if (l == "bounds" || l == "bound") return Section::kBounds;
  if (l == "binaries" || l == "binary" || l == "bin") return Section::kBinaries;
  if (l == "generals" || l == "general" || l == "gen") return Section::kGenerals;
  if (l == "end") return Section::kEnd;
  return std::nullopt;
}

struct Token {
  enum Kind { kName, kNumber, kOp, kColon } kind;
  std::string text;
  double value = 0.0;
  int line = 0;
};

bool NameStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool NameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '[' || c == ']' || c == '#' || c == '$' || c == '@';
}

std::optional<double> ParseNumber(const std::string& text) {
  const std::string l = Lower(text);
  if (l == "inf" || l == "+inf" || l == "infinity" || l == "+infinity") {
    return kInf;
  }
  if (l == "-inf" || l == "-infinity") return -kInf;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::vector<Token> Tokenize(const std::string& text, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ':') {
      out.push_back({Token::kColon, ":", 0.0, line});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      ++i;
      if (i < text.size() && text[i] == '=') {
        op += '=';
        ++i;
      } else if (c == '=' && i < text.size() &&
                 (text[i] == '<' || text[i] == '>')) {
        op = std::string(1, text[i]) + "=";
        ++i;
      }
      if (op == "<") op = "<=";
      if (op == ">") op = ">=";
      out.push_back({Token::kOp, op, 0.0, line});
    } else if (c == '+' || c == '-') {
      out.push_back({Token::kOp, std::string(1, c), 0.0, line});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) ||
              text[j] == '.')) {
        ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          j = k;
          while (j < text.size() &&
                 std::isdigit(static_cast<unsigned char>(text[j]))) {
            ++j;
          }
        }
      }
      const std::string number = text.substr(i, j - i);
      auto value = ParseNumber(number);
      if (!value) {
        throw LpParseError("line " + std::to_string(line) +
                           ": bad number '" + number + "'");
      }
      out.push_back({Token::kNumber, number, *value, line});
      i = j;
    } else if (NameStart(c)) {
      std::size_t j = i;
      while (j < text.size() && NameChar(text[j])) ++j;
      std::string name = text.substr(i, j - i);
      const std::string l = Lower(name);
      if (l == "inf" || l == "infinity") {
        out.push_back({Token::kNumber, name, kInf, line});
      } else {
        out.push_back({Token::kName, name, 0.0, line});
      }
      i = j;
    } else {
      throw LpParseError("line " + std::to_string(line) +
                         ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

struct RawExpr {
  std::vector<std::pair<std::string, double>> terms;
};

struct RawConstraint {
  std::string name;
  RawExpr expr;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
};

[[noreturn]] void Fail(int line, const std::string& what) {
  throw LpParseError("line " + std::to_string(line) + ": " + what);
}

// Parses terms from tokens[pos] until an relational operator or the end.
RawExpr ParseExpr(const std::vector<Token>& tokens, std::size_t& pos) {
  RawExpr expr;
  while (pos < tokens.size()) {
    const Token& tok = tokens[pos];
    if (tok.kind == Token::kOp && tok.text != "+" && tok.text != "-") break;
    double sign = 1.0;
    bool explicit_sign = false;
    while (pos < tokens.size() && tokens[pos].kind == Token::kOp &&
           (tokens[pos].text == "+" || tokens[pos].text == "-")) {
      if (tokens[pos].text == "-") sign = -sign;
      explicit_sign = true;
      ++pos;
    }
    if (!explicit_sign && !expr.terms.empty()) {
      Fail(tokens[pos].line, "missing operator between terms");
    }
    if (pos >= tokens.size()) Fail(tok.line, "dangling sign");
    double coef = 1.0;
    if (tokens[pos].kind == Token::kNumber) {
      coef = tokens[pos].value;
      ++pos;
    }
    if (pos >= tokens.size() || tokens[pos].kind != Token::kName) {
      Fail(tok.line, "constant terms are not supported in expressions");
    }
    expr.terms.emplace_back(tokens[pos].text, sign * coef);
    ++pos;
  }
  return expr;
}

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == std::floor(value) && std::fabs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string export_lp(const ModelIR& model) {
  std::string out;
  out.reserve(64 * (model.variables().size() + model.constraints().size()));
  LineWriter w(out);
  out += "\\ upms model: ";
  out += std::to_string(model.variables().size()) + " variables, " +
         std::to_string(model.constraints().size()) + " constraints\n";
  out += model.objective().maximize ? "Maximize\n" : "Minimize\n";
  w.begin(" obj:");
  WriteTerms(w, model, model.objective().terms);
  w.end();
  out += "Subject To\n";
  for (const Constraint& c : model.constraints()) {
    w.begin(" " + c.name + ":");
    WriteTerms(w, model, c.terms);
    w.piece(std::string(SenseText(c.sense)) + " " + format_number(c.rhs));
    w.end();
  }
  out += "Bounds\n";
  for (const Variable& v : model.variables()) {
    out += ' ';
    if (v.lower == v.upper) {
      out += v.name + " = " + format_number(v.lower);
    } else {
      out += format_number(v.lower) + " <= " + v.name + " <= " +
             format_number(v.upper);
    }
    out += '\n';
  }
  bool any_binary = false;
  for (const Variable& v : model.variables()) {
    if (v.kind != VarKind::kBinary) continue;
    if (!any_binary) out += "Binaries\n";
    any_binary = true;
    out += ' ' + v.name + '\n';
  }
  out += "End\n";
  return out;
}

ModelIR parse_lp(const std::string& text) {
  bool maximize = false;
  Section section = Section::kNone;
  std::vector<Token> objective_tokens;
  std::vector<Token> constraint_tokens;
  struct RawBound {
    std::string name;
    std::optional<double> lower, upper;
  };
  std::vector<RawBound> bounds;
  std::vector<std::string> binaries;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto c = raw.find('\\'); c != std::string::npos) raw.erase(c);
    const std::string line = Trim(raw);
    if (line.empty()) continue;
    bool max_flag = maximize;
    if (auto s = SectionKeyword(line, &max_flag)) {
      if (*s == Section::kObjective) maximize = max_flag;
      section = *s;
      if (section == Section::kEnd) break;
      continue;
    }
    std::vector<Token> tokens = Tokenize(line, line_no);
    switch (section) {
      case Section::kNone:
        Fail(line_no, "content before the objective section");
      case Section::kObjective:
        objective_tokens.insert(objective_tokens.end(), tokens.begin(),
                                tokens.end());
        break;
      case Section::kConstraints:
        constraint_tokens.insert(constraint_tokens.end(), tokens.begin(),
                                 tokens.end());
        break;
      case Section::kBounds: {
        RawBound b;
        auto number_at = [&](std::size_t i) {
          return i < tokens.size() && tokens[i].kind == Token::kNumber;
        };
        // Fold a leading sign into the number that follows it.
        std::vector<Token> t;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          if (tokens[i].kind == Token::kOp &&
              (tokens[i].text == "-" || tokens[i].text == "+") &&
              number_at(i + 1)) {
            Token n = tokens[i + 1];
            if (tokens[i].text == "-") n.value = -n.value;
            t.push_back(n);
            ++i;
          } else {
            t.push_back(tokens[i]);
          }
        }
        tokens = t;
        if (tokens.size() == 2 && tokens[0].kind == Token::kName &&
            tokens[1].kind == Token::kName && Lower(tokens[1].text) == "free") {
          b = {tokens[0].text, -kInf, kInf};
        } else if (tokens.size() == 5 && tokens[0].kind == Token::kNumber &&
                   tokens[2].kind == Token::kName &&
                   tokens[4].kind == Token::kNumber &&
                   tokens[1].text == "<=" && tokens[3].text == "<=") {
          b = {tokens[2].text, tokens[0].value, tokens[4].value};
        } else if (tokens.size() == 3 && tokens[0].kind == Token::kName &&
                   tokens[2].kind == Token::kNumber) {
          b.name = tokens[0].text;
          if (tokens[1].text == "<=") b.upper = tokens[2].value;
          else if (tokens[1].text == ">=") b.lower = tokens[2].value;
          else if (tokens[1].text == "=") b.lower = b.upper = tokens[2].value;
          else Fail(line_no, "bad bound");
        } else if (tokens.size() == 3 && tokens[0].kind == Token::kNumber &&
                   tokens[2].kind == Token::kName) {
          b.name = tokens[2].text;
          if (tokens[1].text == "<=") b.lower = tokens[0].value;
          else if (tokens[1].text == ">=") b.upper = tokens[0].value;
          else if (tokens[1].text == "=") b.lower = b.upper = tokens[0].value;
          else Fail(line_no, "bad bound");
        } else {
          Fail(line_no, "unrecognized bound '" + line + "'");
        }
        bounds.push_back(b);
        break;
      }
      case Section::kBinaries:
      case Section::kGenerals:
        for (const Token& tok : tokens) {
          if (tok.kind != Token::kName) Fail(line_no, "expected a name");
          if (section == Section::kBinaries) binaries.push_back(tok.text);
          else Fail(line_no, "general integers are not supported");
        }
        break;
      case Section::kEnd:
        break;
    }
  }

  // Objective: optional "name:" then an expression.
  std::size_t pos = 0;
  if (objective_tokens.size() >= 2 && objective_tokens[0].kind == Token::kName &&
      objective_tokens[1].kind == Token::kColon) {
    pos = 2;
  }
  RawExpr objective = ParseExpr(objective_tokens, pos);
  if (pos != objective_tokens.size()) {
    Fail(objective_tokens[pos].line, "unexpected token in objective");
  }

  std::vector<RawConstraint> constraints;
  pos = 0;
  int unnamed = 0;
  while (pos < constraint_tokens.size()) {
    RawConstraint c;
    const int line = constraint_tokens[pos].line;
    if (pos + 1 < constraint_tokens.size() &&
        constraint_tokens[pos].kind == Token::kName &&
        constraint_tokens[pos + 1].kind == Token::kColon) {
      c.name = constraint_tokens[pos].text;
      pos += 2;
    } else {
      c.name = "R" + std::to_string(++unnamed);
    }
    c.expr = ParseExpr(constraint_tokens, pos);
    if (pos >= constraint_tokens.size() ||
        constraint_tokens[pos].kind != Token::kOp) {
      Fail(line, "constraint '" + c.name + "' has no relational operator");
    }
    const std::string& op = constraint_tokens[pos].text;
    c.sense = op == "<=" ? Sense::kLe : op == ">=" ? Sense::kGe : Sense::kEq;
    ++pos;
    double sign = 1.0;
    while (pos < constraint_tokens.size() &&
           constraint_tokens[pos].kind == Token::kOp &&
           (constraint_tokens[pos].text == "-" ||
            constraint_tokens[pos].text == "+")) {
      if (constraint_tokens[pos].text == "-") sign = -sign;
      ++pos;
    }
    if (pos >= constraint_tokens.size() ||
        constraint_tokens[pos].kind != Token::kNumber) {
      Fail(line, "constraint '" + c.name + "' has no right-hand side");
    }
    c.rhs = sign * constraint_tokens[pos].value;
    ++pos;
    constraints.push_back(std::move(c));
  }

  // Declare variables in Bounds order, then in order of first mention.
  ModelIR model;
  std::unordered_map<std::string, int> seen;
  std::vector<std::string> order;
  auto mention = [&](const std::string& name) {
    if (seen.emplace(name, static_cast<int>(order.size())).second) {
      order.push_back(name);
    }
  };
  for (const RawBound& b : bounds) mention(b.name);
  for (const auto& [name, coef] : objective.terms) mention(name);
  for (const RawConstraint& c : constraints) {
    for (const auto& [name, coef] : c.expr.terms) mention(name);
  }
  for (const std::string& name : binaries) mention(name);

  std::vector<double> lower(order.size(), 0.0), upper(order.size(), kInf);
  std::vector<bool> binary(order.size(), false), bounded(order.size(), false);
  for (const std::string& name : binaries) binary[seen[name]] = true;
  for (const RawBound& b : bounds) {
    const int v = seen[b.name];
    if (b.lower) lower[v] = *b.lower;
    if (b.upper) upper[v] = *b.upper;
    bounded[v] = true;
  }
  for (std::size_t v = 0; v < order.size(); ++v) {
    if (binary[v] && !bounded[v]) upper[v] = 1.0;
    model.add_variable(order[v],
                       binary[v] ? VarKind::kBinary : VarKind::kContinuous,
                       lower[v], upper[v]);
  }
  LinearExpr obj;
  for (const auto& [name, coef] : objective.terms) obj.add(seen[name], coef);
  model.set_objective(maximize, obj);
  for (const RawConstraint& c : constraints) {
    LinearExpr e;
    for (const auto& [name, coef] : c.expr.terms) e.add(seen[name], coef);
    model.add_constraint(c.name, e, c.sense, c.rhs);
  }
  return model;
}

ImportedSolution import_solution(const std::string& text,
                                 const ModelIR& model) {
  ImportedSolution out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::istringstream fields(trimmed);
    std::string name, value_text, extra;
    fields >> name >> value_text;
    if (value_text.empty() || (fields >> extra)) {
      Fail(line_no, "expected 'name value'");
    }
    const auto id = model.find(name);
    if (!id) Fail(line_no, "unknown variable '" + name + "'");
    const auto parsed = ParseNumber(value_text);
    if (!parsed || std::isnan(*parsed)) {
      Fail(line_no, "bad value '" + value_text + "'");
    }
    double value = *parsed;
    if (model.variables()[*id].kind == VarKind::kBinary) {
      const double rounded = value >= 0.5 ? 1.0 : 0.0;
      const double deviation = std::fabs(value - rounded);
      out.max_binary_deviation = std::max(out.max_binary_deviation, deviation);
      if (deviation > 1e-6) ++out.fractional_binaries;
      value = rounded;
    }
    if (value == 0.0) {
      out.values.erase(name);
    } else {
      out.values[name] = value;
    }
  }
  return out;
}

std::string write_solution(const ModelIR& model, const Assignment& values) {
  std::string out;
  for (const Variable& v : model.variables()) {
    auto it = values.find(v.name);
    if (it == values.end() || it->second == 0.0) continue;
    out += v.name + " " + format_number(it->second) + "\n";
  }
  return out;
}

}  // namespace upms
