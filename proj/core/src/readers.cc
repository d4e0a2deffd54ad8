// Copyright 2026 The Surrogate Compiler Authors
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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "surrogate/emit.h"
#include "surrogate/status.h"

namespace surrogate {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> Words(std::string_view line) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) words.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

std::optional<double> ParseReal(std::string_view text) {
  const std::string lower = Lower(text);
  if (lower == "inf" || lower == "+inf" || lower == "infinity" ||
      lower == "+infinity") {
    return kInf;
  }
  if (lower == "-inf" || lower == "-infinity") return -kInf;
  if (text.empty()) return std::nullopt;
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || std::isnan(v)) return std::nullopt;
  return v;
}

enum class TokKind { kIdent, kNumber, kOp, kEnd };

struct Token {
  TokKind kind = TokKind::kEnd;
  std::string text;
  double value = 0.0;
  int line = 0;
};

bool IdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '[' ||
         c == ']' || c == '.';
}

void Tokenize(std::string_view line, int line_no, const std::string& path,
              std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token tok;
    tok.line = line_no;
    if (IdentStart(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && IdentChar(line[j])) ++j;
      tok.kind = TokKind::kIdent;
      tok.text = std::string(line.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(line.substr(i));
      char* end = nullptr;
      tok.value = std::strtod(rest.c_str(), &end);
      const std::size_t len = static_cast<std::size_t>(end - rest.c_str());
      if (len == 0) {
        throw ParseError(path, "malformed number near '" + rest + "'", line_no);
      }
      tok.kind = TokKind::kNumber;
      tok.text = rest.substr(0, len);
      i += len;
    } else {
      static const char* kTwo[] = {"<=", ">=", "=<", "=>"};
      tok.kind = TokKind::kOp;
      bool matched = false;
      for (const char* op : kTwo) {
        if (line.substr(i, 2) == op) {
          tok.text = op;
          i += 2;
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string_view("+-*/(),:<>=").find(c) == std::string_view::npos) {
          throw ParseError(path, std::string("unexpected character '") + c + "'",
                           line_no);
        }
        tok.text = std::string(1, c);
        ++i;
      }
      if (tok.text == "=<") tok.text = "<=";
      if (tok.text == "=>") tok.text = ">=";
      if (tok.text == "<") tok.text = "<=";
      if (tok.text == ">") tok.text = ">=";
    }
    out.push_back(std::move(tok));
  }
}

class TokenStream {
 public:
  TokenStream(std::vector<Token> tokens, std::string path, int last_line)
      : tokens_(std::move(tokens)), path_(std::move(path)) {
    end_.line = last_line;
  }

  const Token& Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : end_;
  }
  Token Next() {
    const Token& t = Peek();
    if (pos_ < tokens_.size()) ++pos_;
    return t;
  }
  bool AtEnd() const { return pos_ >= tokens_.size(); }
  bool IsOp(std::string_view op, std::size_t ahead = 0) const {
    return Peek(ahead).kind == TokKind::kOp && Peek(ahead).text == op;
  }
  void Expect(std::string_view op) {
    if (!IsOp(op)) Fail("expected '" + std::string(op) + "'");
    Next();
  }
  [[noreturn]] void Fail(const std::string& message) const {
    const Token& t = Peek();
    const std::string near = t.kind == TokKind::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(path_, message + " near " + near, t.line);
  }
  const std::string& path() const { return path_; }

 private:
  std::vector<Token> tokens_;
  std::string path_;
  std::size_t pos_ = 0;
  Token end_;
};

std::optional<RowSense> SenseOf(const Token& t) {
  if (t.kind != TokKind::kOp) return std::nullopt;
  if (t.text == "<=") return RowSense::kLe;
  if (t.text == ">=") return RowSense::kGe;
  if (t.text == "=") return RowSense::kEq;
  return std::nullopt;
}

// [sign] (number | inf | infinity)
double ParseSignedNumber(TokenStream& ts) {
  double sign = 1.0;
  while (ts.IsOp("+") || ts.IsOp("-")) {
    if (ts.Next().text == "-") sign = -sign;
  }
  const Token t = ts.Peek();
  if (t.kind == TokKind::kNumber) {
    ts.Next();
    return sign * t.value;
  }
  if (t.kind == TokKind::kIdent) {
    const std::string lower = Lower(t.text);
    if (lower == "inf" || lower == "infinity") {
      ts.Next();
      return sign * kInf;
    }
  }
  ts.Fail("expected a number");
}

// Accumulates variables and rows in first-appearance order, then builds an
// OptProblem once every bound and domain is known.
class ProblemBuilder {
 public:
  struct Var {
    std::string name;
    bool binary = false;
    double lb = 0.0;
    double ub = kInf;
    bool bounded = false;
  };
  struct Row {
    std::string name;
    std::vector<std::pair<std::size_t, double>> terms;
    RowSense sense = RowSense::kEq;
    double rhs = 0.0;
  };

  std::size_t Index(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    index_.emplace(name, vars_.size());
    vars_.push_back({name});
    return vars_.size() - 1;
  }
  std::optional<std::size_t> Find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Var& var(std::size_t i) { return vars_[i]; }

  std::vector<Row> rows;
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  std::vector<std::pair<std::size_t, double>> objective;
  double objective_constant = 0.0;

  OptProblem Build(const std::string& path) const {
    OptProblem p;
    try {
      for (const Var& v : vars_) {
        double lb = v.lb;
        double ub = v.ub;
        if (v.binary) {
          lb = std::max(lb, 0.0);
          ub = v.bounded ? std::min(ub, 1.0) : 1.0;
        }
        p.AddVariable(v.name, v.binary ? VarDomain::kBinary : VarDomain::kContinuous,
                      lb, ub);
      }
      for (const Row& r : rows) {
        std::vector<LinearTerm> terms;
        for (const auto& [j, c] : r.terms) terms.push_back({VarId{j}, c});
        p.AddLinearConstraint(r.name, std::move(terms), r.sense, r.rhs);
      }
      LinearForm form;
      for (const auto& [j, c] : objective) form.terms.emplace_back(VarId{j}, c);
      form.constant = objective_constant;
      p.SetObjective({sense, FromLinear(form)});
    } catch (const UsageError& e) {
      throw ParseError(path, e.what());
    }
    return p;
  }

 private:
  std::vector<Var> vars_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Linear terms up to a relational operator or the end of the stream.
void ParseLpTerms(TokenStream& ts, ProblemBuilder& b,
                  std::vector<std::pair<std::size_t, double>>& terms,
                  double& constant) {
  while (!ts.AtEnd() && !SenseOf(ts.Peek())) {
    double sign = 1.0;
    bool any = false;
    while (ts.IsOp("+") || ts.IsOp("-")) {
      if (ts.Next().text == "-") sign = -sign;
      any = true;
    }
    double coef = 1.0;
    bool has_number = false;
    if (ts.Peek().kind == TokKind::kNumber) {
      coef = ts.Next().value;
      has_number = true;
      if (ts.IsOp("*")) ts.Next();
    }
    if (ts.Peek().kind == TokKind::kIdent && !ts.IsOp(":", 1)) {
      const std::size_t j = b.Index(ts.Next().text);
      auto it = std::find_if(terms.begin(), terms.end(),
                             [j](const auto& t) { return t.first == j; });
      if (it == terms.end()) {
        terms.emplace_back(j, sign * coef);
      } else {
        it->second += sign * coef;
      }
    } else if (has_number) {
      constant += sign * coef;
    } else {
      if (!any) return;
      ts.Fail("expected a term");
    }
  }
}

enum class LpSection { kNone, kObjective, kConstraints, kBounds, kBinaries, kEnd };

std::optional<LpSection> LpKeyword(const std::string& line, bool* maximize) {
  const std::string k = Lower(Trim(line));
  if (k == "minimize" || k == "minimum" || k == "min") {
    *maximize = false;
    return LpSection::kObjective;
  }
  if (k == "maximize" || k == "maximum" || k == "max") {
    *maximize = true;
    return LpSection::kObjective;
  }
  if (k == "subject to" || k == "such that" || k == "st" || k == "s.t.") {
    return LpSection::kConstraints;
  }
  if (k == "bounds" || k == "bound") return LpSection::kBounds;
  if (k == "binaries" || k == "binary" || k == "bin") return LpSection::kBinaries;
  if (k == "generals" || k == "general" || k == "gen" || k == "semi-continuous") {
    return LpSection::kNone;  // rejected by the caller
  }
  if (k == "end") return LpSection::kEnd;
  return std::nullopt;
}

void ParseLpBoundLine(const std::vector<Token>& tokens, ProblemBuilder& b,
                      int line_no) {
  TokenStream ts(tokens, "Bounds", line_no);
  auto set = [&](std::size_t j, RowSense sense, double v) {
    ProblemBuilder::Var& var = b.var(j);
    var.bounded = true;
    if (sense == RowSense::kLe || sense == RowSense::kEq) var.ub = v;
    if (sense == RowSense::kGe || sense == RowSense::kEq) var.lb = v;
  };
  auto flip = [](RowSense s) {
    return s == RowSense::kLe ? RowSense::kGe
                              : s == RowSense::kGe ? RowSense::kLe : s;
  };
  const Token& first = ts.Peek();
  const bool starts_with_var =
      first.kind == TokKind::kIdent && Lower(first.text) != "inf" &&
      Lower(first.text) != "infinity";
  if (starts_with_var) {
    const std::size_t j = b.Index(ts.Next().text);
    if (ts.Peek().kind == TokKind::kIdent && Lower(ts.Peek().text) == "free") {
      ts.Next();
      b.var(j).lb = -kInf;
      b.var(j).ub = kInf;
      b.var(j).bounded = true;
    } else {
      const std::optional<RowSense> sense = SenseOf(ts.Next());
      if (!sense) ts.Fail("expected a bound operator");
      set(j, *sense, ParseSignedNumber(ts));
    }
  } else {
    const double v = ParseSignedNumber(ts);
    const std::optional<RowSense> sense = SenseOf(ts.Next());
    if (!sense) ts.Fail("expected a bound operator");
    if (ts.Peek().kind != TokKind::kIdent) ts.Fail("expected a variable");
    const std::size_t j = b.Index(ts.Next().text);
    set(j, flip(*sense), v);
    if (!ts.AtEnd()) {
      const std::optional<RowSense> sense2 = SenseOf(ts.Next());
      if (!sense2) ts.Fail("expected a bound operator");
      set(j, *sense2, ParseSignedNumber(ts));
    }
  }
  if (!ts.AtEnd()) ts.Fail("trailing text in bound");
}

}  // namespace

OptProblem ReadLp(std::string_view text) {
  const std::vector<std::string> lines = SplitLines(text);
  ProblemBuilder b;
  LpSection section = LpSection::kNone;
  std::vector<Token> objective_tokens;
  std::vector<Token> row_tokens;
  bool saw_objective = false;
  bool saw_end = false;
  // Line that closes the constraint section; errors at its end cite it.
  int rows_end_line = static_cast<int>(lines.size());
  for (std::size_t k = 0; k < lines.size() && !saw_end; ++k) {
    const int line_no = static_cast<int>(k) + 1;
    std::string line = lines[k];
    if (const std::size_t c = line.find('\\'); c != std::string::npos) {
      line.resize(c);
    }
    if (Trim(line).empty()) continue;
    bool maximize = false;
    if (const std::optional<LpSection> kw = LpKeyword(line, &maximize)) {
      if (section == LpSection::kConstraints) rows_end_line = line_no;
      if (*kw == LpSection::kNone) {
        throw ParseError("lp", "general integer sections are not supported",
                         line_no);
      }
      section = *kw;
      if (section == LpSection::kObjective) {
        b.sense = maximize ? ObjectiveSense::kMaximize : ObjectiveSense::kMinimize;
        saw_objective = true;
      }
      if (section == LpSection::kEnd) saw_end = true;
      continue;
    }
    switch (section) {
      case LpSection::kNone:
        throw ParseError("lp", "text before the objective section", line_no);
      case LpSection::kObjective:
        Tokenize(line, line_no, "objective", objective_tokens);
        break;
      case LpSection::kConstraints:
        Tokenize(line, line_no, "Subject To", row_tokens);
        break;
      case LpSection::kBounds: {
        std::vector<Token> tokens;
        Tokenize(line, line_no, "Bounds", tokens);
        ParseLpBoundLine(tokens, b, line_no);
        break;
      }
      case LpSection::kBinaries:
        for (const std::string& w : Words(line)) b.var(b.Index(w)).binary = true;
        break;
      case LpSection::kEnd:
        break;
    }
  }
  if (!saw_objective) throw ParseError("lp", "missing objective section", 1);
  if (!saw_end) {
    throw ParseError("lp", "missing End", static_cast<int>(lines.size()));
  }

  {
    TokenStream ts(std::move(objective_tokens), "objective", 1);
    if (ts.Peek().kind == TokKind::kIdent && ts.IsOp(":", 1)) {
      ts.Next();
      ts.Next();
    }
    ParseLpTerms(ts, b, b.objective, b.objective_constant);
    if (!ts.AtEnd()) ts.Fail("unexpected token in objective");
  }
  // Keep zero objective terms out; they only declare variables.
  std::erase_if(b.objective, [](const auto& t) { return t.second == 0.0; });

  TokenStream ts(std::move(row_tokens), "Subject To", rows_end_line);
  while (!ts.AtEnd()) {
    ProblemBuilder::Row row;
    if (ts.Peek().kind == TokKind::kIdent && ts.IsOp(":", 1)) {
      row.name = ts.Next().text;
      ts.Next();
    } else {
      row.name = "R" + std::to_string(b.rows.size() + 1);
    }
    double constant = 0.0;
    ParseLpTerms(ts, b, row.terms, constant);
    const std::optional<RowSense> sense = SenseOf(ts.Peek());
    if (!sense) ts.Fail("expected <=, >= or =");
    ts.Next();
    row.sense = *sense;
    row.rhs = ParseSignedNumber(ts) - constant;
    std::erase_if(row.terms, [](const auto& t) { return t.second == 0.0; });
    b.rows.push_back(std::move(row));
  }
  return b.Build("lp");
}

OptProblem ReadMps(std::string_view text) {
  enum class Sec { kNone, kName, kObjSense, kRows, kColumns, kRhs, kBounds, kEnd };
  const std::vector<std::string> lines = SplitLines(text);
  ProblemBuilder b;
  std::string objective_row;
  std::unordered_map<std::string, std::size_t> row_index;
  std::vector<bool> integer_column;
  bool in_int = false;
  Sec sec = Sec::kNone;
  for (std::size_t k = 0; k < lines.size() && sec != Sec::kEnd; ++k) {
    const int line_no = static_cast<int>(k) + 1;
    const std::string& line = lines[k];
    if (Trim(line).empty() || line[0] == '*') continue;
    const std::vector<std::string> w = Words(line);
    auto fail = [&](const std::string& msg) -> void {
      throw ParseError("mps", msg, line_no);
    };
    auto number = [&](const std::string& s) {
      const std::optional<double> v = ParseReal(s);
      if (!v) fail("malformed number '" + s + "'");
      return *v;
    };
    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      const std::string head = w[0];
      if (head == "NAME") {
        sec = Sec::kName;
      } else if (head == "OBJSENSE") {
        sec = Sec::kObjSense;
        if (w.size() > 1) {
          b.sense = w[1].starts_with("MAX") ? ObjectiveSense::kMaximize
                                            : ObjectiveSense::kMinimize;
        }
      } else if (head == "ROWS") {
        sec = Sec::kRows;
      } else if (head == "COLUMNS") {
        sec = Sec::kColumns;
      } else if (head == "RHS") {
        sec = Sec::kRhs;
      } else if (head == "RANGES") {
        fail("RANGES are not supported");
      } else if (head == "BOUNDS") {
        sec = Sec::kBounds;
      } else if (head == "ENDATA") {
        sec = Sec::kEnd;
      } else {
        fail("unknown section '" + head + "'");
      }
      continue;
    }
    switch (sec) {
      case Sec::kNone:
      case Sec::kName:
      case Sec::kEnd:
        fail("data outside a section");
        break;
      case Sec::kObjSense:
        b.sense = w[0].starts_with("MAX") ? ObjectiveSense::kMaximize
                                          : ObjectiveSense::kMinimize;
        break;
      case Sec::kRows: {
        if (w.size() != 2) fail("expected row type and name");
        if (w[0] == "N") {
          if (objective_row.empty()) objective_row = w[1];
          break;
        }
        ProblemBuilder::Row row;
        row.name = w[1];
        if (w[0] == "L") {
          row.sense = RowSense::kLe;
        } else if (w[0] == "G") {
          row.sense = RowSense::kGe;
        } else if (w[0] == "E") {
          row.sense = RowSense::kEq;
        } else {
          fail("unknown row type '" + w[0] + "'");
        }
        if (!row_index.emplace(row.name, b.rows.size()).second) {
          fail("duplicate row '" + row.name + "'");
        }
        b.rows.push_back(std::move(row));
        break;
      }
      case Sec::kColumns: {
        if (w.size() >= 3 && w[1] == "'MARKER'") {
          if (w[2] == "'INTORG'") {
            in_int = true;
          } else if (w[2] == "'INTEND'") {
            in_int = false;
          } else {
            fail("unknown marker " + w[2]);
          }
          break;
        }
        if (w.size() != 3 && w.size() != 5) fail("expected column entries");
        const std::size_t j = b.Index(w[0]);
        if (integer_column.size() <= j) integer_column.resize(j + 1, false);
        if (in_int) integer_column[j] = true;
        for (std::size_t f = 1; f + 1 < w.size(); f += 2) {
          const double v = number(w[f + 1]);
          if (w[f] == objective_row) {
            if (v != 0.0) b.objective.emplace_back(j, v);
            continue;
          }
          auto it = row_index.find(w[f]);
          if (it == row_index.end()) fail("unknown row '" + w[f] + "'");
          if (v != 0.0) b.rows[it->second].terms.emplace_back(j, v);
        }
        break;
      }
      case Sec::kRhs: {
        const std::size_t first = w.size() % 2 == 0 ? 0 : 1;
        if (w.size() < 2) fail("expected RHS entries");
        for (std::size_t f = first; f + 1 < w.size(); f += 2) {
          const double v = number(w[f + 1]);
          if (w[f] == objective_row) {
            b.objective_constant = -v;
            continue;
          }
          auto it = row_index.find(w[f]);
          if (it == row_index.end()) fail("unknown row '" + w[f] + "'");
          b.rows[it->second].rhs = v;
        }
        break;
      }
      case Sec::kBounds: {
        if (w.size() < 3) fail("expected bound type, set and column");
        const std::optional<std::size_t> j = b.Find(w[2]);
        if (!j) fail("bound on unknown column '" + w[2] + "'");
        ProblemBuilder::Var& var = b.var(*j);
        const std::string& type = w[0];
        const bool needs_value =
            type == "UP" || type == "LO" || type == "FX";
        if (needs_value && w.size() != 4) fail("bound " + type + " needs a value");
        var.bounded = true;
        if (type == "UP") {
          var.ub = number(w[3]);
        } else if (type == "LO") {
          var.lb = number(w[3]);
        } else if (type == "FX") {
          var.lb = var.ub = number(w[3]);
        } else if (type == "FR") {
          var.lb = -kInf;
          var.ub = kInf;
        } else if (type == "MI") {
          var.lb = -kInf;
        } else if (type == "PL") {
          var.ub = kInf;
        } else if (type == "BV") {
          var.binary = true;
          var.lb = 0.0;
          var.ub = 1.0;
        } else {
          fail("unsupported bound type '" + type + "'");
        }
        break;
      }
    }
  }
  if (sec != Sec::kEnd) {
    throw ParseError("mps", "missing ENDATA", static_cast<int>(lines.size()));
  }
  for (std::size_t j = 0; j < integer_column.size(); ++j) {
    if (!integer_column[j]) continue;
    ProblemBuilder::Var& var = b.var(j);
    if (var.bounded && (var.lb < 0.0 || var.ub > 1.0)) {
      throw ParseError("mps", "general integer column '" + var.name +
                                  "' is not supported");
    }
    var.binary = true;
  }
  return b.Build("mps");
}

namespace {

class NlpExprParser {
 public:
  NlpExprParser(TokenStream& ts, const OptProblem& problem)
      : ts_(ts), problem_(problem) {}

  Expr ParseExpr() {
    Expr e = ParseTerm();
    while (ts_.IsOp("+") || ts_.IsOp("-")) {
      const bool plus = ts_.Next().text == "+";
      Expr rhs = ParseTerm();
      e = plus ? e + rhs : e - rhs;
    }
    return e;
  }

 private:
  Expr ParseTerm() {
    Expr e = ParseFactor();
    while (ts_.IsOp("*") || ts_.IsOp("/")) {
      const bool mul = ts_.Next().text == "*";
      Expr rhs = ParseFactor();
      e = mul ? e * rhs : e / rhs;
    }
    return e;
  }

  Expr ParseFactor() {
    const Token t = ts_.Peek();
    if (ts_.IsOp("-")) {
      ts_.Next();
      if (ts_.Peek().kind == TokKind::kNumber) {
        return Expr::Constant(-ts_.Next().value);
      }
      return Expr::Constant(0.0) - ParseFactor();
    }
    if (ts_.IsOp("(")) {
      ts_.Next();
      Expr e = ParseExpr();
      ts_.Expect(")");
      return e;
    }
    if (t.kind == TokKind::kNumber) {
      ts_.Next();
      return Expr::Constant(t.value);
    }
    if (t.kind != TokKind::kIdent) ts_.Fail("expected an operand");
    ts_.Next();
    if (ts_.IsOp("(")) {
      ts_.Next();
      Expr arg = ParseExpr();
      if (t.text == "max") {
        ts_.Expect(",");
        Expr second = ParseExpr();
        ts_.Expect(")");
        return Expr::Max(arg, second);
      }
      ts_.Expect(")");
      if (t.text == "exp") return Expr::Exp(arg);
      if (t.text == "log") return Expr::Log(arg);
      if (t.text == "tanh") return Expr::Tanh(arg);
      if (t.text == "sigmoid") return Expr::Sigmoid(arg);
      if (t.text == "softplus") return Expr::Softplus(arg);
      throw ParseError(ts_.path(), "unknown function '" + t.text + "'", t.line);
    }
    const std::optional<VarId> var = problem_.FindVariable(t.text);
    if (!var && Lower(t.text) == "inf") return Expr::Constant(kInf);
    if (!var) {
      throw ParseError(ts_.path(), "unknown variable '" + t.text + "'", t.line);
    }
    return Expr::Variable(*var);
  }

  TokenStream& ts_;
  const OptProblem& problem_;
};

}  // namespace

OptProblem ReadNlp(std::string_view text) {
  enum class Sec { kNone, kVariables, kLinear, kNonlinear, kCompl, kEnd };
  const std::vector<std::string> lines = SplitLines(text);
  OptProblem p;
  Sec sec = Sec::kNone;
  auto wrap = [](int line_no, auto&& fn) {
    try {
      fn();
    } catch (const UsageError& e) {
      throw ParseError("nlp", e.what(), line_no);
    }
  };
  for (std::size_t k = 0; k < lines.size() && sec != Sec::kEnd; ++k) {
    const int line_no = static_cast<int>(k) + 1;
    const std::string line = Trim(lines[k]);
    if (line.empty() || line[0] == '\\') continue;
    const std::size_t colon = line.find(':');
    const std::string head = Lower(line.substr(0, colon));
    if (line == "variables:") {
      sec = Sec::kVariables;
      continue;
    }
    if (line == "linear constraints:") {
      sec = Sec::kLinear;
      continue;
    }
    if (line == "nonlinear constraints:") {
      sec = Sec::kNonlinear;
      continue;
    }
    if (line == "complementarity:") {
      sec = Sec::kCompl;
      continue;
    }
    if (line == "end") {
      sec = Sec::kEnd;
      continue;
    }
    if (colon != std::string::npos && (head == "inputs" || head == "outputs")) {
      for (const std::string& w : Words(line.substr(colon + 1))) {
        const std::optional<VarId> v = p.FindVariable(w);
        if (!v) throw ParseError("nlp", "unknown variable '" + w + "'", line_no);
        head == "inputs" ? p.MarkInput(*v) : p.MarkOutput(*v);
      }
      continue;
    }
    if (colon != std::string::npos && head == "objective") {
      std::vector<Token> tokens;
      Tokenize(line.substr(colon + 1), line_no, "objective", tokens);
      TokenStream ts(std::move(tokens), "objective", line_no);
      if (ts.Peek().kind != TokKind::kIdent) ts.Fail("expected minimize or maximize");
      const std::string sense = ts.Next().text;
      if (sense != "minimize" && sense != "maximize") {
        ts.Fail("expected minimize or maximize");
      }
      Expr e = NlpExprParser(ts, p).ParseExpr();
      if (!ts.AtEnd()) ts.Fail("trailing text");
      p.SetObjective({sense == "maximize" ? ObjectiveSense::kMaximize
                                          : ObjectiveSense::kMinimize,
                      e});
      continue;
    }
    switch (sec) {
      case Sec::kNone:
      case Sec::kEnd:
        throw ParseError("nlp", "text outside a section", line_no);
      case Sec::kVariables: {
        const std::vector<std::string> w = Words(line);
        if (w.size() != 4) {
          throw ParseError("nlp", "expected 'name domain lb ub'", line_no);
        }
        const std::optional<double> lb = ParseReal(w[2]);
        const std::optional<double> ub = ParseReal(w[3]);
        if (!lb || !ub) throw ParseError("nlp", "malformed bound", line_no);
        VarDomain domain = VarDomain::kContinuous;
        if (w[1] == "binary") {
          domain = VarDomain::kBinary;
        } else if (w[1] != "continuous") {
          throw ParseError("nlp", "unknown domain '" + w[1] + "'", line_no);
        }
        wrap(line_no, [&] { p.AddVariable(w[0], domain, *lb, *ub); });
        break;
      }
      case Sec::kLinear:
      case Sec::kNonlinear:
      case Sec::kCompl: {
        std::vector<Token> tokens;
        Tokenize(line, line_no, "nlp", tokens);
        TokenStream ts(std::move(tokens), "nlp", line_no);
        if (ts.Peek().kind != TokKind::kIdent || !ts.IsOp(":", 1)) {
          ts.Fail("expected 'name:'");
        }
        const std::string name = ts.Next().text;
        ts.Next();
        if (sec == Sec::kCompl) {
          if (ts.Peek().kind != TokKind::kIdent || ts.Peek().text != "compl") {
            ts.Fail("expected compl(");
          }
          ts.Next();
          ts.Expect("(");
          Expr a = NlpExprParser(ts, p).ParseExpr();
          ts.Expect(",");
          Expr bx = NlpExprParser(ts, p).ParseExpr();
          ts.Expect(")");
          if (!ts.AtEnd()) ts.Fail("trailing text");
          wrap(line_no, [&] { p.AddComplementarity(name, a, bx); });
          break;
        }
        Expr e = NlpExprParser(ts, p).ParseExpr();
        const std::optional<RowSense> sense = SenseOf(ts.Peek());
        if (!sense) ts.Fail("expected <=, >= or =");
        ts.Next();
        const double rhs = ParseSignedNumber(ts);
        if (!ts.AtEnd()) ts.Fail("trailing text");
        if (sec == Sec::kNonlinear) {
          wrap(line_no, [&] { p.AddNonlinearConstraint(name, e, *sense, rhs); });
          break;
        }
        const std::optional<LinearForm> form = AsLinear(e);
        if (!form) throw ParseError("nlp", "row '" + name + "' is not linear", line_no);
        std::vector<LinearTerm> terms;
        for (const auto& [v, c] : form->terms) terms.push_back({v, c});
        wrap(line_no, [&] {
          p.AddLinearConstraint(name, std::move(terms), *sense,
                                rhs - form->constant);
        });
        break;
      }
    }
  }
  if (sec != Sec::kEnd) {
    throw ParseError("nlp", "missing end", static_cast<int>(lines.size()));
  }
  return p;
}

}  // namespace surrogate
