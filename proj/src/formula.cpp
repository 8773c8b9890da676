#include "mlaudit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace mlaudit {

namespace {

struct Token {
  enum Type { ident, one, tilde, plus, minus, colon, lparen, rparen, end };
  Type type;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Token::end, "", start};
    const char c = text_[pos_];
    switch (c) {
      case '~': ++pos_; return {Token::tilde, "~", start};
      case '+': ++pos_; return {Token::plus, "+", start};
      case '-': ++pos_; return {Token::minus, "-", start};
      case ':': ++pos_; return {Token::colon, ":", start};
      case '(': ++pos_; return {Token::lparen, "(", start};
      case ')': ++pos_; return {Token::rparen, ")", start};
      default: break;
    }
    if (c == '1' && !is_ident_char(peek_at(pos_ + 1))) {
      ++pos_;
      return {Token::one, "1", start};
    }
    if (is_ident_start(c)) {
      std::size_t e = pos_;
      while (e < text_.size() && is_ident_char(text_[e])) ++e;
      Token t{Token::ident, text_.substr(pos_, e - pos_), start};
      pos_ = e;
      return t;
    }
    throw FormulaError("unexpected character '" + std::string(1, c) + "'", start);
  }

 private:
  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/';
  }
  char peek_at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  const std::string& text_;
  std::size_t pos_ = 0;
};

std::pair<std::string, std::string> canonical_pair(const std::string& a, const std::string& b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

Formula parse_formula(const std::string& text) {
  Lexer lex(text);
  Formula f;

  Token t = lex.next();
  if (t.type != Token::ident)
    throw FormulaError("expected response identifier", t.offset);
  if (t.text == "log") {
    Token open = lex.next();
    if (open.type == Token::lparen) {
      Token inner = lex.next();
      if (inner.type != Token::ident)
        throw FormulaError("expected identifier inside log(...)", inner.offset);
      Token close = lex.next();
      if (close.type != Token::rparen)
        throw FormulaError("expected ')'", close.offset);
      f.response = inner.text;
      f.log_response = true;
      t = lex.next();
    } else {
      // a response literally named "log"
      f.response = t.text;
      t = open;
    }
  } else {
    f.response = t.text;
    t = lex.next();
  }
  if (t.type != Token::tilde) throw FormulaError("expected '~'", t.offset);

  std::set<std::string> seen_terms;
  std::set<std::pair<std::string, std::string>> seen_interactions;

  bool expect_element = true;
  while (true) {
    t = lex.next();
    if (t.type == Token::end) {
      if (expect_element) throw FormulaError("expected a term", t.offset);
      break;
    }
    if (!expect_element) {
      if (t.type == Token::plus) {
        expect_element = true;
        continue;
      }
      if (t.type == Token::minus) {
        Token one = lex.next();
        if (one.type != Token::one)
          throw FormulaError("'-' must be followed by '1'", one.offset);
        f.intercept = false;
        continue;
      }
      throw FormulaError("expected '+' or '-'", t.offset);
    }
    // an element: ident [: ident] | 1 | -1
    if (t.type == Token::one) {
      expect_element = false;  // intercept placeholder, no-op
      continue;
    }
    if (t.type == Token::minus) {
      Token one = lex.next();
      if (one.type != Token::one)
        throw FormulaError("'-' must be followed by '1'", one.offset);
      f.intercept = false;
      expect_element = false;
      continue;
    }
    if (t.type != Token::ident)
      throw FormulaError("expected a term", t.offset);
    const std::string first = t.text;
    const std::size_t first_off = t.offset;
    Token sep = lex.next();
    if (sep.type == Token::colon) {
      Token second = lex.next();
      if (second.type != Token::ident)
        throw FormulaError("expected identifier after ':'", second.offset);
      if (first == second.text)
        throw FormulaError("interaction '" + first + ":" + second.text +
                               "' repeats the same identifier",
                           first_off);
      if (first == f.response || second.text == f.response)
        throw FormulaError("response '" + f.response + "' reused as predictor", first_off);
      if (!seen_interactions.insert(canonical_pair(first, second.text)).second)
        throw FormulaError("duplicate interaction '" + first + ":" + second.text + "'",
                           first_off);
      f.interactions.emplace_back(first, second.text);
      expect_element = false;
      continue;
    }
    // plain main effect; sep was lookahead
    if (first == f.response)
      throw FormulaError("response '" + f.response + "' reused as predictor", first_off);
    if (!seen_terms.insert(first).second)
      throw FormulaError("duplicate term '" + first + "'", first_off);
    f.terms.push_back(first);
    expect_element = false;
    if (sep.type == Token::plus) {
      expect_element = true;
      continue;
    }
    if (sep.type == Token::minus) {
      Token one = lex.next();
      if (one.type != Token::one)
        throw FormulaError("'-' must be followed by '1'", one.offset);
      f.intercept = false;
      continue;
    }
    if (sep.type == Token::end) break;
    throw FormulaError("expected '+' or '-'", sep.offset);
  }
  return f;
}

std::string print_formula(const Formula& f) {
  std::string out;
  if (f.log_response)
    out = "log(" + f.response + ")";
  else
    out = f.response;
  out += " ~ ";
  std::vector<std::string> elements;
  for (const auto& t : f.terms) elements.push_back(t);
  for (const auto& [a, b] : f.interactions) elements.push_back(a + ":" + b);
  if (elements.empty()) elements.push_back(f.intercept ? "1" : "-1");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += " + ";
    out += elements[i];
  }
  if (!f.intercept && !(f.terms.empty() && f.interactions.empty())) out += " - 1";
  return out;
}

std::vector<std::string> formula_features(const Formula& f) {
  std::vector<std::string> out;
  auto add = [&out](const std::string& name) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  for (const auto& t : f.terms) add(t);
  for (const auto& [a, b] : f.interactions) {
    add(a);
    add(b);
  }
  return out;
}

namespace {

// Expansion of one identifier into design columns: a numeric feature is a
// single column, a categorical becomes one indicator per non-reference level.
struct Expansion {
  std::vector<std::string> names;
  // column values for a given dataset, one vector per expanded column
  std::vector<std::vector<double>> columns;
};

Expansion expand_identifier(const DesignInfo& info, const Dataset& ds,
                            const std::string& name) {
  const std::size_t col = ds.column_index(name);
  Expansion e;
  if (ds.column_info(col).kind == FeatureKind::numeric) {
    e.names.push_back(name);
    e.columns.push_back(ds.numeric_column(col));
    return e;
  }
  auto it = info.levels.find(name);
  if (it == info.levels.end())
    throw AuditError("no captured levels for categorical '" + name + "'");
  const auto& levels = it->second;
  const auto& labels = ds.categorical_column(col);
  for (const auto& label : labels) {
    if (std::find(levels.begin(), levels.end(), label) == levels.end())
      throw AuditError("unseen level '" + label + "' in categorical '" + name + "'");
  }
  for (std::size_t k = 1; k < levels.size(); ++k) {  // first level is the reference
    e.names.push_back(name + "=" + levels[k]);
    std::vector<double> indicator(labels.size(), 0.0);
    for (std::size_t r = 0; r < labels.size(); ++r)
      if (labels[r] == levels[k]) indicator[r] = 1.0;
    e.columns.push_back(std::move(indicator));
  }
  return e;
}

}  // namespace

DesignInfo capture_design(const Formula& f, const Dataset& ds) {
  DesignInfo info;
  info.formula = f;
  ds.column_index(f.response);  // existence check
  for (const auto& name : formula_features(f)) {
    const std::size_t col = ds.column_index(name);
    if (ds.column_info(col).kind == FeatureKind::categorical) {
      std::set<std::string> uniq(ds.categorical_column(col).begin(),
                                 ds.categorical_column(col).end());
      info.levels[name] = std::vector<std::string>(uniq.begin(), uniq.end());
    }
  }
  return info;
}

DesignMatrix materialize_design(const DesignInfo& info, const Dataset& ds,
                                bool with_response) {
  const Formula& f = info.formula;
  DesignMatrix dm;
  dm.n = ds.n_rows();

  std::vector<std::vector<double>> cols;
  if (f.intercept) {
    dm.column_names.push_back("(intercept)");
    cols.emplace_back(dm.n, 1.0);
  }
  for (const auto& term : f.terms) {
    Expansion e = expand_identifier(info, ds, term);
    for (std::size_t k = 0; k < e.names.size(); ++k) {
      dm.column_names.push_back(e.names[k]);
      cols.push_back(std::move(e.columns[k]));
    }
  }
  for (const auto& [a, b] : f.interactions) {
    Expansion ea = expand_identifier(info, ds, a);
    Expansion eb = expand_identifier(info, ds, b);
    for (std::size_t i = 0; i < ea.names.size(); ++i) {
      for (std::size_t j = 0; j < eb.names.size(); ++j) {
        dm.column_names.push_back(ea.names[i] + ":" + eb.names[j]);
        std::vector<double> prod(dm.n);
        for (std::size_t r = 0; r < dm.n; ++r)
          prod[r] = ea.columns[i][r] * eb.columns[j][r];
        cols.push_back(std::move(prod));
      }
    }
  }
  dm.p = cols.size();
  if (dm.p == 0) throw AuditError("formula yields no design columns");

  dm.values.resize(dm.n * dm.p);
  for (std::size_t r = 0; r < dm.n; ++r)
    for (std::size_t c = 0; c < dm.p; ++c) dm.values[r * dm.p + c] = cols[c][r];

  if (with_response) {
    const auto& y = ds.numeric_column(f.response);
    dm.response.resize(dm.n);
    for (std::size_t r = 0; r < dm.n; ++r) {
      if (f.log_response) {
        if (!(y[r] > 0.0))
          throw AuditError("log transform requires positive response; row " +
                           std::to_string(r + 1) + " has " + format_double(y[r]));
        dm.response[r] = std::log(y[r]);
      } else {
        dm.response[r] = y[r];
      }
    }
  }
  return dm;
}

DesignMatrix design_matrix(const Formula& f, const Dataset& ds) {
  return materialize_design(capture_design(f, ds), ds, true);
}

}  // namespace mlaudit
