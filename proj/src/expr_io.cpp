#include "kwb/expr_io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace kwb {

namespace {

enum class Tok { integer, rational, ident, plus, minus, star, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), column_(column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t line = line_, col = column_;
      if (pos_ == text_.size()) {
        out.push_back({Tok::end, "", line, col});
        return out;
      }
      const char c = text_[pos_];
      if (digit(c)) {
        std::string num = take_while(digit);
        if (pos_ < text_.size() && text_[pos_] == '/') {
          advance();
          if (pos_ == text_.size() || !digit(text_[pos_]))
            throw ParseError("malformed rational literal", line, col);
          num += '/' + take_while(digit);
          out.push_back({Tok::rational, num, line, col});
        } else {
          out.push_back({Tok::integer, num, line, col});
        }
        continue;
      }
      if (ident_start(c)) {
        out.push_back({Tok::ident, take_while(ident_char), line, col});
        continue;
      }
      Tok kind;
      switch (c) {
        case '+': kind = Tok::plus; break;
        case '-': kind = Tok::minus; break;
        case '*': kind = Tok::star; break;
        case '^': kind = Tok::caret; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      advance();
      out.push_back({kind, std::string(1, c), line, col});
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  template <typename Pred>
  std::string take_while(Pred pred) {
    std::string s;
    while (pos_ < text_.size() && pred(text_[pos_])) {
      s += text_[pos_];
      advance();
    }
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

constexpr unsigned long kMaxExponent = 4096;

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::shared_ptr<const VarList> vars)
      : toks_(std::move(tokens)), vars_(std::move(vars)) {}

  Polynomial parse() {
    Polynomial p = expr();
    if (peek().kind != Tok::end) fail("unexpected token '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }
  [[noreturn]] void fail_at(const std::string& msg, const Token& t) const {
    throw ParseError(msg, t.line, t.column);
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool add = take().kind == Tok::plus;
      Polynomial rhs = term();
      if (add)
        acc += rhs;
      else
        acc -= rhs;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (peek().kind == Tok::star) {
      take();
      acc = acc * unary();
    }
    return acc;
  }

  Polynomial unary() {
    if (peek().kind == Tok::minus) {
      take();
      return -unary();
    }
    if (peek().kind == Tok::plus) {
      take();
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (peek().kind != Tok::caret) return base;
    take();
    const Token& e = peek();
    if (e.kind == Tok::minus) fail("negative exponent");
    if (e.kind == Tok::rational) fail("non-integer exponent");
    if (e.kind != Tok::integer) fail("exponent must be a non-negative integer literal");
    take();
    if (e.text.size() > 6 || std::stoul(e.text) > kMaxExponent) fail_at("exponent too large", e);
    return pow(base, static_cast<unsigned>(std::stoul(e.text)));
  }

  Polynomial primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::integer:
        take();
        return Polynomial::constant(Polynomial(vars_), Rational(BigInt(t.text)));
      case Tok::rational: {
        take();
        const auto slash = t.text.find('/');
        BigInt num(t.text.substr(0, slash)), den(t.text.substr(slash + 1));
        if (den == 0) fail_at("zero denominator", t);
        Rational q(num, den);
        q.canonicalize();
        return Polynomial::constant(Polynomial(vars_), q);
      }
      case Tok::ident: {
        take();
        for (std::size_t i = 0; i < vars_->size(); ++i)
          if ((*vars_)[i] == t.text) return Polynomial::variable(vars_, i);
        fail_at("unknown variable '" + t.text + "'", t);
      }
      case Tok::lparen: {
        take();
        Polynomial inner = expr();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        take();
        return inner;
      }
      case Tok::end:
        fail("unexpected end of input");
      default:
        fail("unexpected token '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::shared_ptr<const VarList> vars_;
};

Polynomial parse_at(std::string_view text, std::shared_ptr<const VarList> vars, std::size_t line,
                    std::size_t column) {
  Lexer lexer(text, line, column);
  Parser parser(lexer.run(), std::move(vars));
  return parser.parse();
}

// Header handling shared by map and system files.

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

struct Line {
  std::size_t number;
  std::size_t offset;  // column of the first character of `body`, 1-based
  std::string_view body;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
    raw = trim(raw);
    if (!raw.empty()) out.push_back({number, lead + 1, raw});
  }
  return out;
}

const std::set<std::string>& metadata_keys() {
  static const std::set<std::string> keys{"name", "source", "notes"};
  return keys;
}

/// Consumes `vars:` and metadata lines; returns the index of the first body line.
std::size_t read_header(const std::vector<Line>& lines, VarList& vars,
                        std::vector<std::pair<std::string, std::string>>& metadata) {
  std::size_t i = 0;
  bool have_vars = false;
  for (; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    const auto colon = ln.body.find(':');
    if (colon == std::string_view::npos) break;
    const std::string key(trim(ln.body.substr(0, colon)));
    const std::string_view value = trim(ln.body.substr(colon + 1));
    if (key == "vars") {
      if (have_vars) throw ParseError("duplicate vars: header", ln.number, ln.offset);
      vars = split_ws(value);
      if (vars.empty()) throw ParseError("vars: header lists no variables", ln.number, ln.offset);
      std::set<std::string> seen;
      for (const auto& v : vars) {
        if (!ident_start(v.front()) ||
            !std::all_of(v.begin(), v.end(), [](char c) { return ident_char(c); }))
          throw ParseError("invalid variable name '" + v + "'", ln.number, ln.offset);
        if (!seen.insert(v).second)
          throw ParseError("duplicate variable '" + v + "'", ln.number, ln.offset);
      }
      have_vars = true;
    } else if (metadata_keys().count(key)) {
      metadata.emplace_back(key, std::string(value));
    } else {
      throw ParseError("unknown header key '" + key + "'", ln.number, ln.offset);
    }
  }
  if (!have_vars) {
    const std::size_t line = i < lines.size() ? lines[i].number : 1;
    throw ParseError("missing vars: header", line, 1);
  }
  return i;
}

void write_header(std::ostringstream& out, const VarList& vars,
                  const std::vector<std::pair<std::string, std::string>>& metadata) {
  for (const auto& [k, v] : metadata) out << k << ": " << v << '\n';
  out << "vars:";
  for (const auto& v : vars) out << ' ' << v;
  out << '\n';
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::shared_ptr<const VarList> variables) {
  return parse_at(text, std::move(variables), 1, 1);
}

Polynomial parse_polynomial(std::string_view text, const VarList& variables) {
  return parse_polynomial(text, make_ring(variables));
}

std::string print_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [degree, component] : homogeneous_components(p)) {
    for (auto it = component.terms().rbegin(); it != component.terms().rend(); ++it) {
      const auto& [m, c] = *it;
      if (first)
        out << (c < 0 ? "-" : "");
      else
        out << (c < 0 ? " - " : " + ");
      first = false;
      const Rational mag = abs(c);
      bool need_star = false;
      if (mag != 1 || m.is_one()) {
        out << to_string(mag);
        need_star = true;
      }
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (need_star) out << '*';
        out << p.variables()[i];
        if (m[i] > 1) out << '^' << m[i];
        need_star = true;
      }
    }
  }
  return out.str();
}

PolyMap MapFile::to_map() const {
  auto ring = make_ring(variables);
  std::vector<Polynomial> comps;
  for (const auto& c : components) comps.push_back(parse_polynomial(c, ring));
  return PolyMap(std::move(comps));
}

MapFile MapFile::from_map(const PolyMap& f) {
  MapFile file;
  file.variables = f.variables();
  for (const auto& c : f.components()) file.components.push_back(print_polynomial(c));
  return file;
}

MapFile parse_map_file(std::string_view text) {
  const auto lines = content_lines(text);
  MapFile file;
  std::size_t i = read_header(lines, file.variables, file.metadata);
  auto ring = make_ring(file.variables);
  std::vector<std::optional<std::string>> slots;
  for (; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    const auto eq = ln.body.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'F<i> = <expr>'", ln.number, ln.offset);
    const std::string label(trim(ln.body.substr(0, eq)));
    if (label.size() < 2 || label[0] != 'F' ||
        !std::all_of(label.begin() + 1, label.end(), digit) || label[1] == '0')
      throw ParseError("component label must be F<i> with i >= 1", ln.number, ln.offset);
    const std::size_t index = std::stoul(label.substr(1));
    const std::string_view expr = ln.body.substr(eq + 1);
    // Validate now so errors carry file positions.
    parse_at(expr, ring, ln.number, ln.offset + eq + 1);
    if (slots.size() < index) slots.resize(index);
    if (slots[index - 1]) throw ParseError("duplicate component " + label, ln.number, ln.offset);
    slots[index - 1] = std::string(trim(expr));
  }
  if (slots.empty()) throw ParseError("map file has no components", lines.empty() ? 1 : lines.back().number, 1);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!slots[k]) throw ParseError("missing component F" + std::to_string(k + 1), lines.back().number, 1);
    file.components.push_back(*slots[k]);
  }
  return file;
}

std::string write_map_file(const MapFile& file) {
  std::ostringstream out;
  write_header(out, file.variables, file.metadata);
  for (std::size_t i = 0; i < file.components.size(); ++i)
    out << 'F' << (i + 1) << " = " << file.components[i] << '\n';
  return out.str();
}

SystemFile parse_system_file(std::string_view text) {
  const auto lines = content_lines(text);
  SystemFile file;
  std::size_t i = read_header(lines, file.variables, file.metadata);
  auto ring = make_ring(file.variables);
  for (; i < lines.size(); ++i)
    file.equations.push_back(parse_at(lines[i].body, ring, lines[i].number, lines[i].offset));
  if (file.equations.empty())
    throw ParseError("system file has no equations", lines.empty() ? 1 : lines.back().number, 1);
  return file;
}

std::string write_system_file(const SystemFile& file) {
  std::ostringstream out;
  write_header(out, file.variables, file.metadata);
  for (const auto& e : file.equations) out << print_polynomial(e) << '\n';
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace kwb
