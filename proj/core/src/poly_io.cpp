#include <modlift/poly_io.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace modlift {

std::string ordering_name(Ordering o) {
  switch (o) {
    case Ordering::lex:
      return "lex";
    case Ordering::deglex:
      return "deglex";
    case Ordering::degrevlex:
      return "degrevlex";
  }
  return "?";
}

Ordering ordering_from_name(const std::string& name) {
  if (name == "lex") return Ordering::lex;
  if (name == "deglex") return Ordering::deglex;
  if (name == "degrevlex") return Ordering::degrevlex;
  throw Error("unknown monomial ordering '" + name + "'");
}

Monomial mono_from_key(const std::string& key) {
  Monomial m;
  if (key.empty()) return m;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = key.find(',', start);
    m.e.push_back(static_cast<unsigned>(std::stoul(key.substr(start, comma - start))));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return m;
}

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& cur() const { return cur_; }

  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= s_.size()) {
      cur_ = {Tok::end, "", start};
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      cur_ = {Tok::number, s_.substr(start, i_ - start), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      cur_ = {Tok::ident, s_.substr(start, i_ - start), start};
      return;
    }
    ++i_;
    switch (c) {
      case '+':
        cur_ = {Tok::plus, "+", start};
        return;
      case '-':
        cur_ = {Tok::minus, "-", start};
        return;
      case '*':
        cur_ = {Tok::star, "*", start};
        return;
      case '/':
        cur_ = {Tok::slash, "/", start};
        return;
      case '^':
        cur_ = {Tok::caret, "^", start};
        return;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  Token cur_{Tok::end, "", 0};
};

class PolyParser {
 public:
  PolyParser(const std::string& text, const Ring& ring) : lex_(text), ring_(ring) {}

  Poly<BigRat> parse() {
    std::vector<Term<BigRat>> terms;
    bool negated = false;
    if (lex_.cur().kind == Tok::minus) {
      negated = true;
      lex_.advance();
    } else if (lex_.cur().kind == Tok::plus) {
      lex_.advance();
    }
    while (true) {
      Term<BigRat> t = parse_term();
      if (negated) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      if (lex_.cur().kind == Tok::end) break;
      if (lex_.cur().kind == Tok::plus) {
        negated = false;
      } else if (lex_.cur().kind == Tok::minus) {
        negated = true;
      } else {
        throw SyntaxError("expected '+' or '-'", lex_.cur().pos);
      }
      lex_.advance();
    }
    return Poly<BigRat>::from_terms(std::move(terms), ring_.order);
  }

 private:
  Term<BigRat> parse_term() {
    BigRat coeff(1);
    Monomial mono(ring_.vars.size());
    bool have_any = false;

    if (lex_.cur().kind == Tok::number) {
      BigInt num = parse_bigint(lex_.cur().text);
      lex_.advance();
      if (lex_.cur().kind == Tok::slash) {
        lex_.advance();
        if (lex_.cur().kind != Tok::number)
          throw SyntaxError("expected denominator", lex_.cur().pos);
        BigInt den = parse_bigint(lex_.cur().text);
        if (den == 0) throw SyntaxError("zero denominator", lex_.cur().pos);
        lex_.advance();
        coeff = BigRat(num, den);
      } else {
        coeff = BigRat(num);
      }
      have_any = true;
      if (lex_.cur().kind == Tok::star) lex_.advance();  // optional * after coefficient
    }

    bool expect_factor = false;
    while (lex_.cur().kind == Tok::ident) {
      std::size_t idx = var_index(lex_.cur());
      lex_.advance();
      unsigned exp = 1;
      if (lex_.cur().kind == Tok::caret) {
        lex_.advance();
        if (lex_.cur().kind != Tok::number)
          throw SyntaxError("expected exponent", lex_.cur().pos);
        exp = static_cast<unsigned>(std::stoul(lex_.cur().text));
        lex_.advance();
      }
      mono.e[idx] += exp;
      have_any = true;
      expect_factor = false;
      if (lex_.cur().kind == Tok::star) {
        lex_.advance();
        expect_factor = true;
      }
    }
    if (expect_factor) throw SyntaxError("expected variable after '*'", lex_.cur().pos);
    if (!have_any) throw SyntaxError("expected term", lex_.cur().pos);
    return {std::move(coeff), std::move(mono)};
  }

  std::size_t var_index(const Token& tok) {
    for (std::size_t i = 0; i < ring_.vars.size(); ++i)
      if (ring_.vars[i] == tok.text) return i;
    throw UnknownVariableError(tok.text, tok.pos);
  }

  Lexer lex_;
  const Ring& ring_;
};

std::string coeff_abs_str(const BigRat& c) { return c.abs().str(); }
bool coeff_neg(const BigRat& c) { return c.num() < 0; }
bool coeff_is_unit_one(const BigRat& c) { return c.abs() == BigRat(1); }

std::string coeff_abs_str(const Zp& c) { return std::to_string(c.v); }
bool coeff_neg(const Zp&) { return false; }
bool coeff_is_unit_one(const Zp& c) { return c.v == 1; }

template <class K>
std::string poly_str_impl(const Poly<K>& f, const Ring& ring) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    bool neg = coeff_neg(t.coeff);
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string m = mono_str(t.mono, ring.vars);
    if (m.empty()) {
      out += coeff_abs_str(t.coeff);
    } else if (coeff_is_unit_one(t.coeff)) {
      out += m;
    } else {
      out += coeff_abs_str(t.coeff) + "*" + m;
    }
  }
  return out;
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Poly<BigRat> parse_poly(const std::string& text, const Ring& ring) {
  return PolyParser(text, ring).parse();
}

std::string mono_str(const Monomial& m, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  return out;
}

std::string poly_str(const Poly<BigRat>& f, const Ring& ring) {
  return poly_str_impl(f, ring);
}
std::string poly_str(const Poly<Zp>& f, const Ring& ring) {
  return poly_str_impl(f, ring);
}

IdealFile load_ideal(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw SyntaxError("missing ring header", 0);

  IdealFile out;
  // header: ring: x,y,z; order: degrevlex; field: Q
  std::vector<std::string> sections;
  std::stringstream hs(header);
  std::string part;
  while (std::getline(hs, part, ';')) sections.push_back(strip(part));
  if (sections.size() < 3) throw SyntaxError("ring header needs ring/order/field", 0);

  auto section_value = [](const std::string& s, const std::string& key) {
    if (s.rfind(key + ":", 0) != 0) throw SyntaxError("expected '" + key + ":'", 0);
    return strip(s.substr(key.size() + 1));
  };

  std::stringstream vs(section_value(sections[0], "ring"));
  while (std::getline(vs, part, ',')) {
    std::string v = strip(part);
    if (v.empty()) throw SyntaxError("empty variable name", 0);
    out.ring.vars.push_back(v);
  }
  if (out.ring.vars.empty()) throw SyntaxError("ring with no variables", 0);
  out.ring.order = ordering_from_name(section_value(sections[1], "order"));

  std::string field = section_value(sections[2], "field");
  if (field == "Q") {
    out.char_p = 0;
  } else if (field.rfind("Z/", 0) == 0) {
    out.char_p = std::stoull(field.substr(2));
    if (out.char_p < 2) throw SyntaxError("field characteristic must be >= 2", 0);
  } else {
    throw SyntaxError("field must be Q or Z/<p>", 0);
  }

  std::string line;
  while (std::getline(in, line)) {
    std::string body = strip(line);
    if (body.empty()) continue;
    Poly<BigRat> f = parse_poly(body, out.ring);
    if (!f.is_zero()) out.gens.push_back(std::move(f));
  }
  return out;
}

IdealFile load_ideal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ideal file '" + path + "'");
  return load_ideal(in);
}

void write_basis(std::ostream& out, const Ring& ring, std::uint64_t char_p,
                 const std::vector<Poly<BigRat>>& polys) {
  out << "ring: ";
  for (std::size_t i = 0; i < ring.vars.size(); ++i) {
    if (i) out << ",";
    out << ring.vars[i];
  }
  out << "; order: " << ordering_name(ring.order) << "; field: ";
  if (char_p == 0)
    out << "Q";
  else
    out << "Z/" << char_p;
  out << "\n";
  for (const auto& f : polys) out << poly_str(f, ring) << "\n";
}

std::string basis_str(const Ring& ring, std::uint64_t char_p,
                      const std::vector<Poly<BigRat>>& polys) {
  std::ostringstream os;
  write_basis(os, ring, char_p, polys);
  return os.str();
}

}  // namespace modlift
