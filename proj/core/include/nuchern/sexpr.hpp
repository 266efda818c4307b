#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "nuchern/form.hpp"
#include "nuchern/supermatrix.hpp"

namespace nuchern {

/* ---------------- printing ---------------- */

inline std::string sexpr_of(const GaussianRational& c) {
  if (c.im == 0) return rat_str(c.re);
  return "(C " + rat_str(c.re) + " " + rat_str(c.im) + ")";
}

inline std::string sexpr_of(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::string> terms;
  for (auto it = p.t.rbegin(); it != p.t.rend(); ++it) {
    std::string s = "(* " + sexpr_of(it->second);
    for (const auto& [v, e] : it->first) {
      if (e == 1)
        s += " " + sym_name(v);
      else
        s += " (^ " + sym_name(v) + " " + std::to_string(e) + ")";
    }
    s += ")";
    terms.push_back(s);
  }
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

inline std::string sexpr_of(const RationalFunction& r) {
  if (r.den.is_one()) return sexpr_of(r.num);
  return "(/ " + sexpr_of(r.num) + " " + sexpr_of(r.den) + ")";
}

inline std::string sexpr_of(const GrassmannElement& x) {
  if (x.is_zero()) return "0";
  std::vector<std::string> terms;
  for (const auto& [k, c] : x.t) {
    std::string s = "(* " + sexpr_of(c);
    if (k.nu0) s += " nu0";
    for (int g : k.odd) s += " " + sym_name(g);
    s += ")";
    terms.push_back(s);
  }
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

inline std::string sexpr_of(const Form& f) {
  if (f.is_zero()) return "0";
  std::vector<std::string> terms;
  for (const auto& [k, c] : f.t) {
    std::string s = "(* " + sexpr_of(c);
    for (int g : k.gens) s += " (d " + sym_name(g) + ")";
    s += ")";
    terms.push_back(s);
  }
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

/* Matrix text format: one row per line, `|` at the even/odd column divider,
   `--` on its own line between the even and odd row blocks. */
template <class R>
std::string matrix_text(const SuperMatrix<R>& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    if (i == m.rk) os << "--\n";
    for (int j = 0; j < m.cols(); ++j) {
      if (j == m.ck) os << "| ";
      os << sexpr_of(m.at(i, j));
      if (j + 1 < m.cols()) os << " ";
    }
    os << "\n";
  }
  return os.str();
}

/* ---------------- parsing ---------------- */

namespace detail {

struct SexprNode {
  std::string atom;                // empty when this is a list
  std::vector<SexprNode> items;
  bool is_atom() const { return items.empty() && !atom.empty(); }
};

class SexprLexer {
 public:
  explicit SexprLexer(const std::string& s) : s_(s) {}
  std::string next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size()) return "";
    char c = s_[pos_];
    if (c == '(' || c == ')') {
      ++pos_;
      return std::string(1, c);
    }
    size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')')
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;
};

inline SexprNode parse_node(SexprLexer& lex, const std::string& tok) {
  if (tok.empty()) fail(Err::ParseError, "unexpected end of input");
  if (tok == ")") fail(Err::ParseError, "unbalanced ')'");
  if (tok != "(") return SexprNode{tok, {}};
  SexprNode node;
  for (;;) {
    std::string t = lex.next();
    if (t.empty()) fail(Err::ParseError, "unterminated list");
    if (t == ")") return node;
    node.items.push_back(parse_node(lex, t));
  }
}

inline bool looks_rational(const std::string& s) {
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])) && s[i] != '/') return false;
  return true;
}

inline Form eval_sexpr(const SexprNode& n, const Registry& reg) {
  if (n.is_atom()) {
    if (n.atom == "nu0") return Form::from_ge(GrassmannElement::nu0_unit());
    if (looks_rational(n.atom))
      return Form::from_ge(GrassmannElement::scalar(GaussianRational(Rat(n.atom))));
    return Form::from_ge(GrassmannElement::variable(reg.find(n.atom)));
  }
  if (n.items.empty()) fail(Err::ParseError, "empty list");
  const SexprNode& head = n.items[0];
  if (!head.is_atom()) fail(Err::ParseError, "operator expected");
  const std::string& op = head.atom;
  auto arg = [&](size_t i) -> Form { return eval_sexpr(n.items[i], reg); };
  if (op == "+") {
    Form acc;
    for (size_t i = 1; i < n.items.size(); ++i) acc = acc + arg(i);
    return acc;
  }
  if (op == "*") {
    Form acc = Form::one();
    for (size_t i = 1; i < n.items.size(); ++i) acc = wedge(acc, arg(i));
    return acc;
  }
  if (op == "-") {
    if (n.items.size() == 2) return -arg(1);
    Form acc = arg(1);
    for (size_t i = 2; i < n.items.size(); ++i) acc = acc - arg(i);
    return acc;
  }
  if (op == "/") {
    if (n.items.size() != 3) fail(Err::ParseError, "(/ a b) expects two arguments");
    return wedge(arg(1), RingOps<Form>::invert(arg(2)));
  }
  if (op == "^") {
    if (n.items.size() != 3) fail(Err::ParseError, "(^ x k) expects two arguments");
    int k = std::stoi(n.items[2].atom);
    Form base = arg(1);
    if (k < 0) {
      base = RingOps<Form>::invert(base);
      k = -k;
    }
    Form acc = Form::one();
    for (int i = 0; i < k; ++i) acc = wedge(acc, base);
    return acc;
  }
  if (op == "C") {
    if (n.items.size() != 3) fail(Err::ParseError, "(C re im) expects two arguments");
    return Form::from_ge(
        GrassmannElement::scalar(GaussianRational(Rat(n.items[1].atom), Rat(n.items[2].atom))));
  }
  if (op == "d") {
    if (n.items.size() != 2 || !n.items[1].is_atom())
      fail(Err::ParseError, "(d name) expects a symbol");
    return Form::generator(reg.find(n.items[1].atom));
  }
  fail(Err::ParseError, "unknown operator '" + op + "'");
}

}  // namespace detail

inline Form parse_form(const std::string& text, const Registry& reg) {
  detail::SexprLexer lex(text);
  detail::SexprNode node = detail::parse_node(lex, lex.next());
  return detail::eval_sexpr(node, reg);
}

inline GrassmannElement parse_grassmann(const std::string& text, const Registry& reg) {
  Form f = parse_form(text, reg);
  GrassmannElement r;
  for (const auto& [k, c] : f.t) {
    if (k.degree() != 0) fail(Err::ParseError, "expression contains differentials");
    r = r + c;
  }
  return r;
}

/* Reads back the matrix_text format. Dimensions must be supplied since blocks
   of zero width are legal. */
inline SuperMatrix<GrassmannElement> parse_matrix_grassmann(const std::string& text,
                                                            const Registry& reg, int rk, int rl,
                                                            int ck, int cl) {
  SuperMatrix<GrassmannElement> m(rk, rl, ck, cl, 0);
  std::istringstream is(text);
  std::string line;
  int i = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line == "--") continue;
    detail::SexprLexer lex(line);
    int j = 0;
    for (;;) {
      std::string tok = lex.next();
      if (tok.empty()) break;
      if (tok == "|") continue;
      detail::SexprNode node = detail::parse_node(lex, tok);
      if (i >= m.rows() || j >= m.cols()) fail(Err::ParseError, "matrix text overflows shape");
      Form f = detail::eval_sexpr(node, reg);
      GrassmannElement ge;
      for (const auto& [k, c] : f.t) {
        if (k.degree() != 0) fail(Err::ParseError, "matrix entry contains differentials");
        ge = ge + c;
      }
      m.at(i, j) = ge;
      ++j;
    }
    if (j != 0) {
      if (j != m.cols()) fail(Err::ParseError, "matrix row has wrong width");
      ++i;
    }
  }
  if (i != m.rows()) fail(Err::ParseError, "matrix text has wrong height");
  return m;
}

}  // namespace nuchern
