#include "atc/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace atc {

// ---------------------------------------------------------------- Universe

int Universe::atom_index(const std::string& name) const {
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == name) return static_cast<int>(i);
  return -1;
}

int Universe::action_index(const std::string& name) const {
  for (size_t i = 0; i < actions.size(); ++i)
    if (actions[i] == name) return static_cast<int>(i);
  return -1;
}

int Universe::add_atom(const std::string& name) {
  if (action_index(name) >= 0)
    throw ArgumentError("'" + name + "' is already an action name");
  int i = atom_index(name);
  if (i >= 0) return i;
  if (atoms.size() >= 30) throw ResourceError("atom universe exceeds 30 atoms");
  atoms.push_back(name);
  return static_cast<int>(atoms.size()) - 1;
}

int Universe::add_action(const std::string& name) {
  if (atom_index(name) >= 0)
    throw ArgumentError("'" + name + "' is already an atom name");
  int i = action_index(name);
  if (i >= 0) return i;
  actions.push_back(name);
  return static_cast<int>(actions.size()) - 1;
}

// ----------------------------------------------------------------- Formula

struct Formula::Node {
  Kind kind;
  int index;
  Formula left, right;
};

Formula Formula::truth() { return make(Kind::True, -1, {}, {}); }
Formula Formula::falsity() { return make(Kind::False, -1, {}, {}); }
Formula Formula::atom(int index) { return make(Kind::Atom, index, {}, {}); }
Formula Formula::lit(int index, bool positive) {
  Formula a = atom(index);
  return positive ? a : mk_not(a);
}
Formula Formula::mk_not(Formula f) {
  return make(Kind::Not, -1, std::move(f), {});
}
Formula Formula::mk_and(Formula l, Formula r) {
  return make(Kind::And, -1, std::move(l), std::move(r));
}
Formula Formula::mk_or(Formula l, Formula r) {
  return make(Kind::Or, -1, std::move(l), std::move(r));
}
Formula Formula::imp(Formula l, Formula r) {
  return make(Kind::Imp, -1, std::move(l), std::move(r));
}
Formula Formula::iff(Formula l, Formula r) {
  return make(Kind::Iff, -1, std::move(l), std::move(r));
}
Formula Formula::box(int action, Formula f) {
  return make(Kind::Box, action, std::move(f), {});
}
Formula Formula::dia(int action, Formula f) {
  return make(Kind::Dia, action, std::move(f), {});
}

Formula Formula::make(Kind k, int index, Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->index = index;
  n->left = std::move(l);
  n->right = std::move(r);
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
int Formula::index() const { return node_->index; }
Formula Formula::left() const { return node_->left; }
Formula Formula::right() const { return node_->right; }

bool Formula::is_boolean() const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return true;
    case Kind::Not:
      return left().is_boolean();
    case Kind::Box:
    case Kind::Dia:
      return false;
    default:
      return left().is_boolean() && right().is_boolean();
  }
}

uint32_t Formula::atom_mask() const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return 0;
    case Kind::Atom:
      return 1u << index();
    case Kind::Not:
    case Kind::Box:
    case Kind::Dia:
      return left().atom_mask();
    default:
      return left().atom_mask() | right().atom_mask();
  }
}

bool Formula::equals(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind() || a.index() != b.index()) return false;
  switch (a.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return true;
    case Kind::Not:
    case Kind::Box:
    case Kind::Dia:
      return equals(a.left(), b.left());
    default:
      return equals(a.left(), b.left()) && equals(a.right(), b.right());
  }
}

// --------------------------------------------------------------------- Law

Law Law::static_law(Formula phi) {
  Law l;
  l.kind = Kind::Static;
  l.pre = std::move(phi);
  return l;
}

Law Law::effect(Formula phi, int action, Formula psi) {
  Law l;
  l.kind = Kind::Effect;
  l.pre = std::move(phi);
  l.action = action;
  l.post = std::move(psi);
  return l;
}

Law Law::exec(Formula phi, int action) {
  Law l;
  l.kind = Kind::Exec;
  l.pre = std::move(phi);
  l.action = action;
  return l;
}

Formula Law::as_formula() const {
  switch (kind) {
    case Kind::Static:
      return pre;
    case Kind::Effect:
      return Formula::imp(pre, Formula::box(action, post));
    case Kind::Exec:
      return Formula::imp(pre, Formula::dia(action, Formula::truth()));
  }
  return pre;
}

bool Law::operator==(const Law& o) const {
  if (kind != o.kind || action != o.action) return false;
  if (pre != o.pre) return false;
  if (kind == Kind::Effect && post != o.post) return false;
  return true;
}

// ------------------------------------------------------------------ Theory

bool Theory::add_law(const Law& law) {
  switch (law.kind) {
    case Law::Kind::Static:
      for (const auto& s : statics)
        if (s == law.pre) return false;
      statics.push_back(law.pre);
      return true;
    case Law::Kind::Effect:
      for (const auto& e : effects)
        if (e == law) return false;
      effects.push_back(law);
      return true;
    case Law::Kind::Exec:
      for (const auto& x : execs)
        if (x == law) return false;
      execs.push_back(law);
      return true;
  }
  return false;
}

std::vector<Law> Theory::effects_for(int action) const {
  std::vector<Law> out;
  for (const auto& e : effects)
    if (e.action == action) out.push_back(e);
  return out;
}

std::vector<Law> Theory::execs_for(int action) const {
  std::vector<Law> out;
  for (const auto& x : execs)
    if (x.action == action) out.push_back(x);
  return out;
}

std::vector<Law> Theory::all_laws() const {
  std::vector<Law> out;
  for (const auto& s : statics) out.push_back(Law::static_law(s));
  out.insert(out.end(), effects.begin(), effects.end());
  out.insert(out.end(), execs.begin(), execs.end());
  return out;
}

Formula Theory::statics_conj() const {
  if (statics.empty()) return Formula::truth();
  Formula f = statics.front();
  for (size_t i = 1; i < statics.size(); ++i)
    f = Formula::mk_and(f, statics[i]);
  return f;
}

bool Theory::operator==(const Theory& o) const {
  if (!(universe == o.universe)) return false;
  auto same = [](auto a, auto b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a)
      if (std::find(b.begin(), b.end(), x) == b.end()) return false;
    return true;
  };
  return same(statics, o.statics) && same(effects, o.effects) &&
         same(execs, o.execs);
}

// ------------------------------------------------------------------- Lexer

namespace {

enum class Tok {
  Ident, True, False, Not, And, Or, Imp, Iff,
  LParen, RParen, LBracket, RBracket, Less, Greater,
  Semi, Comma, Colon, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  struct State {
    size_t pos;
    int line, col;
    Token tok;
  };
  State save() const { return {pos_, line_, col_, tok_}; }
  void restore(const State& s) {
    pos_ = s.pos;
    line_ = s.line;
    col_ = s.col;
    tok_ = s.tok;
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#') {  // comment to end of line
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    auto take = [&](Tok k, int n) {
      tok_.kind = k;
      tok_.text = src_.substr(pos_, n);
      pos_ += n;
      col_ += n;
    };
    if (src_.compare(pos_, 3, "<->") == 0) return take(Tok::Iff, 3);
    if (src_.compare(pos_, 2, "->") == 0) return take(Tok::Imp, 2);
    switch (c) {
      case '~': return take(Tok::Not, 1);
      case '&': return take(Tok::And, 1);
      case '|': return take(Tok::Or, 1);
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      case '[': return take(Tok::LBracket, 1);
      case ']': return take(Tok::RBracket, 1);
      case '<': return take(Tok::Less, 1);
      case '>': return take(Tok::Greater, 1);
      case ';': return take(Tok::Semi, 1);
      case ',': return take(Tok::Comma, 1);
      case ':': return take(Tok::Colon, 1);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) ||
              src_[end] == '_'))
        ++end;
      std::string word = src_.substr(pos_, end - pos_);
      int n = static_cast<int>(end - pos_);
      if (word == "true") return take(Tok::True, n);
      if (word == "false") return take(Tok::False, n);
      tok_.kind = Tok::Ident;
      tok_.text = word;
      pos_ = end;
      col_ += n;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_,
                     col_);
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// Recursive-descent parser for formulas and theory statements.
// Precedence: ~ and modal prefixes bind tightest, then &, |, -> (right
// associative), <-> (right associative, loosest).
class Parser {
 public:
  Parser(const std::string& src, Universe& u, bool allow_new)
      : lex_(src), universe_(u), allow_new_(allow_new) {}

  Formula parse_formula_all() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  ParseResult parse_theory_all() {
    ParseResult result;
    headers(universe_);
    while (lex_.peek().kind != Tok::End) {
      Token at = lex_.peek();
      Formula f = formula();
      expect(Tok::Semi, "';'");
      Law law;
      try {
        law = law_from_formula(f);
      } catch (const ArgumentError& e) {
        throw ParseError(e.what(), at.line, at.col);
      }
      if (!result.theory.add_law(law)) {
        result.warnings.push_back("duplicate law at line " +
                                  std::to_string(at.line) + " ignored: " +
                                  render(law, universe_));
      }
    }
    result.theory.universe = universe_;
    return result;
  }

 private:
  void headers(Universe& u) {
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind != Tok::Ident || (t.text != "atoms" && t.text != "actions"))
        return;
      // Only a header when followed by ':'.
      bool is_atoms = t.text == "atoms";
      Lexer::State saved = lex_.save();
      lex_.next();
      if (lex_.peek().kind != Tok::Colon) {
        lex_.restore(saved);
        return;
      }
      lex_.next();
      for (;;) {
        Token id = expect(Tok::Ident, "identifier");
        if (is_atoms)
          u.add_atom(id.text);
        else
          u.add_action(id.text);
        if (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          continue;
        }
        break;
      }
      expect(Tok::Semi, "';'");
    }
  }

  Token expect(Tok k, const std::string& what) {
    Token t = lex_.peek();
    if (t.kind != k)
      throw ParseError("expected " + what, t.line, t.col);
    return lex_.next();
  }

  int atom(const Token& t) {
    int i = universe_.atom_index(t.text);
    if (i >= 0) return i;
    if (universe_.action_index(t.text) >= 0)
      throw ParseError("'" + t.text + "' is an action name", t.line, t.col);
    if (!allow_new_)
      throw ParseError("unknown atom '" + t.text + "'", t.line, t.col);
    return universe_.add_atom(t.text);
  }

  int action(const Token& t) {
    int i = universe_.action_index(t.text);
    if (i >= 0) return i;
    if (universe_.atom_index(t.text) >= 0)
      throw ParseError("'" + t.text + "' is an atom name", t.line, t.col);
    if (!allow_new_)
      throw ParseError("unknown action '" + t.text + "'", t.line, t.col);
    return universe_.add_action(t.text);
  }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula l = imp();
    if (lex_.peek().kind == Tok::Iff) {
      lex_.next();
      return Formula::iff(std::move(l), iff());
    }
    return l;
  }

  Formula imp() {
    Formula l = disj();
    if (lex_.peek().kind == Tok::Imp) {
      lex_.next();
      return Formula::imp(std::move(l), imp());
    }
    return l;
  }

  Formula disj() {
    Formula l = conj();
    while (lex_.peek().kind == Tok::Or) {
      lex_.next();
      l = Formula::mk_or(std::move(l), conj());
    }
    return l;
  }

  Formula conj() {
    Formula l = unary();
    while (lex_.peek().kind == Tok::And) {
      lex_.next();
      l = Formula::mk_and(std::move(l), unary());
    }
    return l;
  }

  Formula unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Not:
        lex_.next();
        return Formula::mk_not(unary());
      case Tok::LBracket: {
        lex_.next();
        Token id = expect(Tok::Ident, "action name");
        expect(Tok::RBracket, "']'");
        int a = action(id);
        return Formula::box(a, unary());
      }
      case Tok::Less: {
        lex_.next();
        Token id = expect(Tok::Ident, "action name");
        expect(Tok::Greater, "'>'");
        int a = action(id);
        return Formula::dia(a, unary());
      }
      case Tok::LParen: {
        lex_.next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::True:
        lex_.next();
        return Formula::truth();
      case Tok::False:
        lex_.next();
        return Formula::falsity();
      case Tok::Ident: {
        Token id = lex_.next();
        return Formula::atom(atom(id));
      }
      default:
        throw ParseError("expected formula", t.line, t.col);
    }
  }

  Lexer lex_;
  Universe& universe_;
  bool allow_new_;
};

}  // namespace

Law law_from_formula(const Formula& f) {
  using K = Formula::Kind;
  if (f.is_boolean()) return Law::static_law(f);
  // Bare modal forms stand for a True antecedent.
  Formula pre = Formula::truth();
  Formula body = f;
  if (f.kind() == K::Imp && f.left().is_boolean()) {
    pre = f.left();
    body = f.right();
  }
  if (body.kind() == K::Box && body.left().is_boolean())
    return Law::effect(pre, body.index(), body.left());
  if (body.kind() == K::Dia && body.left().kind() == K::True)
    return Law::exec(pre, body.index());
  throw ArgumentError(
      "not a law: expected a Boolean formula, phi -> [a] psi, or "
      "phi -> <a> true");
}

ParseResult parse_theory(const std::string& text) {
  Universe u;
  Parser p(text, u, true);
  return p.parse_theory_all();
}

Formula parse_formula(const std::string& text, Universe& universe,
                      bool allow_new_symbols) {
  Parser p(text, universe, allow_new_symbols);
  return p.parse_formula_all();
}

Law parse_law(const std::string& text, Universe& universe,
              bool allow_new_symbols) {
  return law_from_formula(parse_formula(text, universe, allow_new_symbols));
}

// ------------------------------------------------------------------ Render

namespace {

// Larger binds tighter.
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Imp: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    default: return 5;
  }
}

void render_rec(const Formula& f, const Universe& u, int parent_prec,
                bool right_side, std::string& out) {
  using K = Formula::Kind;
  int prec = precedence(f.kind());
  // ->/<-> associate to the right, &/| to the left; parenthesize the
  // off-side child so the parse tree survives the round trip.
  bool paren;
  if (prec < parent_prec)
    paren = true;
  else if (prec == parent_prec)
    paren = (f.kind() == K::Imp || f.kind() == K::Iff) ? !right_side
                                                       : right_side;
  else
    paren = false;
  if (paren) out += '(';
  switch (f.kind()) {
    case K::True: out += "true"; break;
    case K::False: out += "false"; break;
    case K::Atom: out += u.atoms[f.index()]; break;
    case K::Not:
      out += '~';
      render_rec(f.left(), u, 5, false, out);
      break;
    case K::Box:
      out += '[';
      out += u.actions[f.index()];
      out += "] ";
      render_rec(f.left(), u, 5, false, out);
      break;
    case K::Dia:
      out += '<';
      out += u.actions[f.index()];
      out += "> ";
      render_rec(f.left(), u, 5, false, out);
      break;
    case K::And:
      render_rec(f.left(), u, 4, false, out);
      out += " & ";
      render_rec(f.right(), u, 4, true, out);
      break;
    case K::Or:
      render_rec(f.left(), u, 3, false, out);
      out += " | ";
      render_rec(f.right(), u, 3, true, out);
      break;
    case K::Imp:
      render_rec(f.left(), u, 2, false, out);
      out += " -> ";
      render_rec(f.right(), u, 2, true, out);
      break;
    case K::Iff:
      render_rec(f.left(), u, 1, false, out);
      out += " <-> ";
      render_rec(f.right(), u, 1, true, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string render(const Formula& f, const Universe& u) {
  std::string out;
  render_rec(f, u, 0, true, out);
  return out;
}

std::string render(const Law& law, const Universe& u) {
  return render(law.as_formula(), u);
}

std::string render(const Theory& th, bool with_header) {
  std::ostringstream os;
  if (with_header) {
    if (!th.universe.atoms.empty()) {
      os << "atoms: ";
      for (size_t i = 0; i < th.universe.atoms.size(); ++i)
        os << (i ? ", " : "") << th.universe.atoms[i];
      os << ";\n";
    }
    if (!th.universe.actions.empty()) {
      os << "actions: ";
      for (size_t i = 0; i < th.universe.actions.size(); ++i)
        os << (i ? ", " : "") << th.universe.actions[i];
      os << ";\n";
    }
  }
  for (const auto& s : th.statics) os << render(s, th.universe) << ";\n";
  for (const auto& e : th.effects) os << render(e, th.universe) << ";\n";
  for (const auto& x : th.execs) os << render(x, th.universe) << ";\n";
  return os.str();
}

}  // namespace atc
