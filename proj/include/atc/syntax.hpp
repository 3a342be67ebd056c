// Formula and law ASTs, the theory DSL parser, and canonical printing.
#ifndef ATC_SYNTAX_HPP_
#define ATC_SYNTAX_HPP_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace atc {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
  int line, col;
  ParseError(const std::string& msg, int line, int col)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
              ": " + msg),
        line(line),
        col(col) {}
};

struct ResourceError : Error {
  using Error::Error;
};

// Raised when a stated precondition fails, e.g. a non-modular theory is
// handed to an operator that requires modularity.
struct PreconditionError : Error {
  using Error::Error;
};

struct ArgumentError : Error {
  using Error::Error;
};

// Atom and action names of a session, in a fixed order. Formula nodes refer
// to them by index; valuations are bit patterns over the atom order.
struct Universe {
  std::vector<std::string> atoms;
  std::vector<std::string> actions;

  int atom_index(const std::string& name) const;
  int action_index(const std::string& name) const;
  int add_atom(const std::string& name);      // idempotent
  int add_action(const std::string& name);    // idempotent
  int num_atoms() const { return static_cast<int>(atoms.size()); }
  int num_actions() const { return static_cast<int>(actions.size()); }

  bool operator==(const Universe& o) const {
    return atoms == o.atoms && actions == o.actions;
  }
};

// Immutable formula AST. Boolean connectives plus [a]/<a> nodes; a formula
// with no modal node is a Boolean formula.
class Formula {
 public:
  enum class Kind : uint8_t {
    True, False, Atom, Not, And, Or, Imp, Iff, Box, Dia
  };

  Formula() = default;  // empty handle; only valid after assignment

  static Formula truth();
  static Formula falsity();
  static Formula atom(int index);
  static Formula lit(int index, bool positive);
  static Formula mk_not(Formula f);
  static Formula mk_and(Formula l, Formula r);
  static Formula mk_or(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula box(int action, Formula f);
  static Formula dia(int action, Formula f);

  Kind kind() const;
  int index() const;        // atom index (Atom) or action index (Box/Dia)
  Formula left() const;     // unary operand lives in left()
  Formula right() const;

  bool is_boolean() const;  // no Box/Dia anywhere
  uint32_t atom_mask() const;

  bool operator==(const Formula& o) const { return equals(*this, o); }
  bool operator!=(const Formula& o) const { return !equals(*this, o); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, int index, Formula l, Formula r);
  static bool equals(const Formula& a, const Formula& b);
  std::shared_ptr<const Node> node_;
};

// A law is one of the three shapes the change operators are defined for.
struct Law {
  enum class Kind : uint8_t { Static, Effect, Exec };
  Kind kind = Kind::Static;
  Formula pre;      // φ; True for unconditional laws
  int action = -1;  // Effect/Exec only
  Formula post;     // ψ; Effect only

  static Law static_law(Formula phi);
  static Law effect(Formula phi, int action, Formula psi);
  static Law exec(Formula phi, int action);

  Formula as_formula() const;
  bool operator==(const Law& o) const;
};

// Θ = S ∪ E ∪ X over a fixed universe. The three partitions are kept
// separate; insertion is an idempotent set insert.
struct Theory {
  Universe universe;
  std::vector<Formula> statics;
  std::vector<Law> effects;
  std::vector<Law> execs;

  // Returns false if the law was already present.
  bool add_law(const Law& law);
  std::vector<Law> effects_for(int action) const;
  std::vector<Law> execs_for(int action) const;
  std::vector<Law> all_laws() const;
  Formula statics_conj() const;  // ∧S (True when S empty)

  bool operator==(const Theory& o) const;
};

struct ParseResult {
  Theory theory;
  std::vector<std::string> warnings;  // e.g. duplicate laws
};

// DSL: optional "atoms:"/"actions:" headers, then ';'-terminated statements.
ParseResult parse_theory(const std::string& text);

// Parses a single formula against an existing universe. New atom names are
// appended to the universe when allow_new_symbols is set.
Formula parse_formula(const std::string& text, Universe& universe,
                      bool allow_new_symbols = true);

// Classifies a formula as one of the three law shapes; throws ArgumentError
// when it fits none.
Law law_from_formula(const Formula& f);
Law parse_law(const std::string& text, Universe& universe,
              bool allow_new_symbols = true);

std::string render(const Formula& f, const Universe& u);
std::string render(const Law& law, const Universe& u);
std::string render(const Theory& th, bool with_header = true);

}  // namespace atc

#endif  // ATC_SYNTAX_HPP_
