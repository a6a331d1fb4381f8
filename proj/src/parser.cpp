#include "domino/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace domino {

namespace {

struct Token {
  enum class Kind { Ident, Var, Number, LParen, RParen, Comma, Tilde, Arrow, End };
  Kind kind;
  std::string text;
  int line, column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const int l = line_, c = col_;
      if (pos_ >= s_.size()) {
        out.push_back({Token::Kind::End, "", l, c});
        return out;
      }
      char ch = s_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        out.push_back({Token::Kind::Ident, ident(), l, c});
      } else if (ch == '?') {
        advance();
        if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
          throw ParseError("expected a variable name after '?'", l, c);
        }
        out.push_back({Token::Kind::Var, ident(), l, c});
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string n;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          n += s_[pos_];
          advance();
        }
        out.push_back({Token::Kind::Number, n, l, c});
      } else if (ch == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
        advance();
        advance();
        out.push_back({Token::Kind::Arrow, "->", l, c});
      } else {
        Token::Kind k;
        switch (ch) {
          case '(': k = Token::Kind::LParen; break;
          case ')': k = Token::Kind::RParen; break;
          case ',': k = Token::Kind::Comma; break;
          case '~': k = Token::Kind::Tilde; break;
          default: throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
        }
        advance();
        out.push_back({k, std::string(1, ch), l, c});
      }
    }
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < s_.size()) {
      char ch = s_[pos_];
      if (ch == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string ident() {
    std::string n;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      n += s_[pos_];
      advance();
    }
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

const std::set<std::string> kConceptKeywords = {"not", "and", "or", "some", "all", "atleast", "atmost"};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opt) : toks_(Lexer(text).run()), opt_(opt) {}

  KnowledgeBase kb() {
    KnowledgeBase kb;
    while (peek().kind != Token::Kind::End) statement(kb);
    return kb;
  }

  Concept whole_concept() {
    Concept c = concept_expr();
    expect(Token::Kind::End, "end of input");
    return c;
  }

  RoleExpr whole_role() {
    RoleExpr r = role();
    expect(Token::Kind::End, "end of input");
    return r;
  }

  Query query() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected a query atom", t);
    Query q;
    if (peek(1).kind == Token::Kind::Tilde) {
      std::string a = individual();
      next();
      q = Query::same_as(a, individual());
    } else if (kConceptKeywords.count(t.text) || t.text == "Top" || t.text == "Bottom" ||
               peek(1).kind != Token::Kind::LParen) {
      Concept c = concept_expr();
      expect(Token::Kind::LParen, "'('");
      std::string a = individual();
      expect(Token::Kind::RParen, "')'");
      q = Query::concept_fact(c, a);
    } else {
      std::string name = name_token(NameKind::Concept);
      expect(Token::Kind::LParen, "'('");
      std::string a = individual();
      if (peek().kind == Token::Kind::Comma) {
        next();
        std::string b = individual();
        q = Query::role_fact(name, a, b);
      } else {
        q = Query::concept_fact(Concept::name(name), a);
      }
      expect(Token::Kind::RParen, "')'");
    }
    expect(Token::Kind::End, "end of input");
    return q;
  }

 private:
  enum class NameKind { Concept, Role, Individual, Variable };

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw ParseError(msg, t.line, t.column); }

  const Token& expect(Token::Kind k, const char* what) {
    const Token& t = peek();
    if (t.kind != k) {
      fail(std::string("expected ") + what + (t.kind == Token::Kind::End ? " before end of input" : ", found '" + t.text + "'"), t);
    }
    return next();
  }

  void check_name(const Token& t, NameKind kind) {
    if (!opt_.allow_reserved_names && t.text.rfind("__", 0) == 0) fail("names starting with '__' are reserved", t);
    if (kind == NameKind::Concept || kind == NameKind::Role) {
      auto& mine = kind == NameKind::Concept ? concept_names_ : role_names_;
      auto& other = kind == NameKind::Concept ? role_names_ : concept_names_;
      if (other.count(t.text)) {
        fail("'" + t.text + "' is used both as a concept name and as a role name", t);
      }
      mine.insert(t.text);
    }
  }

  std::string name_token(NameKind kind) {
    const Token& t = expect(Token::Kind::Ident, "a name");
    check_name(t, kind);
    return t.text;
  }

  std::string individual() { return name_token(NameKind::Individual); }

  unsigned number() {
    const Token& t = expect(Token::Kind::Number, "a number");
    if (t.text.size() > 9 || std::stoul(t.text) > opt_.number_cap) {
      fail("number " + t.text + " exceeds the cap of " + std::to_string(opt_.number_cap), t);
    }
    return static_cast<unsigned>(std::stoul(t.text));
  }

  RoleExpr role() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected a role", t);
    if (peek(1).kind == Token::Kind::LParen) {
      if (t.text == "inv") {
        next();
        next();
        std::string n = name_token(NameKind::Role);
        expect(Token::Kind::RParen, "')'");
        return RoleExpr::atomic(n, true);
      }
      if (t.text == "not") {
        next();
        next();
        RoleExpr u = role();
        expect(Token::Kind::RParen, "')'");
        return RoleExpr::negation(u);
      }
      if (t.text == "and" || t.text == "or") {
        bool conj = t.text == "and";
        next();
        next();
        RoleExpr acc = role();
        int count = 1;
        while (peek().kind == Token::Kind::Comma) {
          next();
          RoleExpr r = role();
          acc = conj ? RoleExpr::conjunction(acc, r) : RoleExpr::disjunction(acc, r);
          ++count;
        }
        if (count < 2 && peek().kind == Token::Kind::RParen) {
          fail(std::string(conj ? "and" : "or") + " needs at least two operands", t);
        }
        expect(Token::Kind::RParen, "')'");
        return acc;
      }
    }
    return RoleExpr::atomic(name_token(NameKind::Role));
  }

  Concept concept_expr() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected a concept", t);
    if (t.text == "Top") {
      next();
      return Concept::top();
    }
    if (t.text == "Bottom") {
      next();
      return Concept::bottom();
    }
    if (peek(1).kind == Token::Kind::LParen && kConceptKeywords.count(t.text)) {
      const Token head = next();
      next();
      Concept c = Concept::top();
      if (head.text == "not") {
        c = Concept::negation(concept_expr());
      } else if (head.text == "and" || head.text == "or") {
        bool conj = head.text == "and";
        c = concept_expr();
        int count = 1;
        while (peek().kind == Token::Kind::Comma) {
          next();
          Concept d = concept_expr();
          c = conj ? Concept::conjunction(c, d) : Concept::disjunction(c, d);
          ++count;
        }
        if (count < 2 && peek().kind == Token::Kind::RParen) fail(head.text + " needs at least two operands", head);
      } else if (head.text == "some" || head.text == "all") {
        RoleExpr u = role();
        expect(Token::Kind::Comma, "','");
        Concept d = concept_expr();
        c = head.text == "some" ? Concept::exists(u, d) : Concept::forall(u, d);
      } else {
        unsigned n = number();
        expect(Token::Kind::Comma, "','");
        RoleExpr u = role();
        expect(Token::Kind::Comma, "','");
        Concept d = concept_expr();
        c = head.text == "atmost" ? Concept::at_most(n, u, d) : Concept::at_least(n, u, d);
      }
      expect(Token::Kind::RParen, "')'");
      return c;
    }
    return Concept::name(name_token(NameKind::Concept));
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Var) {
      next();
      check_name(t, NameKind::Variable);
      return Term::variable(t.text);
    }
    return Term::individual(individual());
  }

  Atom atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Ident && peek(1).kind == Token::Kind::LParen) {
      const Token name = next();
      next();
      Term a = term();
      if (peek().kind == Token::Kind::Comma) {
        next();
        Term b = term();
        expect(Token::Kind::RParen, "')'");
        check_name(name, NameKind::Role);
        return RoleAtom{name.text, a, b};
      }
      expect(Token::Kind::RParen, "')'");
      check_name(name, NameKind::Concept);
      return ConceptAtom{name.text, a};
    }
    Term a = term();
    expect(Token::Kind::Tilde, "'~'");
    Term b = term();
    return EqualityAtom{a, b};
  }

  std::vector<Atom> atoms(Token::Kind stop) {
    std::vector<Atom> out;
    if (peek().kind == stop) return out;
    out.push_back(atom());
    while (peek().kind == Token::Kind::Comma) {
      next();
      out.push_back(atom());
    }
    return out;
  }

  void statement(KnowledgeBase& kb) {
    const Token head = expect(Token::Kind::Ident, "a statement");
    expect(Token::Kind::LParen, "'('");
    const std::string& s = head.text;
    if (s == "SubClassOf") {
      Concept c = concept_expr();
      expect(Token::Kind::Comma, "','");
      kb.add_subclass(c, concept_expr());
    } else if (s == "Valid") {
      kb.add_gci(concept_expr());
    } else if (s == "SubRoleOf") {
      RoleExpr u = role();
      expect(Token::Kind::Comma, "','");
      kb.add_role_inclusion(u, role());
    } else if (s == "Transitive") {
      const Token& at = peek();
      RoleExpr u = role();
      if (!u.is_atomic()) fail("Transitive expects a role name", at);
      kb.add_transitivity(u.atom());
    } else if (s == "ConceptAssertion" || s == "NegativeConceptAssertion") {
      std::string c = name_token(NameKind::Concept);
      expect(Token::Kind::Comma, "','");
      Atom a = ConceptAtom{c, Term::individual(individual())};
      kb.add_rule(s == "ConceptAssertion" ? Rule{{}, {a}} : Rule{{a}, {}});
    } else if (s == "RoleAssertion" || s == "NegativeRoleAssertion") {
      const Token& at = peek();
      RoleExpr u = role();
      if (!u.is_atomic()) fail("role assertions expect a role name or its inverse", at);
      expect(Token::Kind::Comma, "','");
      std::string a = individual();
      expect(Token::Kind::Comma, "','");
      std::string b = individual();
      Atom x = role_atom(u.atom(), Term::individual(a), Term::individual(b));
      kb.add_rule(s == "RoleAssertion" ? Rule{{}, {x}} : Rule{{x}, {}});
    } else if (s == "SameAs" || s == "DifferentIndividuals") {
      std::string a = individual();
      expect(Token::Kind::Comma, "','");
      Atom x = EqualityAtom{Term::individual(a), Term::individual(individual())};
      kb.add_rule(s == "SameAs" ? Rule{{}, {x}} : Rule{{x}, {}});
    } else if (s == "Rule") {
      Rule r;
      r.body = atoms(Token::Kind::Arrow);
      expect(Token::Kind::Arrow, "'->'");
      r.head = atoms(Token::Kind::RParen);
      kb.add_rule(r);
    } else {
      fail("unknown statement '" + s + "'", head);
    }
    expect(Token::Kind::RParen, "')'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseOptions opt_;
  std::set<std::string> concept_names_, role_names_;
};

}  // namespace

KnowledgeBase parse_kb(std::string_view text, const ParseOptions& opt) { return Parser(text, opt).kb(); }

KnowledgeBase parse_kb_file(const std::string& path, const ParseOptions& opt) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_kb(ss.str(), opt);
}

Concept parse_concept(std::string_view text, const ParseOptions& opt) { return Parser(text, opt).whole_concept(); }

RoleExpr parse_role(std::string_view text, const ParseOptions& opt) { return Parser(text, opt).whole_role(); }

Query parse_query(std::string_view text, const ParseOptions& opt) { return Parser(text, opt).query(); }

}  // namespace domino
