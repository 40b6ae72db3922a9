#include "uaforge/parser.hpp"

#include <cctype>

#include "uaforge/error.hpp"

namespace uaforge {

  namespace {

    enum class Tok {
      Ident,
      LParen,
      RParen,
      Comma,
      Equals,
      And,
      Or,
      Arrow,
      Bang,
      Dot,
      End
    };

    struct Token {
      Tok              kind;
      std::string_view text;
      std::size_t      pos;
    };

    std::vector<Token> tokenize(std::string_view src) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
          ++i;
          continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          std::size_t start = i;
          while (i < src.size()
                 && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
            ++i;
          }
          out.push_back({Tok::Ident, src.substr(start, i - start), start});
          continue;
        }
        auto two = src.substr(i, 2);
        if (two == "/\\") {
          out.push_back({Tok::And, two, i});
          i += 2;
        } else if (two == "\\/") {
          out.push_back({Tok::Or, two, i});
          i += 2;
        } else if (two == "->") {
          out.push_back({Tok::Arrow, two, i});
          i += 2;
        } else {
          Tok k;
          switch (c) {
            case '(':
              k = Tok::LParen;
              break;
            case ')':
              k = Tok::RParen;
              break;
            case ',':
              k = Tok::Comma;
              break;
            case '=':
              k = Tok::Equals;
              break;
            case '!':
              k = Tok::Bang;
              break;
            case '.':
              k = Tok::Dot;
              break;
            default:
              throw ParseError(std::string("unexpected character '") + c + "'", i);
          }
          out.push_back({k, src.substr(i, 1), i});
          ++i;
        }
      }
      out.push_back({Tok::End, {}, src.size()});
      return out;
    }

    class Parser {
     public:
      Parser(std::string_view src, Signature const& sig)
          : tokens_(tokenize(src)), sig_(sig) {}

      NamedFormula parse() {
        Formula f = formula();
        expect(Tok::End, "end of input");
        return builder_.finish(std::move(f));
      }

     private:
      Token const& peek() const {
        return tokens_[pos_];
      }

      bool accept(Tok k) {
        if (peek().kind == k) {
          ++pos_;
          return true;
        }
        return false;
      }

      Token const& expect(Tok k, char const* what) {
        if (peek().kind != k) {
          throw ParseError(std::string("expected ") + what + ", found "
                               + (peek().kind == Tok::End
                                      ? std::string("end of input")
                                      : "'" + std::string(peek().text) + "'"),
                           peek().pos);
        }
        return tokens_[pos_++];
      }

      bool is_quantifier() const {
        return peek().kind == Tok::Ident
               && (peek().text == "exists" || peek().text == "forall");
      }

      Formula formula() {
        if (is_quantifier()) {
          bool               ex = peek().text == "exists";
          std::size_t        at = peek().pos;
          std::vector<VarId> vars;
          ++pos_;
          while (peek().kind == Tok::Ident) {
            std::string name(peek().text);
            if (sig_.contains(name)) {
              throw ParseError("cannot bind operation symbol '" + name + "'",
                               peek().pos);
            }
            vars.push_back(builder_.var(name));
            ++pos_;
          }
          if (vars.empty()) {
            throw ParseError("quantifier without variables", at);
          }
          expect(Tok::Dot, "'.'");
          Formula body = formula();
          return ex ? Formula::exists(std::move(vars), std::move(body))
                    : Formula::forall(std::move(vars), std::move(body));
        }
        return implication();
      }

      // The right operand of a binary connective may itself be quantified;
      // its body then extends to the right as far as possible.
      Formula operand(Formula (Parser::*next)()) {
        if (is_quantifier()) {
          return formula();
        }
        return (this->*next)();
      }

      Formula implication() {
        Formula lhs = disjunction();
        if (accept(Tok::Arrow)) {
          Formula rhs = is_quantifier() ? formula() : implication();
          return Formula::implies(std::move(lhs), std::move(rhs));
        }
        return lhs;
      }

      Formula disjunction() {
        std::vector<Formula> parts;
        parts.push_back(conjunction());
        while (accept(Tok::Or)) {
          parts.push_back(operand(&Parser::conjunction));
        }
        return parts.size() == 1 ? std::move(parts[0]) : Formula::disj(std::move(parts));
      }

      Formula conjunction() {
        std::vector<Formula> parts;
        parts.push_back(negation());
        while (accept(Tok::And)) {
          parts.push_back(operand(&Parser::negation));
        }
        return parts.size() == 1 ? std::move(parts[0]) : Formula::conj(std::move(parts));
      }

      Formula negation() {
        if (accept(Tok::Bang)) {
          return Formula::negation(operand(&Parser::negation));
        }
        return atom();
      }

      Formula atom() {
        if (accept(Tok::LParen)) {
          Formula f = formula();
          expect(Tok::RParen, "')'");
          return f;
        }
        if (peek().kind != Tok::Ident || is_quantifier()) {
          expect(Tok::Ident, "a term or '('");
        }
        Term lhs = term();
        expect(Tok::Equals, "'='");
        Term rhs = term();
        return Formula::eq(std::move(lhs), std::move(rhs));
      }

      Term term() {
        Token const& id = expect(Tok::Ident, "a term");
        std::string  name(id.text);
        if (name == "exists" || name == "forall") {
          throw ParseError("keyword '" + name + "' used as a term", id.pos);
        }
        if (accept(Tok::LParen)) {
          std::vector<Term> args;
          args.push_back(term());
          while (accept(Tok::Comma)) {
            args.push_back(term());
          }
          expect(Tok::RParen, "')'");
          return application(name, std::move(args), id.pos);
        }
        if (auto op = sig_.find(name)) {
          if (sig_[*op].arity != 0) {
            throw Error("symbol '" + name + "' has arity "
                        + std::to_string(sig_[*op].arity)
                        + " but is used as a constant (position "
                        + std::to_string(id.pos) + ")");
          }
          return Term::apply(name);
        }
        return builder_.v(name);
      }

      Term application(std::string const& name, std::vector<Term> args, std::size_t at) {
        auto op = sig_.find(name);
        if (!op && name == "neg" && args.size() == 1 && sig_.contains("imp")
            && sig_.contains("zero")) {
          std::vector<Term> imp_args;
          imp_args.push_back(std::move(args[0]));
          imp_args.push_back(Term::apply("zero"));
          return Term::apply("imp", std::move(imp_args));
        }
        if (!op) {
          throw Error("unknown operation symbol '" + name + "' (position "
                      + std::to_string(at) + ")");
        }
        if (sig_[*op].arity != args.size()) {
          throw Error("symbol '" + name + "' has arity " + std::to_string(sig_[*op].arity)
                      + " but is applied to " + std::to_string(args.size())
                      + " arguments (position " + std::to_string(at) + ")");
        }
        return Term::apply(name, std::move(args));
      }

      std::vector<Token> tokens_;
      std::size_t        pos_ = 0;
      Signature const&   sig_;
      FormulaBuilder     builder_;
    };

  }  // namespace

  NamedFormula parse_formula(std::string_view src, Signature const& sig) {
    return Parser(src, sig).parse();
  }

}  // namespace uaforge
