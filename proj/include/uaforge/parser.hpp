#ifndef UAFORGE_PARSER_HPP_
#define UAFORGE_PARSER_HPP_

#include <string_view>

#include "uaforge/algebra.hpp"
#include "uaforge/formula.hpp"

namespace uaforge {

  // Grammar:
  //   formula := quant | impl
  //   quant   := ("exists" | "forall") ident+ "." formula
  //   impl    := disj ("->" impl)?
  //   disj    := conj ("\/" conj)*
  //   conj    := neg ("/\" neg)*
  //   neg     := "!" neg | atom
  //   atom    := term "=" term | "(" formula ")"
  //   term    := ident | ident "(" term ("," term)* ")"
  //
  // A bare identifier naming a nullary symbol of sig is that constant, any
  // other bare identifier is a variable. neg(t) abbreviates imp(t, zero) when
  // the signature has imp and zero but no symbol named neg.
  //
  // Throws ParseError (with a byte offset) on syntax errors and Error on
  // unknown symbols or arity mismatches.
  NamedFormula parse_formula(std::string_view src, Signature const& sig);

}  // namespace uaforge

#endif  // UAFORGE_PARSER_HPP_
