#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bizeta/counting.hpp"
#include "bizeta/ratfun.hpp"

namespace bizeta {

/// Closed rational form registered for a built-in lattice, with the data
/// needed by the functional-equation and twist checks.
struct ClosedForm {
  std::string lattice;
  CountVector::Kind kind;
  std::string text;   // expression in q, T1, T2
  int h = 0;          // dimension, the functional-equation weight
  int free_rank_r = 0;  // rk(g/g'), the twist substitution parameter

  RatFun parsed() const { return RatFun::parse(text); }
};

/// Registered bivariate closed form for a built-in lattice; abelian_<m> is
/// parametric. Empty when the engine ships no form for the name.
std::optional<ClosedForm> builtin_closed_form(const std::string& lattice,
                                              CountVector::Kind kind);

/// Published univariate twist form, where one exists ("heisenberg", "f32").
/// For f32 this is the twist zeta function of the group, which the engine's
/// twist rule provably does not reproduce.
std::optional<std::string> builtin_twist_form(const std::string& lattice);

}  // namespace bizeta
