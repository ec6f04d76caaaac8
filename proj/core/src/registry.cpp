#include "bizeta/registry.hpp"

namespace bizeta {

std::optional<ClosedForm> builtin_closed_form(const std::string& lattice,
                                              CountVector::Kind kind) {
  const bool irr = kind == CountVector::Kind::Irr;
  if (lattice == "heisenberg") {
    ClosedForm f;
    f.lattice = lattice;
    f.kind = kind;
    f.h = 3;
    f.free_rank_r = 2;
    f.text = irr ? "(1 - T1*T2) / ((1 - q*T1*T2) * (1 - q^2*T2))"
                 : "(1 - T1*T2) / ((1 - q*T2) * (1 - q^2*T1*T2))";
    return f;
  }
  if (lattice == "f32") {
    ClosedForm f;
    f.lattice = lattice;
    f.kind = kind;
    f.h = 5;
    f.free_rank_r = 2;
    f.text = irr ? "(1 - T1*T2) / ((1 - q^2*T2) * (1 - q^3*T1*T2))"
                 : "(1 - T1^2*T2) / ((1 - q^2*T2) * (1 - q^3*T1^2*T2))";
    return f;
  }
  if (lattice.rfind("abelian_", 0) == 0) {
    int m = 0;
    try {
      m = std::stoi(lattice.substr(8));
    } catch (...) {
      return std::nullopt;
    }
    if (m < 1 || m > 16) return std::nullopt;
    ClosedForm f;
    f.lattice = lattice;
    f.kind = kind;
    f.h = m;
    f.free_rank_r = m;
    f.text = "1 / (1 - q^" + std::to_string(m) + "*T2)";
    return f;
  }
  return std::nullopt;
}

std::optional<std::string> builtin_twist_form(const std::string& lattice) {
  if (lattice == "heisenberg") return "(1 - T) / (1 - q*T)";
  if (lattice == "f32") return "(1 - T)^2 / ((1 - q*T) * (1 - q^2*T))";
  return std::nullopt;
}

}  // namespace bizeta
