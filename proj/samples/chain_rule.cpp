// Mixed second derivative of f(y(x, xi)) for a map R^{1|1} -> R^{1|1}:
// print the symbolic expansion, then check it on concrete polynomials.

#include "supercalc/supercalc.hpp"

#include <iostream>

namespace sc = supercalc;

int main() {
  const sc::MapDims dims{{1, 1}, {1, 1}};
  const sc::IndexList idx = sc::parse_index_list("x1,xi1");
  const sc::FunctionSymbol f{"f", dims.target.total(), sc::Parity::odd};

  std::cout << "d_xi1 d_x1 f(y) = " << sc::to_text(sc::fdb_rhs(idx, dims, f)) << "\n\n";

  // y1 = x1^2, zeta1 = (1 + x1) xi1, f = y1^2 zeta1
  const auto x = sc::SuperPolynomial::even_variable(dims.source, 1);
  const auto xi = sc::SuperPolynomial::odd_variable(dims.source, 1);
  const auto y = sc::SuperPolynomial::even_variable(dims.target, 1);
  const auto zeta = sc::SuperPolynomial::odd_variable(dims.target, 1);

  sc::Instance inst;
  inst.id = "sample";
  inst.map = sc::SuperMap{dims.source, dims.target, {x * x}, {(sc::SuperPolynomial::constant(dims.source, 1) + x) * xi}};
  inst.f = y * y * zeta;
  inst.f_parity = sc::Parity::odd;
  inst.idx = idx;

  const auto report = sc::verify_instance(inst, sc::Mode::concrete);
  std::cout << "direct:  " << report.lhs << "\nformula: " << report.rhs << "\n" << (report.equal ? "equal" : "NOT equal") << "\n";
  return report.equal ? 0 : 1;
}
