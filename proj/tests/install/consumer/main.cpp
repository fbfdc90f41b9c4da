#include <iostream>

#include "chainlab/chains.hpp"

int main() {
  const auto eq = chainlab::generateChain(chainlab::ChainFamily::riccati(), 2);
  std::cout << toText(eq.lhs) << "\n";
  return toText(eq.lhs) == "u_xx + 3*u*u_x + u^3" ? 0 : 1;
}
