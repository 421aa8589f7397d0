#include <hyperpotential/kernels.hpp>

#include <iostream>

int main() {
  using namespace hyperpotential;
  const auto H = make_H<ExactPolicy>(3);
  const bool ok = equal(convolve(H, H), make_delta<ExactPolicy>(3));
  std::cout << (ok ? "H * H = delta" : "H * H != delta") << '\n';
  return ok ? 0 : 1;
}
