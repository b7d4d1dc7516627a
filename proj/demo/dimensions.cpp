// Graded dimensions of every nonzero block up to a given height.
#include <iostream>
#include <string>

#include "wallkit/wallkit.hpp"

using namespace wallkit;

namespace {

std::string beta_label(const RootVec& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (b[i] != 1) s += std::to_string(b[i]);
    s += "a" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

int main(int argc, char** argv) {
  const int max_height = argc > 1 ? std::stoi(argv[1]) : 5;
  for (const AffineType t : {AffineType(Family::A2even, 2), AffineType(Family::D2, 2)}) {
    const CartanData cd(t);
    std::cout << t.name() << "\n";
    for (int n = 1; n <= max_height; ++n)
      for (const auto& beta : betas_of_height(cd, n)) {
        const auto rep = graded_dim_total(cd, beta, Convention::offset_occupied);
        if (rep.total().is_zero()) continue;
        std::cout << "  " << beta_label(beta) << ": " << rep.total() << "  (q=1: " << dim_q1(cd, beta) << ")\n";
      }
  }
  return 0;
}
