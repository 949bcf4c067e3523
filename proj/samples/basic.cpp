// Builds a code for a small distribution over the telegraph alphabet
// (dot = 1, dash = 2) and prints each codeword with its cost.

#include <cstdio>
#include <vector>

#include "ulc/ulc.hpp"

int main() {
  const std::vector<double> probs{0.4, 0.2, 0.15, 0.1, 0.1, 0.05};
  const auto spec = ulc::parse_costs("telegraph");
  const auto root = ulc::char_root(spec);
  const auto input = ulc::prepare(probs);
  const auto built = ulc::build_code(input, spec, root);

  std::printf("c = %.6f\n", root.c);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    std::printf("p = %.2f  word =", probs[i]);
    for (auto letter : built.tree.codeword(i)) std::printf(" %s", letter == 0 ? "dot" : "dash");
    std::printf("  cost = %g\n", built.tree.codeword_cost(i));
  }

  const auto rep = ulc::report(built.tree, input, spec, root);
  std::printf("C(T) = %.6f  H/c = %.6f  NR = %.6f\n", rep.cost, rep.lower_bound,
              rep.normalized_redundancy);
  for (const auto& b : rep.bounds)
    if (b.applicable) std::printf("  %-22s %.6f\n", b.name.c_str(), *b.value);
  return ulc::verify_prefix_free(built.tree.codewords()) ? 0 : 1;
}
