// Sorts all twists k over a small field with indices {0, p, 2p} into
// isomorphism classes and prints one line per class.
#include <weylk/weylk.hpp>

#include <iostream>
#include <vector>

using namespace weylk;

int main(int argc, char** argv) {
  const Field F = parse_field_spec(argc > 1 ? argv[1] : "2");
  const std::uint32_t p = F.characteristic();
  std::vector<TwistParams> all;
  for (Coef a = 0; a < F.order(); ++a)
    for (Coef b = 0; b < F.order(); ++b)
      for (Coef c = 0; c < F.order(); ++c) all.emplace_back(F, std::map<std::uint32_t, Coef>{{0, a}, {p, b}, {2 * p, c}});

  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool placed = false;
    for (auto& cls : classes)
      if (are_isomorphic(all[cls.front()], all[i]).isomorphic) {
        cls.push_back(i);
        placed = true;
        break;
      }
    if (!placed) classes.push_back({i});
  }
  std::cout << all.size() << " twists over F_" << F.spec_string() << ", " << classes.size() << " classes\n";
  for (const auto& cls : classes) {
    std::cout << "  {";
    for (std::size_t j = 0; j < cls.size(); ++j) std::cout << (j ? "  " : "") << render(all[cls[j]]);
    std::cout << "}\n";
  }
}
