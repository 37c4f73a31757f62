// Library tour: build a few fans by hand and print their invariants.

#include "stacky/stacky.hpp"

#include <iostream>

using namespace stacky;

int main() {
  // Labels 2, 3, 5 on the standard triangle.
  const auto p = build(make_sheared({1, 1}, {2, 3, 5}));
  const auto wps = classify_wps(p);
  std::cout << "kind " << kind_name(wps.kind) << ", " << weights_to_string(wps.weights) << '\n';
  for (const auto& cone : faces(p))
    std::cout << "  isotropy " << cone_to_string(cone) << " = " << isotropy_group(p, cone) << '\n';

  // Same rays over Z^2 + Z/2.
  const auto t = make_stacky_fan({2, {2}}, IntMatrix{{-2, 3, 0}, {-2, 0, 5}, {1, 1, 1}},
                                 {{0, 1}, {0, 2}, {1, 2}}, true);
  std::cout << "torsion N: " << weights_to_string(classify_wps(t).weights)
            << ", generic stabilizer " << isotropy_group(t, {}) << '\n';

  // A segment with labels 4 and 6 is a quotient of P(2,3) by Z/2, but not a global quotient.
  const auto seg = make_stacky_fan({1, {}}, IntMatrix{{-6, 4}}, {{0}, {1}}, true);
  const auto cover = universal_cover(seg);
  std::cout << "segment: G = " << structure_of_g(seg).to_string() << ", cover beta " << cover.lift()
            << ", global quotient " << std::boolalpha << is_global_quotient(seg).global_quotient << '\n';
}
