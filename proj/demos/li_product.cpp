// Computes lambda1 * diam^2 across a few members of the axisymmetric family
// and prints each against the universal lower bound pi^2/4.
#include <cmath>
#include <cstdio>

#include "liespec/liespec.hpp"

int main() {
  const double bound = M_PI * M_PI / 4.0;
  std::printf("%8s %10s %10s %12s   (bound %.4f)\n", "beta", "lambda1",
              "diameter", "product", bound);
  for (double beta : {0.25, 1.0, 4.0, 25.0}) {
    const liespec::MetricRecord rec = liespec::berger_record(beta);
    std::printf("%8.2f %10.6f %10.6f %12.6f   %s\n", beta, rec.lambda1,
                rec.diameter, rec.product,
                rec.product >= bound ? "above" : "BELOW");
  }
  return 0;
}
