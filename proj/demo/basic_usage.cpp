// Recover a 2x4 matrix, up to row operations, from noisy minors known only
// up to a constant factor.

#include <cstdio>

#include "gr24/core.hpp"
#include "gr24/project.hpp"
#include "gr24/reconstruct.hpp"

int main() {
  const gr24::Matrix2x4 truth({1, 2, 3, 4}, {5, 6, 7, 8});

  // Measured minors: scaled by an unknown constant and slightly perturbed.
  gr24::MinorSextuple measured = gr24::minors(truth).scaled(-0.37);
  measured.m13 += 0.004;
  measured.m24 -= 0.003;
  std::printf("defect before: %.3e\n", gr24::plucker_defect(measured));

  const gr24::ProjectionResult fixed = gr24::project(measured);
  std::printf("defect after:  %.3e (p = %.3e)\n", fixed.defect_after, fixed.p);

  const gr24::Pivot pivot = gr24::select_pivot(fixed.corrected);
  const gr24::Matrix2x4 rebuilt = gr24::reconstruct_exact(fixed.corrected, pivot);
  for (int r = 0; r < 2; ++r)
    std::printf("  [% .6f % .6f % .6f % .6f]\n", rebuilt(r, 0), rebuilt(r, 1), rebuilt(r, 2), rebuilt(r, 3));

  std::printf("proportionality residual vs. original: %.3e\n",
              gr24::proportionality_residual(gr24::minors(truth), gr24::minors(rebuilt)));
  const gr24::Tolerance loose{1e-2, 0};
  const bool same = gr24::are_equivalent(truth, rebuilt, loose);
  std::printf("same row span as the original (rel 1e-2): %s\n", same ? "yes" : "no");
  return same ? 0 : 1;
}
