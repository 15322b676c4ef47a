// Prints the essential p-dimension of the SL_n torus normalizer for a range of n.
//   example_sl <nmax> <p>

#include <cstdlib>
#include <iostream>

#include "edp/pipeline.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <nmax> <p>\n";
    return 1;
  }
  const std::size_t nmax = std::strtoul(argv[1], nullptr, 10);
  const std::uint64_t p = std::strtoull(argv[2], nullptr, 10);
  try {
    for (std::size_t n = 2; n <= nmax; ++n) {
      auto r = edp::ed_case_sl(n, p);
      std::cout << "n=" << n << " case " << r.label << ": ed in [" << r.ed.ed_lower << ", "
                << (r.ed.ed_upper ? std::to_string(*r.ed.ed_upper) : "?") << "]";
      if (r.ed.exact) std::cout << " = " << *r.ed.exact;
      std::cout << "  (closed form " << r.closed_form << ")\n";
    }
  } catch (const edp::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
