#include <cstdio>
#include <ostream>

#include "hypdyn/ifs.hpp"

namespace hypdyn {

void write_trace_csv(const OrbitTrace& trace, std::ostream& out) {
  out << kTraceCsvHeader << '\n';
  char line[256];
  for (std::size_t n = 0; n < trace.steps.size(); ++n) {
    const StepRecord& rec = trace.steps[n];
    for (std::size_t p = 0; p < rec.images.size(); ++p) {
      std::snprintf(line, sizeof line, "%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, p, rec.images[p].real(),
                    rec.images[p].imag(), rec.diameter, rec.step, rec.base_distance);
      out << line;
    }
  }
}

}  // namespace hypdyn
