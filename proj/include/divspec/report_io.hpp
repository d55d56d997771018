#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "divspec/bounds.hpp"
#include "divspec/fields.hpp"

namespace divspec {

struct SpectrumRow {
  int i = 0;
  double sigma = 0.0;
  double divnorm = 0.0;
  double t_energy = 0.0;
  double residual = 0.0;
};

// Reported constants: the field constants plus the shifts D0 and D1.
struct ReportConstants {
  FieldConstants field;
  double D0 = 0.0;
  double D1 = 0.0;
  bool has_shifts = false;
};

// %.17g, '.' separator
std::string format_double(double v);

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows);
void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports);
void write_constants_json(std::ostream& out, const ReportConstants& c);
// Bar chart of log10(margin / |rhs|) per report.
void write_margins_svg(std::ostream& out, const std::vector<BoundReport>& reports);

}  // namespace divspec
