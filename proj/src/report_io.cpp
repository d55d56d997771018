#include "divspec/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace divspec {

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

nlohmann::ordered_json tagged(const Constant& c) {
  return {{"value", c.value}, {"provenance", to_string(c.source)}};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << "i,sigma,divnorm,t_energy,residual\n";
  for (const auto& r : rows) {
    out << r.i << ',' << format_double(r.sigma) << ',' << format_double(r.divnorm) << ','
        << format_double(r.t_energy) << ',' << format_double(r.residual) << '\n';
  }
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << "id,paper_eq,k,lhs,rhs,margin,satisfied\n";
  for (const auto& r : reports) {
    out << r.id << ',' << csv_quote(r.paper_eq) << ',' << r.k << ',' << format_double(r.lhs) << ','
        << format_double(r.rhs) << ',' << format_double(r.margin) << ',' << (r.satisfied ? "true" : "false")
        << '\n';
  }
}

void write_constants_json(std::ostream& out, const ReportConstants& c) {
  nlohmann::ordered_json j;
  j["eps"] = tagged(c.field.eps);
  j["delta"] = tagged(c.field.delta);
  j["T0"] = tagged(c.field.T0);
  j["eta0"] = tagged(c.field.eta0);
  j["C0"] = {{"value", c.field.C0.value},
             {"sup_term", c.field.C0.sup_term},
             {"coupling_term", c.field.C0.coupling_term},
             {"provenance", to_string(c.field.C0.source)}};
  if (c.has_shifts) {
    const std::string src = to_string(c.field.C0.source);
    j["D0"] = {{"value", c.D0}, {"provenance", src}};
    j["D1"] = {{"value", c.D1}, {"provenance", src}};
  }
  out << j.dump(2) << '\n';
}

void write_margins_svg(std::ostream& out, const std::vector<BoundReport>& reports) {
  const int bar_h = 18;
  const int gap = 4;
  const int label_w = 320;
  const int plot_w = 420;
  const int top = 30;
  const int height = top + static_cast<int>(reports.size()) * (bar_h + gap) + 30;
  const int width = label_w + plot_w + 120;

  std::vector<double> vals;
  for (const auto& r : reports) {
    const double denom = std::max(std::abs(r.rhs), 1e-300);
    const double rel = r.margin / denom;
    vals.push_back(rel > 0.0 ? std::log10(rel) : std::nan(""));
  }
  double lo = 0.0;
  double hi = 0.0;
  for (double v : vals) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  lo = std::floor(lo) - 0.5;
  hi = std::max(hi, 0.0) + 0.5;
  auto xpos = [&](double v) { return label_w + (v - lo) / (hi - lo) * plot_w; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"11\">\n";
  out << "<text x=\"" << label_w << "\" y=\"16\">log10(margin / |rhs|)</text>\n";
  const double x0 = xpos(lo);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const int y = top + static_cast<int>(i) * (bar_h + gap);
    out << "<text x=\"4\" y=\"" << y + bar_h - 5 << "\">" << xml_escape(r.id) << " k=" << r.k << "</text>\n";
    if (std::isnan(vals[i])) {
      out << "<text x=\"" << label_w + 4 << "\" y=\"" << y + bar_h - 5 << "\" fill=\"#b00\">"
          << (r.satisfied ? "margin <= 0 (within slack)" : "violated") << "</text>\n";
      continue;
    }
    const double x1 = xpos(vals[i]);
    char buf[160];
    std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%d\" width=\"%.2f\" height=\"%d\" fill=\"%s\"/>\n", x0, y,
                  x1 - x0, bar_h, r.satisfied ? "#4a7" : "#b00");
    out << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%d\">%.3g</text>\n", x1 + 4, y + bar_h - 5, vals[i]);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace divspec
