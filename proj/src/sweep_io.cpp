#include "rsp/sweep_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace rsp::io {
namespace {

std::string cell_text(const analysis::Cell& c) {
  if (const double* v = std::get_if<double>(&c)) return fixed12(*v);
  return std::get<std::string>(c);
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ArgumentError("malformed number '" + s + "' in sweep file");
  }
  return v;
}

analysis::Cell parse_cell(const std::string& s) {
  if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-')) {
    return parse_number(s);
  }
  if (s.empty()) throw ArgumentError("empty fidelity cell in sweep file");
  return s;
}

}  // namespace

std::string fixed12(double x) {
  if (x == 0.0 || std::abs(x) < 5e-13) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<analysis::SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const analysis::SweepRow& r : rows) {
    out << noise::kind_name(r.kind) << ',' << fixed12(r.eta) << ',' << fixed12(r.alpha.real())
        << ',' << fixed12(r.alpha.imag()) << ',' << fixed12(r.beta.real()) << ','
        << fixed12(r.beta.imag()) << ',' << r.branch << ',' << cell_text(r.exact) << ','
        << cell_text(r.truncated) << '\n';
  }
}

std::vector<analysis::SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw ArgumentError("sweep file does not start with the expected header");
  }
  std::vector<analysis::SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string tok; std::getline(ss, tok, ',');) f.push_back(tok);
    // Branch labels such as "U1,00,00" contain commas.
    if (f.size() == 11) {
      f[6] += "," + f[7] + "," + f[8];
      f.erase(f.begin() + 7, f.begin() + 9);
    }
    if (f.size() != 9) throw ArgumentError("sweep row has the wrong number of fields: " + line);
    rows.push_back({noise::parse_kind(f[0]), parse_number(f[1]),
                    cplx(parse_number(f[2]), parse_number(f[3])),
                    cplx(parse_number(f[4]), parse_number(f[5])), f[6], parse_cell(f[7]),
                    parse_cell(f[8])});
  }
  return rows;
}

void write_sweep_svg(std::ostream& out, const std::vector<analysis::SweepRow>& rows) {
  constexpr double w = 640, h = 400, pad = 50;
  static constexpr const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                           "#d62728", "#9467bd", "#8c564b"};
  std::map<std::string, std::string> lines;
  std::map<std::string, std::string> stroke;
  for (const analysis::SweepRow& r : rows) {
    const std::string kind(noise::kind_name(r.kind));
    const std::string color = colors[static_cast<int>(r.kind)];
    for (int m = 0; m < 2; ++m) {
      const analysis::Cell& c = m == 0 ? r.exact : r.truncated;
      const double* v = std::get_if<double>(&c);
      if (!v) continue;
      const std::string name = kind + (m == 0 ? " exact" : " truncated");
      char pt[64];
      std::snprintf(pt, sizeof pt, "%.2f,%.2f ", pad + r.eta * (w - 2 * pad),
                    h - pad - *v * (h - 2 * pad));
      lines[name] += pt;
      stroke[name] = color + std::string(m == 0 ? "\"" : "\" stroke-dasharray=\"6 4\"");
    }
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\""
      << h - pad << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">eta</text>\n";
  out << "<text x=\"14\" y=\"" << h / 2 << "\" transform=\"rotate(-90 14 " << h / 2
      << ")\" text-anchor=\"middle\">fidelity</text>\n";
  int legend = 0;
  for (const auto& [name, pts] : lines) {
    out << "<polyline fill=\"none\" stroke=\"" << stroke[name] << " points=\"" << pts
        << "\"><title>" << name << "</title></polyline>\n";
    out << "<text x=\"" << w - pad - 150 << "\" y=\"" << pad + 14 * legend++
        << "\" font-size=\"10\">" << name << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace rsp::io
