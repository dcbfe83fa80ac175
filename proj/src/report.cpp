#include "demonlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "demonlab/diagnostics.hpp"

namespace demonlab {

using nlohmann::json;

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  if (text == "svg") return ReportFormat::Svg;
  throw DomainError("unknown report format: " + std::string(text));
}

std::string format_number(double x) {
  if (!std::isfinite(x)) throw DomainError("report values must be finite");
  if (x == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json optional_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (!std::isfinite(*v)) throw DomainError("report values must be finite");
  return *v;
}

std::optional<double> read_optional(const json& row, const char* key) {
  if (!row.contains(key) || row.at(key).is_null()) return std::nullopt;
  return row.at(key).get<double>();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += csv_field(r.source) + ',' + csv_field(r.normalization) + ',' + format_number(r.r2) + ',' +
           cell(r.analytic) + ',' + cell(r.mc) + ',' + cell(r.mc_stderr) + ',' + cell(r.mutual_info_bits) + '\n';
  }
  return out;
}

json rows_to_json(const std::vector<ReportRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json o = json::object();
    o["source"] = r.source;
    o["normalization"] = r.normalization;
    o["r2"] = r.r2;
    o["analytic"] = optional_number(r.analytic);
    o["mc"] = optional_number(r.mc);
    o["mc_stderr"] = optional_number(r.mc_stderr);
    o["mutual_info_bits"] = optional_number(r.mutual_info_bits);
    arr.push_back(std::move(o));
  }
  return arr;
}

std::vector<ReportRow> rows_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("report JSON must be an array of rows");
  std::vector<ReportRow> rows;
  for (const auto& o : j) {
    ReportRow r;
    r.source = o.at("source").get<std::string>();
    r.normalization = o.at("normalization").get<std::string>();
    r.r2 = o.at("r2").get<double>();
    r.analytic = read_optional(o, "analytic");
    r.mc = read_optional(o, "mc");
    r.mc_stderr = read_optional(o, "mc_stderr");
    r.mutual_info_bits = read_optional(o, "mutual_info_bits");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string rows_to_svg(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw DomainError("cannot chart an empty report");
  struct Curve {
    std::vector<std::pair<double, double>> line;
    std::vector<std::pair<double, double>> points;
  };
  std::vector<std::string> order;
  std::map<std::string, Curve> curves;
  auto curve = [&](const std::string& key) -> Curve& {
    if (!curves.count(key)) order.push_back(key);
    return curves[key];
  };
  for (const auto& r : rows) {
    const std::string key = r.source + " (" + r.normalization + ")";
    if (r.analytic || r.mc) {
      auto& c = curve(key);
      if (r.analytic) c.line.emplace_back(r.r2, *r.analytic);
      if (r.mc) c.points.emplace_back(r.r2, *r.mc);
    }
    if (r.mutual_info_bits) curve(r.source + " (mutual information, bits)").line.emplace_back(r.r2, *r.mutual_info_bits);
  }
  double xmin = 1.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  for (const auto& [k, c] : curves)
    for (const auto* v : {&c.line, &c.points})
      for (const auto& [x, y] : *v) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  constexpr double W = 720, H = 480, L = 70, R = 230, T = 30, B = 50;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  static const char* colors[] = {"#d62728", "#9467bd", "#2ca02c", "#1f77b4", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = xmin + (xmax - xmin) * i / 4.0;
    const double y = ymin + (ymax - ymin) * i / 4.0;
    os << "<text x=\"" << px(x) << "\" y=\"" << H - B + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
       << format_number(std::round(x * 1e4) / 1e4) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(y) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
       << format_number(std::round(y * 1e4) / 1e4) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" font-size=\"13\" text-anchor=\"middle\">"
     << "reflectivity r2</text>\n";
  os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (T + H - B) / 2 << ")\">value</text>\n";
  std::size_t idx = 0;
  for (const auto& key : order) {
    const auto& c = curves.at(key);
    const char* color = colors[idx % (sizeof colors / sizeof *colors)];
    os << "<g class=\"series\" data-name=\"" << xml_escape(key) << "\">\n";
    if (!c.line.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (const auto& [x, y] : c.line) os << px(x) << ',' << py(y) << ' ';
      os << "\"/>\n";
    }
    for (const auto& [x, y] : c.points)
      os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    os << "</g>\n";
    const double ly = T + 16 * static_cast<double>(idx);
    os << "<rect x=\"" << W - R + 12 << "\" y=\"" << ly << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    os << "<text x=\"" << W - R + 28 << "\" y=\"" << ly + 9 << "\" font-size=\"11\">" << xml_escape(key) << "</text>\n";
    ++idx;
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return rows_to_csv(rows);
    case ReportFormat::Json: return rows_to_json(rows).dump(2) + "\n";
    case ReportFormat::Svg: return rows_to_svg(rows);
  }
  return {};
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace demonlab
