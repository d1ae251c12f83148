#include "bergman/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bergman {

namespace {

std::string residues_text(const std::vector<int>& residues) {
  std::string out;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(residues[i]);
  }
  return out;
}

std::string number_text(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  return nlohmann::json(x).dump();
}

}  // namespace

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    const auto& s = e.spec;
    nlohmann::json params = {
        {"N", s.N},       {"alpha", s.alpha.text()}, {"D", s.D},
        {"residues", s.residues}, {"depth", s.depth}, {"seed", s.seed}, {"mode", mode_name(s.mode)},
    };
    nlohmann::json entry = {
        {"name", s.name()}, {"params", params}, {"tol", s.tol}, {"pass", e.pass},
        {"wall_ms", e.wall_ms}, {"note", e.note},
    };
    entry["residual"] = std::isfinite(e.residual) ? nlohmann::json(e.residual) : nlohmann::json(nullptr);
    entries.push_back(std::move(entry));
  }
  return {
      {"suite_version", kSuiteVersion},
      {"entries", std::move(entries)},
      {"summary", {{"total", report.total()}, {"passed", report.passed()}, {"failed", report.failed()}}},
  };
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string report_to_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << "name,N,alpha,D,residues,depth,seed,mode,residual,tol,pass,wall_ms,note\r\n";
  for (const auto& e : report.entries) {
    const auto& s = e.spec;
    os << csv_field(s.name()) << ',' << s.N << ',' << csv_field(s.alpha.text()) << ',' << s.D << ','
       << csv_field(residues_text(s.residues)) << ',' << s.depth << ',' << s.seed << ',' << mode_name(s.mode) << ','
       << number_text(e.residual) << ',' << number_text(s.tol) << ',' << (e.pass ? "true" : "false") << ','
       << number_text(e.wall_ms) << ',' << csv_field(e.note) << "\r\n";
  }
  return os.str();
}

std::string report_to_text(const VerificationReport& report) {
  std::ostringstream os;
  for (const auto& e : report.entries) {
    const auto& s = e.spec;
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-18s N=%d alpha=%-5s D=%-4ld L={%s} depth=%d %-5s residual=%.3e tol=%.1e",
                  e.pass ? "PASS" : "FAIL", s.name().c_str(), s.N, s.alpha.text().c_str(), static_cast<long>(s.D),
                  residues_text(s.residues).c_str(), s.depth, mode_name(s.mode), e.residual, s.tol);
    os << line;
    if (!e.note.empty()) os << "  # " << e.note;
    os << '\n';
  }
  os << "total " << report.total() << ", passed " << report.passed() << ", failed " << report.failed() << '\n';
  return os.str();
}

std::string render_report(const VerificationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return report_to_json(report).dump(2) + "\n";
    case ReportFormat::Csv: return report_to_csv(report);
    case ReportFormat::Text: return report_to_text(report);
  }
  return {};
}

int emit_report(const VerificationReport& report, ReportFormat format, const std::string& path) {
  const std::string body = render_report(report, format);
  if (path.empty() || path == "-") {
    std::cout << body << std::flush;
    if (!std::cout) {
      std::cerr << "error: failed writing report to stdout\n";
      return kExitIo;
    }
  } else {
    std::ofstream out(path, std::ios::binary);
    if (out) out << body;
    if (!out) {
      std::cerr << "error: cannot write report to '" << path << "'\n";
      return kExitIo;
    }
  }
  return report.all_passed() ? kExitPass : kExitFail;
}

}  // namespace bergman
