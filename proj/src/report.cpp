#include "gausshor/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gausshor {

Section& Report::add_section(std::string name, SectionKind kind) {
  sections.push_back(Section{std::move(name), kind, {}});
  return sections.back();
}

const Section* Report::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

const char* kind_name(SectionKind k) { return k == SectionKind::Distribution ? "distribution" : "table"; }

}  // namespace

void write_csv(const Report& report, std::ostream& os) {
  os << "# schema=" << kReportSchema << '\n';
  os << "# command=" << report.command << '\n';
  for (const auto& [k, v] : report.meta) os << "# " << k << '=' << v << '\n';
  for (const auto& s : report.sections) {
    os << "# section=" << s.name << " kind=" << kind_name(s.kind) << '\n';
    os << "label,value,annotation\n";
    for (const auto& r : s.records) os << r.label << ',' << format_value(r.value) << ',' << r.annotation << '\n';
  }
  os << "# summary=" << report.summary << '\n';
}

void write_json(const Report& report, std::ostream& os) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = report.command;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.meta) meta[k] = v;
  j["meta"] = meta;
  nlohmann::ordered_json sections = nlohmann::ordered_json::array();
  for (const auto& s : report.sections) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["kind"] = kind_name(s.kind);
    nlohmann::ordered_json recs = nlohmann::ordered_json::array();
    for (const auto& r : s.records)
      recs.push_back({{"label", r.label}, {"value", r.value}, {"annotation", r.annotation}});
    js["records"] = std::move(recs);
    sections.push_back(std::move(js));
  }
  j["sections"] = std::move(sections);
  j["summary"] = report.summary;
  os << j.dump(1) << '\n';
}

Report parse_csv(std::istream& is) {
  Report out;
  std::string line;
  Section* current = nullptr;
  while (std::getline(is, line)) {
    if (line.rfind("# ", 0) == 0) {
      const std::string body = line.substr(2);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = body.substr(0, eq);
      const std::string val = body.substr(eq + 1);
      if (key == "schema") {
        if (std::stoi(val) != kReportSchema) throw std::runtime_error("unsupported schema " + val);
      } else if (key == "command") {
        out.command = val;
      } else if (key == "summary") {
        out.summary = val;
      } else if (key == "section") {
        const auto sp = val.find(" kind=");
        const std::string name = val.substr(0, sp);
        const bool dist = sp != std::string::npos && val.substr(sp + 6) == "distribution";
        current = &out.add_section(name, dist ? SectionKind::Distribution : SectionKind::Table);
      } else {
        out.meta.emplace_back(key, val);
      }
      continue;
    }
    if (line == "label,value,annotation" || line.empty()) continue;
    if (!current) throw std::runtime_error("record outside a section: " + line);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw std::runtime_error("bad record: " + line);
    Record r;
    r.label = std::stoll(line.substr(0, c1));
    r.value = std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
    r.annotation = line.substr(c2 + 1);
    current->records.push_back(std::move(r));
  }
  return out;
}

}  // namespace gausshor
