#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gausshor {

inline constexpr int kReportSchema = 1;

struct Record {
  std::int64_t label = 0;
  double value = 0.0;
  std::string annotation;
};

enum class SectionKind { Distribution, Table };

struct Section {
  std::string name;
  SectionKind kind = SectionKind::Table;
  std::vector<Record> records;
};

/// Output of one CLI command. Serialized as CSV (comment-line metadata,
/// `label,value,annotation` rows per section) or as JSON with the same content.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Section> sections;
  std::string summary;

  Section& add_section(std::string name, SectionKind kind);
  const Section* find(const std::string& name) const;
};

/// 17 significant digits, "%.17g".
std::string format_value(double v);

void write_csv(const Report& report, std::ostream& os);
void write_json(const Report& report, std::ostream& os);

/// Reads back what write_csv produced.
Report parse_csv(std::istream& is);

}  // namespace gausshor
