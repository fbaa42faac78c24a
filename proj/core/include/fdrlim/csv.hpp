#pragma once

#include <map>
#include <string>
#include <vector>

namespace fdrlim {

// Writer for the versioned CSV layout: "# schema=1" first, further
// "# key=value" metadata comments, one header row, then data rows.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();

  void meta(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& fields);
  void close();

 private:
  struct Impl;
  Impl* impl_;
};

std::string csv_real(double v);  // canonical %.10g rendering

struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
};

// Validates the "# schema=1" first line.
CsvTable read_csv(const std::string& path);

}  // namespace fdrlim
