#include "fdrlim/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fdrlim {

struct CsvWriter::Impl {
  std::ofstream out;
  std::string path;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  impl_->path = path;
  impl_->out.open(path, std::ios::binary);  // LF line endings everywhere
  if (!impl_->out) throw std::runtime_error("cannot write '" + path + "'");
  impl_->out << "# schema=1\n";
}

CsvWriter::~CsvWriter() {
  close();
  delete impl_;
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
  impl_->out << "# " << key << "=" << value << "\n";
}

void CsvWriter::header(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << fields[i];
  }
  impl_->out << '\n';
}

void CsvWriter::close() {
  if (impl_->out.is_open()) {
    impl_->out.flush();
    if (!impl_->out) throw std::runtime_error("write failed for '" + impl_->path + "'");
    impl_->out.close();
  }
}

std::string csv_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::runtime_error("CSV is missing column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      if (line != "# schema=1") {
        throw std::runtime_error("'" + path + "' is not a schema=1 CSV");
      }
      first = false;
      continue;
    }
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      while (!body.empty() && body.front() == ' ') body.erase(body.begin());
      const auto eq = body.find('=');
      if (eq != std::string::npos) {
        table.meta[body.substr(0, eq)] = body.substr(eq + 1);
      }
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw std::runtime_error("'" + path + "' is empty");
  return table;
}

}  // namespace fdrlim
