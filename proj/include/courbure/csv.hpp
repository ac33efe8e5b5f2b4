#pragma once

#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace courbure {

// CSV with a mandatory header row; numbers in scientific notation with
// 14 significant digits. write() goes through a temp file and a rename.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns)
      : columns_(std::move(columns)) {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) buf_ << ',';
      buf_ << columns_[i];
    }
    buf_ << '\n';
  }

  void row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
      throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) buf_ << ',';
      buf_ << fmt::format("{:.13e}", values[i]);
    }
    buf_ << '\n';
  }

  std::string str() const { return buf_.str(); }

  void write(const std::filesystem::path& path) const {
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("CsvWriter: cannot open " + tmp);
      out << buf_.str();
    }
    std::filesystem::rename(tmp, path);
  }

private:
  std::vector<std::string> columns_;
  std::ostringstream buf_;
};

}  // namespace courbure
