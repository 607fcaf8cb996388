#pragma once

#include <string>
#include <vector>

namespace becmerge {

/// Shortest representation that round-trips to the same double.
std::string format_double(double v);

/// RFC-4180 quoting: fields containing commas, quotes or newlines are quoted,
/// embedded quotes doubled.
std::string csv_escape(const std::string& field);

class CsvWriter {
  public:
    void header(const std::vector<std::string>& names);
    CsvWriter& field(const std::string& v);
    CsvWriter& field(double v);
    CsvWriter& field(int v);
    CsvWriter& field(long v);
    void end_row();

    const std::string& str() const { return out_; }

  private:
    std::string out_;
    bool row_open_ = false;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace becmerge
