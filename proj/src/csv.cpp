#include "becmerge/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace becmerge {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void CsvWriter::header(const std::vector<std::string>& names) {
    bool first = true;
    for (const auto& n : names) {
        if (!first) out_ += ',';
        out_ += csv_escape(n);
        first = false;
    }
    out_ += '\n';
}

CsvWriter& CsvWriter::field(const std::string& v) {
    if (row_open_) out_ += ',';
    out_ += csv_escape(v);
    row_open_ = true;
    return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }
CsvWriter& CsvWriter::field(int v) { return field(std::to_string(v)); }
CsvWriter& CsvWriter::field(long v) { return field(std::to_string(v)); }

void CsvWriter::end_row() {
    out_ += '\n';
    row_open_ = false;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot open for writing: " + path);
    }
    f << content;
    if (!f) {
        throw std::invalid_argument("write failed: " + path);
    }
}

}  // namespace becmerge
