#include "livkit/io.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>

#include "livkit/error.hpp"

namespace livkit::io {

bool get_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (get_line(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::size_t count_ws_tokens(const std::string& line) {
  std::size_t count = 0, i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i < line.size()) ++count;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
  }
  return count;
}

AtomicWriter::AtomicWriter(const std::string& path) : path_(path) {
  tmp_path_ = path + ".tmp." + std::to_string(::getpid());
  out_.open(tmp_path_, std::ios::binary);
  if (!out_) throw DataError("cannot open output file: " + tmp_path_);
}

AtomicWriter::~AtomicWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_path_, ec);
  }
}

void AtomicWriter::commit() {
  out_.flush();
  if (!out_) throw DataError("write failed: " + tmp_path_);
  out_.close();
  std::error_code ec;
  std::filesystem::rename(tmp_path_, path_, ec);
  if (ec) throw DataError("cannot move output into place: " + path_ + ": " +
                          ec.message());
  committed_ = true;
}

void write_lines(const std::string& path,
                 const std::vector<std::string>& lines) {
  AtomicWriter w(path);
  for (const std::string& l : lines) w.stream() << l << '\n';
  w.commit();
}

}  // namespace livkit::io
