#pragma once

#include <fstream>
#include <istream>
#include <string>
#include <vector>

namespace livkit::io {

// getline that strips a trailing '\r', so LF and CRLF files read the same.
bool get_line(std::istream& in, std::string& line);

// All lines of a file; throws DataError if the file cannot be opened.
std::vector<std::string> read_lines(const std::string& path);

std::vector<std::string> split_ws(const std::string& line);
std::size_t count_ws_tokens(const std::string& line);

// Writes to "<path>.tmp.<pid>" and renames into place on commit, so failed
// runs never leave a partial output at the destination.
class AtomicWriter {
 public:
  explicit AtomicWriter(const std::string& path);
  ~AtomicWriter();

  std::ofstream& stream() { return out_; }
  void commit();

  AtomicWriter(const AtomicWriter&) = delete;
  AtomicWriter& operator=(const AtomicWriter&) = delete;

 private:
  std::string path_, tmp_path_;
  std::ofstream out_;
  bool committed_ = false;
};

void write_lines(const std::string& path, const std::vector<std::string>& lines);

}  // namespace livkit::io
