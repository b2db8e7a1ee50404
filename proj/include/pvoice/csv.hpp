#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace pvoice::csv {

/// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
/// line breaks. CRLF and LF are both accepted.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the next record. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  /// 1-based line on which the last returned record started.
  std::size_t record_line() const noexcept { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

/// Quotes a field only when it needs quoting.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace pvoice::csv
