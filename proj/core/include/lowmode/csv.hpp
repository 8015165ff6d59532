#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace lowmode {

// RFC 4180 builder: CRLF line endings, fields quoted only when they contain
// a comma, quote, or newline. Numbers use %.17g so equal inputs give
// byte-identical files. Builds in memory; callers persist the finished text.
class CsvBuilder {
 public:
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += ',';
      text_ += escape(fields[i]);
    }
    text_ += "\r\n";
  }

  const std::string& str() const { return text_; }

  static std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }

  static std::string num(long long v) { return std::to_string(v); }

 private:
  static std::string escape(const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) {
      if (c == '"') q += "\"\"";
      else q += c;
    }
    return q + "\"";
  }

  std::string text_;
};

}  // namespace lowmode
