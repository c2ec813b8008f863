#pragma once

#include <istream>
#include <string>
#include <vector>

namespace lgroup {

struct Line {
  int no = 0;
  std::string text;
};

// Non-empty lines with '#' comments stripped and surrounding blanks trimmed.
std::vector<Line> read_lines(std::istream& in);
std::vector<Line> read_lines_file(const std::string& path);
std::string read_file(const std::string& path);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
std::vector<std::string> split_ws(const std::string& s);
bool starts_with(const std::string& s, const std::string& prefix);

// "key = value" -> (key, value); returns false if there is no '='.
bool key_value(const std::string& s, std::string& key, std::string& value);

// Parses "NAME { x -> w ; y -> w }" body starting at line index i, which may
// span several lines. Returns the name and the "lhs -> rhs" entries.
struct BraceBlock {
  std::string head;
  std::vector<std::string> entries;
  int line = 0;
};
BraceBlock read_brace_block(const std::vector<Line>& lines, std::size_t& i);

long long parse_int(const std::string& s, int line);

}  // namespace lgroup
