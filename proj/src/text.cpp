#include "lgroup/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "lgroup/words.hpp"

namespace lgroup {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({no, t});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Line> read_lines_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_lines(in);
}

bool key_value(const std::string& s, std::string& key, std::string& value) {
  auto eq = s.find('=');
  if (eq == std::string::npos) return false;
  key = trim(s.substr(0, eq));
  value = trim(s.substr(eq + 1));
  return true;
}

BraceBlock read_brace_block(const std::vector<Line>& lines, std::size_t& i) {
  BraceBlock b;
  b.line = lines[i].no;
  std::string text = lines[i].text;
  auto open = text.find('{');
  if (open == std::string::npos) throw ParseError(b.line, "expected '{'");
  b.head = trim(text.substr(0, open));
  std::string body = text.substr(open + 1);
  while (body.find('}') == std::string::npos) {
    ++i;
    if (i >= lines.size()) throw ParseError(b.line, "unterminated '{'");
    body += " ; " + lines[i].text;
  }
  auto close = body.find('}');
  if (!trim(body.substr(close + 1)).empty()) throw ParseError(lines[i].no, "text after '}'");
  body = body.substr(0, close);
  for (auto& e : split(body, ';'))
    if (!e.empty()) b.entries.push_back(e);
  ++i;
  return b;
}

long long parse_int(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw ParseError(line, "bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "bad integer '" + s + "'");
  }
}

}  // namespace lgroup
