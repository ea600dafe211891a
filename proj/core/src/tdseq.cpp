#include "tdlab/tdseq.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tdlab/error.hpp"

namespace tdlab {

namespace {

constexpr std::string_view kMagic = "TDSEQ 1";

std::int64_t parse_header_int(const std::string& line, std::string_view key, std::size_t line_no) {
  const std::string prefix = std::string(key) + " ";
  if (line.rfind(prefix, 0) != 0) {
    throw ParseError("line " + std::to_string(line_no) + ": expected '" + prefix + "<integer>'");
  }
  const std::string_view digits = std::string_view(line).substr(prefix.size());
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty() ||
      std::to_string(value) != digits) {
    throw ParseError("line " + std::to_string(line_no) + ": malformed integer '" + std::string(digits) + "'");
  }
  return value;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  // getline cannot tell a final unterminated line apart; the stream's eof bit
  // does: reaching eof while reading means the newline was missing.
  if (in.eof()) throw ParseError("missing final newline");
  return true;
}

}  // namespace

void write_tdseq(std::ostream& out, const Block& block) {
  out << kMagic << '\n' << "base " << block.base() << '\n' << "length " << block.length() << '\n';
  for (const Symbol& s : block.symbols()) out << s.str() << '\n';
}

Block read_tdseq(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line != kMagic) throw ParseError("line 1: expected 'TDSEQ 1'");
  if (!next_line(in, line)) throw ParseError("line 2: missing base");
  const std::int64_t base = parse_header_int(line, "base", 2);
  if (!next_line(in, line)) throw ParseError("line 3: missing length");
  const std::int64_t length = parse_header_int(line, "length", 3);
  if (length < 1) throw ParseError("line 3: length must be at least 1");

  BlockBuilder builder(length);
  for (std::int64_t k = 0; k < length; ++k) {
    const std::size_t line_no = static_cast<std::size_t>(k) + 4;
    if (!next_line(in, line)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(length) +
                       " symbols, file ends after " + std::to_string(k));
    }
    try {
      builder.append(Symbol::parse(line));
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) throw ParseError("trailing content after the last symbol");
  return std::move(builder).finish(base);
}

std::string to_tdseq(const Block& block) {
  std::ostringstream out;
  write_tdseq(out, block);
  return out.str();
}

Block from_tdseq(const std::string& text) {
  std::istringstream in(text);
  return read_tdseq(in);
}

void save_tdseq(const std::filesystem::path& path, const Block& block) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_tdseq(out, block);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

Block load_tdseq(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_tdseq(in);
}

}  // namespace tdlab
