#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "tdlab/block.hpp"

namespace tdlab {

/// Sequence file format "TDSEQ 1":
///
///     TDSEQ 1
///     base <integer>
///     length <integer>
///     p/q            (one symbol per line, lowest terms)
///
/// Lines end in '\n' with no trailing whitespace. Writing then reading a
/// block is the identity.
void write_tdseq(std::ostream& out, const Block& block);
Block read_tdseq(std::istream& in);

std::string to_tdseq(const Block& block);
Block from_tdseq(const std::string& text);

void save_tdseq(const std::filesystem::path& path, const Block& block);
Block load_tdseq(const std::filesystem::path& path);

}  // namespace tdlab
