#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno {

// A rectangular table of finite real values plus provenance, the unit of all
// file output. Rendering is deterministic byte-for-byte for identical content.
struct result_table {
  std::string name;                  // file stem, e.g. "twolevel"
  std::vector<std::string> columns;  // header row
  std::vector<std::vector<double>> rows;
  // Emitted as leading "# key: value" comment lines, in the given order.
  std::vector<std::pair<std::string, std::string>> provenance;
};

// Scientific notation with 15 significant digits; locale-independent as long
// as LC_NUMERIC stays "C" (the CLI pins it; the library never changes it).
inline std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.14e", v);
  return buf;
}

// FNV-1a 64-bit hash; used to stamp a config fingerprint into provenance.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Renders the table as CSV text: '#' provenance comments, a header row, then
// one line per row in %.14e. Non-finite values and ragged rows are refused —
// nothing is ever written silently wrong.
inline std::string render_csv(const result_table& t) {
  std::string out;
  for (const auto& [k, v] : t.provenance)
    out += "# " + k + ": " + v + "\n";
  for (size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ",";
    out += t.columns[c];
  }
  out += "\n";
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    if (row.size() != t.columns.size())
      throw io_error("render_csv: row " + std::to_string(r) +
                     " of '" + t.name + "' has wrong width");
    for (size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c]))
        throw io_error("render_csv: non-finite value in table '" + t.name +
                       "' row " + std::to_string(r) + " column " + t.columns[c]);
      if (c) out += ",";
      out += format_sci(row[c]);
    }
    out += "\n";
  }
  return out;
}

// Writes the rendered CSV; io_error if the path cannot be written.
inline void emit_csv(const result_table& t, const std::filesystem::path& path) {
  const std::string body = render_csv(t);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw io_error("emit_csv: cannot open '" + path.string() + "' for writing");
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  f.flush();
  if (!f) throw io_error("emit_csv: write failed for '" + path.string() + "'");
}

}  // namespace zeno
