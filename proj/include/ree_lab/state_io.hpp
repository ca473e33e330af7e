#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "ree_lab/bipartite.hpp"
#include "ree_lab/errors.hpp"

namespace ree_lab {

// Malformed state file. line/column are 1-based; 0 when the problem is
// structural rather than lexical (then `where` names the JSON path).
class StateParseError : public Error {
 public:
  StateParseError(const std::string& what, std::size_t line, std::size_t column,
                  std::string where = {})
      : Error(what), line_(line), column_(column), where_(std::move(where)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& where() const noexcept { return where_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string where_;
};

inline constexpr double kStateFileTol = 1e-8;

// State file:
//   {"dims": {"dA": 2, "dB": 2}, "matrix": [[[re, im], ...], ...], "version": "1"}
// "dims" is optional. Numbers are written with 17 significant digits, keys
// sorted, so save -> load -> save is byte-identical.
std::string serialize_state(const DensityMatrix& rho);
// Throws StateParseError for syntax/schema problems and InvalidStateError if
// the matrix is not a density matrix within kStateFileTol.
DensityMatrix parse_state(std::string_view text);

DensityMatrix load_state_file(const std::filesystem::path& path);
void save_state_file(const std::filesystem::path& path, const DensityMatrix& rho);

// Compact JSON with sorted keys and %.17g numbers; non-finite numbers are
// written as the strings "inf", "-inf", "nan".
std::string dump_canonical(const nlohmann::json& j);
std::string format_double(double x);

}  // namespace ree_lab
