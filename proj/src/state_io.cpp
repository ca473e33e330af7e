#include "ree_lab/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ree_lab {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_into(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      // nlohmann's default object type is an ordered std::map
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(k).dump();
        out += ':';
        dump_into(v, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_into(v, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void schema_error(const std::string& what, const std::string& where) {
  throw StateParseError("state file: " + what + " at " + where, 0, 0, where);
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error("expected a number", where);
  return j.get<double>();
}

}  // namespace

std::string dump_canonical(const json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

std::string serialize_state(const DensityMatrix& rho) {
  const CMatrix& m = rho.matrix();
  std::string out = "{";
  if (rho.dims()) {
    out += "\"dims\":{\"dA\":" + std::to_string(rho.dims()->dA) +
           ",\"dB\":" + std::to_string(rho.dims()->dB) + "},";
  }
  out += "\"matrix\":[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ",\n";
    out += '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += '[' + format_double(m(i, j).real()) + ',' + format_double(m(i, j).imag()) + ']';
    }
    out += ']';
  }
  out += "],\"version\":\"1\"}\n";
  return out;
}

DensityMatrix parse_state(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    std::ostringstream os;
    os << "state file: syntax error at line " << line << ", column " << col << ": " << e.what();
    throw StateParseError(os.str(), line, col);
  }
  if (!doc.is_object()) schema_error("top level must be an object", "/");
  if (!doc.contains("version") || doc["version"] != "1") {
    schema_error("missing or unsupported version (expected \"1\")", "/version");
  }
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
    schema_error("missing matrix array", "/matrix");
  }
  const json& rows = doc["matrix"];
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) schema_error("matrix is empty", "/matrix");
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string row_path = "/matrix/" + std::to_string(i);
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      schema_error("row must be an array of " + std::to_string(n) + " entries", row_path);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::string path = row_path + "/" + std::to_string(j);
      const json& e = row[static_cast<std::size_t>(j)];
      if (!e.is_array() || e.size() != 2) schema_error("entry must be [re, im]", path);
      m(i, j) = Complex(number_at(e[0], path + "/0"), number_at(e[1], path + "/1"));
    }
  }
  if (!m.allFinite()) schema_error("non-finite entry", "/matrix");

  std::optional<BipartiteDims> dims;
  if (doc.contains("dims") && !doc["dims"].is_null()) {
    const json& d = doc["dims"];
    if (!d.is_object() || !d.contains("dA") || !d.contains("dB") || !d["dA"].is_number_integer() ||
        !d["dB"].is_number_integer()) {
      schema_error("dims must be {\"dA\": int, \"dB\": int}", "/dims");
    }
    dims = BipartiteDims{d["dA"].get<int>(), d["dB"].get<int>()};
    if (dims->dA < 1 || dims->dB < 1 || dims->total() != n) {
      schema_error("dims do not match the matrix dimension", "/dims");
    }
  }
  // Hermiticity is imposed by symmetrization; trace and positivity are checked.
  return DensityMatrix(HermitianMatrix(m), dims, kStateFileTol, kStateFileTol);
}

DensityMatrix load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open state file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

void save_state_file(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write state file " + path.string());
  out << serialize_state(rho);
  if (!out) throw Error("failed writing state file " + path.string());
}

}  // namespace ree_lab
