#include "spdmeans/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace spdmeans {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool looks_like_json(const std::string& text) {
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw ParseError("input is not valid JSON");
  }
  return j;
}

double next_double(std::istringstream& in, const char* what) {
  double v = 0.0;
  if (!(in >> v)) {
    throw ParseError(std::string("expected ") + what);
  }
  return v;
}

}  // namespace

SPDMatrix parse_matrix(const std::string& text) {
  if (looks_like_json(text)) {
    return validate_spd(matrix_from_json(parse_json(text)));
  }
  std::istringstream in(text);
  long rows = 0;
  if (!(in >> rows) || rows < 1) {
    throw ParseError("matrix text must start with a positive dimension");
  }
  if (rows > kMaxDim) {
    throw DimensionOutOfRange("dimension " + std::to_string(rows) +
                              " exceeds cap " + std::to_string(kMaxDim));
  }
  Eigen::MatrixXd m(rows, rows);
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < rows; ++c) {
      m(r, c) = next_double(in, "matrix entry");
    }
  }
  double trailing = 0.0;
  if (in >> trailing) {
    throw ParseError("trailing data after matrix entries");
  }
  return validate_spd(m);
}

SPDMatrix load_matrix(const std::string& path) {
  return parse_matrix(read_file(path));
}

std::string write_matrix_text(const SPDMatrix& m) {
  std::ostringstream out;
  out << m.dim() << "\n";
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = 0; c < m.dim(); ++c) {
      if (c > 0) out << ' ';
      out << format_double(m.mat()(r, c));
    }
    out << "\n";
  }
  return out.str();
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    data.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("data")) {
    throw ParseError("matrix JSON needs \"rows\" and \"data\"");
  }
  const long rows = j.at("rows").get<long>();
  if (rows < 1 || rows > kMaxDim) {
    throw DimensionOutOfRange("dimension " + std::to_string(rows) +
                              " outside [1, " + std::to_string(kMaxDim) + "]");
  }
  const json& data = j.at("data");
  if (!data.is_array() || static_cast<long>(data.size()) != rows) {
    throw ParseError("matrix JSON data has wrong row count");
  }
  Eigen::MatrixXd m(rows, rows);
  for (long r = 0; r < rows; ++r) {
    const json& row = data.at(r);
    if (!row.is_array() || static_cast<long>(row.size()) != rows) {
      throw ParseError("matrix JSON row " + std::to_string(r + 1) +
                       " has wrong length");
    }
    for (long c = 0; c < rows; ++c) m(r, c) = row.at(c).get<double>();
  }
  return m;
}

PositiveTuple parse_tuple(const std::string& text) {
  if (looks_like_json(text)) {
    const json j = parse_json(text);
    if (!j.contains("values") || !j.at("values").is_array()) {
      throw ParseError("tuple JSON needs a \"values\" array");
    }
    return PositiveTuple(j.at("values").get<std::vector<double>>());
  }
  std::istringstream in(text);
  std::vector<double> values;
  double v = 0.0;
  while (in >> v) values.push_back(v);
  if (!in.eof()) {
    throw ParseError("tuple text contains a non-numeric token");
  }
  if (values.empty()) {
    throw ParseError("tuple text is empty");
  }
  return PositiveTuple(std::move(values));
}

PositiveTuple load_tuple(const std::string& path) {
  return parse_tuple(read_file(path));
}

std::string write_tuple_text(const PositiveTuple& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.values().size(); ++i) {
    if (i > 0) out << ' ';
    out << format_double(t.values()[i]);
  }
  out << "\n";
  return out.str();
}

json chain_to_json(const PinchChain& chain) {
  json steps = json::array();
  for (const PinchStep& s : chain.steps) {
    steps.push_back(json{{"i", s.i + 1},
                         {"j", s.j + 1},
                         {"t", s.t},
                         {"kind", s.kind == PinchKind::arithmetic
                                      ? "arithmetic"
                                      : "multiplicative"}});
  }
  return json{{"source", chain.source.values()},
              {"target", chain.target.values()},
              {"steps", std::move(steps)}};
}

PinchChain chain_from_json(const json& j) {
  if (!j.contains("source") || !j.contains("target") || !j.contains("steps")) {
    throw ParseError("chain JSON needs \"source\", \"target\" and \"steps\"");
  }
  PinchChain chain{{},
                   PositiveTuple(j.at("source").get<std::vector<double>>()),
                   PositiveTuple(j.at("target").get<std::vector<double>>()),
                   false};
  for (const json& s : j.at("steps")) {
    const std::string kind = s.at("kind").get<std::string>();
    if (kind != "arithmetic" && kind != "multiplicative") {
      throw ParseError("unknown pinch kind \"" + kind + "\"");
    }
    chain.steps.push_back({s.at("i").get<int>() - 1, s.at("j").get<int>() - 1,
                           s.at("t").get<double>(),
                           kind == "arithmetic" ? PinchKind::arithmetic
                                                : PinchKind::multiplicative});
  }
  return chain;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open file: " + path);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace spdmeans
