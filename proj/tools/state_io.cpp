#include "state_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace fneg::cli {

namespace {

using nlohmann::json;

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Complex entry(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ParseError(where + ": expected a number or an [re, im] pair");
}

int modes_for(std::size_t length, int power, const std::string& field) {
  for (int n = 1; n <= kDefaultMaxModes; ++n)
    if (std::pow(2.0, power * n) == static_cast<double>(length)) return n;
  throw ParseError("\"" + field + "\" has " + std::to_string(length) +
                   " entries, which is not " + (power == 1 ? "2^N" : "4^N") + " for 1 <= N <= " +
                   std::to_string(kDefaultMaxModes));
}

std::vector<std::string> labels_of(const json& doc, int n) {
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& l = doc["labels"];
    if (!l.is_array()) throw ParseError("\"labels\" must be an array of strings");
    for (const auto& x : l) {
      if (!x.is_string()) throw ParseError("\"labels\" must be an array of strings");
      labels.push_back(x.get<std::string>());
    }
    if (static_cast<int>(labels.size()) != n)
      throw ParseError("\"labels\" has " + std::to_string(labels.size()) + " entries for " +
                       std::to_string(n) + " modes");
  } else {
    for (int j = 0; j < n; ++j) labels.push_back(std::string(1, static_cast<char>('A' + j)));
  }
  return labels;
}

}  // namespace

StateFile parse_state(std::string_view text, double tolerance) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    const auto colon = what.rfind(": ");
    throw ParseError("malformed JSON at " + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     (colon == std::string::npos ? what : what.substr(colon + 2)));
  }
  if (!doc.is_object()) throw ParseError("state file must be a JSON object");

  const bool has_matrix = doc.contains("matrix");
  const bool has_pure = doc.contains("pure");
  if (has_matrix == has_pure) throw ParseError("state file needs exactly one of \"matrix\" or \"pure\"");
  const json& data = has_matrix ? doc["matrix"] : doc["pure"];
  if (!data.is_array()) throw ParseError(std::string("\"") + (has_matrix ? "matrix" : "pure") + "\" must be an array");

  const int n = modes_for(data.size(), has_matrix ? 2 : 1, has_matrix ? "matrix" : "pure");
  if (doc.contains("num_modes")) {
    if (!doc["num_modes"].is_number_integer()) throw ParseError("\"num_modes\" must be an integer");
    if (doc["num_modes"].get<int>() != n)
      throw ParseError("\"num_modes\" is " + std::to_string(doc["num_modes"].get<int>()) +
                       " but the data describes " + std::to_string(n) + " modes");
  } else if (has_matrix) {
    throw ParseError("\"num_modes\" is required with \"matrix\"");
  }
  const ModeLayout layout(labels_of(doc, n));
  const auto d = static_cast<Eigen::Index>(layout.dimension());

  if (has_pure) {
    Vector psi(d);
    for (Eigen::Index i = 0; i < d; ++i)
      psi(i) = entry(data[static_cast<std::size_t>(i)], "pure[" + std::to_string(i) + "]");
    if (std::abs(psi.norm() - 1.0) > tolerance)
      throw ValidationError("pure state is not normalised: norm " + std::to_string(psi.norm()));
    return {FockOperator::from_pure(layout, psi), true};
  }

  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto k = static_cast<std::size_t>(r * d + c);
      m(r, c) = entry(data[k], "matrix[" + std::to_string(k) + "]");
    }
  FockOperator rho(layout, m);
  std::ostringstream msg;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tolerance) {
    msg << "matrix is not Hermitian";
  } else if (std::abs(m.trace() - Complex{1.0, 0.0}) > tolerance) {
    msg << "matrix trace is " << m.trace().real() << ", expected 1";
  } else if (rho.min_eigenvalue() < -tolerance) {
    msg << "matrix has negative eigenvalue " << rho.min_eigenvalue();
  }
  if (!msg.str().empty()) throw ValidationError(msg.str());
  return {rho, false};
}

StateFile load_state(const std::string& path, double tolerance) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read state file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str(), tolerance);
}

}  // namespace fneg::cli
