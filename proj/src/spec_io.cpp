#include "ntorus/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "ntorus/error.hpp"

namespace ntorus {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, field + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + key, "missing field");
  return *it;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(path + key, "unknown field");
}

long as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<long>();
}

double as_real(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "expected a finite number");
  return x;
}

Eigen::VectorXd real_vector(const json& v, int size, const std::string& field) {
  if (!v.is_array() || static_cast<int>(v.size()) != size)
    fail(field, "expected an array of " + std::to_string(size) + " numbers");
  Eigen::VectorXd out(size);
  for (int i = 0; i < size; ++i) out[i] = as_real(v[i], field + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<std::vector<long>> integer_matrix(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) fail(field, "expected a non-empty array of integer rows");
  std::vector<std::vector<long>> rows;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const std::string row_field = field + "[" + std::to_string(j) + "]";
    if (!v[j].is_array() || v[j].empty()) fail(row_field, "expected a non-empty array of integers");
    if (j > 0 && v[j].size() != v[0].size()) fail(row_field, "row length differs from the first row");
    std::vector<long> row;
    for (std::size_t i = 0; i < v[j].size(); ++i)
      row.push_back(as_integer(v[j][i], row_field + "[" + std::to_string(i) + "]"));
    rows.push_back(std::move(row));
  }
  return rows;
}

FourierImmersion place(const FourierImmersion& imm, const json& doc) {
  double scale = 1.0;
  Eigen::VectorXd translate = Eigen::VectorXd::Zero(imm.q());
  if (doc.contains("scale")) {
    scale = as_real(doc["scale"], "scale");
    if (scale <= 0.0) fail("scale", "must be positive");
  }
  if (doc.contains("translate")) translate = real_vector(doc["translate"], imm.q(), "translate");
  if (scale == 1.0 && translate.isZero(0.0)) return imm;
  return transform(imm, Eigen::MatrixXd::Identity(imm.q(), imm.q()), translate, scale);
}

ImmersionSpec parse_fourier(const json& doc) {
  reject_unknown(doc, {"type", "n", "q", "scale", "translate", "terms"}, "");
  const long n = as_integer(require(doc, "n", ""), "n");
  const long q = as_integer(require(doc, "q", ""), "q");
  if (n < 1) fail("n", "must be at least 1");
  if (q <= n) fail("q", "must exceed n");
  const json& terms = require(doc, "terms", "");
  if (!terms.is_array()) fail("terms", "expected an array");
  std::vector<FourierTerm> out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string path = "terms[" + std::to_string(t) + "].";
    const json& term = terms[t];
    if (!term.is_object()) fail("terms[" + std::to_string(t) + "]", "expected an object");
    reject_unknown(term, {"k", "a", "b"}, path);
    const json& k = require(term, "k", path);
    if (!k.is_array() || static_cast<long>(k.size()) != n) fail(path + "k", "expected an array of " + std::to_string(n) + " integers");
    FourierTerm ft;
    for (long i = 0; i < n; ++i) ft.k.push_back(static_cast<int>(as_integer(k[i], path + "k[" + std::to_string(i) + "]")));
    ft.a = real_vector(require(term, "a", path), static_cast<int>(q), path + "a");
    ft.b = real_vector(require(term, "b", path), static_cast<int>(q), path + "b");
    out.push_back(std::move(ft));
  }
  double scale = 1.0;
  Eigen::VectorXd translate = Eigen::VectorXd::Zero(q);
  if (doc.contains("scale")) {
    scale = as_real(doc["scale"], "scale");
    if (scale <= 0.0) fail("scale", "must be positive");
  }
  if (doc.contains("translate")) translate = real_vector(doc["translate"], static_cast<int>(q), "translate");
  return {"fourier", FourierImmersion(Signature(static_cast<int>(n), static_cast<int>(q)), std::move(out), scale, translate), {}};
}

json rational_json(const std::optional<Rational>& r) { return r ? json(to_fraction(*r)) : json(nullptr); }

json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return json(static_cast<long long>(v));
  return json(v.str());
}

}  // namespace

ImmersionSpec parse_immersion_json(const json& doc) {
  if (!doc.is_object()) fail("(root)", "expected an object");
  const json& type = require(doc, "type", "");
  if (!type.is_string()) fail("type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "fourier") return parse_fourier(doc);
  if (t == "clifford") {
    reject_unknown(doc, {"type", "m", "scale", "translate"}, "");
    const long m = as_integer(require(doc, "m", ""), "m");
    if (m < 1) fail("m", "must be at least 1");
    return {t, place(clifford(static_cast<int>(m)), doc), {}};
  }
  if (t == "gromov") {
    reject_unknown(doc, {"type", "B", "scale", "translate"}, "");
    FrameMatrix B(integer_matrix(require(doc, "B", ""), "B"));
    try {
      const FourierImmersion imm = subtorus_immersion(B);
      return {t, place(imm, doc), B};
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::RankDeficient) fail("B", e.what());
      throw;
    }
  }
  fail("type", "unknown immersion type '" + t + "'");
}

ImmersionSpec parse_immersion_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("(document): ") + e.what());
  }
  return parse_immersion_json(doc);
}

ImmersionSpec load_immersion_spec(const std::string& path) { return parse_immersion_spec(read_text_file(path)); }

json immersion_to_json(const FourierImmersion& imm) {
  json terms = json::array();
  for (const auto& t : imm.terms()) {
    terms.push_back({{"k", t.k},
                     {"a", std::vector<double>(t.a.data(), t.a.data() + t.a.size())},
                     {"b", std::vector<double>(t.b.data(), t.b.data() + t.b.size())}});
  }
  const Eigen::VectorXd& c = imm.translate();
  return {{"type", "fourier"},
          {"n", imm.n()},
          {"q", imm.q()},
          {"scale", imm.scale()},
          {"translate", std::vector<double>(c.data(), c.data() + c.size())},
          {"terms", terms}};
}

json subtorus_spec_json(const FrameMatrix& B) { return {{"type", "gromov"}, {"B", B.data()}}; }

FrameMatrix parse_frame_matrix(std::string_view text) {
  std::vector<std::vector<long>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<long> row;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) fail("line " + std::to_string(line_no), "'" + token + "' is not an integer");
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      fail("line " + std::to_string(line_no), "expected " + std::to_string(rows.front().size()) + " entries");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail("matrix", "no rows");
  return FrameMatrix(std::move(rows));
}

FrameMatrix load_frame_matrix(const std::string& path) { return parse_frame_matrix(read_text_file(path)); }

json to_json(const DesignReport& r) {
  json gram = json::array();
  for (const auto& row : r.gram) {
    json out = json::array();
    for (const auto& v : row) out.push_back(integer_json(v));
    gram.push_back(out);
  }
  json weights = json::array();
  for (const auto& w : r.row_weights) weights.push_back(to_fraction(w));
  return {{"m", r.m},
          {"n", r.n},
          {"gram", gram},
          {"constant", r.is_constant_curvature},
          {"c", rational_json(r.c)},
          {"K2", rational_json(r.K2)},
          {"K", r.is_constant_curvature ? json(r.K) : json(nullptr)},
          {"optimal", r.is_optimal},
          {"optimal_K2", to_fraction(optimal_K2(r.n))},
          {"row_weights", weights}};
}

json to_json(const CheckReport& r) {
  json diagnostics = json::object();
  for (const auto& [k, v] : r.diagnostics) diagnostics[k] = v;
  json witness = nullptr;
  if (r.witness) {
    json values = json::object();
    for (const auto& [k, v] : r.witness->values) values[k] = v;
    const Eigen::VectorXd& th = r.witness->theta;
    witness = {{"theta", std::vector<double>(th.data(), th.data() + th.size())}, {"values", values}};
  }
  return {{"name", r.name},
          {"kind", std::string(to_string(r.kind))},
          {"status", std::string(to_string(r.status))},
          {"pass", r.pass},
          {"margin", r.margin ? json(*r.margin) : json(nullptr)},
          {"tolerance", r.tolerance},
          {"reason", r.reason},
          {"witness", witness},
          {"diagnostics", diagnostics}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ntorus
