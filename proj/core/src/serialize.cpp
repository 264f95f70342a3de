#include "moyal/serialize.hpp"

#include "moyal/error.hpp"

namespace moyal {
namespace {

using nlohmann::json;

json split_matrix(const CMatrix& m, bool imaginary) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(imaginary ? m(r, c).imag() : m(r, c).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw FormatError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

CMatrix join_matrix(const json& re, const json& im, Eigen::Index rows) {
  if (!re.is_array() || !im.is_array() || static_cast<Eigen::Index>(re.size()) != rows ||
      static_cast<Eigen::Index>(im.size()) != rows)
    throw FormatError("matrix payload must have one row per index");
  CMatrix m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& rr = re[static_cast<std::size_t>(r)];
    const json& ri = im[static_cast<std::size_t>(r)];
    if (!rr.is_array() || !ri.is_array() || static_cast<Eigen::Index>(rr.size()) != rows ||
        static_cast<Eigen::Index>(ri.size()) != rows)
      throw FormatError("matrix payload must be square");
    for (Eigen::Index c = 0; c < rows; ++c) {
      const json& a = rr[static_cast<std::size_t>(c)];
      const json& b = ri[static_cast<std::size_t>(c)];
      if (!a.is_number() || !b.is_number()) throw FormatError("matrix entries must be numbers");
      m(r, c) = Complex{a.get<double>(), b.get<double>()};
    }
  }
  return m;
}

template <typename F>
auto rethrow_as_format(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

json to_json(const AlgebraElement& a) {
  json j = {{"theta", a.theta()},
            {"truncation", a.truncation()},
            {"re", split_matrix(a.coeffs(), false)},
            {"im", split_matrix(a.coeffs(), true)}};
  if (!a.bounded()) j["support"] = "unbounded";
  return j;
}

AlgebraElement element_from_json(const json& j) {
  return rethrow_as_format([&] {
    const json& n = field(j, "truncation");
    if (!n.is_number_integer() || n.get<long>() < 1)
      throw FormatError("truncation must be a positive integer");
    const Eigen::Index rows = n.get<long>();
    CMatrix m = join_matrix(field(j, "re"), field(j, "im"), rows);
    Support support = Support::bounded;
    if (j.contains("support")) {
      const std::string s = j.at("support").get<std::string>();
      if (s == "unbounded")
        support = Support::unbounded;
      else if (s != "bounded")
        throw FormatError("support must be 'bounded' or 'unbounded'");
    }
    return AlgebraElement(std::move(m), number(j, "theta"), support);
  });
}

json to_json(const StateVector& s) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < s.components().size(); ++i) {
    re.push_back(s.components()(i).real());
    im.push_back(s.components()(i).imag());
  }
  return {{"theta", s.theta()}, {"label", s.label()}, {"re", re}, {"im", im},
          {"tail_mass", s.tail_mass()}};
}

StateVector state_from_json(const json& j) {
  return rethrow_as_format([&] {
    const json& re = field(j, "re");
    const json& im = field(j, "im");
    if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty())
      throw FormatError("state components must be equal-length nonempty arrays");
    CVector v(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) {
      if (!re[i].is_number() || !im[i].is_number())
        throw FormatError("state components must be numbers");
      v(static_cast<Eigen::Index>(i)) = Complex{re[i].get<double>(), im[i].get<double>()};
    }
    const double tail = j.contains("tail_mass") ? number(j, "tail_mass") : 0.0;
    const std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";
    StateKind kind = StateKind::finite;
    if (label.rfind("basis", 0) == 0)
      kind = StateKind::basis;
    else if (label.rfind("coherent", 0) == 0)
      kind = StateKind::coherent;
    else if (label.rfind("zeta", 0) == 0)
      kind = StateKind::zeta;
    else if (label.rfind("curve", 0) == 0)
      kind = StateKind::curve;
    return StateVector(std::move(v), number(j, "theta"), kind, label, tail);
  });
}

json to_json(const GridFunction& f) {
  return {{"L", f.half_width()},
          {"M", f.points()},
          {"re", split_matrix(f.samples(), false)},
          {"im", split_matrix(f.samples(), true)}};
}

GridFunction grid_function_from_json(const json& j) {
  return rethrow_as_format([&] {
    const json& m = field(j, "M");
    if (!m.is_number_integer() || m.get<long>() < 1)
      throw FormatError("M must be a positive integer");
    CMatrix s = join_matrix(field(j, "re"), field(j, "im"), m.get<long>());
    return GridFunction(std::move(s), number(j, "L"));
  });
}

}  // namespace moyal
