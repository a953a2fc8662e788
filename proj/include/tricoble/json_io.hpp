#pragma once

// JSON configuration and report formats, schema "tricoble/1". Every integer
// is written as a decimal string; readers accept strings or JSON integers.
// Objects use nlohmann::json's ordered std::map, so keys come out sorted and
// reports are byte-for-byte deterministic.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tricoble/bertini.hpp"
#include "tricoble/construct.hpp"
#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/picard.hpp"
#include "tricoble/projgeom.hpp"

namespace tricoble {

using json = nlohmann::json;

inline constexpr const char* kSchema = "tricoble/1";

/// The input document does not follow the schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

struct ConfigFile {
  TangencyConfig<Rational> config;
  std::optional<IntVector> cubic;
  std::optional<std::uint64_t> prime;
};

namespace io {

inline Integer parse_integer(const json& j, const std::string& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    bool ok = s.size() > start;
    for (std::size_t i = start; i < s.size() && ok; ++i) ok = s[i] >= '0' && s[i] <= '9';
    if (ok) return integer_from_string(s[0] == '+' ? s.substr(1) : s);
  }
  throw SchemaError(field + ": expected an integer or a decimal integer string");
}

inline IntVector parse_vector(const json& j, std::size_t len, const std::string& field) {
  if (!j.is_array() || j.size() != len)
    throw SchemaError(field + ": expected an array of " + std::to_string(len) + " integers");
  IntVector v;
  for (std::size_t i = 0; i < len; ++i) v.push_back(parse_integer(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

inline json integer(const Integer& x) { return x.get_str(); }

inline json rational(const Rational& x) { return x.get_str(); }

inline json vector(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer(x));
  return a;
}

template <class K>
json coords(const Vec<K>& v) {
  json a = json::array();
  for (const auto& x : v) {
    if constexpr (std::is_same_v<K, Rational>) {
      a.push_back(rational(x));
    } else {
      a.push_back(std::to_string(x.value()));
    }
  }
  return a;
}

template <class K>
json point(const ProjPoint<K>& p) {
  return coords(p.coords());
}

inline json matrix(const Matrix<Integer>& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector(m.row(i)));
  return a;
}

inline json polynomial(const IntPolynomial& p) { return vector(p.coeffs()); }

inline json interval(const RationalInterval& iv, unsigned digits = 12) {
  return {{"lo", rational(iv.lo)}, {"hi", rational(iv.hi)}, {"display", to_decimal(iv.lo, digits)}};
}

}  // namespace io

inline ConfigFile parse_config(const json& j) {
  if (!j.is_object()) throw SchemaError("config: expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    if (k != "schema" && k != "quadrics" && k != "points" && k != "cubic" && k != "prime" && k != "description")
      throw SchemaError("config: unknown field '" + k + "'");
  }
  if (j.contains("schema") && j["schema"] != kSchema) throw SchemaError(std::string("schema: expected \"") + kSchema + "\"");
  ConfigFile cf;
  if (!j.contains("quadrics")) throw SchemaError("quadrics: missing");
  const auto& q = j["quadrics"];
  if (!q.is_array() || q.size() != 3) throw SchemaError("quadrics: expected an array of three quadrics");
  for (std::size_t i = 0; i < 3; ++i) {
    const auto v = io::parse_vector(q[i], 10, "quadrics[" + std::to_string(i) + "]");
    cf.config.quadrics[i] = HomogeneousForm<Rational>::from_coefficients(4, 2, Vec<Rational>(v.begin(), v.end()));
  }
  if (!j.contains("points")) throw SchemaError("points: missing");
  const auto& p = j["points"];
  if (!p.is_object()) throw SchemaError("points: expected an object keyed by p1, p2, q1, q2, r1, r2");
  for (auto it = p.begin(); it != p.end(); ++it) {
    bool known = false;
    for (const char* l : kPointLabels) known = known || it.key() == l;
    if (!known) throw SchemaError("points: unknown label '" + it.key() + "'");
  }
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string label = kPointLabels[i];
    if (!p.contains(label)) throw SchemaError("points." + label + ": missing");
    const auto v = io::parse_vector(p[label], 4, "points." + label);
    if (is_zero_vector(v)) throw SchemaError("points." + label + ": the zero vector is not a point");
    cf.config.points[i] = ProjPoint<Rational>(Vec<Rational>(v.begin(), v.end()));
  }
  if (j.contains("cubic")) cf.cubic = io::parse_vector(j["cubic"], 20, "cubic");
  if (j.contains("prime")) {
    const Integer pr = io::parse_integer(j["prime"], "prime");
    if (sgn(pr) <= 0 || !pr.fits_ulong_p()) throw SchemaError("prime: out of range");
    cf.prime = pr.get_ui();
  }
  return cf;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline ConfigFile load_config(const std::string& path) { return parse_config(read_json_file(path)); }

inline json config_to_json(const ConfigFile& cf) {
  json j;
  j["schema"] = kSchema;
  json q = json::array();
  for (const auto& f : cf.config.quadrics) q.push_back(io::coords(f.coefficients()));
  j["quadrics"] = q;
  for (std::size_t i = 0; i < 6; ++i) j["points"][kPointLabels[i]] = io::point(cf.config.points[i]);
  if (cf.cubic) j["cubic"] = io::vector(*cf.cubic);
  if (cf.prime) j["prime"] = std::to_string(*cf.prime);
  return j;
}

inline json to_json(const CertReport& r) {
  json j;
  json conds = json::array();
  for (const auto& c : r.conditions) {
    json items = json::array();
    for (const auto& it : c.items) items.push_back({{"subject", it.subject}, {"pass", it.pass}, {"witness", it.witness}});
    conds.push_back({{"index", c.index}, {"title", c.title}, {"pass", c.pass}, {"checks", items}});
  }
  j["conditions"] = conds;
  json qs = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& q = r.quadrics[i];
    qs.push_back({{"quadric", "Q" + std::to_string(i + 1)},
                  {"simple_coble", q.simple},
                  {"singular_degree", std::to_string(q.degree)},
                  {"coordinate_change", std::to_string(q.chart_attempt)},
                  {"detail", q.detail}});
  }
  j["quadrics"] = qs;
  j["tri_coble"] = r.tri_coble;
  j["simple_tri_coble"] = r.simple_tri_coble;
  return j;
}

inline json to_json(const DynamicalDegree& d, unsigned digits = 12) {
  json j{{"charpoly", io::polynomial(d.charpoly)}, {"lambda1", io::interval(d.interval, digits)}};
  if (d.exact) j["lambda1"]["exact"] = d.exact->to_string();
  return j;
}

inline json to_json(const OrbitRecord& r) {
  json pts = json::array(), hs = json::array(), ratios = json::array();
  for (const auto& p : r.points) pts.push_back(io::point(p));
  for (const auto& h : r.heights) hs.push_back(io::integer(h));
  for (double x : r.log_height_ratios) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    os << x;
    ratios.push_back(os.str());
  }
  json j{{"seed", io::point(r.seed)}, {"points", pts},          {"heights", hs},
         {"log_height_ratios", ratios}, {"truncated", r.truncated}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline json to_json(const FixingExponent& f) {
  json lens = json::array();
  for (auto l : f.cycle_lengths) lens.push_back(std::to_string(l));
  return {{"m", io::integer(f.m)}, {"cycle_lengths", lens}};
}

/// Canonical text of a report: sorted keys, two-space indent, newline.
inline std::string emit(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tricoble
