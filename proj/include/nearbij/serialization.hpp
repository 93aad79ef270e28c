#pragma once

// JSON forms. A map serializes as its canonical tail plus the sorted
// exception table; profiles, classes and certificates reuse that form. Field
// order is fixed so identical inputs always print identical bytes.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "constructions.hpp"
#include "finite_oracle.hpp"
#include "group.hpp"
#include "self_map.hpp"

namespace nearbij {

using json = nlohmann::ordered_json;

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- writing ---------------------------------------------------------------

inline json to_json(const tail_spec& t) {
  json j;
  if (t.is_periodic()) {
    j["kind"] = "periodic";
    j["period"] = t.period;
    j["offsets"] = t.offsets;
  } else {
    j["kind"] = "constant";
    j["value"] = t.value;
  }
  return j;
}

inline json to_json(const self_map& f) {
  json j;
  j["tail"] = to_json(f.tail);
  json exc = json::array();
  for (const auto& [k, v] : f.exceptions) exc.push_back(json::array({k, v}));
  j["exceptions"] = std::move(exc);
  return j;
}

inline json to_json(const infinite_witness& w) {
  json j;
  j["modulus"] = w.modulus;
  j["residues"] = w.residues;
  j["note"] = w.note;
  return j;
}

inline json to_json(const finiteness_result& r) {
  json j;
  if (r.is_finite()) {
    j["kind"] = "finite";
    j["elements"] = r.elements();
  } else {
    j["kind"] = "infinite";
    j["witness"] = to_json(r.witness());
  }
  return j;
}

inline json to_json(const map_profile& p) {
  json j;
  j["monoset_complement"] =
      p.monoset_complement.is_finite() ? json(p.monoset_complement.elements())
                                       : json("infinite");
  j["range_complement"] = p.range_complement.is_finite()
                              ? json(p.range_complement.elements())
                              : json("infinite");
  if (p.monoset_complement.is_finite())
    j["image_of_monoset_complement"] = p.image_of_monoset_complement;
  j["index"] = p.index ? json(*p.index) : json(nullptr);
  return j;
}

inline json to_json(const classification& c) {
  json j;
  j["near_injective"] = c.near_injective;
  j["near_surjective"] = c.near_surjective;
  j["near_bijective"] = c.near_bijective;
  j["injective"] = c.injective;
  j["surjective"] = c.surjective;
  return j;
}

inline json to_json(const class_rep& c) {
  json j = to_json(c.representative);
  j["index"] = c.class_index;
  return j;
}

inline json to_json(const synthesis_certificate& cert) {
  json j;
  j["f"] = to_json(cert.f);
  j["g"] = to_json(cert.g);
  j["lambda"] = to_json(cert.lambda);
  j["rho"] = to_json(cert.rho);
  j["residual_lambda"] = cert.residual_lambda;
  j["residual_rho"] = cert.residual_rho;
  json checks = json::array();
  for (const named_check& c : cert.checks) {
    json one;
    one["name"] = c.name;
    one["passed"] = c.passed;
    checks.push_back(std::move(one));
  }
  j["checks"] = std::move(checks);
  return j;
}

inline json to_json(const finite_self_map& m) {
  json j;
  j["n"] = m.size;
  j["table"] = m.table;
  return j;
}

// --- reading ---------------------------------------------------------------

namespace detail {

inline const json& require_field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw parse_error(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

inline nat require_nat(const json& j, const char* what) {
  if (!j.is_number_unsigned())
    throw parse_error(std::string(what) + " must be a nonnegative integer");
  return j.get<nat>();
}

}  // namespace detail

inline tail_spec tail_from_json(const json& j) {
  const json& kind = detail::require_field(j, "kind");
  if (kind == "periodic") {
    const nat period = detail::require_nat(detail::require_field(j, "period"), "period");
    const json& offs = detail::require_field(j, "offsets");
    if (!offs.is_array()) throw parse_error("offsets must be an array");
    std::vector<std::int64_t> offsets;
    for (const json& o : offs) {
      if (!o.is_number_integer()) throw parse_error("offsets must be integers");
      offsets.push_back(o.get<std::int64_t>());
    }
    if (period == 0 || offsets.size() != period)
      throw parse_error("periodic tail requires period >= 1 and one offset per residue");
    return tail_spec::periodic(period, std::move(offsets));
  }
  if (kind == "constant")
    return tail_spec::constant(
        detail::require_nat(detail::require_field(j, "value"), "value"));
  throw parse_error("tail kind must be \"periodic\" or \"constant\"");
}

/// Parses and canonicalizes; rejects duplicate keys and non-total maps.
inline self_map self_map_from_json(const json& j) {
  self_map f;
  f.tail = tail_from_json(detail::require_field(j, "tail"));
  const json& exc = detail::require_field(j, "exceptions");
  if (!exc.is_array()) throw parse_error("exceptions must be an array of [key, value] pairs");
  for (const json& e : exc) {
    if (!e.is_array() || e.size() != 2)
      throw parse_error("each exception must be a [key, value] pair");
    f.exceptions.emplace_back(detail::require_nat(e.at(0), "exception key"),
                              detail::require_nat(e.at(1), "exception value"));
  }
  try {
    return canonicalize(f);
  } catch (const totality_error& err) {
    throw parse_error(std::string("map is not total: ") + err.what());
  } catch (const std::invalid_argument& err) {
    throw parse_error(err.what());
  }
}

inline finite_self_map finite_map_from_json(const json& j) {
  finite_self_map m;
  m.size = detail::require_nat(detail::require_field(j, "n"), "n");
  const json& table = detail::require_field(j, "table");
  if (!table.is_array()) throw parse_error("table must be an array");
  for (const json& v : table) m.table.push_back(detail::require_nat(v, "table entry"));
  try {
    validate(m);
  } catch (const std::invalid_argument& err) {
    throw parse_error(err.what());
  }
  return m;
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw parse_error(std::string("invalid JSON: ") + err.what());
  }
}

inline self_map parse_self_map(const std::string& text) {
  return self_map_from_json(parse_json_text(text));
}

inline finite_self_map parse_finite_map(const std::string& text) {
  return finite_map_from_json(parse_json_text(text));
}

inline std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace nearbij
