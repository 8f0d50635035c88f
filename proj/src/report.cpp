#include "ageorder/report.hpp"

#include <iomanip>

namespace ageorder {

using nlohmann::json;

json to_json(const SignPattern& p) {
  json regions = json::array();
  for (const SignRegion& r : p.regions) {
    json j{{"sign", to_int(r.sign)}, {"x", r.x}, {"value", r.value}};
    if (r.uncertain) j["uncertain"] = true;
    regions.push_back(std::move(j));
  }
  return regions;
}

json to_json(const Witness& w) {
  return json{{"a", w.a},
              {"b", w.b},
              {"pattern", to_json(w.pattern)},
              {"pattern_string", w.pattern.str()},
              {"certified", w.pattern.certified}};
}

json to_json(const OrderVerdict& v) {
  json j;
  j["verdict"] = to_string(v.status);
  j["certificate"] = v.certificate.empty() ? json(nullptr) : json(v.certificate);
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  j["evidence"] = v.evidence;
  if (v.suspect_a) j["suspect_a"] = {v.suspect_a->lo, v.suspect_a->hi};
  return j;
}

json to_json(const CounterexampleReport& r) {
  json attempts = json::array();
  for (const auto& [x0, b] : r.attempts) attempts.push_back({{"x0", x0}, {"b", b}});
  return json{{"a", r.a},
              {"b", r.b},
              {"strip", {r.a_low, r.a_high}},
              {"b0_used", r.b0_used},
              {"x0_seed", r.x0_seed},
              {"pattern", to_json(r.pattern)},
              {"pattern_string", r.pattern.str()},
              {"certified", r.pattern.certified},
              {"attempts", attempts},
              {"concavity_window", {r.window.lo, r.window.hi}}};
}

json to_json(const oracle::McReport& r) {
  return json{{"rates", r.rates},
              {"n_samples", r.n_samples},
              {"seed", r.seed},
              {"sup_distance", r.sup_distance},
              {"argmax_x", r.argmax_x},
              {"grid_x", r.grid_x},
              {"empirical", r.empirical},
              {"analytic", r.analytic}};
}

json to_json(const SignMap& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.a_values.size(); ++i) {
    json row = json::array();
    for (std::int8_t s : m.row(i)) row.push_back(static_cast<int>(s));
    rows.push_back(std::move(row));
  }
  return json{{"a_values", m.a_values}, {"x_values", m.x_values}, {"signs", rows}};
}

void write_csv(std::ostream& os, const SignMap& m) {
  os << std::setprecision(17);
  os << "x,a,sign\n";
  for (std::size_t i = 0; i < m.a_values.size(); ++i) {
    for (std::size_t j = 0; j < m.x_values.size(); ++j) {
      os << m.x_values[j] << ',' << m.a_values[i] << ',' << static_cast<int>(m.at(i, j)) << '\n';
    }
  }
}

void write_csv(std::ostream& os, const OrderVerdict& v) {
  os << std::setprecision(17);
  os << "verdict,certificate,a,b,region,sign,x,value\n";
  if (!v.witness) {
    os << to_string(v.status) << ',' << v.certificate << ",,,,,,\n";
    return;
  }
  const Witness& w = *v.witness;
  for (std::size_t i = 0; i < w.pattern.regions.size(); ++i) {
    const SignRegion& r = w.pattern.regions[i];
    os << to_string(v.status) << ',' << v.certificate << ',' << w.a << ',' << w.b << ',' << i << ','
       << to_int(r.sign) << ',' << r.x << ',' << r.value << '\n';
  }
}

void write_csv(std::ostream& os, const oracle::McReport& r) {
  os << std::setprecision(17);
  os << "x,empirical,analytic\n";
  for (std::size_t i = 0; i < r.grid_x.size(); ++i) {
    os << r.grid_x[i] << ',' << r.empirical[i] << ',' << r.analytic[i] << '\n';
  }
}

}  // namespace ageorder
