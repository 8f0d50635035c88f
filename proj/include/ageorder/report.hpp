#pragma once

// JSON and CSV renderings of verdicts, counterexamples, sign maps and
// simulation reports.

#include <ostream>

#include <json.hpp>

#include "ageorder/oracle.hpp"
#include "ageorder/orders.hpp"

namespace ageorder {

nlohmann::json to_json(const SignPattern& p);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const OrderVerdict& v);
nlohmann::json to_json(const CounterexampleReport& r);
nlohmann::json to_json(const oracle::McReport& r);
nlohmann::json to_json(const SignMap& m);

/// Columns x,a,sign with sign in {-1, 0, 1}; 0 marks an uncertain cell.
void write_csv(std::ostream& os, const SignMap& m);

/// One row per witness region: verdict,certificate,a,b,region,sign,x,value.
void write_csv(std::ostream& os, const OrderVerdict& v);

/// Columns x,empirical,analytic.
void write_csv(std::ostream& os, const oracle::McReport& r);

}  // namespace ageorder
