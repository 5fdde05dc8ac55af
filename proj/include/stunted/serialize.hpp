#pragma once

// JSON forms of reports and certificates. Rationals are written as exact
// "p/q" strings; floats appear only as derived display values.

#include <json.hpp>

#include "stunted/explorer.hpp"
#include "stunted/kneading.hpp"
#include "stunted/orbits.hpp"
#include "stunted/plmap.hpp"
#include "stunted/renorm.hpp"
#include "stunted/sawtooth.hpp"

namespace stunted {

using Json = nlohmann::json;

Json to_json(const Rat& x);
Json to_json(const Ivl& x);
Json to_json(const std::vector<Rat>& xs);
Json to_json(const PiecewiseLinearMap& f);
Json to_json(const StuntedSawtoothMap& m);
Json to_json(const PeriodicOrbit& o);
Json to_json(const PeriodSetReport& r);
Json to_json(const EntropyEstimate& e);
Json to_json(const HomoclinicWitness& w);
Json to_json(const HomoclinicSearch& s);
Json to_json(const KneadingData& k);
Json to_json(const RenormWindow& w);
Json to_json(const RenormCheck& c);
Json to_json(const GapFixedPoint& g);
Json to_json(const RenormTower& t);
Json to_json(const SemiconjugacyReport& r);
Json to_json(const Budgets& b);
Json to_json(const ClassificationRecord& r);
Json to_json(const BisectResult& r);
Json to_json(const Theorem1Report& r);

}  // namespace stunted
