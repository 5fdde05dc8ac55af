#include "stunted/serialize.hpp"

namespace stunted {

Json to_json(const Rat& x) { return x.str(); }

Json to_json(const Ivl& x) { return Json::array({x.lo().str(), x.hi().str()}); }

Json to_json(const std::vector<Rat>& xs) {
  Json a = Json::array();
  for (const Rat& x : xs) a.push_back(x.str());
  return a;
}

Json to_json(const PiecewiseLinearMap& f) {
  return {{"breakpoints", to_json(f.breakpoints())}, {"values", to_json(f.values())}};
}

Json to_json(const StuntedSawtoothMap& m) {
  Json plateaus = Json::array();
  for (const Plateau& p : m.plateaus()) {
    plateaus.push_back({{"span", to_json(p.span)},
                        {"height", p.height.str()},
                        {"turning", p.turning.str()},
                        {"kind", p.kind == PlateauKind::max ? "max" : "min"}});
  }
  return {{"shape", m.shape().str()}, {"w", to_json(m.w())}, {"plateaus", plateaus},
          {"map", to_json(m.map())}};
}

Json to_json(const PeriodicOrbit& o) {
  return {{"period", o.period}, {"points", to_json(o.points)}, {"stability", to_string(o.stability)}};
}

Json to_json(const PeriodSetReport& r) {
  Json witnesses = Json::object();
  for (const auto& [n, x] : r.witnesses) witnesses[std::to_string(n)] = x.str();
  return {{"search_bound", r.search_bound},
          {"periods", Json(std::vector<std::size_t>(r.periods.begin(), r.periods.end()))},
          {"complete_to_bound", r.complete_to_bound},
          {"checked_to", r.checked_to},
          {"witnesses", witnesses}};
}

Json to_json(const EntropyEstimate& e) {
  Json params = Json::object();
  for (const auto& [k, v] : e.parameters) params[k] = v;
  Json j = {{"method", to_string(e.method)},
            {"lower", e.lower},
            {"upper", e.upper},
            {"value", e.value},
            {"parameters", params}};
  if (e.method == EntropyMethod::markov) {
    j["exact_zero"] = e.exact_zero;
    j["matrix_dimension"] = e.matrix_dimension;
  }
  if (e.method == EntropyMethod::bowen) j["estimate_only"] = true;
  return j;
}

Json to_json(const HomoclinicWitness& w) {
  return {{"p", w.p.str()}, {"n", w.n}, {"x", w.x.str()}, {"m", w.m},
          {"manifold", to_json(w.manifold)}, {"chain", to_json(w.chain)}};
}

Json to_json(const HomoclinicSearch& s) {
  Json j = {{"found", s.witness.has_value()},
            {"budget_exhausted", s.budget_exhausted},
            {"period_bound", s.period_bound},
            {"m_budget", s.m_budget},
            {"searched_to_period", s.searched_to_period}};
  if (s.witness) j["witness"] = to_json(*s.witness);
  return j;
}

Json to_json(const KneadingData& k) {
  const auto d = static_cast<std::size_t>(k.degree());
  Json rows = Json::array();
  for (std::size_t n = 1; n <= k.depth(); ++n) {
    Json per_i = Json::array();
    for (std::size_t i = 1; i <= d; ++i) {
      Json per_j = Json::array();
      for (std::size_t j = 1; j <= d; ++j) per_j.push_back(k.sign(n, i, j));
      per_i.push_back(per_j);
    }
    rows.push_back(per_i);
  }
  return {{"shape", k.shape().str()}, {"depth", k.depth()}, {"signs", rows}};
}

Json to_json(const RenormWindow& w) {
  Json it = Json::array();
  for (const Ivl& x : w.itinerary) it.push_back(to_json(x));
  return {{"J", to_json(w.J)}, {"p", w.p}, {"trivial", w.trivial()}, {"itinerary", it}};
}

Json to_json(const RenormCheck& c) {
  if (c.window) return {{"certified", true}, {"window", to_json(*c.window)}};
  const auto& v = *c.violation;
  const char* kind = v.kind == RenormViolationKind::not_proper ? "not_proper"
                     : v.kind == RenormViolationKind::overlap  ? "overlap"
                                                               : "escape";
  Json j = {{"certified", false}, {"violation", kind}, {"message", v.message}};
  if (v.kind == RenormViolationKind::overlap) j["pair"] = {v.i, v.i2};
  if (v.image) j["image"] = to_json(*v.image);
  if (v.escape_point) j["escape_point"] = v.escape_point->str();
  return j;
}

Json to_json(const GapFixedPoint& g) {
  return {{"p", g.p.str()}, {"q", g.q.str()}, {"n", g.n}, {"manifold", to_json(g.manifold)},
          {"manifold_covers_k1", g.manifold_covers_k1}};
}

Json to_json(const RenormTower& t) {
  Json levels = Json::array();
  for (const TowerLevel& lv : t.levels) {
    Json blocks = Json::array();
    for (const Ivl& b : lv.blocks) blocks.push_back(to_json(b));
    levels.push_back({{"I", to_json(lv.I)}, {"u", lv.u}, {"blocks", blocks}});
  }
  Json j = {{"plateau", t.plateau}, {"value", t.value.str()}, {"depth", t.depth()},
            {"levels", levels}, {"stop_reason", t.stop_reason}};
  j["value_period"] = t.value_period ? Json(*t.value_period) : Json(nullptr);
  return j;
}

Json to_json(const SemiconjugacyReport& r) {
  Json blocks = Json::array();
  for (const Ivl& b : r.blocks) blocks.push_back(to_json(b));
  Json perm = Json::array();
  for (std::size_t p : r.permutation) {
    perm.push_back(p == static_cast<std::size_t>(-1) ? Json(nullptr) : Json(p));
  }
  return {{"depth", r.depth},
          {"blocks", blocks},
          {"permutation", perm},
          {"blocks_disjoint", r.blocks_disjoint},
          {"maps_into_successor", r.maps_into_successor},
          {"odometer_match", r.odometer_match},
          {"fiber_diagnostics", r.fiber_diagnostics},
          {"message", r.message}};
}

Json to_json(const Budgets& b) {
  return {{"max_period_exp", b.max_period_exp},
          {"piece_budget", b.piece_budget},
          {"tower_depth", b.tower_depth},
          {"homoclinic_m_budget", b.homoclinic_m_budget},
          {"entropy_tol", b.entropy_tol}};
}

Json to_json(const ClassificationRecord& r) {
  Json j = {{"shape", r.shape.str()},
            {"w", to_json(r.w)},
            {"verdict", to_string(r.verdict)},
            {"label", r.verdict_label()},
            {"periods", to_json(r.periods)},
            {"tower_depth", r.tower_depth},
            {"budgets", to_json(r.budgets_used)},
            {"escalated", r.escalated},
            {"note", r.note}};
  if (r.verdict == Verdict::finite) j["max_period"] = r.max_period;
  if (r.verdict == Verdict::chaotic) j["witness_kind"] = to_string(r.witness_kind);
  if (r.period_witness) {
    j["period_witness"] = {{"period", r.period_witness->first},
                           {"x", r.period_witness->second.str()}};
  }
  if (r.homoclinic) j["homoclinic"] = to_json(*r.homoclinic);
  if (r.entropy) j["entropy"] = to_json(*r.entropy);
  return j;
}

Json to_json(const BisectResult& r) {
  Json steps = Json::array();
  for (const BisectStep& s : r.steps) {
    steps.push_back({{"t", s.t.str()}, {"verdict", to_string(s.verdict)}, {"escalated", s.escalated}});
  }
  return {{"shape", r.line.shape.str()},
          {"line", {{"lo", to_json(r.line.lo)}, {"hi", to_json(r.line.hi)}}},
          {"t_bracket", {r.t_lo.str(), r.t_hi.str()}},
          {"w_left", to_json(r.line.at(r.t_lo))},
          {"w_right", to_json(r.line.at(r.t_hi))},
          {"w_width", r.w_width().str()},
          {"w_width_approx", r.w_width().to_double()},
          {"midpoint", to_json(r.midpoint())},
          {"left", to_json(r.left)},
          {"right", to_json(r.right)},
          {"steps", steps},
          {"stalled", r.stalled}};
}

Json to_json(const Theorem1Report& r) {
  auto clamps = [](const std::vector<ClampNote>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) {
      a.push_back({{"plateau", c.index}, {"requested", c.requested.str()}, {"applied", c.applied.str()}});
    }
    return a;
  };
  Json rows = Json::array();
  for (const Theorem1Row& row : r.rows) {
    rows.push_back({{"eps", row.eps.str()},
                    {"selection", row.selection.indices()},
                    {"w_chaos", to_json(row.w_chaos)},
                    {"w_order", to_json(row.w_order)},
                    {"chaos_clamps", clamps(row.chaos_clamps)},
                    {"order_clamps", clamps(row.order_clamps)},
                    {"chaos", to_json(row.chaos)},
                    {"order", to_json(row.order)},
                    {"chaos_ok", row.chaos_ok},
                    {"order_ok", row.order_ok}});
  }
  return {{"shape", r.shape.str()}, {"w", to_json(r.w)}, {"boundary", to_json(r.boundary)},
          {"omega_points", to_json(r.omega_points)}, {"rows", rows}, {"all_ok", r.all_ok()}};
}

}  // namespace stunted
