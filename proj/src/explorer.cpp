#include "stunted/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "stunted/errors.hpp"
#include "stunted/serialize.hpp"

namespace stunted {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) {
  std::size_t j = 0;
  while ((std::size_t{1} << j) < n) ++j;
  return j;
}

}  // namespace

void Budgets::validate() const {
  if (max_period_exp == 0 || piece_budget == 0 || tower_depth == 0 || homoclinic_m_budget == 0 ||
      !(entropy_tol > 0.0)) {
    throw DomainError("budgets must all be positive");
  }
  if (max_period_exp >= 32) throw DomainError("max_period_exp must be below 32");
}

Budgets Budgets::escalated() const {
  Budgets b = *this;
  b.max_period_exp *= 2;
  b.tower_depth *= 2;
  return b;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::finite: return "Finite";
    case Verdict::boundary: return "Boundary2Inf";
    case Verdict::chaotic: return "Chaotic";
    case Verdict::inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(ChaosWitness w) {
  switch (w) {
    case ChaosWitness::none: return "none";
    case ChaosWitness::period: return "period";
    case ChaosWitness::entropy: return "entropy";
    case ChaosWitness::homoclinic: return "homoclinic";
  }
  return "?";
}

std::string ClassificationRecord::verdict_label() const {
  switch (verdict) {
    case Verdict::finite: return "Finite(" + std::to_string(max_period) + ")";
    case Verdict::boundary: return "Boundary2Inf(" + std::to_string(tower_depth) + ")";
    case Verdict::chaotic: return "Chaotic(" + to_string(witness_kind) + ")";
    case Verdict::inconclusive: return "Inconclusive";
  }
  return "?";
}

ClassificationRecord classify(const StuntedSawtoothMap& m, const Budgets& b) {
  b.validate();
  const PiecewiseLinearMap& f = m.map();
  ClassificationRecord rec;
  rec.shape = m.shape();
  rec.w = m.w();
  rec.budgets_used = b;

  rec.periods = period_set(f, b.period_bound(), b.piece_budget, true);
  for (const auto& [n, x] : rec.periods.witnesses) {
    if (!power_of_two(n)) {
      rec.verdict = Verdict::chaotic;
      rec.witness_kind = ChaosWitness::period;
      rec.period_witness = std::make_pair(n, x);
      return rec;
    }
  }

  try {
    rec.entropy = entropy_markov(f);
  } catch (const BudgetExceeded& e) {
    rec.note = std::string("markov partition: ") + e.what();
  }
  if (rec.entropy && rec.entropy->lower > b.entropy_tol) {
    rec.verdict = Verdict::chaotic;
    rec.witness_kind = ChaosWitness::entropy;
    const std::size_t bound = std::min<std::size_t>(b.period_bound(), 64);
    const auto search = find_homoclinic(f, bound, b.homoclinic_m_budget, b.piece_budget);
    if (search.witness) rec.homoclinic = search.witness;
    return rec;
  }

  if (!rec.periods.complete_to_bound) {
    rec.verdict = Verdict::inconclusive;
    if (!rec.note.empty()) rec.note += "; ";
    rec.note += "period search stopped at n = " + std::to_string(rec.periods.checked_to) +
                " below " + std::to_string(b.period_bound());
    return rec;
  }
  const std::size_t top = rec.periods.periods.empty() ? 0 : *rec.periods.periods.rbegin();
  for (std::size_t p = 1; p <= top; p *= 2) {
    if (!rec.periods.periods.count(p)) {
      rec.verdict = Verdict::inconclusive;
      rec.note = "period set misses " + std::to_string(p) + " below " + std::to_string(top);
      return rec;
    }
  }
  const RenormTower tower = build_tower(m, b.tower_depth);
  rec.tower_depth = tower.depth();
  if (top < b.period_bound()) {
    if (tower.depth() > log2_exact(top)) {
      rec.verdict = Verdict::inconclusive;
      rec.note = "tower depth " + std::to_string(tower.depth()) + " exceeds the period set";
      return rec;
    }
    rec.verdict = Verdict::finite;
    rec.max_period = top;
    return rec;
  }
  if (tower.depth() >= b.tower_depth) {
    rec.verdict = Verdict::boundary;
    return rec;
  }
  rec.verdict = Verdict::inconclusive;
  rec.note = "every period 2^i up to " + std::to_string(top) + " found but the tower stops: " +
             tower.stop_reason;
  return rec;
}

ClassificationRecord classify_escalating(const StuntedSawtoothMap& m, const Budgets& budgets) {
  ClassificationRecord rec = classify(m, budgets);
  if (rec.verdict != Verdict::inconclusive) return rec;
  ClassificationRecord again = classify(m, budgets.escalated());
  again.escalated = true;
  if (again.verdict == Verdict::inconclusive) {
    again.note = rec.note + "; after escalation: " + again.note;
  }
  return again;
}

bool verify_record(const ClassificationRecord& rec) {
  const StuntedSawtoothMap m = build_stunted(rec.shape, rec.w);
  const PiecewiseLinearMap& f = m.map();
  const Budgets& b = rec.budgets_used;
  switch (rec.verdict) {
    case Verdict::chaotic: {
      bool ok = false;
      if (rec.period_witness) {
        const auto& [n, x] = *rec.period_witness;
        const auto orbit = iterate(f, x, n);
        ok = !power_of_two(n) && orbit.back() == x &&
             std::find(orbit.begin() + 1, orbit.end() - 1, x) == orbit.end() - 1;
        if (!ok) return false;
      }
      if (rec.homoclinic) {
        if (!certify_homoclinic(f, *rec.homoclinic, b.piece_budget)) return false;
        ok = true;
      }
      if (rec.witness_kind == ChaosWitness::entropy) {
        if (!rec.entropy) return false;
        const auto again = entropy_markov(f);
        if (!(again.lower > b.entropy_tol) ||
            std::abs(again.value - rec.entropy->value) > b.entropy_tol) {
          return false;
        }
        ok = true;
      }
      return ok;
    }
    case Verdict::finite:
    case Verdict::boundary: {
      const auto again = period_set(f, b.period_bound(), b.piece_budget, true);
      if (again.periods != rec.periods.periods || !again.complete_to_bound) return false;
      if (build_tower(m, b.tower_depth).depth() != rec.tower_depth) return false;
      if (rec.verdict == Verdict::finite) {
        return power_of_two(rec.max_period) && *again.periods.rbegin() == rec.max_period;
      }
      return rec.tower_depth >= b.tower_depth;
    }
    case Verdict::inconclusive: return true;
  }
  return false;
}

// ----------------------------------------------------------------- bisection --

std::vector<Rat> ParameterLine::at(const Rat& t) const {
  std::vector<Rat> w(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) w[i] = lo[i] + t * (hi[i] - lo[i]);
  return w;
}

Rat BisectResult::w_width() const {
  Rat span = 0;
  for (std::size_t i = 0; i < line.lo.size(); ++i) span = max(span, abs(line.hi[i] - line.lo[i]));
  return span * width();
}

namespace {

bool order_side(Verdict v) { return v == Verdict::finite || v == Verdict::boundary; }

}  // namespace

BisectResult bisect_boundary(const ParameterLine& line_in, const Rat& tol, const Budgets& budgets,
                             const std::function<void(const BisectStep&)>& progress) {
  if (line_in.lo.size() != line_in.hi.size() ||
      line_in.lo.size() != static_cast<std::size_t>(line_in.shape.degree())) {
    throw PreconditionError("line endpoints must have one coordinate per plateau");
  }
  if (line_in.lo == line_in.hi) throw PreconditionError("line endpoints coincide");
  if (tol.sign() <= 0) throw PreconditionError("tolerance must be positive");
  ParameterLine line = line_in;
  ClassificationRecord a = classify_escalating(build_stunted(line.shape, line.lo), budgets);
  ClassificationRecord z = classify_escalating(build_stunted(line.shape, line.hi), budgets);
  if (a.verdict == Verdict::chaotic && order_side(z.verdict)) {
    std::swap(line.lo, line.hi);
    std::swap(a, z);
  }
  if (!(order_side(a.verdict) && z.verdict == Verdict::chaotic)) {
    throw PreconditionError("endpoints classify as " + a.verdict_label() + " and " +
                            z.verdict_label() + "; need Finite and Chaotic");
  }
  BisectResult res{line, Rat(0), Rat(1), std::move(a), std::move(z), {}, {}};
  while (res.w_width() > tol) {
    const Rat t = (res.t_lo + res.t_hi) / Rat(2);
    ClassificationRecord rec = classify_escalating(build_stunted(line.shape, line.at(t)), budgets);
    BisectStep step{t, rec.verdict, rec.escalated};
    res.steps.push_back(step);
    if (progress) progress(step);
    if (rec.verdict == Verdict::chaotic) {
      res.t_hi = t;
      res.right = std::move(rec);
    } else if (order_side(rec.verdict)) {
      res.t_lo = t;
      res.left = std::move(rec);
    } else {
      res.stalled = "Inconclusive at t = " + t.str() + ": " + rec.note;
      break;
    }
  }
  return res;
}

// ------------------------------------------------------------------ theorem 1 --

bool Theorem1Report::all_ok() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const Theorem1Row& r) {
    return r.chaos_ok && r.order_ok;
  });
}

Theorem1Report theorem1_experiment(const StuntedSawtoothMap& m, const std::vector<Rat>& eps_list,
                                   const Budgets& budgets) {
  Theorem1Report rep;
  rep.shape = m.shape();
  rep.w = m.w();
  rep.boundary = classify(m, budgets);
  if (rep.boundary.verdict != Verdict::boundary) {
    throw PreconditionError("theorem1_experiment needs a Boundary2Inf map, got " +
                            rep.boundary.verdict_label());
  }
  // Accumulation points of doubling orbits at the finest tower scale.
  const RenormTower tower = build_tower(m, budgets.tower_depth);
  const std::size_t k_max = std::min<std::size_t>(budgets.tower_depth, 6);
  Rat radius = 0;
  for (const Ivl& blk : tower.levels.at(k_max - 1).blocks) radius = max(radius, blk.length());
  rep.omega_points = omega_accumulation(m.map(), 0, k_max, radius, budgets.piece_budget);
  for (const Rat& eps : eps_list) {
    Theorem1Row row;
    row.eps = eps;
    row.selection = select_lambda_plateaus(m, rep.omega_points, radius);
    auto chaos = perturb_toward_chaos(m, eps, row.selection);
    auto order = perturb_toward_order(m, eps);
    row.w_chaos = chaos.map.w();
    row.w_order = order.map.w();
    row.chaos_clamps = chaos.clamps;
    row.order_clamps = order.clamps;
    row.chaos = classify(chaos.map, budgets);
    row.order = classify(order.map, budgets);
    row.chaos_ok = row.chaos.verdict == Verdict::chaotic;
    row.order_ok = row.order.verdict == Verdict::finite;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------- scans --

ScanConfig ScanConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("scan config is not valid JSON: ") + e.what());
  }
  auto rat = [](const nlohmann::json& v) {
    return v.is_string() ? Rat::parse(v.get<std::string>()) : Rat::parse(v.dump());
  };
  auto rats = [&](const nlohmann::json& v) {
    std::vector<Rat> out;
    if (v.is_array()) {
      for (const auto& x : v) out.push_back(rat(x));
    } else {
      out.push_back(rat(v));
    }
    return out;
  };
  try {
    ScanConfig c;
    c.shape = Shape::parse(j.value("shape", std::string("+-")));
    const auto& grid = j.at("grid");
    if (grid.contains("line")) {
      const auto& l = grid.at("line");
      c.line = ParameterLine{c.shape, rats(l.at("lo")), rats(l.at("hi"))};
      c.line_count = l.at("count").get<std::size_t>();
    } else {
      for (const auto& ax : grid.at("axes")) {
        c.axes.push_back(Axis{rat(ax.at("lo")), rat(ax.at("hi")), ax.at("count").get<std::size_t>()});
      }
    }
    if (j.contains("budgets")) {
      const auto& b = j.at("budgets");
      c.budgets.max_period_exp = b.value("max_period_exp", c.budgets.max_period_exp);
      c.budgets.piece_budget = b.value("piece_budget", c.budgets.piece_budget);
      c.budgets.tower_depth = b.value("tower_depth", c.budgets.tower_depth);
      c.budgets.homoclinic_m_budget = b.value("homoclinic_m_budget", c.budgets.homoclinic_m_budget);
      c.budgets.entropy_tol = b.value("entropy_tol", c.budgets.entropy_tol);
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      c.csv_path = o.value("csv", std::string());
      c.manifest_path = o.value("manifest", std::string());
      c.json_dir = o.value("json_dir", std::string());
    }
    c.threads = j.value("threads", std::size_t{0});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("scan config: ") + e.what());
  }
}

std::vector<ScanCell> scan_cells(const ScanConfig& c) {
  const auto d = static_cast<std::size_t>(c.shape.degree());
  std::vector<std::vector<Rat>> points;
  if (c.line) {
    if (c.line->lo.size() != d || c.line->hi.size() != d) {
      throw PreconditionError("line endpoints must have " + std::to_string(d) + " coordinates");
    }
    for (std::size_t i = 0; i < c.line_count; ++i) {
      const Rat t = c.line_count == 1 ? Rat(0)
                                      : Rat(static_cast<long>(i), static_cast<long>(c.line_count - 1));
      points.push_back(c.line->at(t));
    }
  } else if (!c.axes.empty()) {
    if (c.axes.size() != d) {
      throw PreconditionError("grid needs one axis per plateau (" + std::to_string(d) + ")");
    }
    points.emplace_back();
    for (const auto& ax : c.axes) {
      std::vector<std::vector<Rat>> next;
      for (const auto& prefix : points) {
        for (std::size_t i = 0; i < ax.count; ++i) {
          const Rat t = ax.count == 1 ? Rat(0)
                                      : Rat(static_cast<long>(i), static_cast<long>(ax.count - 1));
          auto w = prefix;
          w.push_back(ax.lo + t * (ax.hi - ax.lo));
          next.push_back(std::move(w));
        }
      }
      points = std::move(next);
    }
    if (std::any_of(c.axes.begin(), c.axes.end(), [](const ScanConfig::Axis& a) { return a.count == 0; })) {
      points.clear();
    }
  }
  std::vector<ScanCell> cells;
  for (std::size_t i = 0; i < points.size(); ++i) {
    ScanCell cell;
    cell.index = i;
    cell.w = std::move(points[i]);
    try {
      validate_critical_values(c.shape, cell.w);
      build_stunted(c.shape, cell.w);
    } catch (const ConstraintViolation& e) {
      cell.skipped = true;
      cell.skip_reason = e.what();
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

namespace {

std::string csv_safe(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  }
  return s;
}

std::string join_w(const std::vector<Rat>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ';';
    out += w[i].str();
  }
  return out;
}

}  // namespace

std::string scan_csv_row(const ScanCell& cell) {
  std::ostringstream os;
  os << cell.index << ',' << join_w(cell.w) << ',';
  if (cell.skipped || !cell.record) {
    os << "skipped,,,," << csv_safe(cell.skip_reason);
    return os.str();
  }
  const auto& r = *cell.record;
  os << r.verdict_label() << ',';
  if (r.verdict == Verdict::finite) os << r.max_period;
  os << ',';
  if (r.entropy) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", r.entropy->value);
    os << buf;
  }
  os << ',' << r.tower_depth << ',' << csv_safe(r.note);
  return os.str();
}

ScanSummary scan_grid(const ScanConfig& config) {
  config.budgets.validate();
  std::vector<ScanCell> cells = scan_cells(config);
  ScanSummary sum;
  sum.cells = cells.size();
  std::vector<std::optional<std::string>> rows(cells.size());

  if (!config.manifest_path.empty()) {
    std::ifstream in(config.manifest_path);
    std::string line;
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      // A row cut short by an interrupted run is recomputed.
      if (comma == std::string::npos || std::count(line.begin(), line.end(), ',') != 6) continue;
      std::size_t idx = 0;
      try {
        idx = std::stoul(line.substr(0, comma));
      } catch (const std::exception&) {
        continue;
      }
      if (idx < rows.size() && !rows[idx]) {
        rows[idx] = line;
        ++sum.resumed;
      }
    }
  }
  if (!config.json_dir.empty()) std::filesystem::create_directories(config.json_dir);

  std::ofstream manifest;
  if (!config.manifest_path.empty()) {
    manifest.open(config.manifest_path, std::ios::app);
    if (!manifest) throw DomainError("cannot open manifest " + config.manifest_path);
  }
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      if (rows[i]) continue;
      ScanCell& cell = cells[i];
      if (!cell.skipped) {
        try {
          cell.record = classify_escalating(build_stunted(config.shape, cell.w), config.budgets);
        } catch (const Error& e) {
          cell.skipped = true;
          cell.skip_reason = std::string("failed: ") + e.what();
        }
      }
      std::string row = scan_csv_row(cell);
      std::string cert;
      if (!config.json_dir.empty() && cell.record) cert = to_json(*cell.record).dump(2);
      std::lock_guard<std::mutex> lock(mu);
      rows[i] = row;
      if (manifest.is_open()) manifest << row << '\n' << std::flush;
      if (!cert.empty()) {
        std::ofstream(config.json_dir + "/cell_" + std::to_string(i) + ".json") << cert << '\n';
      }
    }
  };
  std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::max<std::size_t>(1, std::min(threads, cells.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (rows[i]->find(",skipped,") != std::string::npos) ++sum.skipped;
    if (rows[i]->find(",Inconclusive,") != std::string::npos) ++sum.inconclusive;
    sum.rows.push_back(*rows[i]);
  }
  if (!config.csv_path.empty()) {
    std::ofstream out(config.csv_path, std::ios::trunc);
    if (!out) throw DomainError("cannot open " + config.csv_path);
    out << kScanCsvHeader << '\n';
    for (const auto& r : sum.rows) out << r << '\n';
  }
  return sum;
}

}  // namespace stunted
