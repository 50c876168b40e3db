#include "hmpack/scheduling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "hmpack/errors.hpp"
#include "hmpack/text_tokens.hpp"

namespace hmpack {

namespace {

const char* variant_name(SchedulingVariant v) {
  switch (v) {
    case SchedulingVariant::Preemptive:
      return "preemptive";
    case SchedulingVariant::NonPreemptive:
      return "nonpreemptive";
    case SchedulingVariant::Tardy:
      return "tardy";
  }
  return "?";
}

void check_job_vector(const SchedulingInstance& inst, std::size_t i, const IntPoint& x) {
  if (i >= inst.machines()) throw InputError("machine type out of range");
  if (x.size() != inst.jobs()) throw InputError("job vector has the wrong dimension");
  for (auto v : x)
    if (v < 0) throw InputError("job vector has a negative entry");
}

// Rows 0 <= x_j <= a_j over the first d of n coordinates.
void add_demand_rows(std::vector<IntVector>& a, IntVector& b, const IntVector& demand, std::size_t n) {
  for (std::size_t j = 0; j < demand.size(); ++j) {
    IntVector up(n, 0);
    up[j] = 1;
    a.push_back(std::move(up));
    b.push_back(demand[j]);
  }
}

Polytope with_demand(const Polytope& p, const IntVector& demand) {
  std::vector<IntVector> a;
  IntVector b;
  add_demand_rows(a, b, demand, p.dim());
  return p.with_rows(a, b);
}

Polytope target_exactly(const IntVector& a) {
  const std::size_t d = a.size();
  std::vector<IntVector> rows;
  IntVector rhs;
  for (std::size_t j = 0; j < d; ++j) {
    IntVector up(d, 0), down(d, 0);
    up[j] = 1;
    down[j] = -1;
    rows.push_back(up);
    rhs.push_back(a[j]);
    rows.push_back(down);
    rhs.push_back(-a[j]);
  }
  return Polytope(std::move(rows), std::move(rhs));
}

// Least cost of a machine type that can run a single copy of each job type.
std::int64_t assignment_upper_bound(const SchedulingInstance& inst) {
  std::int64_t upper = 0;
  for (std::size_t j = 0; j < inst.jobs(); ++j) {
    if (inst.multiplicities[j] == 0) continue;
    std::optional<std::int64_t> cheapest;
    for (std::size_t i = 0; i < inst.machines(); ++i) {
      const auto& w = inst.window(i, j);
      if (w.deadline - w.release >= w.processing)
        cheapest = std::min(cheapest.value_or(inst.machine_costs[i]), inst.machine_costs[i]);
    }
    if (!cheapest) throw Infeasible("job type " + std::to_string(j + 1) + " fits no machine type");
    upper += *cheapest * inst.multiplicities[j];
  }
  return upper;
}

std::vector<std::pair<std::int64_t, std::int64_t>> job_box(const SchedulingInstance& inst, std::size_t i) {
  std::vector<std::pair<std::int64_t, std::int64_t>> box;
  const std::int64_t horizon = inst.horizon(i);
  for (std::size_t j = 0; j < inst.jobs(); ++j)
    box.emplace_back(0, std::min(inst.multiplicities[j], horizon / inst.window(i, j).processing));
  return box;
}

TimedSchedule nonpreemptive_schedule(const IntPoint& x, const SchedulingInstance& inst, std::size_t i) {
  const auto aux = nonpreemptive_completion(x, inst, i);
  HMPACK_ASSERT(aux.has_value(), "selected job vector is not schedulable");
  return extract_cyclic_schedule(*aux, inst, i);
}

}  // namespace

IntVector SchedulingInstance::critical_points(std::size_t i) const {
  IntVector t;
  for (const auto& w : windows.at(i)) {
    t.push_back(w.release);
    t.push_back(w.deadline);
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

std::int64_t SchedulingInstance::horizon(std::size_t i) const {
  std::int64_t h = 0;
  for (const auto& w : windows.at(i)) h = std::max(h, w.deadline);
  return h;
}

void SchedulingInstance::validate() const {
  const std::size_t d = jobs(), m = machines();
  if (d == 0) throw InputError("scheduling needs at least one job type");
  if (m == 0) throw InputError("scheduling needs at least one machine type");
  for (std::size_t i = 0; i < m; ++i) {
    if (windows[i].size() != d) throw InputError("every machine type needs a window per job type");
    for (std::size_t j = 0; j < d; ++j) {
      const auto& w = windows[i][j];
      const std::string where = " (machine type " + std::to_string(i + 1) + ", job type " + std::to_string(j + 1) + ")";
      if (w.release < 0) throw InputError("negative release time" + where);
      if (w.deadline < w.release) throw InputError("deadline before release" + where);
      if (w.processing < 1) throw InputError("processing time must be at least 1" + where);
    }
  }
  for (auto a : multiplicities)
    if (a < 0) throw InputError("negative job multiplicity");
  if (variant == SchedulingVariant::Tardy) {
    if (machine_counts.size() != m) throw InputError("tardy instance needs one machine count per type");
    if (penalties.size() != d) throw InputError("tardy instance needs one penalty per job type");
    for (auto c : machine_counts)
      if (c < 0) throw InputError("negative machine count");
    for (auto c : penalties)
      if (c < 0) throw InputError("negative penalty");
  } else {
    if (machine_costs.size() != m) throw InputError("assignment instance needs one cost per machine type");
    for (auto c : machine_costs)
      if (c < 0) throw InputError("negative machine cost");
  }
}

SchedulingInstance SchedulingInstance::parse(std::string_view text) {
  TokenReader in(text);
  SchedulingInstance inst;
  const auto d = in.next_int("job type count d");
  const auto m = in.next_int("machine type count m");
  if (d < 1) throw InputError("1:1: scheduling needs d >= 1");
  if (m < 1) throw InputError("1:1: scheduling needs m >= 1");
  const auto vt = in.next("variant");
  if (vt.text == "preemptive")
    inst.variant = SchedulingVariant::Preemptive;
  else if (vt.text == "nonpreemptive")
    inst.variant = SchedulingVariant::NonPreemptive;
  else if (vt.text == "tardy")
    inst.variant = SchedulingVariant::Tardy;
  else
    throw TokenReader::error_at(vt, "unknown variant '" + std::string(vt.text) + "'");
  const auto ud = static_cast<std::size_t>(d), um = static_cast<std::size_t>(m);
  inst.windows.assign(um, std::vector<JobWindow>(ud));
  std::vector<std::vector<bool>> seen(um, std::vector<bool>(ud, false));
  for (std::size_t line = 0; line < ud * um; ++line) {
    const auto it = in.next("machine type index");
    Rational iv;
    try {
      iv = Rational::parse(it.text);
    } catch (const InputError&) {
      throw TokenReader::error_at(it, "expected machine type index");
    }
    if (!iv.is_integer() || iv < Rational(1) || iv > Rational(m))
      throw TokenReader::error_at(it, "machine type index out of range");
    const auto jt = in.next_int("job type index");
    if (jt < 1 || jt > d) throw in.error("job type index out of range");
    const auto i = static_cast<std::size_t>(iv.to_int64() - 1), j = static_cast<std::size_t>(jt - 1);
    if (seen[i][j]) throw TokenReader::error_at(it, "duplicate window for this machine and job type");
    seen[i][j] = true;
    auto& w = inst.windows[i][j];
    w.release = in.next_int("release time");
    w.deadline = in.next_int("deadline");
    w.processing = in.next_int("processing time");
  }
  for (std::size_t j = 0; j < ud; ++j) inst.multiplicities.push_back(in.next_int("job multiplicity"));
  if (inst.variant == SchedulingVariant::Tardy) {
    for (std::size_t i = 0; i < um; ++i) inst.machine_counts.push_back(in.next_int("machine count"));
    for (std::size_t j = 0; j < ud; ++j) inst.penalties.push_back(in.next_int("job penalty"));
  } else {
    for (std::size_t i = 0; i < um; ++i) inst.machine_costs.push_back(in.next_int("machine cost"));
  }
  if (!in.at_end()) throw in.error("trailing data after scheduling instance");
  inst.validate();
  return inst;
}

std::string SchedulingInstance::str() const {
  std::ostringstream os;
  os << jobs() << ' ' << machines() << ' ' << variant_name(variant) << '\n';
  for (std::size_t i = 0; i < machines(); ++i)
    for (std::size_t j = 0; j < jobs(); ++j) {
      const auto& w = windows[i][j];
      os << i + 1 << ' ' << j + 1 << ' ' << w.release << ' ' << w.deadline << ' ' << w.processing << '\n';
    }
  auto line = [&](const IntVector& v) {
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? " " : "") << v[k];
    os << '\n';
  };
  line(multiplicities);
  if (variant == SchedulingVariant::Tardy) {
    line(machine_counts);
    line(penalties);
  } else {
    line(machine_costs);
  }
  return os.str();
}

void validate_schedule(const SchedulingInstance& inst, std::size_t i, const IntPoint& x,
                       const TimedSchedule& schedule, bool preemptive) {
  check_job_vector(inst, i, x);
  const std::size_t d = inst.jobs();
  std::map<std::pair<std::size_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>> copies;  // work, pieces
  std::vector<std::pair<std::int64_t, std::int64_t>> busy;
  for (const auto& piece : schedule) {
    HMPACK_ASSERT(piece.job < d, "schedule names an unknown job type");
    HMPACK_ASSERT(piece.copy >= 0 && piece.copy < x[piece.job], "schedule names a copy outside x");
    HMPACK_ASSERT(piece.start < piece.end, "empty or reversed schedule piece");
    const auto& w = inst.window(i, piece.job);
    HMPACK_ASSERT(piece.start >= w.release && piece.end <= w.deadline, "schedule piece leaves its window");
    auto& c = copies[{piece.job, piece.copy}];
    c.first += piece.end - piece.start;
    c.second += 1;
    busy.emplace_back(piece.start, piece.end);
  }
  std::sort(busy.begin(), busy.end());
  for (std::size_t k = 1; k < busy.size(); ++k)
    HMPACK_ASSERT(busy[k - 1].second <= busy[k].first, "schedule pieces overlap");
  std::int64_t expected = 0;
  for (std::size_t j = 0; j < d; ++j) expected += x[j];
  HMPACK_ASSERT(static_cast<std::int64_t>(copies.size()) == expected, "schedule misses job copies");
  for (const auto& [key, c] : copies) {
    HMPACK_ASSERT(c.first == inst.window(i, key.first).processing, "copy processed for the wrong time");
    HMPACK_ASSERT(preemptive || c.second == 1, "non-preemptive copy is split");
  }
}

Polytope build_edf_polytope(const SchedulingInstance& inst, std::size_t i) {
  inst.validate();
  const std::size_t d = inst.jobs();
  const IntVector t = inst.critical_points(i);
  std::vector<IntVector> a;
  IntVector b;
  for (std::size_t u = 0; u < t.size(); ++u)
    for (std::size_t v = u; v < t.size(); ++v) {
      IntVector row(d, 0);
      bool any = false;
      for (std::size_t j = 0; j < d; ++j) {
        const auto& w = inst.window(i, j);
        if (w.release >= t[u] && w.deadline <= t[v]) {
          row[j] = w.processing;
          any = true;
        }
      }
      if (!any) continue;
      a.push_back(std::move(row));
      b.push_back(t[v] - t[u]);
    }
  for (std::size_t j = 0; j < d; ++j) {
    IntVector row(d, 0);
    row[j] = -1;
    a.push_back(std::move(row));
    b.push_back(0);
  }
  return Polytope(std::move(a), std::move(b));
}

EdfResult edf_simulate(const IntPoint& x, const SchedulingInstance& inst, std::size_t i) {
  check_job_vector(inst, i, x);
  const std::size_t d = inst.jobs();
  struct Copy {
    std::size_t job;
    std::int64_t copy, release, deadline, left;
  };
  std::vector<Copy> jobs;
  for (std::size_t j = 0; j < d; ++j) {
    const auto& w = inst.window(i, j);
    for (std::int64_t c = 0; c < x[j]; ++c) jobs.push_back({j, c, w.release, w.deadline, w.processing});
  }
  EdfResult out;
  bool late = false;
  std::int64_t now = 0;
  std::size_t done = 0;
  while (done < jobs.size()) {
    Copy* pick = nullptr;
    std::optional<std::int64_t> next_release;
    for (auto& c : jobs) {
      if (c.left == 0) continue;
      if (c.release > now) {
        next_release = std::min(next_release.value_or(c.release), c.release);
        continue;
      }
      if (!pick || std::tie(c.deadline, c.job, c.copy) < std::tie(pick->deadline, pick->job, pick->copy)) pick = &c;
    }
    if (!pick) {
      now = *next_release;
      continue;
    }
    std::int64_t until = now + pick->left;
    if (next_release) until = std::min(until, *next_release);
    if (!out.schedule.empty() && out.schedule.back().job == pick->job && out.schedule.back().copy == pick->copy &&
        out.schedule.back().end == now)
      out.schedule.back().end = until;
    else
      out.schedule.push_back({pick->job, pick->copy, now, until});
    pick->left -= until - now;
    now = until;
    if (pick->left == 0) {
      ++done;
      if (now > pick->deadline) late = true;
    }
  }
  if (!late) {
    out.feasible = true;
    return out;
  }
  out.schedule.clear();
  const IntVector t = inst.critical_points(i);
  for (std::size_t u = 0; u < t.size() && !out.violation; ++u)
    for (std::size_t v = u; v < t.size(); ++v) {
      __int128 load = 0;
      for (std::size_t j = 0; j < d; ++j) {
        const auto& w = inst.window(i, j);
        if (w.release >= t[u] && w.deadline <= t[v]) load += __int128(w.processing) * x[j];
      }
      if (load > t[v] - t[u]) {
        out.violation = std::make_pair(t[u], t[v]);
        break;
      }
    }
  HMPACK_ASSERT(out.violation.has_value(), "EDF missed a deadline without an overloaded interval");
  return out;
}

Polytope build_nonpreemptive_polytope(const SchedulingInstance& inst, std::size_t i) {
  inst.validate();
  const std::size_t d = inst.jobs();
  const NonpreemptiveLayout L(d);
  const std::size_t n = L.dim(), K = L.cycles();
  const std::int64_t big = inst.horizon(i);
  auto p = [&](std::size_t j) { return j == 0 ? std::int64_t{1} : inst.window(i, j - 1).processing; };
  std::vector<IntVector> a;
  IntVector b;
  auto le = [&](IntVector row, std::int64_t rhs) {
    a.push_back(std::move(row));
    b.push_back(rhs);
  };
  auto eq = [&](const IntVector& row, std::int64_t rhs) {
    IntVector neg(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) neg[k] = -row[k];
    le(row, rhs);
    le(std::move(neg), -rhs);
  };
  // x_j = Σ_k y_jk, including the dummy type 0
  for (std::size_t j = 0; j <= d; ++j) {
    IntVector row(n, 0);
    row[j == 0 ? L.x0() : L.x(j - 1)] = 1;
    for (std::size_t k = 1; k <= K; ++k) row[L.y(j, k)] = -1;
    eq(row, 0);
  }
  // τ_k = Σ_{ℓ <= k} Σ_j p_j y_jℓ
  for (std::size_t k = 1; k <= K; ++k) {
    IntVector row(n, 0);
    row[L.tau(k)] = 1;
    for (std::size_t l = 1; l <= k; ++l)
      for (std::size_t j = 0; j <= d; ++j) row[L.y(j, l)] = -p(j);
    eq(row, 0);
  }
  for (std::size_t j = 1; j <= d; ++j) {
    const auto& w = inst.window(i, j - 1);
    for (std::size_t k = 1; k <= K; ++k) {
      IntVector cap(n, 0);  // y_jk <= Δ z_jk
      cap[L.y(j, k)] = 1;
      cap[L.z(j, k)] = -big;
      le(std::move(cap), 0);
      IntVector rel(n, 0);  // τ_{k-1} >= r_j - Δ (1 - z_jk)
      if (k > 1) rel[L.tau(k - 1)] = -1;
      rel[L.z(j, k)] = big;
      le(std::move(rel), big - w.release);
      IntVector dl(n, 0);  // τ_k <= d_j + Δ (1 - z_jk)
      dl[L.tau(k)] = 1;
      dl[L.z(j, k)] = big;
      le(std::move(dl), w.deadline + big);
      IntVector zlo(n, 0), zhi(n, 0);
      zlo[L.z(j, k)] = -1;
      zhi[L.z(j, k)] = 1;
      le(std::move(zlo), 0);
      le(std::move(zhi), 1);
    }
  }
  // x_0 = Δ - Σ_j p_j x_j
  {
    IntVector row(n, 0);
    row[L.x0()] = 1;
    for (std::size_t j = 1; j <= d; ++j) row[L.x(j - 1)] = p(j);
    eq(row, big);
  }
  for (std::size_t k = 1; k <= K; ++k) {
    IntVector row(n, 0);
    row[L.tau(k)] = -1;
    le(std::move(row), 0);
    for (std::size_t j = 0; j <= d; ++j) {
      IntVector y(n, 0);
      y[L.y(j, k)] = -1;
      le(std::move(y), 0);
    }
  }
  return Polytope(std::move(a), std::move(b));
}

std::optional<IntPoint> nonpreemptive_completion(const IntPoint& x, const SchedulingInstance& inst, std::size_t i) {
  check_job_vector(inst, i, x);
  const std::size_t d = inst.jobs();
  const NonpreemptiveLayout L(d);
  const std::size_t K = L.cycles();
  const std::int64_t horizon = inst.horizon(i);
  __int128 work = 0;
  for (std::size_t j = 0; j < d; ++j) work += __int128(inst.window(i, j).processing) * x[j];
  if (work > horizon) return std::nullopt;

  // Remaining-job vectors in mixed radix over x.
  std::vector<std::size_t> radix(d);
  std::size_t states = 1;
  for (std::size_t j = 0; j < d; ++j) {
    radix[j] = states;
    states *= static_cast<std::size_t>(x[j] + 1);
    if (states > 2'000'000) throw ResourceError("schedule_states", "job vector too large for the cycle program");
  }
  auto decode = [&](std::size_t idx) {
    IntVector v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = static_cast<std::int64_t>(idx / radix[j] % static_cast<std::size_t>(x[j] + 1));
    return v;
  };
  const auto width = static_cast<std::size_t>(horizon + 1);
  const std::size_t subsets = std::size_t{1} << d;
  std::vector<std::int64_t> rel(subsets, 0), dl(subsets, horizon);
  for (std::size_t s = 0; s < subsets; ++s)
    for (std::size_t j = 0; j < d; ++j)
      if (s >> j & 1) {
        rel[s] = std::max(rel[s], inst.window(i, j).release);
        dl[s] = std::min(dl[s], inst.window(i, j).deadline);
      }

  struct Best {
    std::int64_t lo = INT64_MAX;  // earliest cycle end
    std::size_t from = 0;         // remaining jobs before the cycle
    std::int64_t start = 0;       // τ_{k-1}
  };
  // reach[k][rem] = reachable τ_k values; best[k][rem][S] = earliest end using job set S.
  std::vector<std::vector<std::vector<bool>>> reach(K + 1, std::vector<std::vector<bool>>(states));
  std::vector<std::vector<std::vector<Best>>> best(K + 1, std::vector<std::vector<Best>>(states));
  const std::size_t full = states - 1;
  reach[0][full].assign(width, false);
  reach[0][full][0] = true;

  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t rem = 0; rem < states; ++rem) {
      const auto& r = reach[k - 1][rem];
      if (r.empty()) continue;
      // next reachable τ at or after each time
      std::vector<std::int64_t> next(width + 1, -1);
      for (std::size_t t = width; t-- > 0;) next[t] = r[t] ? static_cast<std::int64_t>(t) : next[t + 1];
      const IntVector rv = decode(rem);
      // every sub-vector y <= rem
      IntVector y(d, 0);
      for (;;) {
        std::size_t s = 0, yidx = 0;
        std::int64_t load = 0;
        for (std::size_t j = 0; j < d; ++j) {
          if (y[j] > 0) s |= std::size_t{1} << j;
          yidx += static_cast<std::size_t>(y[j]) * radix[j];
          load += y[j] * inst.window(i, j).processing;
        }
        const std::int64_t start = next[static_cast<std::size_t>(std::min<std::int64_t>(rel[s], horizon + 1))];
        if (start >= 0 && start + load <= dl[s]) {
          auto& slot = best[k][rem - yidx];
          if (slot.empty()) slot.resize(subsets);
          if (start + load < slot[s].lo) slot[s] = Best{start + load, rem, start};
        }
        std::size_t j = 0;
        while (j < d && y[j] == rv[j]) y[j++] = 0;
        if (j == d) break;
        ++y[j];
      }
    }
    for (std::size_t rem = 0; rem < states; ++rem) {
      if (best[k][rem].empty()) continue;
      auto& r = reach[k][rem];
      r.assign(width, false);
      for (std::size_t s = 0; s < subsets; ++s)
        for (std::int64_t t = best[k][rem][s].lo; t <= dl[s] && best[k][rem][s].lo != INT64_MAX; ++t)
          r[static_cast<std::size_t>(t)] = true;
    }
  }
  if (reach[K][0].empty() || !reach[K][0][static_cast<std::size_t>(horizon)]) return std::nullopt;

  IntPoint aux(L.dim(), 0);
  for (std::size_t j = 0; j < d; ++j) aux[L.x(j)] = x[j];
  aux[L.x0()] = horizon - static_cast<std::int64_t>(work);
  std::size_t rem = 0;
  std::int64_t end = horizon;
  for (std::size_t k = K; k >= 1; --k) {
    aux[L.tau(k)] = end;
    const Best* pick = nullptr;
    std::size_t pick_s = 0;
    for (std::size_t s = 0; s < subsets && !pick; ++s) {
      const auto& b = best[k][rem][s];
      if (b.lo != INT64_MAX && b.lo <= end && end <= dl[s]) {
        pick = &b;
        pick_s = s;
      }
    }
    HMPACK_ASSERT(pick != nullptr, "cycle program reconstruction failed");
    const IntVector before = decode(pick->from), after = decode(rem);
    std::int64_t load = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const std::int64_t yj = before[j] - after[j];
      aux[L.y(j + 1, k)] = yj;
      aux[L.z(j + 1, k)] = (pick_s >> j & 1) ? 1 : 0;
      load += yj * inst.window(i, j).processing;
    }
    aux[L.y(0, k)] = end - pick->start - load;
    end = pick->start;
    rem = pick->from;
  }
  HMPACK_ASSERT(end == 0 && rem == full, "cycle program reconstruction did not reach the start");
  return aux;
}

TimedSchedule extract_cyclic_schedule(const IntPoint& aux, const SchedulingInstance& inst, std::size_t i) {
  const std::size_t d = inst.jobs();
  const NonpreemptiveLayout L(d);
  HMPACK_ASSERT(aux.size() == L.dim(), "auxiliary point has the wrong dimension");
  HMPACK_ASSERT(build_nonpreemptive_polytope(inst, i).contains(aux), "auxiliary point violates the cycle constraints");
  TimedSchedule out;
  IntVector copy(d, 0);
  std::int64_t prev = 0;
  for (std::size_t k = 1; k <= L.cycles(); ++k) {
    std::int64_t t = prev + aux[L.y(0, k)];
    for (std::size_t j = 1; j <= d; ++j) {
      const auto& w = inst.window(i, j - 1);
      for (std::int64_t c = 0; c < aux[L.y(j, k)]; ++c) {
        out.push_back({j - 1, copy[j - 1]++, t, t + w.processing});
        t += w.processing;
      }
    }
    HMPACK_ASSERT(t == aux[L.tau(k)], "cycle length differs from its end time");
    prev = t;
  }
  return out;
}

ScheduleSolution preemptive_assign(const SchedulingInstance& inst, const SolverOptions& options) {
  inst.validate();
  if (inst.variant == SchedulingVariant::Tardy) throw InputError("assignment needs machine costs");
  const std::size_t d = inst.jobs();
  std::vector<PolytopePart> parts;
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    PolytopePart part;
    part.polytope = with_demand(build_edf_polytope(inst, i), inst.multiplicities);
    part.projected_dim = d;
    part.cost = inst.machine_costs[i];
    parts.push_back(std::move(part));
  }
  const auto best = multi_polytope_minimize(parts, target_exactly(inst.multiplicities),
                                            assignment_upper_bound(inst), options);
  HMPACK_ASSERT(best.has_value(), "no assignment within the upper bound");
  ScheduleSolution sol;
  sol.objective = best->cost;
  sol.scheduled = best->y;
  for (const auto& p : best->points)
    for (std::int64_t c = 0; c < p.multiplicity; ++c) {
      auto edf = edf_simulate(p.x, inst, p.part);
      HMPACK_ASSERT(edf.feasible, "selected job vector fails EDF");
      validate_schedule(inst, p.part, p.x, edf.schedule, true);
      sol.machines.push_back({p.part, p.x, std::move(edf.schedule)});
    }
  std::int64_t cost = 0;
  for (const auto& m : sol.machines) cost += inst.machine_costs[m.type];
  HMPACK_ASSERT(cost == sol.objective, "machine cost differs from the objective");
  HMPACK_ASSERT(sol.scheduled == inst.multiplicities, "assignment does not meet demand");
  return sol;
}

ScheduleSolution nonpreemptive_assign(const SchedulingInstance& inst, const SolverOptions& options) {
  inst.validate();
  if (inst.variant == SchedulingVariant::Tardy) throw InputError("assignment needs machine costs");
  const std::size_t d = inst.jobs();
  std::vector<PolytopePart> parts;
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    PolytopePart part;
    part.polytope = with_demand(build_nonpreemptive_polytope(inst, i), inst.multiplicities);
    part.projected_dim = d;
    part.cost = inst.machine_costs[i];
    part.extends = [&inst, i](const IntPoint& x) { return nonpreemptive_completion(x, inst, i).has_value(); };
    part.projected_box = job_box(inst, i);
    parts.push_back(std::move(part));
  }
  const auto best = multi_polytope_minimize(parts, target_exactly(inst.multiplicities),
                                            assignment_upper_bound(inst), options);
  HMPACK_ASSERT(best.has_value(), "no assignment within the upper bound");
  ScheduleSolution sol;
  sol.objective = best->cost;
  sol.scheduled = best->y;
  for (const auto& p : best->points)
    for (std::int64_t c = 0; c < p.multiplicity; ++c) {
      auto schedule = nonpreemptive_schedule(p.x, inst, p.part);
      validate_schedule(inst, p.part, p.x, schedule, false);
      sol.machines.push_back({p.part, p.x, std::move(schedule)});
    }
  std::int64_t cost = 0;
  for (const auto& m : sol.machines) cost += inst.machine_costs[m.type];
  HMPACK_ASSERT(cost == sol.objective, "machine cost differs from the objective");
  HMPACK_ASSERT(sol.scheduled == inst.multiplicities, "assignment does not meet demand");
  return sol;
}

ScheduleSolution tardy_min_penalty(const SchedulingInstance& inst, const SolverOptions& options) {
  inst.validate();
  if (inst.variant != SchedulingVariant::Tardy) throw InputError("tardy scheduling needs machine counts and penalties");
  const std::size_t d = inst.jobs(), m = inst.machines();
  const std::size_t pd = d + 1 + m;  // (x, c^T x, e_i)
  std::int64_t total = 0;
  for (std::size_t j = 0; j < d; ++j) total += inst.penalties[j] * inst.multiplicities[j];

  // Generators (x, c^T x, e_i) for schedulable x <= a.
  std::vector<std::vector<IntPoint>> gens(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Polytope np = with_demand(build_nonpreemptive_polytope(inst, i), inst.multiplicities);
    const std::size_t aux = np.dim() - d;
    std::vector<IntVector> a;
    IntVector b;
    for (std::size_t r = 0; r < np.rows(); ++r) {
      IntVector row(pd + aux, 0);
      for (std::size_t j = 0; j < d; ++j) row[j] = np.row(r)[j];
      for (std::size_t k = 0; k < aux; ++k) row[pd + k] = np.row(r)[d + k];
      a.push_back(std::move(row));
      b.push_back(np.rhs(r));
    }
    IntVector mass(pd + aux, 0);
    for (std::size_t j = 0; j < d; ++j) mass[j] = inst.penalties[j];
    mass[d] = -1;
    IntVector neg = mass;
    for (auto& v : neg) v = -v;
    a.push_back(mass);
    b.push_back(0);
    a.push_back(neg);
    b.push_back(0);
    for (std::size_t l = 0; l < m; ++l) {
      IntVector up(pd + aux, 0), down(pd + aux, 0);
      up[d + 1 + l] = 1;
      down[d + 1 + l] = -1;
      a.push_back(up);
      b.push_back(l == i ? 1 : 0);
      a.push_back(down);
      b.push_back(l == i ? -1 : 0);
    }
    PolytopePart part;
    part.polytope = Polytope(std::move(a), std::move(b));
    part.projected_dim = pd;
    auto cache = std::make_shared<std::map<IntPoint, bool>>();
    part.extends = [&inst, i, d, m, cache](const IntPoint& v) {
      const IntPoint x(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d));
      std::int64_t w = 0;
      for (std::size_t j = 0; j < d; ++j) w += inst.penalties[j] * x[j];
      if (v[d] != w) return false;
      for (std::size_t l = 0; l < m; ++l)
        if (v[d + 1 + l] != (l == i ? 1 : 0)) return false;
      auto it = cache->find(x);
      if (it == cache->end()) it = cache->emplace(x, nonpreemptive_completion(x, inst, i).has_value()).first;
      return it->second;
    };
    part.projected_box = job_box(inst, i);
    std::int64_t wmax = 0;
    for (std::size_t j = 0; j < d; ++j) wmax += inst.penalties[j] * part.projected_box[j].second;
    part.projected_box.emplace_back(0, wmax);
    for (std::size_t l = 0; l < m; ++l) part.projected_box.emplace_back(l == i ? 1 : 0, l == i ? 1 : 0);
    gens[i] = part_points(part, options.cover.limits, options.ilp);
  }

  auto target = [&](std::int64_t delta) {
    std::vector<IntVector> a;
    IntVector b;
    for (std::size_t j = 0; j < d; ++j) {
      IntVector up(pd, 0), down(pd, 0);
      up[j] = 1;
      down[j] = -1;
      a.push_back(up);
      b.push_back(inst.multiplicities[j]);
      a.push_back(down);
      b.push_back(0);
    }
    IntVector mass(pd, 0);
    mass[d] = -1;
    a.push_back(mass);
    b.push_back(-delta);
    for (std::size_t l = 0; l < m; ++l) {
      IntVector up(pd, 0), down(pd, 0);
      up[d + 1 + l] = 1;
      down[d + 1 + l] = -1;
      a.push_back(up);
      b.push_back(inst.machine_counts[l]);
      a.push_back(down);
      b.push_back(-inst.machine_counts[l]);
    }
    return Polytope(std::move(a), std::move(b));
  };
  const std::vector<std::int64_t> zero_costs(m, 0);
  auto best = select_from_generators(gens, zero_costs, target(0), 0, options.ilp);
  HMPACK_ASSERT(best.found, "idle machines do not meet the machine counts");
  std::int64_t lo = best.y[d], hi = total;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    auto r = select_from_generators(gens, zero_costs, target(mid), 0, options.ilp);
    if (r.found) {
      lo = r.y[d];
      best = std::move(r);
    } else {
      hi = mid - 1;
    }
  }

  ScheduleSolution sol;
  sol.scheduled.assign(d, 0);
  IntVector used(m, 0);
  for (const auto& p : best.points) {
    const IntPoint x(p.x.begin(), p.x.begin() + static_cast<std::ptrdiff_t>(d));
    for (std::int64_t c = 0; c < p.multiplicity; ++c) {
      auto schedule = nonpreemptive_schedule(x, inst, p.part);
      validate_schedule(inst, p.part, x, schedule, false);
      sol.machines.push_back({p.part, x, std::move(schedule)});
      for (std::size_t j = 0; j < d; ++j) sol.scheduled[j] += x[j];
      ++used[p.part];
    }
  }
  // machines without jobs
  for (std::size_t i = 0; i < m; ++i)
    for (; used[i] < inst.machine_counts[i]; ++used[i]) sol.machines.push_back({i, IntPoint(d, 0), {}});
  HMPACK_ASSERT(used == inst.machine_counts, "tardy solution uses the wrong number of machines");
  std::int64_t mass = 0;
  for (std::size_t j = 0; j < d; ++j) {
    HMPACK_ASSERT(sol.scheduled[j] <= inst.multiplicities[j], "tardy solution schedules too many copies");
    mass += inst.penalties[j] * sol.scheduled[j];
  }
  HMPACK_ASSERT(mass == lo, "scheduled penalty mass differs from the search result");
  sol.objective = total - mass;
  return sol;
}

ScheduleSolution solve_scheduling(const SchedulingInstance& inst, const SolverOptions& options) {
  switch (inst.variant) {
    case SchedulingVariant::Preemptive:
      return preemptive_assign(inst, options);
    case SchedulingVariant::NonPreemptive:
      return nonpreemptive_assign(inst, options);
    case SchedulingVariant::Tardy:
      return tardy_min_penalty(inst, options);
  }
  throw InputError("unknown scheduling variant");
}

}  // namespace hmpack
