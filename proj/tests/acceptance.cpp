// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nertcam/bench.hpp"
#include "nertcam/dataset.hpp"
#include "nertcam/harness.hpp"
#include "nertcam/system.hpp"

namespace {

using namespace nertcam;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

NertcamConfig config_for(SdrLayout layout, std::size_t capacity) {
  NertcamConfig c;
  c.layout = layout;
  c.capacity = capacity;
  return c;
}

std::string location_section(const DcMask& dc, const SdrLayout& layout) {
  return section(dc.bits(), layout, Section::Location).to_string();
}

// 1 ---------------------------------------------------------------------------

Check dc_masks() {
  Check c;
  const SdrLayout layout{3, 3, 3};
  const auto mode = PaddingMode::linear();
  auto mask = [&](CommandKind kind, const char* input) {
    return build_dc({kind, parse_sdr(input, layout), 0}, layout, mode).to_string();
  };
  const std::pair<std::string, std::string> cases[] = {
      {mask(CommandKind::Store, "001010100"), "000000000"},
      {mask(CommandKind::Delete, "001010100"), "000000000"},
      {mask(CommandKind::Infer, "001010000"), "000000111"},
      {mask(CommandKind::PredictFeature, "000010000"), "111000111"},
      {mask(CommandKind::PredictLocation, "001000000"), "000111111"},
  };
  for (const auto& [got, want] : cases) c.expect(got == want, got + " != " + want);
  c.detail << "5/5 masks exact";
  return c;
}

// 2 ---------------------------------------------------------------------------

Check padding() {
  Check c;
  const SdrLayout layout{3, 5, 3};
  const MacroCommand q{CommandKind::PredictFeature, parse_sdr("000|00100|000", layout), 1};
  const auto dc = build_dc(q, layout, PaddingMode::linear());
  c.expect(location_section(dc, layout) == "01110", "mask " + location_section(dc, layout));

  std::set<std::string> accepted;
  std::size_t checked = 0;
  for (std::size_t hot = 0; hot < 5; ++hot) {
    for (std::size_t f = 0; f < 3; ++f) {
      for (std::size_t k = 0; k < 3; ++k) {
        const auto stored = make_sdr(BitVector::one_hot(3, f), BitVector::one_hot(5, hot),
                                     BitVector::one_hot(3, k), layout);
        const bool hit = equality_match(stored, q.input, dc);
        const bool near = hot >= 1 && hot <= 3;
        c.expect(hit == near, "location " + std::to_string(hot));
        if (hit) accepted.insert(BitVector::one_hot(5, hot).to_string());
        ++checked;
      }
    }
  }
  c.expect(accepted == std::set<std::string>{"01000", "00100", "00010"}, "accepted set");
  c.detail << "mask 01110, " << checked << " stored entries checked, accepted {01000,00100,00010}";
  return c;
}

// 3 ---------------------------------------------------------------------------

Check cycle_table() {
  Check c;
  Nertcam d(config_for({3, 3, 3}, 8));
  const SdrLayout& layout = d.config().layout;
  auto run = [&](CommandKind kind, const char* input) {
    return d.run({kind, parse_sdr(input, layout), 0});
  };
  struct Cell {
    const char* name;
    CommandKind kind;
    const char* input;
    Outcome outcome;
    std::uint64_t cycles;
  };
  const Cell cells[] = {
      {"CLEAR", CommandKind::Clear, "000000000", Outcome::Success, 1},
      {"STORE ok", CommandKind::Store, "001010100", Outcome::Success, 3},
      {"STORE dup", CommandKind::Store, "001010100", Outcome::StoreFailed, 2},
      {"STORE ok", CommandKind::Store, "010010010", Outcome::Success, 3},
      {"RESET", CommandKind::Reset, "000000000", Outcome::Success, 1},
      {"INFER ok", CommandKind::Infer, "001010000", Outcome::Success, 2},
      {"INFER switch", CommandKind::Infer, "010010000", Outcome::ContextSwitch, 4},
      {"INFER fail", CommandKind::Infer, "100100000", Outcome::InferFailed, 4},
      {"PREDICT_FEATURE", CommandKind::PredictFeature, "000010000", Outcome::Success, 1},
      {"PREDICT_LOCATION", CommandKind::PredictLocation, "001000000", Outcome::Success, 1},
      {"DELETE ok", CommandKind::Delete, "010010010", Outcome::Success, 3},
      {"DELETE miss", CommandKind::Delete, "010010010", Outcome::DeleteFailed, 2},
  };
  for (const auto& cell : cells) {
    const auto r = run(cell.kind, cell.input);
    c.expect(r.outcome() == cell.outcome && r.cycles == cell.cycles,
             std::string(cell.name) + " took " + std::to_string(r.cycles) + " cycles, " +
                 std::string(to_string(r.outcome())));
  }
  c.detail << std::size(cells) << " scenarios exact";
  return c;
}

// 4 ---------------------------------------------------------------------------

Check oracle_equivalence() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  struct Run {
    SdrLayout layout;
    std::size_t capacity;
    std::size_t ops;
  };
  for (const Run& r : {Run{{4, 4, 4}, 16, 10000}, Run{{8, 8, 8}, 64, 5000}}) {
    const auto config = config_for(r.layout, r.capacity);
    for (std::uint64_t seed : {1u, 2u}) {
      const auto result = diff(config, fuzz_trace(config, {r.ops, seed, 2}));
      std::ostringstream where;
      where << r.layout.feature_bits << "-bit seed " << seed;
      if (!result.clean()) {
        where << " record " << result.first->record << " field " << result.first->field;
      }
      c.expect(result.clean() && result.records_checked == r.ops, where.str());
    }
    c.detail << r.layout.feature_bits << "/" << r.layout.location_bits << "/"
             << r.layout.class_bits << " N=" << r.capacity << ": 2x" << r.ops << " ops clean; ";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  c.detail << "runtime " << std::fixed << secs << " s";
  return c;
}

// 5 ---------------------------------------------------------------------------

// Candidate classes consistent with every sensation seen so far, by direct
// comparison of the maps.
std::vector<std::set<std::size_t>> brute_candidates(const Dataset& ds, std::size_t cls,
                                                    const std::vector<std::size_t>& order) {
  std::vector<std::set<std::size_t>> out;
  std::set<std::size_t> alive;
  for (std::size_t k = 0; k < ds.params.classes; ++k) alive.insert(k);
  for (std::size_t loc : order) {
    const std::size_t f = ds.maps[cls][0][loc];
    std::erase_if(alive, [&](std::size_t k) { return ds.maps[k][0][loc] != f; });
    out.push_back(alive);
  }
  return out;
}

Check sequential_identification() {
  Check c;
  std::mt19937_64 rng(2024);
  std::size_t streams = 0;
  std::size_t max_steps = 0;

  for (const std::size_t pool : {std::size_t{128}, std::size_t{3}}) {
    DatasetParams params;
    params.feature_pool = pool;
    params.seed = 11 + pool;
    const auto ds = generate_dataset(params);
    const auto config = dataset_config(ds, ds.entry_count());
    Nertcam device(config);
    replay(device, store_trace(ds));
    const bool unique = pool == 128;

    std::size_t exact = 0;
    for (std::size_t cls = 0; cls < ds.params.classes; ++cls) {
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> order(ds.locations());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        const auto expected = brute_candidates(ds, cls, order);

        device.run({CommandKind::Reset, Sdr(config.layout.total()), 0});
        const auto stream = sensation_stream(ds, cls, 0, order);
        std::vector<std::size_t> previous;
        std::optional<std::size_t> first_one_hot;
        for (std::size_t i = 0; i < stream.size(); ++i) {
          const auto r = device.run(to_macro_command(stream[i], config.layout));
          const auto classes = r.classes.set_positions();
          c.expect(r.outcome() == Outcome::Success, "non-success INFER");
          if (i > 0) {
            c.expect(std::includes(previous.begin(), previous.end(), classes.begin(), classes.end()),
                     "class set grew");
          }
          c.expect(std::set<std::size_t>(classes.begin(), classes.end()) == expected[i],
                   "class set differs from map intersection");
          if (!first_one_hot && classes.size() == 1) {
            first_one_hot = i;
            c.expect(classes[0] == cls, "wrong class");
          }
          previous = classes;
        }
        c.expect(first_one_hot.has_value(), "never one-hot");
        if (!first_one_hot) continue;
        std::size_t disambiguating = 0;
        while (expected[disambiguating].size() != 1) ++disambiguating;
        c.expect(*first_one_hot == disambiguating, "converged off the disambiguating sensation");
        if (*first_one_hot == disambiguating) ++exact;
        max_steps = std::max(max_steps, *first_one_hot + 1);
        ++streams;
      }
    }
    c.detail << (unique ? "unique" : "overlapping") << " maps: " << exact
             << "/1000 converged at the disambiguating sensation; ";
  }
  c.expect(max_steps <= 25, "took " + std::to_string(max_steps) + " sensations");
  c.detail << streams << " streams, worst case " << max_steps << " sensations";
  return c;
}

// 6 ---------------------------------------------------------------------------

Check context_switch() {
  Check c;
  DatasetParams params;
  params.feature_pool = 3;
  params.seed = 5;
  const auto ds = generate_dataset(params);
  const auto config = dataset_config(ds, ds.entry_count());
  std::mt19937_64 rng(6);
  std::size_t pairs = 0;
  std::size_t shared_prefix_total = 0;

  for (std::size_t a = 0; a < ds.params.classes; ++a) {
    for (std::size_t b = 0; b < ds.params.classes; ++b) {
      if (a == b) continue;
      std::vector<std::size_t> order_a(ds.locations());
      std::iota(order_a.begin(), order_a.end(), 0);
      std::shuffle(order_a.begin(), order_a.end(), rng);
      std::vector<std::size_t> order_b = order_a;
      std::shuffle(order_b.begin(), order_b.end(), rng);

      std::size_t unique_at = 0;
      while (ds.maps[b][0][order_b[unique_at]] == ds.maps[a][0][order_b[unique_at]]) ++unique_at;
      shared_prefix_total += unique_at;

      Nertcam device(config);
      replay(device, store_trace(ds));
      Nertcam fresh(config);
      replay(fresh, store_trace(ds));

      device.run({CommandKind::Reset, Sdr(config.layout.total()), 0});
      for (const auto& r : sensation_stream(ds, a, 0, order_a)) {
        device.run(to_macro_command(r, config.layout));
      }
      const auto stream_b = sensation_stream(ds, b, 0, order_b);
      fresh.run({CommandKind::Reset, Sdr(config.layout.total()), 0});
      for (std::size_t i = 0; i < stream_b.size(); ++i) {
        const auto got = device.run(to_macro_command(stream_b[i], config.layout));
        if (i < unique_at) {
          c.expect(got.outcome() == Outcome::Success && got.classes.set_positions() ==
                                                            std::vector<std::size_t>{a},
                   "early switch");
          continue;
        }
        const auto want = fresh.run(to_macro_command(stream_b[i], config.layout));
        if (i == unique_at) {
          c.expect(got.outcome() == Outcome::ContextSwitch, "no Context_Switch at first unique");
          c.expect(got.classes == want.classes, "switch output differs from fresh replay");
        } else {
          c.expect(got.outcome() == want.outcome() && got.classes == want.classes,
                   "post-switch output differs from fresh replay");
        }
      }
      ++pairs;
    }
  }
  c.detail << pairs << " ordered object pairs, mean shared prefix "
           << static_cast<double>(shared_prefix_total) / static_cast<double>(pairs)
           << " sensations";
  return c;
}

// 7 ---------------------------------------------------------------------------

Check capacity() {
  Check c;
  NertcamConfig config;  // 128/25/10, N=1024
  Nertcam d(config);
  const auto& layout = config.layout;
  c.expect(layout.total() + 2 == 165, "entry width");

  auto triplet = [&](std::size_t i) {
    return make_sdr(BitVector::one_hot(128, i % 128), BitVector::one_hot(25, (i / 128) % 25),
                    BitVector::one_hot(10, (i / 128) / 25), layout);
  };
  std::size_t ok = 0;
  for (std::size_t i = 0; i < 1024; ++i) {
    const auto r = d.run({CommandKind::Store, triplet(i), 0});
    if (r.outcome() == Outcome::Success) ++ok;
    c.expect(r.status.full == (i == 1023), "full flag at store " + std::to_string(i));
  }
  c.expect(ok == 1024, std::to_string(ok) + " stores succeeded");
  const auto over = d.run({CommandKind::Store, triplet(1024), 0});
  c.expect(over.outcome() == Outcome::StoreFailed && over.status.full, "1025th store");
  const auto del = d.run({CommandKind::Delete, triplet(7), 0});
  c.expect(del.outcome() == Outcome::Success && !del.status.full && !d.status().full,
           "delete clears full");
  c.detail << ok << " stores ok, 1025th " << to_string(over.outcome()) << " full="
           << over.status.full << ", DELETE then full=" << d.status().full;
  return c;
}

// 8 ---------------------------------------------------------------------------

Check scaling() {
  Check c;
  const SdrLayout layout = SdrLayout::mnist_scale();
  const auto sizes = default_bench_sizes();
  // Best of three runs per size to damp scheduler noise.
  std::vector<double> ns(sizes.size(), 0.0);
  for (int rep = 0; rep < 3; ++rep) {
    const auto points = run_bench(layout, sizes, OpMix::Lookup, 4000, 1 + rep);
    for (std::size_t i = 0; i < points.size(); ++i) {
      ns[i] = rep == 0 ? points[i].ns_per_op : std::min(ns[i], points[i].ns_per_op);
    }
  }
  const double at_1024 = ns.back();
  c.expect(at_1024 < 1e6, "lookup at N=1024 took " + std::to_string(at_1024) + " ns");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    const double growth = ns[i] / ns[0];
    const double bound = 1.5 * static_cast<double>(sizes[i]) / static_cast<double>(sizes[0]);
    c.expect(growth <= bound, "N=" + std::to_string(sizes[i]) + " grew " + std::to_string(growth) +
                                  "x vs linear bound " + std::to_string(bound) + "x");
  }
  c.detail << "ns/lookup";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    c.detail << " N=" << sizes[i] << ":" << static_cast<long long>(ns[i]);
  }
  c.detail << "; N=1024 " << at_1024 / 1e3 << " us < 1000 us";
  return c;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"dc-mask fidelity", dc_masks},
      {"padding fidelity", padding},
      {"cycle-count table", cycle_table},
      {"oracle equivalence", oracle_equivalence},
      {"sequential identification", sequential_identification},
      {"context-switch detection", context_switch},
      {"capacity 128/25/10 N=1024", capacity},
      {"scaling smoke", scaling},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Check result;
    try {
      result = run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail << "exception: " << e.what();
    }
    std::printf("[%s] %d %s: %s\n", result.ok ? "PASS" : "FAIL", n, name,
                result.detail.str().c_str());
    if (!result.ok) ++failed;
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
